#pragma once

#include <optional>
#include <set>
#include <vector>

#include "chars.hpp"
#include "hecke_constants.hpp"
#include "qseries.hpp"

namespace qlift {

struct HeckeContext {
  long weight2;
  RealChar character;
  GridVariant variant = GridVariant::mod24;

  HeckeContext(long w2, RealChar chi = RealChar(), GridVariant v = GridVariant::mod24)
      : weight2(w2), character(std::move(chi)), variant(v) {}
};

namespace detail {

inline void require_integer_grid(const Series& f) {
  for (auto& [i, c] : f.terms())
    if (i % 24) throw DomainError("integer-weight form has a term off the integer grid");
}

inline FieldElem power_of(long p, long e) {
  return FieldElem(rpow(Rational(p), e));
}

}  // namespace detail

inline Series hecke_Tp_int(const Series& f, const HeckeContext& ctx, long p) {
  if (ctx.weight2 % 2) throw DomainError("hecke_Tp_int needs integer weight");
  if (!is_prime(p)) throw DomainError("T_p needs a prime p");
  detail::require_integer_grid(f);
  long k = ctx.weight2 / 2;
  Series u = op_U(f, p, 24);
  int c = ctx.character(p);
  if (!c) return u;
  return u + series_scale(op_V(f, p), FieldElem(long(c)) * detail::power_of(p, k - 1));
}

inline Series hecke_Tn_int(const Series& f, const HeckeContext& ctx, long n) {
  if (ctx.weight2 % 2) throw DomainError("hecke_Tn_int needs integer weight");
  if (n < 1) throw DomainError("T_n needs n >= 1");
  detail::require_integer_grid(f);
  long k = ctx.weight2 / 2;
  Index P = f.prec();
  Index mmax = P >= Series::kExact ? n * (f.max_index() / 24) : (P - 1) / (24 * n);
  Index out_prec = P >= Series::kExact ? Series::kExact : 24 * (mmax + 1);
  std::vector<Series::Term> terms;
  auto dn = divisors(n);
  for (Index m = 0; m <= mmax; ++m) {
    FieldElem b;
    for (Index d : dn) {
      if (m % d) continue;
      int c = ctx.character(d);
      if (!c) continue;
      Index idx = m * n / (d * d);
      if (24 * idx >= P) continue;
      FieldElem a = f.coeff(24 * idx);
      if (!a.is_zero()) b += FieldElem(long(c)) * detail::power_of(d, k - 1) * a;
    }
    if (!b.is_zero()) terms.emplace_back(24 * m, b);
  }
  return Series::from_terms(std::move(terms), out_prec, f.disc());
}

inline Series hecke_Tp2_half(const Series& f, const HeckeContext& ctx, long p) {
  if (ctx.weight2 % 2 == 0) throw DomainError("hecke_Tp2_half needs half-integral weight");
  if (!is_prime(p)) throw DomainError("T_{p^2} needs a prime p");
  if (ctx.variant == GridVariant::mod24 && p < 5)
    throw DomainError("T_{p^2} on the 1/24 grid needs p >= 5");
  if (ctx.variant == GridVariant::mod8 && p < 3)
    throw DomainError("T_{p^2} on the 1/8 grid needs p >= 3");
  const Tp2Convention conv = tp2_convention(ctx.variant);
  long k = (ctx.weight2 - 1) / 2;
  Index p2 = p * p;
  Index P = f.prec();
  Index out_prec = P >= Series::kExact ? P : (P + p2 - 1) / p2;
  // work on the variant's own grid: index u*j is q^{j/D}
  const Index u = conv.index_divisor;
  std::set<Index> cand;
  for (auto& [i, c] : f.terms()) {
    if (i % u) throw DomainError("index off the 1/8 grid");
    Index j = i / u;
    if (j % p2 == 0 && u * (j / p2) < out_prec) cand.insert(j / p2);
    if (i < out_prec) cand.insert(j);
    if (i * p2 < out_prec) cand.insert(j * p2);
  }
  int cp = ctx.character(p);
  int cp2 = ctx.character(p2);
  int eps = kronecker(conv.eps_top, p);
  FieldElem mid_scale = detail::power_of(p, k - 1);
  FieldElem low_scale = detail::power_of(p, 2 * k - 1);
  std::vector<Series::Term> terms;
  for (Index j : cand) {
    Index n = u * j;
    FieldElem b = f.coeff(u * p2 * j);
    if (cp) {
      int s = cp * eps * kronecker(static_cast<long>(k % 2 ? -j : j), p);
      if (s) b += FieldElem(long(s)) * mid_scale * f.coeff(n);
    }
    if (cp2 && j % p2 == 0) b += FieldElem(long(cp2)) * low_scale * f.coeff(u * (j / p2));
    if (!b.is_zero()) terms.emplace_back(n, b);
  }
  return Series::from_terms(std::move(terms), out_prec, f.disc());
}

struct EigenCheck {
  bool ok = true;
  std::vector<FieldElem> eigenvalues;
  std::optional<Index> violation;
};

inline EigenCheck is_eigen_upto(const Series& f, const std::vector<Series>& results) {
  if (f.is_zero()) throw DomainError("eigenform test on a zero series");
  EigenCheck out;
  for (auto& h : results) {
    Index bound = std::min(f.prec(), h.prec());
    const auto& lead = f.terms().front();
    if (lead.first >= bound) {
      out.ok = false;
      out.violation = lead.first;
      return out;
    }
    FieldElem lambda = h.coeff(lead.first) / lead.second;
    auto miss = first_mismatch(h, series_scale(f, lambda), bound);
    if (miss) {
      out.ok = false;
      out.violation = miss;
      return out;
    }
    out.eigenvalues.push_back(lambda);
  }
  return out;
}

// exact alpha with target = sum alpha_i basis_i
inline std::vector<FieldElem> decompose_in_basis(const Series& target,
                                                 const std::vector<Series>& basis) {
  std::size_t m = basis.size();
  if (m == 0) throw DomainError("empty basis");
  Index P = target.prec();
  for (auto& b : basis) P = std::min(P, b.prec());
  std::set<Index> rows;
  for (auto& [i, c] : target.terms())
    if (i < P) rows.insert(i);
  for (auto& b : basis)
    for (auto& [i, c] : b.terms())
      if (i < P) rows.insert(i);
  std::vector<std::vector<FieldElem>> ech;  // reduced rows
  std::vector<std::size_t> pivots;
  std::vector<Index> chosen;
  for (Index i : rows) {
    if (chosen.size() == m) break;
    std::vector<FieldElem> row(m);
    for (std::size_t j = 0; j < m; ++j) row[j] = basis[j].coeff(i);
    for (std::size_t e = 0; e < ech.size(); ++e) {
      const FieldElem& c = row[pivots[e]];
      if (c.is_zero()) continue;
      FieldElem fac = c / ech[e][pivots[e]];
      for (std::size_t j = 0; j < m; ++j) row[j] -= fac * ech[e][j];
    }
    std::size_t piv = m;
    for (std::size_t j = 0; j < m; ++j)
      if (!row[j].is_zero()) {
        piv = j;
        break;
      }
    if (piv == m) continue;
    ech.push_back(row);
    pivots.push_back(piv);
    chosen.push_back(i);
  }
  if (chosen.size() < m) throw DomainError("singular basis system: rank " +
                                           std::to_string(chosen.size()) + " < " +
                                           std::to_string(m));
  // augmented system on the chosen rows
  std::vector<std::vector<FieldElem>> a(m, std::vector<FieldElem>(m + 1));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < m; ++j) a[r][j] = basis[j].coeff(chosen[r]);
    a[r][m] = target.coeff(chosen[r]);
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (piv < m && a[piv][col].is_zero()) ++piv;
    if (piv == m) throw DomainError("singular basis system");
    std::swap(a[piv], a[col]);
    FieldElem inv = a[col][col].inverse();
    for (auto& x : a[col]) x *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      FieldElem fac = a[r][col];
      for (std::size_t j = col; j <= m; ++j) a[r][j] -= fac * a[col][j];
    }
  }
  std::vector<FieldElem> alpha(m);
  for (std::size_t r = 0; r < m; ++r) alpha[r] = a[r][m];
  Series recon(P, target.disc());
  for (std::size_t j = 0; j < m; ++j) recon = recon + series_scale(basis[j], alpha[j]);
  if (auto miss = first_mismatch(recon, target.truncated(P), P))
    throw DomainError("target outside the span: residual at index " + std::to_string(*miss));
  return alpha;
}

}  // namespace qlift
