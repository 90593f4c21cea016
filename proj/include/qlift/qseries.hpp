#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chars.hpp"
#include "field.hpp"

namespace qlift {

// Truncated q-series on the q^(1/24) grid: index n stands for q^(n/24).
class Series {
 public:
  using Term = std::pair<Index, FieldElem>;
  static constexpr Index kExact = std::numeric_limits<Index>::max() / 4;

  Series() = default;
  explicit Series(Index prec, long disc = 0) : prec_(prec), disc_(disc) {
    if (prec_ < 0) throw PrecisionError("negative precision");
  }

  static Series from_terms(std::vector<Term> terms, Index prec, long disc = 0) {
    Series s(prec, disc);
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    for (auto& t : terms) {
      if (t.first < 0) throw DomainError("negative grid index " + std::to_string(t.first));
      if (t.first >= prec) continue;
      s.disc_ = FieldElem::join(s.disc_, t.second.disc());
      if (!s.terms_.empty() && s.terms_.back().first == t.first)
        s.terms_.back().second += t.second;
      else
        s.terms_.push_back(std::move(t));
    }
    s.drop_zeros();
    return s;
  }

  static Series from_map(const std::map<Index, FieldElem>& m, Index prec, long disc = 0) {
    return from_terms(std::vector<Term>(m.begin(), m.end()), prec, disc);
  }

  static Series monomial(Index n, const FieldElem& c, Index prec = kExact) {
    return from_terms({{n, c}}, prec, c.disc());
  }

  static Series constant(const FieldElem& c) { return monomial(0, c); }

  Index prec() const { return prec_; }
  long disc() const { return disc_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_exact() const { return prec_ >= kExact; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  // least nonzero index; a zero series reports its precision
  Index valuation() const { return terms_.empty() ? prec_ : terms_.front().first; }
  Index max_index() const { return terms_.empty() ? 0 : terms_.back().first; }

  FieldElem coeff(Index n) const {
    if (n < 0 || n >= prec_)
      throw PrecisionError("read at index " + std::to_string(n) + " beyond prec " +
                           std::to_string(prec_));
    auto it = std::lower_bound(terms_.begin(), terms_.end(), n,
                               [](const Term& t, Index k) { return t.first < k; });
    if (it != terms_.end() && it->first == n) return it->second;
    return FieldElem();
  }

  // integer-weight coefficient a(n) = coefficient of q^n
  FieldElem int_coeff(Index n) const { return coeff(24 * n); }

  // gcd of index differences (0 for fewer than two terms)
  Index gap() const {
    Index g = 0;
    for (auto& t : terms_) g = gcd_index(g, t.first - terms_.front().first);
    return g;
  }

  Index stride() const {
    Index g = gap();
    return g == 0 ? 24 : gcd_index(g, 24);
  }

  bool is_integral() const {
    for (auto& t : terms_)
      if (!t.second.is_integer()) return false;
    return true;
  }

  Series truncated(Index p) const {
    Series s(std::min(p, prec_), disc_);
    for (auto& t : terms_)
      if (t.first < s.prec_) s.terms_.push_back(t);
    return s;
  }

  Series with_disc(long d) const {
    Series s = *this;
    s.disc_ = FieldElem::join(d, disc_);
    return s;
  }

  std::vector<Term>& mutable_terms() { return terms_; }

  void drop_zeros() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const Term& t) { return t.second.is_zero(); }),
                 terms_.end());
  }

 private:
  std::vector<Term> terms_;
  Index prec_ = kExact;
  long disc_ = 0;
};

inline Index sat_add(Index a, Index b) {
  if (a >= Series::kExact || b >= Series::kExact) return Series::kExact;
  return std::min(a + b, Series::kExact);
}

inline Index sat_mul(Index a, Index m) {
  if (a >= Series::kExact || a > Series::kExact / m) return Series::kExact;
  return a * m;
}

inline Series series_add(const Series& f, const Series& g) {
  long d = FieldElem::join(f.disc(), g.disc());
  Index p = std::min(f.prec(), g.prec());
  std::vector<Series::Term> out;
  out.reserve(f.size() + g.size());
  auto i = f.terms().begin(), j = g.terms().begin();
  while (i != f.terms().end() || j != g.terms().end()) {
    if (j == g.terms().end() || (i != f.terms().end() && i->first < j->first)) {
      if (i->first < p) out.push_back(*i);
      ++i;
    } else if (i == f.terms().end() || j->first < i->first) {
      if (j->first < p) out.push_back(*j);
      ++j;
    } else {
      if (i->first < p) out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  Series s(p, d);
  s.mutable_terms() = std::move(out);
  s.drop_zeros();
  return s;
}

inline Series series_scale(const Series& f, const FieldElem& c) {
  Series s(f.prec(), FieldElem::join(f.disc(), c.disc()));
  if (c.is_zero()) return s;
  for (auto& [n, a] : f.terms()) s.mutable_terms().emplace_back(n, a * c);
  return s;
}

inline Series series_neg(const Series& f) { return series_scale(f, FieldElem(-1L)); }

inline Series series_sub(const Series& f, const Series& g) {
  return series_add(f, series_neg(g));
}

inline Series series_mul(const Series& f, const Series& g) {
  long d = FieldElem::join(f.disc(), g.disc());
  Index p = std::min(sat_add(f.prec(), g.valuation()), sat_add(g.prec(), f.valuation()));
  if (f.is_zero() || g.is_zero()) return Series(p, d);
  Index base = f.valuation() + g.valuation();
  Index top = std::min(p, f.max_index() + g.max_index() + 1);
  if (base >= top) return Series(p, d);
  Index s = gcd_index(f.gap(), g.gap());
  if (s == 0) s = 1;
  std::size_t slots = static_cast<std::size_t>((top - base + s - 1) / s);
  Series out(p, d);
  auto& terms = out.mutable_terms();
  if (f.is_integral() && g.is_integral()) {
    std::vector<Integer> acc(slots);
    for (auto& [i, a] : f.terms()) {
      const mpz_srcptr az = a.a().get_num_mpz_t();
      for (auto& [j, b] : g.terms()) {
        if (i + j >= top) break;
        mpz_addmul(acc[(i + j - base) / s].get_mpz_t(), az, b.a().get_num_mpz_t());
      }
    }
    for (std::size_t k = 0; k < slots; ++k)
      if (sgn(acc[k])) terms.emplace_back(base + static_cast<Index>(k) * s, FieldElem(acc[k]));
    return out;
  }
  std::vector<FieldElem> acc(slots);
  for (auto& [i, a] : f.terms())
    for (auto& [j, b] : g.terms()) {
      if (i + j >= top) break;
      acc[(i + j - base) / s].addmul(a, b);
    }
  for (std::size_t k = 0; k < slots; ++k)
    if (!acc[k].is_zero()) terms.emplace_back(base + static_cast<Index>(k) * s, std::move(acc[k]));
  return out;
}

inline Series operator+(const Series& f, const Series& g) { return series_add(f, g); }
inline Series operator-(const Series& f, const Series& g) { return series_sub(f, g); }
inline Series operator-(const Series& f) { return series_neg(f); }
inline Series operator*(const Series& f, const Series& g) { return series_mul(f, g); }
inline Series operator*(const FieldElem& c, const Series& f) { return series_scale(f, c); }

namespace detail {

// dense coefficients of the unit part u (u_0 != 0) on the compressed grid of step s
inline std::vector<FieldElem> dense_unit(const Series& u, Index s, std::size_t n) {
  std::vector<FieldElem> out(n);
  for (auto& [i, c] : u.terms()) {
    std::size_t k = static_cast<std::size_t>(i / s);
    if (k < n) out[k] = c;
  }
  return out;
}

inline Series shift(const Series& f, Index by) {
  Series s(sat_add(f.prec(), by), f.disc());
  for (auto& [i, c] : f.terms()) s.mutable_terms().emplace_back(i + by, c);
  return s;
}

inline Series unshift(const Series& f, Index by) {
  Series s(f.prec() >= Series::kExact ? f.prec() : f.prec() - by, f.disc());
  for (auto& [i, c] : f.terms()) s.mutable_terms().emplace_back(i - by, c);
  return s;
}

// sparse (index, coefficient) pairs with nonzero index, compressed by s
struct SparseUnit {
  std::vector<std::pair<std::size_t, FieldElem>> fe;
  std::vector<std::pair<std::size_t, Integer>> zz;
  bool integral = false;
};

inline SparseUnit sparse_unit(const Series& u, Index s, std::size_t n) {
  SparseUnit out;
  out.integral = u.is_integral();
  for (auto& [i, c] : u.terms()) {
    std::size_t k = static_cast<std::size_t>(i / s);
    if (k == 0 || k >= n) continue;
    if (out.integral)
      out.zz.emplace_back(k, c.a().get_num());
    else
      out.fe.emplace_back(k, c);
  }
  return out;
}

}  // namespace detail

inline Series series_inv(const Series& f, Index target_prec) {
  if (f.is_zero()) throw DomainError("inverse of a zero series");
  if (f.valuation() != 0) throw DomainError("negative valuation in series inverse");
  Index p = std::min(target_prec, f.prec());
  if (p >= Series::kExact) throw PrecisionError("inverse needs a finite target precision");
  FieldElem u0 = f.terms().front().second;
  if (u0.is_zero() || u0.norm() == 0) throw DomainError("non-unit leading coefficient");
  Index s = f.gap();
  if (s == 0) return Series::from_terms({{0, u0.inverse()}}, p, f.disc());
  std::size_t n = static_cast<std::size_t>((p + s - 1) / s);
  auto sp = detail::sparse_unit(f, s, n);
  Series out(p, f.disc());
  auto& terms = out.mutable_terms();
  if (sp.integral && (u0 == FieldElem(1L) || u0 == FieldElem(-1L))) {
    long sign = u0 == FieldElem(1L) ? 1 : -1;
    std::vector<Integer> g(n);
    g[0] = sign;
    for (std::size_t k = 1; k < n; ++k) {
      Integer acc;
      for (auto& [j, c] : sp.zz) {
        if (j > k) break;
        mpz_addmul(acc.get_mpz_t(), c.get_mpz_t(), g[k - j].get_mpz_t());
      }
      g[k] = sign == 1 ? Integer(-acc) : acc;
    }
    for (std::size_t k = 0; k < n; ++k)
      if (sgn(g[k])) terms.emplace_back(static_cast<Index>(k) * s, FieldElem(g[k]));
    return out;
  }
  if (sp.integral)
    for (auto& [j, c] : sp.zz) sp.fe.emplace_back(j, FieldElem(c));
  FieldElem inv0 = u0.inverse();
  std::vector<FieldElem> g(n);
  g[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    FieldElem acc;
    for (auto& [j, c] : sp.fe) {
      if (j > k) break;
      acc.addmul(c, g[k - j]);
    }
    g[k] = -(acc * inv0);
  }
  for (std::size_t k = 0; k < n; ++k)
    if (!g[k].is_zero()) terms.emplace_back(static_cast<Index>(k) * s, std::move(g[k]));
  return out;
}

// num/den; the leading monomials are factored out before inverting
inline Series series_div(const Series& num, const Series& den, Index target_prec) {
  if (den.is_zero()) throw DomainError("division by a zero series");
  Index vd = den.valuation();
  if (num.is_zero()) {
    if (num.prec() < vd) throw DomainError("negative valuation in quotient");
    return Series(std::min(target_prec, sat_add(num.prec(), -vd)), num.disc());
  }
  Index vn = num.valuation();
  if (vn < vd) throw DomainError("negative valuation in quotient");
  Series u = detail::unshift(den, vd);
  Series n = detail::unshift(num, vn);
  Index rel = std::min({n.prec(), u.prec(), sat_add(target_prec, vd - vn)});
  Series q = series_mul(n, series_inv(u, rel)).truncated(rel);
  return detail::shift(q, vn - vd);
}

// f^e for e >= 0; inexact inputs use the power recurrence f g' = e f' g
inline Series series_pow(const Series& f, long e) {
  if (e < 0) throw DomainError("series_pow needs a non-negative exponent; use series_inv");
  if (e == 0) return Series::constant(FieldElem(1L)).with_disc(f.disc());
  if (e == 1) return f;
  if (f.is_zero()) return Series(sat_mul(f.prec(), e), f.disc());
  Index v = f.valuation();
  if (f.is_exact() || f.gap() == 0) {
    Series r = Series::constant(FieldElem(1L)), b = f;
    long k = e;
    while (k) {
      if (k & 1) r = r * b;
      k >>= 1;
      if (k) b = b * b;
    }
    return r;
  }
  Series u = detail::unshift(f, v);
  Index rel = u.prec();
  Index s = u.gap();
  std::size_t n = static_cast<std::size_t>((rel + s - 1) / s);
  auto sp = detail::sparse_unit(u, s, n);
  FieldElem u0 = u.terms().front().second;
  Series out(sat_add(sat_mul(v, e), rel), f.disc());
  auto& terms = out.mutable_terms();
  Index shift = v * e;
  if (sp.integral && (u0 == FieldElem(1L) || u0 == FieldElem(-1L))) {
    bool neg = u0 == FieldElem(-1L);
    std::vector<Integer> g(n);
    g[0] = (neg && (e & 1)) ? -1 : 1;
    Integer w;
    for (std::size_t k = 1; k < n; ++k) {
      Integer acc;
      for (auto& [j, c] : sp.zz) {
        if (j > k) break;
        w = static_cast<long>((e + 1) * static_cast<long>(j)) - static_cast<long>(k);
        w *= c;
        mpz_addmul(acc.get_mpz_t(), w.get_mpz_t(), g[k - j].get_mpz_t());
      }
      mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), k);
      g[k] = neg ? Integer(-acc) : acc;
    }
    for (std::size_t k = 0; k < n; ++k)
      if (sgn(g[k])) terms.emplace_back(static_cast<Index>(k) * s + shift, FieldElem(g[k]));
    return out;
  }
  if (sp.integral)
    for (auto& [j, c] : sp.zz) sp.fe.emplace_back(j, FieldElem(c));
  FieldElem inv0 = u0.inverse();
  std::vector<FieldElem> g(n);
  g[0] = fpow(u0, e);
  for (std::size_t k = 1; k < n; ++k) {
    FieldElem acc;
    for (auto& [j, c] : sp.fe) {
      if (j > k) break;
      acc.addmul(c * FieldElem(static_cast<long>((e + 1) * static_cast<long>(j)) -
                               static_cast<long>(k)),
                 g[k - j]);
    }
    g[k] = acc * inv0 * FieldElem(Rational(1, static_cast<unsigned long>(k)));
  }
  for (std::size_t k = 0; k < n; ++k)
    if (!g[k].is_zero()) terms.emplace_back(static_cast<Index>(k) * s + shift, std::move(g[k]));
  return out;
}

inline Series op_V(const Series& f, Index m) {
  if (m < 1) throw DomainError("V_m needs m >= 1");
  Series s(sat_mul(f.prec(), m), f.disc());
  for (auto& [i, c] : f.terms()) s.mutable_terms().emplace_back(i * m, c);
  return s;
}

// U_m on a grid of unit u: index u*j -> u*(j/m) for m | j
inline Series op_U(const Series& f, Index m, Index unit = 1) {
  if (m < 1 || unit < 1) throw DomainError("U_m needs m >= 1 and a positive grid unit");
  Index known = (f.prec() + unit - 1) / unit;
  Index p = f.is_exact() ? f.prec() : unit * ((known + m - 1) / m);
  Series s(p, f.disc());
  for (auto& [i, c] : f.terms()) {
    if (i % unit) throw DomainError("index " + std::to_string(i) + " off the grid of unit " +
                                    std::to_string(unit));
    Index j = i / unit;
    if (j % m == 0 && unit * (j / m) < p) s.mutable_terms().emplace_back(unit * (j / m), c);
  }
  return s;
}

inline Series op_twist(const Series& f, const RealChar& psi, Index stride) {
  Series s(f.prec(), f.disc());
  for (auto& [i, c] : f.terms()) {
    if (i % stride)
      throw DomainError("index " + std::to_string(i) + " not divisible by stride " +
                        std::to_string(stride));
    int v = psi(i / stride);
    if (v == 1)
      s.mutable_terms().emplace_back(i, c);
    else if (v == -1)
      s.mutable_terms().emplace_back(i, -c);
  }
  return s;
}

inline Series op_theta(const Series& f) {
  Series s(f.prec(), f.disc());
  for (auto& [i, c] : f.terms())
    if (i) s.mutable_terms().emplace_back(i, c * FieldElem(make_rational(i, 24)));
  return s;
}

inline Series op_sieve(const Series& f, Index a, Index b, Index stride) {
  Series s(f.prec(), f.disc());
  Index r = ((a % b) + b) % b;
  for (auto& [i, c] : f.terms()) {
    if (i % stride)
      throw DomainError("index " + std::to_string(i) + " not divisible by stride " +
                        std::to_string(stride));
    if ((i / stride) % b == r) s.mutable_terms().emplace_back(i, c);
  }
  return s;
}

inline Rational gen_binomial(const Rational& x, long j) {
  if (j < 0) return Rational(0);
  Rational r(1);
  for (long i = 0; i < j; ++i) r *= (x - i) / Rational(i + 1);
  return r;
}

inline Series op_rankin_cohen(const Series& f, const Rational& k1, const Series& g,
                              const Rational& k2, long w) {
  std::vector<Series> tf{f}, tg{g};
  for (long r = 1; r <= w; ++r) {
    tf.push_back(op_theta(tf.back()));
    tg.push_back(op_theta(tg.back()));
  }
  std::optional<Series> acc;
  for (long r = 0; r <= w; ++r) {
    Rational c = gen_binomial(w + k1 - 1, w - r) * gen_binomial(w + k2 - 1, r);
    if (r % 2) c = -c;
    Series term = series_scale(tf[r] * tg[w - r], FieldElem(c));
    acc = acc ? *acc + term : term;
  }
  return *acc;
}

inline std::complex<double> eval_numeric(const Series& f, std::complex<double> z) {
  if (z.imag() <= 0) throw DomainError("evaluation point must lie in the upper half-plane");
  const double pi = std::acos(-1.0);
  double aq = std::exp(-2 * pi * z.imag());
  if (!f.is_exact()) {
    double tail = std::pow(aq, static_cast<double>(f.prec()) / 24) / (1 - aq);
    if (!(tail < 1e-12)) throw PrecisionError("insufficient precision for numeric evaluation");
  }
  std::complex<double> sum = 0;
  double rd = f.disc() ? std::sqrt(std::abs(static_cast<double>(f.disc()))) : 0;
  std::complex<double> root = f.disc() < 0 ? std::complex<double>(0, rd) : rd;
  for (auto& [i, c] : f.terms()) {
    std::complex<double> coef = c.a().get_d() + c.b().get_d() * root;
    sum += coef * std::exp(std::complex<double>(0, 2 * pi / 24 * static_cast<double>(i)) * z);
  }
  return sum;
}

// first index < bound where f and g differ
inline std::optional<Index> first_mismatch(const Series& f, const Series& g, Index bound) {
  if (bound > f.prec() || bound > g.prec())
    throw PrecisionError("comparison bound beyond precision");
  auto i = f.terms().begin(), j = g.terms().begin();
  while (true) {
    Index a = i == f.terms().end() ? Series::kExact : i->first;
    Index b = j == g.terms().end() ? Series::kExact : j->first;
    Index k = std::min(a, b);
    if (k >= bound) return std::nullopt;
    if (a != b || !(i->second == j->second)) return k;
    ++i;
    ++j;
  }
}

inline bool equal_through(const Series& f, const Series& g, Index bound) {
  return !first_mismatch(f, g, bound).has_value();
}

inline std::string prec_str(Index p) { return p >= Series::kExact ? "inf" : std::to_string(p); }

inline std::string dump(const Series& f) {
  std::ostringstream os;
  os << "prec=" << prec_str(f.prec()) << " stride=" << f.stride() << " disc=" << f.disc()
     << "\n";
  for (auto& [i, c] : f.terms()) os << i << "/24\t" << c.str() << "\n";
  return os.str();
}

inline Series parse_dump(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  std::getline(is, header);
  std::string ps, ss, ds;
  std::istringstream hs(header);
  hs >> ps >> ss >> ds;
  if (ps.rfind("prec=", 0) != 0 || ds.rfind("disc=", 0) != 0)
    throw ParseError("bad series header", 0);
  std::string pv = ps.substr(5);
  Index prec = pv == "inf" ? Series::kExact : std::stoll(pv);
  long disc = std::stol(ds.substr(5));
  std::vector<Series::Term> terms;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    auto slash = line.find("/24");
    if (tab == std::string::npos || slash == std::string::npos || slash > tab)
      throw ParseError("bad series line " + std::to_string(lineno), 0);
    terms.emplace_back(std::stoll(line.substr(0, slash)), parse_field_elem(line.substr(tab + 1)));
  }
  return Series::from_terms(std::move(terms), prec, disc);
}

}  // namespace qlift
