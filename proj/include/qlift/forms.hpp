#pragma once

#include <array>
#include <cctype>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "chars.hpp"
#include "qseries.hpp"

namespace qlift {

// eta(z) = sum_{n>0} (12/n) q^{n^2/24}
inline Series eta_series(Index prec) {
  std::vector<Series::Term> terms;
  for (Index n = 1; n * n < prec; ++n)
    if (std::gcd(n, Index(6)) == 1) terms.emplace_back(n * n, FieldElem(long(kronecker(12, n))));
  return Series::from_terms(std::move(terms), prec);
}

// prod (1 - q^n) = sum (-1)^k q^{k(3k-1)/2}, integer exponents on the 1/24 grid
inline Series pentagonal_series(Index prec) {
  std::vector<Series::Term> terms;
  for (Index k = 0;; ++k) {
    Index e1 = 24 * (k * (3 * k - 1) / 2), e2 = 24 * (k * (3 * k + 1) / 2);
    if (e1 >= prec) break;
    FieldElem c((k % 2) ? -1L : 1L);
    terms.emplace_back(e1, c);
    if (k && e2 < prec) terms.emplace_back(e2, c);
  }
  return Series::from_terms(std::move(terms), prec);
}

struct EtaQuotient {
  std::vector<std::pair<long, long>> factors;  // (delta, r_delta)

  EtaQuotient() = default;
  EtaQuotient(std::initializer_list<std::pair<long, long>> fs) : factors(fs) { normalize(); }
  explicit EtaQuotient(std::vector<std::pair<long, long>> fs) : factors(std::move(fs)) {
    normalize();
  }

  void normalize() {
    std::map<long, long> m;
    for (auto [d, r] : factors) {
      if (d < 1) throw DomainError("eta dilation must be positive");
      m[d] += r;
    }
    factors.clear();
    for (auto [d, r] : m)
      if (r) factors.emplace_back(d, r);
  }

  long weight2() const {
    long s = 0;
    for (auto [d, r] : factors) s += r;
    return s;
  }

  // grid index of the leading term, sum delta*r
  long order_index() const {
    long s = 0;
    for (auto [d, r] : factors) s += d * r;
    return s;
  }

  long natural_level() const {
    long n = 1;
    for (auto [d, r] : factors) n = lcm_index(n, d);
    return n;
  }

  EtaQuotient operator*(const EtaQuotient& o) const {
    auto fs = factors;
    fs.insert(fs.end(), o.factors.begin(), o.factors.end());
    return EtaQuotient(fs);
  }

  std::string str() const {
    std::string s;
    for (auto [d, r] : factors) {
      if (!s.empty()) s += "*";
      s += "eta(" + std::to_string(d) + ")^" + std::to_string(r);
    }
    return s.empty() ? "1" : s;
  }

  friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;
};

// "eta(1)^15*eta(5)^-3"
inline EtaQuotient parse_eta_quotient(const std::string& s) {
  std::vector<std::pair<long, long>> fs;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto integer = [&]() -> long {
    skip();
    std::size_t st = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (digits == i) throw ParseError("expected integer", st);
    return std::stol(s.substr(st, i - st));
  };
  while (true) {
    skip();
    if (s.compare(i, 4, "eta(") != 0) throw ParseError("expected eta(", i);
    i += 4;
    long d = integer();
    skip();
    if (i >= s.size() || s[i] != ')') throw ParseError("expected )", i);
    ++i;
    skip();
    long r = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      r = integer();
    }
    if (d < 1) throw ParseError("dilation must be positive", i);
    fs.emplace_back(d, r);
    skip();
    if (i >= s.size()) break;
    if (s[i] != '*') throw ParseError("expected *", i);
    ++i;
  }
  return EtaQuotient(fs);
}

inline Series eta_quotient_series(const EtaQuotient& e, Index prec) {
  Index v = e.order_index();
  if (v < 0) throw DomainError("negative valuation: eta quotient " + e.str());
  if (v >= prec) return Series(prec);
  Index rel = prec - v;
  Series pent = pentagonal_series(rel);
  Series num = Series::constant(FieldElem(1L)), den = Series::constant(FieldElem(1L));
  for (auto [d, r] : e.factors) {
    Series pd = op_V(pent, d).truncated(rel);
    Series pw = series_pow(pd, r > 0 ? r : -r);
    if (r > 0)
      num = (num * pw).truncated(rel);
    else
      den = (den * pw).truncated(rel);
  }
  Series unit = den.is_exact() ? num : series_mul(num, series_inv(den, rel));
  unit = unit.truncated(rel);
  Series out(prec);
  for (auto& [i, c] : unit.terms()) out.mutable_terms().emplace_back(i + v, c);
  return out;
}

struct FormMeta {
  long weight2 = 0;
  long level = 1;
  RealChar character;
  long eta_power = 0;
  bool ghn_ok = true;

  bool half_integral() const { return weight2 % 2 != 0; }
};

inline FormMeta ghn_meta(const EtaQuotient& e, long level) {
  FormMeta m;
  m.weight2 = e.weight2();
  m.level = level;
  long s1 = e.order_index();
  long s2 = 0;
  for (auto [d, r] : e.factors) {
    if (level % d) throw DomainError("dilation " + std::to_string(d) + " does not divide level");
    s2 += (level / d) * r;
  }
  m.eta_power = ((s1 % 24) + 24) % 24;
  long sq = 1;
  for (auto [d, r] : e.factors)
    if (r % 2) sq *= d;
  if (m.weight2 % 2 == 0) {
    long k = m.weight2 / 2;
    m.ghn_ok = s1 % 24 == 0 && s2 % 24 == 0;
    m.character = RealChar((k % 2 ? -1 : 1), 1) * RealChar(sq, level);
  } else {
    // half-integral: report the square's character; the multiplier lives in eta_power
    m.ghn_ok = (2 * s1) % 24 == 0 && (2 * s2) % 24 == 0;
    m.character = RealChar(-1, level);
  }
  return m;
}

inline Rational cusp_order(const EtaQuotient& e, long level, long d) {
  if (d < 1 || level % d) throw DomainError("cusp denominator must divide the level");
  Rational s;
  for (auto [delta, r] : e.factors) {
    long g = std::gcd(d, delta);
    s += Rational(g * g * r, delta);
  }
  s /= 24;
  s.canonicalize();
  return s;
}

inline long denominator_D(const EtaQuotient& e, long level = 0) {
  if (level == 0) level = e.natural_level();
  long D = 1;
  for (long d : divisors(level)) D = lcm_index(D, cusp_order(e, level, d).get_den().get_si());
  return D;
}

// nu_eta(gamma) = e(x/24); returns x mod 24
inline long eta_multiplier_nu(long a, long b, long c, long d) {
  if (a * d - b * c != 1) throw DomainError("matrix is not unimodular");
  auto mod24 = [](long x) { return ((x % 24) + 24) % 24; };
  if (c < 0) return mod24(6 + eta_multiplier_nu(-a, -b, -c, -d));
  if (c == 0) return d == 1 ? mod24(b) : mod24(18 - b);
  long x;
  if (c % 2) {
    x = (a + d) * c - b * d * (c * c - 1) - 3 * c;
    if (kronecker(d, c) == -1) x += 12;
  } else {
    x = (a + d) * c - b * d * (c * c - 1) + 3 * d - 3 - 3 * c * d;
    if (kronecker(c, d < 0 ? -d : d) == -1) x += 12;
  }
  return mod24(x);
}

struct ThetaEntry {
  std::string id;  // "even:1".."even:6", "odd:1".."odd:6"
  long D;
  RealChar chi;
  int nu;
  long level;
  RealChar psi;
  long r;
  std::optional<EtaQuotient> eta;
  std::string label;
};

inline const std::vector<ThetaEntry>& theta_table() {
  static const std::vector<ThetaEntry> rows = {
      {"even:1", 8, RealChar(1, 2), 0, 8, RealChar(-4), 3, EtaQuotient{{1, -1}, {2, 2}},
       "eta^2(2z)/eta(z)"},
      {"even:2", 8, RealChar(8), 0, 32, RealChar(-8), 3, EtaQuotient{{1, 1}, {2, -1}, {4, 1}},
       "eta(z)eta(4z)/eta(2z)"},
      {"even:3", 24, RealChar(12), 0, 1, RealChar(), 1, EtaQuotient{{1, 1}}, "eta(z)"},
      {"even:4", 24, RealChar(24), 0, 32, RealChar(8), 1, EtaQuotient{{1, -1}, {2, 3}, {4, -1}},
       "eta^3(2z)/(eta(z)eta(4z))"},
      {"even:5", 24, RealChar(1, 6), 0, 144, RealChar(12), 1,
       EtaQuotient{{1, -1}, {2, 1}, {3, 2}, {6, -1}}, "eta(2z)eta^2(3z)/(eta(z)eta(6z))"},
      {"even:6", 24, RealChar(8, 3), 0, 288, RealChar(24), 1,
       EtaQuotient{{1, 1}, {2, -2}, {3, -2}, {4, 1}, {6, 5}, {12, -2}},
       "eta(z)eta(4z)eta^5(6z)/(eta^2(2z)eta^2(3z)eta^2(12z))"},
      {"odd:1", 8, RealChar(-4), 1, 1, RealChar(), 3, EtaQuotient{{1, 3}}, "eta^3(z)"},
      {"odd:2", 8, RealChar(-8), 1, 32, RealChar(8), 3, EtaQuotient{{1, -3}, {2, 9}, {4, -3}},
       "eta^9(2z)/(eta^3(z)eta^3(4z))"},
      {"odd:3", 24, RealChar(-3, 2), 1, 8, RealChar(-4), 1, EtaQuotient{{1, 5}, {2, -2}},
       "eta^5(z)/eta^2(2z)"},
      {"odd:4", 24, RealChar(-24), 1, 32, RealChar(-8), 1,
       EtaQuotient{{1, -5}, {2, 13}, {4, -5}}, "eta^13(2z)/(eta^5(z)eta^5(4z))"},
      {"odd:5", 8, RealChar(-4, 3), 1, 9, RealChar(), 3, std::nullopt, "eta^3(z)+3eta^3(9z)"},
      {"odd:6", 8, RealChar(-8, 3), 1, 288, RealChar(8), 3, std::nullopt,
       "eta^9(2z)/(eta^3(z)eta^3(4z))-3eta^9(18z)/(eta^3(9z)eta^3(36z))"},
  };
  return rows;
}

inline const ThetaEntry& theta_entry(const std::string& id) {
  for (auto& e : theta_table())
    if (e.id == id) return e;
  throw DomainError("unknown theta table row " + id);
}

// sum chi(n) n^nu q^{n^2/D}
inline Series theta_series_build(const ThetaEntry& e, Index prec) {
  if (e.D != 8 && e.D != 24) throw DomainError("unsupported theta denominator");
  Index scale = 24 / e.D;
  std::vector<Series::Term> terms;
  for (Index n = 1; scale * n * n < prec; ++n) {
    int c = e.chi(n);
    if (c) terms.emplace_back(scale * n * n, FieldElem(e.nu ? c * n : long(c)));
  }
  return Series::from_terms(std::move(terms), prec);
}

// the eta-side expansion of a table row
inline Series theta_row_eta_side(const ThetaEntry& e, Index prec) {
  if (e.eta) return eta_quotient_series(*e.eta, prec);
  if (e.id == "odd:5") {
    Series a = eta_quotient_series(EtaQuotient{{1, 3}}, prec);
    Series b = op_V(eta_quotient_series(EtaQuotient{{1, 3}}, (prec + 8) / 9), 9).truncated(prec);
    return a + series_scale(b, FieldElem(3L));
  }
  EtaQuotient q{{1, -3}, {2, 9}, {4, -3}};
  Series a = eta_quotient_series(q, prec);
  Series b = op_V(eta_quotient_series(q, (prec + 8) / 9), 9).truncated(prec);
  return a - series_scale(b, FieldElem(3L));
}

inline Rational bernoulli_Bk(long k) {
  static std::vector<Rational> cache{Rational(1)};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (k < 0) throw DomainError("negative Bernoulli index");
  while (static_cast<long>(cache.size()) <= k) {
    long m = static_cast<long>(cache.size());
    Rational s;
    Integer binom = 1;
    for (long j = 0; j < m; ++j) {
      s += Rational(binom) * cache[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    Rational b = -s / Rational(m + 1);
    b.canonicalize();
    cache.push_back(b);
  }
  return cache[k];
}

inline Rational bernoulli_poly_at(long k, const Rational& x) {
  Rational s;
  Integer binom = 1;
  for (long j = 0; j <= k; ++j) {
    s += Rational(binom) * bernoulli_Bk(j) * rpow(x, k - j);
    binom = binom * (k - j) / (j + 1);
  }
  return s;
}

inline Rational gen_bernoulli(long k, const RealChar& chi) {
  if (k < 1) throw DomainError("generalized Bernoulli needs k >= 1");
  long M = chi.modulus();
  Rational s;
  for (long a = 1; a <= M; ++a) {
    int c = chi(a);
    if (c) s += c * bernoulli_poly_at(k, Rational(a, M));
  }
  s *= rpow(Rational(M), k - 1);
  s.canonicalize();
  return s;
}

// L(1-k, chi)
inline Rational L_neg(long k, const RealChar& chi) {
  Rational r = -gen_bernoulli(k, chi) / Rational(k);
  r.canonicalize();
  return r;
}

// sum_{d|n} psi(n/d) phi(d) d^{k-1} q^n, constant L(1-k, phi)/2 when psi is trivial
inline Series eisenstein_pair(long k, const RealChar& psi, const RealChar& phi, Index prec,
                              bool* zero_space = nullptr) {
  int par = psi(-1) * phi(-1);
  bool empty = par != (k % 2 ? -1 : 1);
  if (zero_space) *zero_space = empty;
  if (empty) return Series(prec);
  std::vector<Series::Term> terms;
  if (psi.is_trivial()) terms.emplace_back(0, FieldElem(L_neg(k, phi) / 2));
  for (Index n = 1; 24 * n < prec; ++n) {
    Integer s;
    for (Index d : divisors(n)) {
      int c = psi(n / d) * phi(d);
      if (c) s += c * ipow(Integer(static_cast<long>(d)), k - 1);
    }
    terms.emplace_back(24 * n, FieldElem(s));
  }
  return Series::from_terms(std::move(terms), prec);
}

inline Series delta_series(Index prec) { return eta_quotient_series(EtaQuotient{{1, 24}}, prec); }

// classical E4 = 1 + 240 sum sigma_3(n) q^n, E6 = 1 - 504 sum sigma_5(n) q^n
inline Series e4_series(Index prec) {
  return series_scale(eisenstein_pair(4, RealChar(), RealChar(), prec), FieldElem(240L));
}

inline Series e6_series(Index prec) {
  return series_scale(eisenstein_pair(6, RealChar(), RealChar(), prec), FieldElem(-504L));
}

// Example 1 / Example 2 data
struct ExampleFixture {
  std::string name;
  long r;
  bool eta3r;  // mode: eta^{3r} (true) or eta^r
  long weight2_f;  // weight of the input f
  long disc;
  long basis_weight;  // weight of the g_i
  long level;
  std::array<EtaQuotient, 4> f;
  std::array<std::array<FieldElem, 4>, 4> g_in_f;  // g_i = sum_j g_in_f[i][j] f_j
  std::array<FieldElem, 4> alpha;  // printed decomposition constants
  std::string lmfdb_label;
  std::array<long, 5> printed;  // q..q^5 of the lift
};

inline const ExampleFixture& example_fixture(int which) {
  static const ExampleFixture ex1 = [] {
    ExampleFixture e;
    e.name = "ex1";
    e.r = 5;
    e.eta3r = false;
    e.weight2_f = 8;
    e.disc = -11;
    e.basis_weight = 6;
    e.level = 5;
    e.f = {EtaQuotient{{1, 15}, {5, -3}}, EtaQuotient{{1, 9}, {5, 3}}, EtaQuotient{{1, 3}, {5, 9}},
           EtaQuotient{{1, -3}, {5, 15}}};
    FieldElem s = FieldElem::sqrt_of(-11);
    e.g_in_f = {{{FieldElem(make_rational(-67, 5)), FieldElem(-200L), FieldElem(-625L), FieldElem()},
                 {FieldElem(), FieldElem(1L), FieldElem(9L) - FieldElem(2L) * s, FieldElem()},
                 {FieldElem(), FieldElem(1L), FieldElem(9L) + FieldElem(2L) * s, FieldElem()},
                 {FieldElem(), FieldElem(1L), FieldElem(40L), FieldElem(335L)}}};
    FieldElem alpha = FieldElem(make_rational(-3 * 625, 67)) *
                      (FieldElem(103L) + FieldElem(make_rational(3 * 283, 11)) * s);
    e.alpha = {FieldElem(make_rational(-5, 67)), alpha.conj(), alpha, FieldElem()};
    e.lmfdb_label = "6.12.a.a";
    e.printed = {1, -32, -243, 1024, 5766};
    return e;
  }();
  static const ExampleFixture ex2 = [] {
    ExampleFixture e;
    e.name = "ex2";
    e.r = 3;
    e.eta3r = true;
    e.weight2_f = 12;
    e.disc = -14;
    e.basis_weight = 9;
    e.level = 3;
    e.f = {EtaQuotient{{1, 27}, {3, -9}}, EtaQuotient{{1, 3}, {3, 15}},
           EtaQuotient{{1, 15}, {3, 3}}, EtaQuotient{{1, -9}, {3, 27}}};
    FieldElem s = FieldElem::sqrt_of(-14);
    e.g_in_f = {{{FieldElem(), FieldElem(270L), FieldElem(1L), FieldElem(7281L)},
                 {FieldElem(make_rational(809, 27)), FieldElem(2187L), FieldElem(810L), FieldElem()},
                 {FieldElem(), FieldElem(15L) - FieldElem(6L) * s, FieldElem(1L), FieldElem()},
                 {FieldElem(), FieldElem(15L) + FieldElem(6L) * s, FieldElem(1L), FieldElem()}}};
    FieldElem a3 = FieldElem(make_rational(5296914, 809)) -
                   FieldElem(make_rational(6348861, 809)) * s;
    e.alpha = {FieldElem(), FieldElem(make_rational(27, 809)), a3, a3.conj()};
    e.lmfdb_label = "2.20.a.a";
    e.printed = {1, -512, -13092, 262144, 6546750};
    return e;
  }();
  if (which == 1) return ex1;
  if (which == 2) return ex2;
  throw DomainError("unknown example " + std::to_string(which));
}

inline Series example_f(const ExampleFixture& e, int i, Index prec) {
  return eta_quotient_series(e.f.at(i), prec);
}

inline Series example_g(const ExampleFixture& e, int i, Index prec) {
  Series acc(prec, e.disc);
  for (int j = 0; j < 4; ++j) {
    const FieldElem& c = e.g_in_f.at(i)[j];
    if (!c.is_zero()) acc = acc + series_scale(example_f(e, j, prec), c);
  }
  return acc.with_disc(e.disc);
}

inline std::vector<Series> example_basis(const ExampleFixture& e, Index prec) {
  std::vector<Series> out;
  for (int i = 0; i < 4; ++i) out.push_back(example_g(e, i, prec));
  return out;
}

// "ex1.f0".."ex1.g4" style names; g indices are 1-based as printed
inline std::optional<Series> fixture_by_name(const std::string& name, Index prec) {
  if (name.size() != 6 || name.compare(0, 2, "ex") != 0 || name[3] != '.') return std::nullopt;
  int which = name[2] - '0';
  int idx = name[5] - '0';
  if (which != 1 && which != 2) return std::nullopt;
  const auto& e = example_fixture(which);
  if (name[4] == 'f' && idx >= 0 && idx < 4) return example_f(e, idx, prec);
  if (name[4] == 'g' && idx >= 1 && idx <= 4) return example_g(e, idx - 1, prec);
  return std::nullopt;
}

enum class UVOp { U_p, V_p, U_2, U_3, V_2, V_3, twist };

inline FormMeta uv_meta_transition(const FormMeta& m, UVOp op, long p) {
  FormMeta out = m;
  auto mod24 = [](long x) { return ((x % 24) + 24) % 24; };
  if (p == 1 && (op == UVOp::U_p || op == UVOp::V_p)) return out;
  switch (op) {
    case UVOp::U_p:
    case UVOp::V_p:
      if (p < 5 || !is_prime(p)) throw DomainError("U_p/V_p rule needs a prime p >= 5");
      out.level = op == UVOp::V_p ? m.level * p : m.level * p / std::gcd(m.level, p);
      out.character = m.character * RealChar::jacobi(p);
      out.eta_power = mod24(p * m.eta_power);
      return out;
    case UVOp::twist:
      if (p < 5 || !is_prime(p)) throw DomainError("twist rule needs a prime p >= 5");
      out.level = m.level * p * p;
      return out;
    case UVOp::U_3: {
      long r = m.eta_power;
      if (r % 3) throw DomainError("U_3 rule needs 3 | r");
      RealChar c3 = r % 2 ? m.character * RealChar::jacobi(3) : m.character;
      out.eta_power = mod24(3 * r);
      out.character = c3;
      if (m.level % 3)
        out.level = 3 * m.level;
      else if (m.level % 9)
        out.level = m.level;
      else
        out.level = m.level / 3;
      return out;
    }
    case UVOp::V_3: {
      long r = m.eta_power;
      out.character = r % 2 ? m.character * RealChar::jacobi(3) : m.character;
      out.eta_power = mod24(3 * r);
      out.level = (m.level % 3 == 0 || r % 3 == 0) ? 3 * m.level : 9 * m.level;
      return out;
    }
    case UVOp::V_2: {
      if (m.eta_power % 2) throw DomainError("V_2 rule needs an even eta power");
      long h = m.eta_power / 2;
      out.level = 8 * m.level / std::gcd(4L, m.level);
      out.character = h % 2 ? m.character * RealChar(-4) : m.character;
      out.eta_power = mod24(4 * h);
      return out;
    }
    case UVOp::U_2: {
      long r = m.eta_power;
      if (m.weight2 % 2) throw DomainError("U_2 rule needs integer weight");
      if (r % 2) throw DomainError("U_2 rule needs an even eta power");
      out.eta_power = mod24(2 * r);
      if (r % 16 == 0) {
        out.level = 2 * m.level;
      } else if (r % 4 == 0) {
        out.level = 4 * m.level;
      } else {
        out.level = 8 * m.level;
        out.character = (r / 2) % 2 ? m.character * RealChar(-4) : m.character;
      }
      return out;
    }
  }
  throw DomainError("uncovered operator");
}

}  // namespace qlift
