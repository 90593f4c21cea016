#pragma once

#include <functional>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "forms.hpp"
#include "hecke.hpp"
#include "report.hpp"

namespace qlift {

enum class LiftVariant { theta, eta24, eta8 };

inline const char* variant_name(LiftVariant v) {
  switch (v) {
    case LiftVariant::theta:
      return "theta";
    case LiftVariant::eta24:
      return "eta24";
    case LiftVariant::eta8:
      return "eta8";
  }
  return "?";
}

inline LiftVariant parse_variant(const std::string& s) {
  if (s == "theta") return LiftVariant::theta;
  if (s == "eta24") return LiftVariant::eta24;
  if (s == "eta8") return LiftVariant::eta8;
  throw ParseError("unknown lift variant '" + s + "'", 0);
}

struct LiftSpec {
  long t = 1;
  long kappa = 0;
  RealChar chi;
  LiftVariant variant = LiftVariant::eta24;

  // throws on a non-square-free t; returns warnings
  std::vector<std::string> validate() const {
    if (t < 1 || !is_squarefree(t)) throw DomainError("t = " + std::to_string(t) + " is not square-free");
    std::vector<std::string> w;
    if (kappa < 2) w.push_back("kappa < 2 is outside the supported range");
    return w;
  }
};

namespace detail {

inline Index lift_rows(Index prec, Index step) {
  if (prec >= Series::kExact) throw PrecisionError("lift needs a finite input precision");
  Index n = 0;
  while (step * (n + 1) * (n + 1) < prec) ++n;
  return n;
}

inline FieldElem pow_d(Index d, long e) {
  return FieldElem(rpow(Rational(static_cast<long>(d)), e));
}

inline void check_eta_support(const Series& f, LiftVariant v) {
  if (f.is_zero()) return;
  Index first = f.terms().front().first;
  for (auto& [i, c] : f.terms())
    if ((i - first) % 24) throw DomainError("support spans several residue classes mod 24");
  Index r = first % 24;
  if (v == LiftVariant::eta24 && std::gcd(r, Index(6)) != 1)
    throw DomainError("eta24 lift needs support on a class coprime to 6, got " + std::to_string(r));
  if (v == LiftVariant::eta8 && (r % 3 != 0 || (r / 3) % 2 == 0))
    throw DomainError("eta8 lift needs support on 3*(odd) mod 24, got " + std::to_string(r));
}

}  // namespace detail

// A_t(n) = sum_{d|n} chi(d) (-1/d)^k (t/d) d^{k-1} a(t n^2/d^2)
inline Series sh_theta(const Series& f, const LiftSpec& spec) {
  spec.validate();
  detail::require_integer_grid(f);
  Index N = detail::lift_rows(f.prec(), 24 * spec.t);
  std::vector<Series::Term> terms;
  for (Index n = 1; n <= N; ++n) {
    FieldElem s;
    for (Index d : divisors(n)) {
      int c = spec.chi(d) * kronecker(spec.t, static_cast<long>(d));
      if (spec.kappa % 2 && kronecker(-1, static_cast<long>(d)) == -1) c = -c;
      if (!c) continue;
      Index m = n / d;
      FieldElem a = f.coeff(24 * spec.t * m * m);
      if (!a.is_zero()) s += FieldElem(long(c)) * detail::pow_d(d, spec.kappa - 1) * a;
    }
    if (!s.is_zero()) terms.emplace_back(24 * n, s);
  }
  return Series::from_terms(std::move(terms), 24 * (N + 1), f.disc());
}

// B_t(n) = sum_{d|n} chi(d) (d/t) (12/(n/d)) d^{k-1} a(t n^2/d^2), or (-4/.) on the 1/8 grid
inline Series s_eta(const Series& f, const LiftSpec& spec) {
  if (spec.variant == LiftVariant::theta) return sh_theta(f, spec);
  spec.validate();
  detail::check_eta_support(f, spec.variant);
  Index mult = spec.variant == LiftVariant::eta24 ? 1 : 3;
  long symtop = spec.variant == LiftVariant::eta24 ? 12 : -4;
  Index N = detail::lift_rows(f.prec(), mult * spec.t);
  std::vector<Series::Term> terms;
  for (Index n = 1; n <= N; ++n) {
    FieldElem s;
    for (Index d : divisors(n)) {
      Index m = n / d;
      int c = spec.chi(d) * kronecker(static_cast<long>(d), spec.t) * kronecker(symtop, static_cast<long>(m));
      if (!c) continue;
      FieldElem a = f.coeff(mult * spec.t * m * m);
      if (!a.is_zero()) s += FieldElem(long(c)) * detail::pow_d(d, spec.kappa - 1) * a;
    }
    if (!s.is_zero()) terms.emplace_back(24 * n, s);
  }
  return Series::from_terms(std::move(terms), 24 * (N + 1), f.disc());
}

// g(z)g(6z) - g(2z)g(3z)
inline Series G_eta_r(const Series& g) {
  return op_V(g, 1) * op_V(g, 6) - op_V(g, 2) * op_V(g, 3);
}

// g(2z) Theta(g(z)) - g(z) Theta(g(2z))
inline Series G_eta_3r(const Series& g) {
  Series g2 = op_V(g, 2);
  return g2 * op_theta(g) - g * op_theta(g2);
}

enum class PipelineMode { eta_r, eta_3r };
enum class PipelinePath { direct, eigenbasis };

struct PipelineInput {
  long r = 1;
  PipelineMode mode = PipelineMode::eta_r;
  std::function<Series(Index)> f;  // integer-grid input form built to a grid precision
  long f_weight2 = 0;
  RealChar f_char;
  std::function<std::vector<Series>(Index)> basis;  // eigenbasis g_i, optional
};

struct PipelineResult {
  std::optional<Series> direct;
  std::optional<Series> eigen;
  std::vector<FieldElem> alpha;
  std::optional<Index> disagreement;
  Index agreement_bound = 0;
};

inline void check_pipeline_r(const PipelineInput& in) {
  static const long eta_r_ok[] = {1, 5, 7, 11, 13, 17, 19, 23};
  static const long eta_3r_ok[] = {1, 3, 5, 7};
  bool ok = false;
  if (in.mode == PipelineMode::eta_r) {
    for (long v : eta_r_ok) ok = ok || v == in.r;
  } else {
    for (long v : eta_3r_ok) ok = ok || v == in.r;
  }
  if (!ok) throw DomainError("r = " + std::to_string(in.r) + " not covered by this pipeline mode");
}

// character and kappa of the U_r image
inline LiftSpec pipeline_lift_spec(const PipelineInput& in) {
  LiftSpec spec;
  long w2 = (in.mode == PipelineMode::eta_r ? in.r : 3 * in.r) + in.f_weight2;
  spec.kappa = (w2 - 1) / 2;
  spec.t = 1;
  spec.chi = in.r > 1 ? in.f_char * RealChar::jacobi(in.r) : in.f_char;
  spec.variant = in.mode == PipelineMode::eta_r ? LiftVariant::eta24 : LiftVariant::eta8;
  return spec;
}

// S_1((eta^{r or 3r} f) | U_r)
inline Series pipeline_direct(const PipelineInput& in, Index prec_out) {
  check_pipeline_r(in);
  Index N = std::max<Index>(1, (prec_out + 23) / 24 - 1);
  bool three = in.mode == PipelineMode::eta_3r;
  Index mult = three ? 3 : 1;
  Index pin = in.r * mult * N * N + 1;
  long power = three ? 3 * in.r : in.r;
  Series F = eta_quotient_series(EtaQuotient{{1, power}}, pin) * in.f(pin);
  Series G = op_U(F, in.r, three ? 3 : 1);
  return s_eta(G, pipeline_lift_spec(in));
}

// (eta^{r}/eta(rz) f | U_r) or (eta^{3r}/eta^3(rz) f | U_r) on the integer grid
inline Series pipeline_target(const PipelineInput& in, Index prec) {
  bool three = in.mode == PipelineMode::eta_3r;
  long a = three ? 3 * in.r : in.r, b = three ? -3 : -1;
  Index pin = in.r * prec;
  EtaQuotient q = in.r == 1 ? EtaQuotient{{1, a + b}} : EtaQuotient{{1, a}, {in.r, b}};
  Series F = eta_quotient_series(q, pin) * in.f(pin);
  return op_U(F, in.r, 24);
}

inline PipelineResult run_pipeline(const PipelineInput& in, Index prec_out, bool want_direct,
                                   bool want_eigen) {
  check_pipeline_r(in);
  PipelineResult res;
  std::future<Series> direct;
  if (want_direct)
    direct = std::async(std::launch::async, [&] { return pipeline_direct(in, prec_out); });
  if (want_eigen) {
    if (!in.basis) throw DomainError("eigenbasis path needs a basis");
    Index P = std::max<Index>(prec_out, 24 * 12);
    std::vector<Series> basis = in.basis(P);
    Series target = pipeline_target(in, P);
    res.alpha = decompose_in_basis(target, basis);
    std::optional<Series> acc;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (res.alpha[i].is_zero()) continue;
      Series G = in.mode == PipelineMode::eta_r ? G_eta_r(basis[i]) : G_eta_3r(basis[i]);
      Series term = series_scale(G, res.alpha[i]);
      acc = acc ? *acc + term : term;
    }
    res.eigen = (acc ? *acc : Series(P)).truncated(prec_out);
  }
  if (want_direct) res.direct = direct.get();
  if (res.direct && res.eigen) {
    Index b = std::min(res.direct->prec(), res.eigen->prec());
    res.disagreement = first_mismatch(*res.direct, *res.eigen, b);
    res.agreement_bound = res.disagreement ? *res.disagreement : b;
  }
  return res;
}

inline Series s_r_pipeline(const PipelineInput& in, PipelinePath path, Index prec_out) {
  auto res = run_pipeline(in, prec_out, path == PipelinePath::direct,
                          path == PipelinePath::eigenbasis);
  return path == PipelinePath::direct ? *res.direct : *res.eigen;
}

// Sh_t(f(24z)) against S_t(f) (x) (12/.), or Sh_t(f(8z)) against S_t(f) (x) (-4/.)
inline CheckReport lift_relation_check(const Series& f, const LiftSpec& spec) {
  Stopwatch sw;
  bool e24 = spec.variant == LiftVariant::eta24;
  if (spec.variant == LiftVariant::theta) throw DomainError("lift_relation_check needs an eta variant");
  Series rhs = op_twist(s_eta(f, spec), e24 ? RealChar(12) : RealChar(-4), 24);
  LiftSpec th = spec;
  th.variant = LiftVariant::theta;
  th.chi = spec.chi * (e24 ? RealChar(12) : RealChar(1, 2));
  Series lhs = sh_theta(op_V(f, e24 ? 24 : 8), th);
  auto rep = compare_report("liftrel:" + std::string(variant_name(spec.variant)) + ":t=" +
                                std::to_string(spec.t),
                            "lift relation", lhs, rhs);
  rep.millis = sw.millis();
  return rep;
}

}  // namespace qlift
