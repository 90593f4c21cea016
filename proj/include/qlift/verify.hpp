#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "forms.hpp"
#include "hecke.hpp"
#include "report.hpp"
#include "shimura.hpp"

namespace qlift {

// a normalized eigenform of level 1 used as the g input
struct Eigenform {
  std::string name;
  long weight = 0;
  long level = 1;
  RealChar chi;
  bool cusp = false;
  std::function<Series(Index)> build;
};

inline Eigenform eigenform(const std::string& name) {
  if (name == "delta") return {"delta", 12, 1, RealChar(), true, delta_series};
  if (name == "E4")
    return {"E4", 4, 1, RealChar(), false,
            [](Index p) { return eisenstein_pair(4, RealChar(), RealChar(), p); }};
  if (name == "E6")
    return {"E6", 6, 1, RealChar(), false,
            [](Index p) { return eisenstein_pair(6, RealChar(), RealChar(), p); }};
  throw DomainError("unknown eigenform '" + name + "'");
}

namespace detail {

inline Index out_rows(Index prec) { return std::max<Index>(1, prec / 24); }

inline std::string eigen_problem(const Eigenform& g) {
  Index P = 24 * 40;
  Series f = g.build(P);
  HeckeContext ctx(2 * g.weight, g.chi);
  std::vector<Series> imgs;
  for (long p : {2L, 3L, 5L}) imgs.push_back(hecke_Tp_int(f, ctx, p));
  auto ec = is_eigen_upto(f, imgs);
  if (!ec.ok) return g.name + " is not a Hecke eigenform (violation at " +
                     std::to_string(ec.violation.value_or(0)) + ")";
  if (f.coeff(24) != FieldElem(1L)) return g.name + " is not normalized";
  return {};
}

struct CaseRow {
  const char* id;
  const char* row;
};

inline const std::vector<CaseRow>& case_rows() {
  static const std::vector<CaseRow> rows = {
      {"1a", "even:3"}, {"1b", "even:2"}, {"1c", "even:1"}, {"1d", "even:5"}, {"1e", "even:4"},
      {"1f", "even:6"}, {"2a", "odd:1"},  {"2b", "odd:2"},  {"2c", "odd:3"},  {"2d", "odd:4"}};
  return rows;
}

inline const ThetaEntry& case_entry(const std::string& c) {
  for (auto& r : case_rows())
    if (c == r.id) return theta_entry(r.row);
  throw DomainError("unknown case '" + c + "'");
}

inline LiftVariant entry_variant(const ThetaEntry& e) {
  return e.D == 24 ? LiftVariant::eta24 : LiftVariant::eta8;
}

inline Index input_prec(const ThetaEntry& e, Index rows) {
  return (e.D == 24 ? 1 : 3) * rows * rows + 1;
}

// the dilations and twists shared by the right-hand sides
struct Pieces {
  Series g, g2, g3, g6, gt2, gt6, g3m4;
  long k;
  Pieces(const Series& gg, long kk)
      : g(gg),
        g2(op_V(gg, 2)),
        g3(op_V(gg, 3)),
        g6(op_V(gg, 6)),
        gt2(op_V(op_sieve(gg, 0, 2, 24), 2)),
        gt6(op_V(op_sieve(gg, 0, 2, 24), 6)),
        g3m4(op_twist(op_V(gg, 3), RealChar(-4), 24)),
        k(kk) {}
  Series tw(const Series& s, long top) const { return op_twist(s, RealChar(top), 24); }
  Series br(const Series& a, const Series& b, long w) const {
    return op_rankin_cohen(a, Rational(k), b, Rational(k), w);
  }
};

inline FieldElem fe(const Rational& r) { return FieldElem(r); }

inline Rational binom(long n, long r) {
  Integer c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return Rational(c);
}

// degree-W right-hand side with prefactor c1 on the first group and c2 on the second
inline Series bracket_rhs(const std::string& cs, const Pieces& P, long W, const Rational& c1,
                          const Rational& c2) {
  auto S = [](const Series& s, const Rational& c) { return series_scale(s, fe(c)); };
  auto two = FieldElem(2L);
  const char part = cs[0], letter = cs[1];
  if (part == '1') {
    switch (letter) {
      case 'a':
        return S(P.br(P.g6, P.g, W) - P.br(P.g3, P.g2, W), c1);
      case 'b':
        return S(P.tw(series_scale(P.br(P.gt2, P.g, W), two) - P.br(P.g2, P.g, W), -8), c1);
      case 'c':
        return S(P.tw(P.br(P.g2, P.g, W), -4), c1);
      case 'd':
        return S(P.tw(P.br(P.g6, P.g, W) + P.br(P.g3, P.g2, W), 12), c1);
      case 'e':
        return S(P.tw(series_scale(P.br(P.gt6, P.g, W), two) - P.br(P.g6, P.g, W), 8), c1) -
               S(P.tw(P.br(P.g3m4, P.g2, W), -8), c2);
      case 'f':
        return S(P.tw(series_scale(P.br(P.gt6, P.g, W), two) - P.br(P.g6, P.g, W), 24), c1) +
               S(P.tw(P.br(P.g3m4, P.g2, W), -24), c2);
    }
  } else {
    switch (letter) {
      case 'a':
        return S(P.br(P.g2, P.g, W), c1);
      case 'b':
        return S(P.tw(series_scale(P.br(P.gt2, P.g, W), two) - P.br(P.g2, P.g, W), 8), c1);
      case 'c':
        return S(P.tw(P.br(P.g6, P.g, W) + P.br(P.g3, P.g2, W), -4), c1);
      case 'd':
        return S(P.tw(series_scale(P.br(P.gt6, P.g, W), two) - P.br(P.g6, P.g, W), -8), c1) +
               S(P.tw(P.br(P.g3m4, P.g2, W), 8), c2);
    }
  }
  throw DomainError("unknown case '" + cs + "'");
}

// products and brackets of degree one, as printed for the w = 0 statement
inline Series t13_rhs(const std::string& cs, const Pieces& P) {
  if (cs[0] == '2') {
    Rational ik(1, P.k);
    return bracket_rhs(cs, P, 1, ik, ik);
  }
  auto two = FieldElem(2L);
  switch (cs[1]) {
    case 'a':
      return P.g * P.g6 - P.g2 * P.g3;
    case 'b':
      return P.tw(series_scale(P.g * P.gt2, two) - P.g * P.g2, -8);
    case 'c':
      return P.tw(P.g * P.g2, -4);
    case 'd':
      return P.tw(P.g * P.g6 + P.g2 * P.g3, 12);
    case 'e':
      return P.tw(series_scale(P.g * P.gt6, two) - P.g * P.g6, 8) - P.tw(P.g2 * P.g3m4, -8);
    case 'f':
      return P.tw(series_scale(P.g * P.gt6, two) - P.g * P.g6, 24) + P.tw(P.g2 * P.g3m4, -24);
  }
  throw DomainError("unknown case '" + cs + "'");
}

inline Series t13_lhs(const std::string& cs, const Eigenform& g, Index rows) {
  const ThetaEntry& e = case_entry(cs);
  Index pin = input_prec(e, rows);
  Series F = theta_row_eta_side(e, pin) * g.build(pin);
  LiftSpec spec{1, g.weight + (cs[0] == '2' ? 1 : 0), e.psi * g.chi, entry_variant(e)};
  return s_eta(F, spec);
}

template <class F>
CheckReport timed(F&& f) {
  Stopwatch sw;
  CheckReport r = f();
  r.millis = sw.millis();
  return r;
}

}  // namespace detail

inline CheckReport check_T13(const std::string& cs, const Eigenform& g, Index prec) {
  return detail::timed([&] {
    std::string id = "T13:" + cs + ":" + g.name;
    std::string inputs = "g=" + g.name + " prec=" + std::to_string(prec);
    detail::case_entry(cs);
    if (auto why = detail::eigen_problem(g); !why.empty()) return skipped_report(id, inputs, why);
    Index rows = detail::out_rows(prec);
    Series lhs = detail::t13_lhs(cs, g, rows);
    detail::Pieces P(g.build(24 * (rows + 1)), g.weight);
    Series rhs = detail::t13_rhs(cs, P);
    auto rep = compare_report(id, inputs, lhs, rhs);
    if (cs == "2a") {
      Series alt = P.g2 * op_theta(P.g) - P.g * op_theta(P.g2);
      bool same = !first_mismatch(alt, rhs, rep.bound);
      rep.note = same ? "bracket and theta-difference readings agree"
                      : "theta-difference reading differs from the bracket reading";
    }
    return rep;
  });
}

inline CheckReport check_T14(int part, const Eigenform& g, Index prec) {
  return detail::timed([&] {
    std::string id = "T14:" + std::to_string(part) + ":" + g.name;
    std::string inputs = "g=" + g.name + " prec=" + std::to_string(prec);
    if (part != 1 && part != 2) throw DomainError("part must be 1 or 2");
    if (part == 1 && std::gcd(g.level, 6L) != 1)
      return skipped_report(id, inputs, "level not coprime to 6");
    if (part == 2 && g.level % 2 == 0) return skipped_report(id, inputs, "level is even");
    if (auto why = detail::eigen_problem(g); !why.empty()) return skipped_report(id, inputs, why);
    Index rows = detail::out_rows(prec);
    bool one = part == 1;
    Index pin = (one ? 1 : 3) * rows * rows + 1;
    Series F = eta_quotient_series(EtaQuotient{{1, one ? 1 : 3}}, pin) * g.build(pin);
    long kappa = g.weight + (one ? 0 : 1);
    Series B = s_eta(F, {1, kappa, g.chi, one ? LiftVariant::eta24 : LiftVariant::eta8});
    Series gg = g.build(24 * (rows + 1));
    Series G = one ? G_eta_r(gg) : G_eta_3r(gg);
    auto rep = compare_report(id, inputs, B, G);
    if (!rep.passed()) return rep;

    // coefficient recursions and the U_2 relation on the lifted series
    long e2 = one ? g.weight - 1 : g.weight;
    Index N = B.prec() / 24;
    std::vector<std::string> bad;
    std::vector<long> primes = one ? std::vector<long>{2, 3} : std::vector<long>{2};
    for (long p : primes) {
      FieldElem lam = FieldElem(long(g.chi(p))) * detail::power_of(p, e2);
      for (long u = 1; u <= 3; ++u) {
        FieldElem lu = fpow(lam, u);
        Index pu = 1;
        for (long i = 0; i < u; ++i) pu *= p;
        for (Index m = 1; pu * m < N; ++m)
          if (B.int_coeff(pu * m) != lu * B.int_coeff(m)) {
            bad.push_back("recursion p=" + std::to_string(p) + " u=" + std::to_string(u) +
                          " m=" + std::to_string(m));
            break;
          }
      }
    }
    FieldElem lam2 = FieldElem(long(g.chi(2))) * detail::power_of(2, e2);
    Series U2 = op_U(B, 2, 24);
    if (auto miss = first_mismatch(U2, series_scale(B, lam2), U2.prec()))
      bad.push_back("U_2 relation at " + std::to_string(*miss));
    if (!bad.empty()) {
      rep.status = Status::fail;
      rep.reason = bad.front();
    } else {
      rep.note = one ? "recursions u,v<=3 and U_2 relation hold" : "recursions u<=3 and U_2 relation hold";
    }
    return rep;
  });
}

struct ExampleSel {
  std::string which;  // "ex1", "ex2" or "custom"
  long r = 1;
  std::string f;  // eigenform name for custom
};

inline ExampleSel parse_example(const std::string& s) {
  if (s == "ex1" || s == "ex2") return {s, 0, ""};
  // custom(r,f)
  if (s.rfind("custom(", 0) == 0 && s.back() == ')') {
    auto body = s.substr(7, s.size() - 8);
    auto comma = body.find(',');
    if (comma == std::string::npos) throw ParseError("custom(r,f) needs two arguments", 7);
    return {"custom", std::stol(body.substr(0, comma)), body.substr(comma + 1)};
  }
  throw ParseError("unknown example '" + s + "'", 0);
}

namespace detail {

inline bool alpha_equal(const std::vector<FieldElem>& a, const std::array<FieldElem, 4>& b) {
  for (std::size_t i = 0; i < 4; ++i)
    if (!(a.at(i) == b[i])) return false;
  return true;
}

}  // namespace detail

// compares a lift of the given weight with a newform record; see lmfdb_checker
using LmfdbCheck = std::function<CheckReport(const std::string& label, const Series& lift,
                                             std::size_t through, long weight)>;

inline CheckReport check_T15_T16(const ExampleSel& ex, Index prec, const LmfdbCheck& lmfdb = {}) {
  return detail::timed([&] {
    std::string id = "T15:" + (ex.which == "custom" ? "custom(" + std::to_string(ex.r) + "," +
                                                          ex.f + ")"
                                                    : ex.which);
    std::string inputs = "prec=" + std::to_string(prec);
    PipelineInput in;
    const ExampleFixture* fx = nullptr;
    if (ex.which == "custom") {
      Eigenform g = eigenform(ex.f);
      in.r = ex.r;
      in.mode = PipelineMode::eta_r;
      in.f = g.build;
      in.f_weight2 = 2 * g.weight;
      in.f_char = g.chi;
      if (ex.r == 1) in.basis = [g](Index p) { return std::vector<Series>{g.build(p)}; };
    } else {
      fx = &example_fixture(ex.which == "ex1" ? 1 : 2);
      in.r = fx->r;
      in.mode = fx->eta3r ? PipelineMode::eta_3r : PipelineMode::eta_r;
      in.f = fx->eta3r ? e6_series : e4_series;
      in.f_weight2 = fx->weight2_f;
      in.basis = [fx](Index p) { return example_basis(*fx, p); };
    }
    Index rows = detail::out_rows(prec);
    auto res = run_pipeline(in, 24 * (rows + 1), true, static_cast<bool>(in.basis));
    CheckReport rep;
    rep.id = id;
    rep.inputs = inputs;
    const Series& direct = *res.direct;
    rep.bound = res.eigen ? res.agreement_bound : direct.prec();
    rep.status = Status::pass;
    std::vector<std::string> notes;
    if (res.disagreement) {
      rep.status = Status::fail;
      rep.mismatch = res.disagreement;
      rep.lhs = direct.coeff(*res.disagreement).str();
      rep.rhs = res.eigen->coeff(*res.disagreement).str();
      rep.reason = "direct and eigenbasis paths disagree";
      return rep;
    }
    if (!res.eigen) notes.push_back("no eigenbasis, direct path only");
    if (fx) {
      if (!detail::alpha_equal(res.alpha, fx->alpha)) {
        auto swapped = fx->alpha;
        std::swap(swapped[1], swapped[2]);
        if (fx->name == "ex1" && detail::alpha_equal(res.alpha, swapped)) {
          notes.push_back("alpha match with the conjugate pair g2/g3 labelled the other way");
        } else {
          rep.status = Status::fail;
          rep.reason = "alpha values differ from the printed constants";
          std::string got;
          for (auto& a : res.alpha) got += a.str() + " ";
          notes.push_back("computed alpha: " + got);
        }
      } else {
        notes.push_back("alpha match");
      }
      Index avail = (direct.prec() - 1) / 24;
      for (int n = 1; n <= std::min<Index>(5, avail) && rep.status == Status::pass; ++n)
        if (direct.int_coeff(n) != FieldElem(fx->printed[n - 1])) {
          rep.status = Status::fail;
          rep.mismatch = 24 * n;
          rep.lhs = direct.int_coeff(n).str();
          rep.rhs = std::to_string(fx->printed[n - 1]);
          rep.reason = "printed expansion differs";
        }
      if (rep.status == Status::pass && lmfdb && avail > 0) {
        auto lr = lmfdb(fx->lmfdb_label, direct, static_cast<std::size_t>(std::min<Index>(50, avail)),
                        2 * pipeline_lift_spec(in).kappa);
        notes.push_back(fx->lmfdb_label + " " + status_name(lr.status) + " through " +
                        std::to_string(lr.bound / 24 - 1));
        if (lr.status == Status::fail) {
          rep.status = Status::fail;
          rep.mismatch = lr.mismatch;
          rep.lhs = lr.lhs;
          rep.rhs = lr.rhs;
          rep.reason = "LMFDB fixture mismatch";
        }
      }
    }
    for (auto& n : notes) rep.note += (rep.note.empty() ? "" : "; ") + n;
    return rep;
  });
}

// alpha_{k,w} / D^w for part 1, beta_{k,w} / D^w for part 2
inline Rational t17_scalar(const std::string& cs, long k, long w) {
  Rational num = detail::binom(k + w - 1, w);
  Rational c = cs[0] == '1' ? num / detail::binom(k + 2 * w - 1, 2 * w)
                            : num / detail::binom(k + 2 * w, 2 * w + 1);
  long D = detail::case_entry(cs).D;
  for (long i = 0; i < w; ++i) c /= D;
  c.canonicalize();
  return c;
}

inline Series t17_lhs(const std::string& cs, const Eigenform& g, long w, Index rows) {
  const ThetaEntry& e = detail::case_entry(cs);
  Index pin = detail::input_prec(e, rows);
  bool two = cs[0] == '2';
  Series th = theta_row_eta_side(e, pin);
  Series F = op_rankin_cohen(g.build(pin), Rational(g.weight), th, Rational(two ? 3 : 1, 2), w);
  LiftSpec spec{1, g.weight + 2 * w + (two ? 1 : 0), e.psi * g.chi, detail::entry_variant(e)};
  return s_eta(F, spec);
}

inline CheckReport check_T17(const std::string& cs, const Eigenform& g, long w, Index prec) {
  return detail::timed([&] {
    std::string id = "T17:" + cs + ":w" + std::to_string(w) + ":" + g.name;
    std::string inputs = "g=" + g.name + " w=" + std::to_string(w) + " prec=" + std::to_string(prec);
    if (w < 0) return skipped_report(id, inputs, "w < 0");
    detail::case_entry(cs);
    if (auto why = detail::eigen_problem(g); !why.empty()) return skipped_report(id, inputs, why);
    Index rows = detail::out_rows(prec);
    Series lhs = t17_lhs(cs, g, w, rows);
    detail::Pieces P(g.build(24 * (rows + 1)), g.weight);
    long W = cs[0] == '1' ? 2 * w : 2 * w + 1;
    Rational c = t17_scalar(cs, g.weight, w);
    bool split = cs == "1e" || cs == "1f" || cs == "2d";
    Series printed = detail::bracket_rhs(cs, P, W, c, split ? Rational(1) : c);
    auto rep = compare_report(id, inputs, lhs, printed);
    if (split) {
      auto rp = rep;
      rep = compare_report(id, inputs, lhs, detail::bracket_rhs(cs, P, W, c, c));
      rep.note = rp.passed() ? "printed reading passes"
                             : "printed reading fails at " + std::to_string(*rp.mismatch) +
                                   "; status from prefactor on both terms";
    }
    return rep;
  });
}

// check_T13 case 1a against check_T17 case 1a at w = 0
inline CheckReport check_T13_T17_agree(const Eigenform& g, Index prec) {
  return detail::timed([&] {
    Index rows = detail::out_rows(prec);
    return compare_report("T17:1a:w0=T13:1a:" + g.name, "g=" + g.name,
                          t17_lhs("1a", g, 0, rows), detail::t13_lhs("1a", g, rows));
  });
}

inline CheckReport check_selberg(const Eigenform& g, Index prec) {
  return detail::timed([&] {
    std::string id = "selberg:" + g.name;
    std::string inputs = "g=" + g.name + " prec=" + std::to_string(prec);
    if (prec < 24) return skipped_report(id, inputs, "precision below one integer coefficient");
    if (g.level != 1) return skipped_report(id, inputs, "level is not 1");
    if (!g.cusp) return skipped_report(id, inputs, "not a cusp form");
    Index N = prec / 24;
    Index pin = 24 * N * N + 1;
    std::vector<Series::Term> th{{0, FieldElem(1L)}};
    for (Index n = 1; 24 * n * n < pin; ++n) th.emplace_back(24 * n * n, FieldElem(2L));
    Series theta = Series::from_terms(std::move(th), pin);
    Series F = op_V(g.build((pin + 3) / 4), 4).truncated(pin) * theta;
    Series lhs = sh_theta(F, {1, g.weight, RealChar(1, 2), LiftVariant::theta});
    Series f = g.build(24 * (N + 1));
    Series f2 = op_V(f, 2);
    Series rhs = f * f - series_scale(f2 * f2, detail::power_of(2, g.weight - 1));
    return compare_report(id, inputs, lhs, rhs);
  });
}

inline std::vector<CheckReport> check_theta_tables(Index prec) {
  std::vector<CheckReport> out;
  for (auto& e : theta_table()) {
    out.push_back(detail::timed([&] {
      return compare_report("theta:" + e.id, e.label, theta_series_build(e, prec),
                            theta_row_eta_side(e, prec));
    }));
  }
  return out;
}

// commutation of the eta lifts with Hecke operators, dilations and U_t
inline CheckReport check_comm(LiftVariant v, char letter, long p, Index rows = 12) {
  return detail::timed([&] {
    bool e24 = v == LiftVariant::eta24;
    std::string id = std::string("comm:") + variant_name(v) + ":" + letter + ":" + std::to_string(p);
    std::string inputs = e24 ? "eta*delta" : "eta^3*delta";
    Index mult = e24 ? 1 : 3;
    long kappa = e24 ? 12 : 13;
    long sym = e24 ? 12 : -4;
    auto F = [&](Index prec) {
      return eta_quotient_series(EtaQuotient{{1, e24 ? 1 : 3}}, prec) * delta_series(prec);
    };
    LiftSpec base{1, kappa, RealChar(), v};
    FieldElem sg(long(kronecker(sym, p)));
    switch (letter) {
      case 'a': {
        Index pin = mult * p * p * rows * rows + 1;
        Series f = F(pin);
        HeckeContext hc(2 * kappa + 1, RealChar(), e24 ? GridVariant::mod24 : GridVariant::mod8);
        Series lhs = s_eta(hecke_Tp2_half(f, hc, p), base);
        Series rhs = series_scale(hecke_Tp_int(s_eta(f, base), HeckeContext(2 * (2 * kappa)), p), sg);
        return compare_report(id, inputs, lhs, rhs);
      }
      case 'b': {
        Index M = 4;
        Index pin = mult * p * (M + 1) * (M + 1) + 1;
        Series f = F(pin);
        LiftSpec sb = base;
        sb.chi = RealChar::jacobi(p);
        Series lhs = s_eta(op_V(f, p), sb);
        LiftSpec st = base;
        st.t = p;
        Series rhs = series_scale(op_V(s_eta(f, st), p), sg);
        return compare_report(id, inputs, lhs, rhs);
      }
      case 'c': {
        Index M = 20;
        Index pin = mult * (M + 1) * (M + 1) + 1;
        Series f = F(pin);
        Series lhs = s_eta(op_V(f, p * p), base);
        Series rhs = series_scale(op_V(s_eta(f, base), p), sg);
        return compare_report(id, inputs, lhs, rhs);
      }
      case 'd': {
        Index pin = mult * p * rows * rows + 1;
        Series f = F(pin);
        LiftSpec st = base;
        st.t = p;
        LiftSpec s1 = base;
        s1.chi = RealChar::jacobi(p);
        Series lhs = s_eta(f, st);
        Series rhs = s_eta(op_U(f, p, 1), s1);
        return compare_report(id, inputs, lhs, rhs);
      }
    }
    throw DomainError(std::string("unknown commutation part '") + letter + "'");
  });
}

struct CommCase {
  LiftVariant v;
  char letter;
  long p;
};

inline std::vector<CommCase> comm_cases() {
  std::vector<CommCase> out;
  for (long p : {5L, 7L, 11L, 13L})
    for (char l : {'a', 'c'}) out.push_back({LiftVariant::eta24, l, p});
  for (long t : {73L, 97L})
    for (char l : {'b', 'd'}) out.push_back({LiftVariant::eta24, l, t});
  for (long p : {3L, 5L, 7L})
    for (char l : {'a', 'c'}) out.push_back({LiftVariant::eta8, l, p});
  for (long t : {17L, 41L})
    for (char l : {'b', 'd'}) out.push_back({LiftVariant::eta8, l, t});
  return out;
}

struct SuiteReport {
  std::vector<CheckReport> reports;
  bool all_pass() const {
    for (auto& r : reports)
      if (r.status == Status::fail) return false;
    return true;
  }
  std::size_t count(Status s) const {
    return std::count_if(reports.begin(), reports.end(),
                         [s](const CheckReport& r) { return r.status == s; });
  }
};

using CheckJob = std::function<std::vector<CheckReport>()>;

inline std::vector<std::pair<std::string, CheckJob>> suite_jobs(Index prec,
                                                                const LmfdbCheck& lmfdb = {}) {
  std::vector<std::pair<std::string, CheckJob>> jobs;
  auto one = [&](std::string id, std::function<CheckReport()> f) {
    jobs.emplace_back(std::move(id), [f] { return std::vector<CheckReport>{f()}; });
  };
  for (const char* gn : {"delta", "E4", "E6"}) {
    Eigenform g = eigenform(gn);
    for (auto& c : detail::case_rows()) {
      std::string cs = c.id;
      one("T13:" + cs + ":" + gn, [=] { return check_T13(cs, g, prec); });
    }
  }
  Eigenform delta = eigenform("delta");
  one("T14:1:delta", [=] { return check_T14(1, delta, prec); });
  one("T14:2:delta", [=] { return check_T14(2, delta, prec); });
  one("T14:1:E6", [=] { return check_T14(1, eigenform("E6"), prec); });
  for (const char* ex : {"ex1", "ex2", "custom(1,E4)"}) {
    ExampleSel sel = parse_example(ex);
    one(std::string("T15:") + ex, [=] { return check_T15_T16(sel, prec, lmfdb); });
  }
  for (auto& c : detail::case_rows()) {
    std::string cs = c.id;
    for (long w : {0L, 1L}) {
      one("T17:" + cs + ":w" + std::to_string(w) + ":delta",
          [=] { return check_T17(cs, delta, w, prec); });
    }
  }
  one("T17:1a:w2:delta", [=] { return check_T17("1a", delta, 2, prec); });
  one("T17:2a:w2:delta", [=] { return check_T17("2a", delta, 2, prec); });
  one("T17:1a:w0=T13", [=] { return check_T13_T17_agree(delta, prec); });
  one("selberg:delta", [=] { return check_selberg(delta, prec); });
  jobs.emplace_back("theta", [=] { return check_theta_tables(std::max<Index>(prec, 10000)); });
  for (auto c : comm_cases())
    one(std::string("comm:") + variant_name(c.v) + ":" + c.letter + ":" + std::to_string(c.p),
        [c] { return check_comm(c.v, c.letter, c.p); });
  one("liftrel:eta24", [=] {
    Index N = detail::out_rows(prec);
    Series f = eta_quotient_series(EtaQuotient{{1, 1}}, N * N + 1) * delta_series(N * N + 1);
    return lift_relation_check(f, {1, 12, RealChar(), LiftVariant::eta24});
  });
  one("liftrel:eta8", [=] {
    Index N = detail::out_rows(prec);
    Index pin = 3 * N * N + 1;
    Series f = eta_quotient_series(EtaQuotient{{1, 3}}, pin) * delta_series(pin);
    return lift_relation_check(f, {1, 13, RealChar(), LiftVariant::eta8});
  });
  return jobs;
}

// runs jobs on a pool; reports sorted by check id
inline SuiteReport run_jobs(const std::vector<std::pair<std::string, CheckJob>>& jobs,
                            unsigned parallelism) {
  std::vector<std::vector<CheckReport>> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        out[i] = jobs[i].second();
      } catch (const std::exception& e) {
        CheckReport r;
        r.id = jobs[i].first;
        r.status = Status::fail;
        r.reason = std::string("error: ") + e.what();
        out[i] = {r};
      }
    }
  };
  unsigned n = std::max(1u, parallelism);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  SuiteReport rep;
  for (auto& v : out)
    for (auto& r : v) rep.reports.push_back(std::move(r));
  std::stable_sort(rep.reports.begin(), rep.reports.end(),
                   [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
  return rep;
}

inline SuiteReport run_all(Index prec, unsigned parallelism, const LmfdbCheck& lmfdb = {}) {
  return run_jobs(suite_jobs(prec, lmfdb), parallelism);
}

}  // namespace qlift
