#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <qlift/qlift.hpp>

using namespace qlift;

namespace {

enum Exit { kPass = 0, kCheckFail = 1, kUsage = 2, kEnvironment = 3 };

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string path;

  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw CacheError("cannot write " + path);
    out << text;
  }
};

void check_prec(Index prec) {
  if (prec < 24) throw Usage("--prec must be at least 24");
}

int cmd_expand(const std::string& form, Index prec, long disc, const Output& out) {
  check_prec(prec);
  Series f = expand_form(form, prec);
  if (disc) f = f.with_disc(disc);
  out.write(dump(f));
  return kPass;
}

int cmd_op(const std::string& op, const std::string& form, long m, Index prec,
           const std::string& second, long w, long weight2, const std::string& chi,
           const std::string& variant, const Output& out) {
  check_prec(prec);
  FormExpr fe = parse_form(form);
  Series f = fe.build(prec);
  long w2 = weight2 ? weight2 : fe.weight2.value_or(0);
  // integer weight sits on q^n, eta8 forms on q^(n/8), the rest on q^(n/24)
  Index unit = w2 % 2 == 0 ? 24 : variant == "eta8" ? 3 : 1;
  Series r;
  if (op == "U") {
    r = op_U(f, m, unit);
  } else if (op == "V") {
    r = op_V(f, m);
  } else if (op == "twist") {
    r = op_twist(f, RealChar(m), unit);
  } else if (op == "theta") {
    r = op_theta(f);
  } else if (op == "sieve") {
    r = op_sieve(f, 0, m, unit);
  } else if (op == "T") {
    r = hecke_Tn_int(f, HeckeContext(w2, parse_char(chi)), m);
  } else if (op == "Tp2") {
    GridVariant gv = variant == "eta8" ? GridVariant::mod8 : GridVariant::mod24;
    r = hecke_Tp2_half(f, HeckeContext(w2, parse_char(chi), gv), m);
  } else if (op == "rc") {
    if (second.empty()) throw Usage("rc needs --with");
    FormExpr ge = parse_form(second);
    if (!fe.weight2 || !ge.weight2) throw Usage("rc needs forms of known weight");
    r = op_rankin_cohen(f, Rational(*fe.weight2, 2), ge.build(prec), Rational(*ge.weight2, 2), w);
  } else {
    throw Usage("unknown operator '" + op + "'");
  }
  out.write(dump(r));
  return kPass;
}

int cmd_lift(const std::string& form, long t, const std::string& variant, long kappa,
             const std::string& chi, Index prec, const Output& out) {
  check_prec(prec);
  LiftSpec spec;
  spec.t = t;
  spec.variant = parse_variant(variant);
  spec.chi = parse_char(chi);
  FormExpr fe = parse_form(form);
  if (kappa) {
    spec.kappa = kappa;
  } else {
    if (!fe.weight2 || *fe.weight2 % 2 == 0) throw Usage("cannot infer kappa; pass --kappa");
    spec.kappa = (*fe.weight2 - 1) / 2;
  }
  for (auto& w : spec.validate()) std::cerr << "warning: " << w << "\n";
  Index rows = prec / 24;
  Index mult = spec.variant == LiftVariant::eta8 ? 3 : spec.variant == LiftVariant::theta ? 24 : 1;
  Series f = fe.build(mult * t * rows * rows + 1);
  out.write(dump(s_eta(f, spec)));
  return kPass;
}

std::vector<std::pair<std::string, CheckJob>> select_jobs(const std::string& sel,
                                                          const std::string& gname, long w,
                                                          Index prec, const LmfdbCheck& lc) {
  using Jobs = std::vector<std::pair<std::string, CheckJob>>;
  auto one = [](std::string id, std::function<CheckReport()> f) {
    return Jobs{{id, [f] { return std::vector<CheckReport>{f()}; }}};
  };
  if (sel == "all") return suite_jobs(prec, lc);
  auto colon = sel.find(':');
  std::string head = sel.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : sel.substr(colon + 1);
  try {
    if (head == "T13" && !arg.empty()) {
      Eigenform g = eigenform(gname);
      detail::case_entry(arg);
      return one(sel, [=] { return check_T13(arg, g, prec); });
    }
    if (head == "T14" && (arg == "1" || arg == "2")) {
      Eigenform g = eigenform(gname);
      return one(sel, [=] { return check_T14(std::stoi(arg), g, prec); });
    }
    if (head == "T15" && !arg.empty()) {
      ExampleSel ex = parse_example(arg);
      if (ex.which == "custom") eigenform(ex.f);
      return one(sel, [=] { return check_T15_T16(ex, prec, lc); });
    }
    if (head == "T17" && !arg.empty()) {
      Eigenform g = eigenform(gname);
      detail::case_entry(arg);
      return one(sel, [=] { return check_T17(arg, g, w, prec); });
    }
  } catch (const Error& e) {
    throw Usage(e.what());
  }
  if (sel == "selberg") {
    Eigenform g = eigenform(gname);
    return one(sel, [=] { return check_selberg(g, prec); });
  }
  if (sel == "theta") return Jobs{{sel, [prec] { return check_theta_tables(prec); }}};
  if (sel == "comm") {
    Jobs jobs;
    for (auto c : comm_cases())
      jobs.emplace_back(sel + std::to_string(jobs.size()), [c] {
        return std::vector<CheckReport>{check_comm(c.v, c.letter, c.p)};
      });
    return jobs;
  }
  throw Usage("unknown check selector '" + sel + "'");
}

int cmd_verify(const std::string& sel, const std::string& gname, long w, Index prec,
               unsigned parallel, bool machine, bool network, const Output& out) {
  check_prec(prec);
  auto jobs = select_jobs(sel, gname, w, prec, lmfdb_checker(network));
  SuiteReport rep = run_jobs(jobs, parallel);
  std::ostringstream os;
  for (auto& r : rep.reports) os << (machine ? r.line() : r.describe()) << "\n";
  if (!machine)
    os << rep.count(Status::pass) << " pass, " << rep.count(Status::fail) << " fail, "
       << rep.count(Status::skipped) << " skipped\n";
  out.write(os.str());
  return rep.all_pass() ? kPass : kCheckFail;
}

int cmd_example(const std::string& which, const std::string& path, Index prec, const Output& out) {
  check_prec(prec);
  if (which != "ex1" && which != "ex2") throw Usage("example must be ex1 or ex2");
  const ExampleFixture& fx = example_fixture(which == "ex1" ? 1 : 2);
  PipelineInput in;
  in.r = fx.r;
  in.mode = fx.eta3r ? PipelineMode::eta_3r : PipelineMode::eta_r;
  in.f = fx.eta3r ? e6_series : e4_series;
  in.f_weight2 = fx.weight2_f;
  in.basis = [&fx](Index p) { return example_basis(fx, p); };
  bool direct = path != "eigenbasis", eigen = path != "direct";
  if (!direct && !eigen) throw Usage("--path must be direct, eigenbasis or both");
  auto res = run_pipeline(in, prec, direct, eigen);
  std::ostringstream os;
  for (std::size_t i = 0; i < res.alpha.size(); ++i)
    os << "alpha" << i + 1 << " = " << res.alpha[i] << "\n";
  if (res.direct && res.eigen)
    os << (res.disagreement ? "paths disagree at " + std::to_string(*res.disagreement)
                            : "paths agree through " + std::to_string(res.agreement_bound))
       << "\n";
  os << dump(res.direct ? *res.direct : *res.eigen);
  out.write(os.str());
  return res.disagreement ? kCheckFail : kPass;
}

int cmd_fetch(const std::string& label, std::size_t count, bool network, const Output& out) {
  NewformRecord r = fetch(label, count, network);
  out.write(format_record(r));
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-expansions, Hecke operators and Shimura lifts of eta-quotients"};
  app.require_subcommand(1);
  Output out;
  Index prec = 2400;
  long disc = 0;
  app.add_option("-o,--out", out.path, "write output to a file");

  std::string form;
  auto* expand = app.add_subcommand("expand", "print the q-expansion of a form");
  expand->add_option("form", form, "eta quotient, named form or fixture")->required();
  expand->add_option("--prec", prec, "grid precision in 1/24 units")->capture_default_str();
  expand->add_option("--disc", disc, "tag coefficients with Q(sqrt(disc))");

  std::string op, second, chi = "1", variant = "eta24";
  long m = 2, w = 1, weight2 = 0;
  auto* opc = app.add_subcommand("op", "apply U, V, twist, theta, sieve, T, Tp2 or rc");
  opc->add_option("name", op, "operator")->required();
  opc->add_option("form", form, "input form")->required();
  opc->add_option("-m", m, "operator parameter (m, p, or twist top)")->capture_default_str();
  opc->add_option("--with", second, "second form for rc");
  opc->add_option("-w", w, "bracket degree")->capture_default_str();
  opc->add_option("--weight2", weight2, "twice the weight, when it cannot be inferred");
  opc->add_option("--char", chi, "character, e.g. kron(-4)*ind(3)")->capture_default_str();
  opc->add_option("--variant", variant, "half-integral grid: eta24 or eta8")->capture_default_str();
  opc->add_option("--prec", prec)->capture_default_str();

  long t = 1, kappa = 0;
  auto* lift = app.add_subcommand("lift", "Shimura lift of a half-integral weight form");
  lift->add_option("form", form)->required();
  lift->add_option("--t", t)->capture_default_str();
  lift->add_option("--variant", variant, "theta, eta24 or eta8")->capture_default_str();
  lift->add_option("--kappa", kappa, "weight index; inferred from the form when omitted");
  lift->add_option("--char", chi)->capture_default_str();
  lift->add_option("--prec", prec, "output precision")->capture_default_str();

  std::string sel, gname = "delta";
  unsigned parallel = 1;
  bool machine = false, network = false;
  auto* verify = app.add_subcommand("verify", "run named checks");
  verify->add_option("selector", sel, "all, T13:<case>, T14:<part>, T15:<example>, T17:<case>, "
                                      "selberg, theta or comm")
      ->required();
  verify->add_option("--g", gname, "eigenform: delta, E4 or E6")->capture_default_str();
  verify->add_option("--w", w, "bracket degree for T17")->capture_default_str();
  verify->add_option("--prec", prec)->capture_default_str();
  verify->add_option("--parallel", parallel, "worker threads")
      ->default_val(std::max(1u, std::thread::hardware_concurrency()));
  verify->add_flag("--machine", machine, "tab-separated id, status, bound, millis");
  verify->add_flag("--network", network, "allow LMFDB requests for missing fixtures");

  std::string which, path = "both";
  auto* example = app.add_subcommand("example", "run the ex1 or ex2 pipeline");
  example->add_option("which", which)->required();
  example->add_option("--path", path, "direct, eigenbasis or both")->capture_default_str();
  example->add_option("--prec", prec)->capture_default_str();

  std::string label;
  std::size_t count = 50;
  auto* fetchc = app.add_subcommand("fetch", "newform coefficients from the cache or LMFDB");
  fetchc->add_option("label", label)->required();
  fetchc->add_option("--count", count)->capture_default_str();
  fetchc->add_flag("--network", network, "allow an LMFDB request");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*expand) return cmd_expand(form, prec, disc, out);
    if (*opc) return cmd_op(op, form, m, prec, second, w, weight2, chi, variant, out);
    if (*lift) return cmd_lift(form, t, variant, kappa, chi, prec, out);
    if (*verify) return cmd_verify(sel, gname, w, prec, parallel, machine, network, out);
    if (*example) return cmd_example(which, path, prec, out);
    if (*fetchc) return cmd_fetch(label, count, network, out);
  } catch (const Usage& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const NetworkError& e) {
    std::cerr << "network: " << e.what() << "\n";
    return kEnvironment;
  } catch (const CacheError& e) {
    std::cerr << "cache: " << e.what() << "\n";
    return kEnvironment;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
