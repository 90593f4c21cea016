#pragma once

#include <cctype>
#include <functional>
#include <optional>
#include <string>

#include "forms.hpp"

namespace qlift {

// a parsed form expression; build(prec) expands it on the 1/24 grid
struct FormExpr {
  std::function<Series(Index)> build;
  std::optional<EtaQuotient> eta;  // set when the expression is a single eta quotient
  std::optional<long> weight2;     // twice the weight, when homogeneous
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string s) : s_(std::move(s)) {}

  FormExpr parse() {
    FormExpr e = sum();
    skip();
    if (i_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
    return e;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  long integer() {
    skip();
    std::size_t st = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    std::size_t d = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (d == i_) throw ParseError("expected integer", st);
    return std::stol(s_.substr(st, i_ - st));
  }

  static FormExpr from_eta(EtaQuotient q) {
    return {[q](Index p) { return eta_quotient_series(q, p); }, q, q.weight2()};
  }

  FormExpr sum() {
    FormExpr acc;
    if (eat('-')) {
      FormExpr f = product();
      auto b = f.build;
      acc = {[b](Index p) { return -b(p); }, std::nullopt, f.weight2};
    } else {
      acc = product();
    }
    while (true) {
      if (eat('+')) {
        FormExpr f = product();
        auto a = acc.build, b = f.build;
        acc = {[a, b](Index p) { return a(p) + b(p); }, std::nullopt, join(acc, f)};
      } else if (eat('-')) {
        FormExpr f = product();
        auto a = acc.build, b = f.build;
        acc = {[a, b](Index p) { return a(p) - b(p); }, std::nullopt, join(acc, f)};
      } else {
        return acc;
      }
    }
  }

  static std::optional<long> join(const FormExpr& a, const FormExpr& b) {
    if (a.weight2 && b.weight2 && *a.weight2 == *b.weight2) return a.weight2;
    return std::nullopt;
  }

  FormExpr product() {
    std::optional<EtaQuotient> eta;
    std::optional<std::function<Series(Index)>> rest;
    std::optional<long> w2 = 0;
    auto take = [&](FormExpr f) {
      w2 = w2 && f.weight2 ? std::optional<long>(*w2 + *f.weight2) : std::nullopt;
      if (f.eta) {
        eta = eta ? *eta * *f.eta : *f.eta;
      } else if (rest) {
        auto a = *rest, b = f.build;
        rest = [a, b](Index p) { return a(p) * b(p); };
      } else {
        rest = f.build;
      }
    };
    take(power());
    while (eat('*')) take(power());
    if (!rest) return from_eta(*eta);
    if (!eta) return {*rest, std::nullopt, w2};
    EtaQuotient q = *eta;
    auto r = *rest;
    return {[q, r](Index p) { return eta_quotient_series(q, p) * r(p); }, std::nullopt, w2};
  }

  FormExpr power() {
    FormExpr a = atom();
    if (!eat('^')) return a;
    std::size_t at = i_;
    long e = integer();
    if (a.eta) {
      std::vector<std::pair<long, long>> fs;
      for (auto [d, r] : a.eta->factors) fs.emplace_back(d, r * e);
      return from_eta(EtaQuotient(fs));
    }
    if (e < 0) throw ParseError("negative power of a non-eta factor", at);
    auto b = a.build;
    std::optional<long> w2;
    if (a.weight2) w2 = *a.weight2 * e;
    return {[b, e](Index p) { return series_pow(b(p), e).truncated(p); }, std::nullopt, w2};
  }

  FormExpr atom() {
    skip();
    std::size_t st = i_;
    if (eat('(')) {
      FormExpr e = sum();
      if (!eat(')')) throw ParseError("expected )", i_);
      return e;
    }
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '/'))
        ++i_;
      Rational c = parse_rational(s_.substr(st, i_ - st));
      return {[c](Index p) { return Series::monomial(0, FieldElem(c), p); }, std::nullopt, 0L};
    }
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == ':' ||
                             s_[j] == '.' || s_[j] == '_'))
      ++j;
    std::string name = s_.substr(i_, j - i_);
    if (name.empty()) throw ParseError("expected a form", st);
    i_ = j;
    if (name == "eta") {
      if (!eat('(')) throw ParseError("expected ( after eta", i_);
      long d = integer();
      if (d < 1) throw ParseError("dilation must be positive", i_);
      if (!eat(')')) throw ParseError("expected )", i_);
      return from_eta(EtaQuotient{{d, 1}});
    }
    if (name == "delta") return from_eta(EtaQuotient{{1, 24}});
    if (name == "E4") return {e4_series, std::nullopt, 8L};
    if (name == "E6") return {e6_series, std::nullopt, 12L};
    if (name.rfind("theta:", 0) == 0) {
      const ThetaEntry& e = theta_entry(name.substr(6));
      if (e.eta) return from_eta(*e.eta);
      return {[&e](Index p) { return theta_row_eta_side(e, p); }, std::nullopt, e.nu ? 3L : 1L};
    }
    if (fixture_by_name(name, 24)) {
      const auto& ex = example_fixture(name[2] - '0');
      long w2 = name[4] == 'f' ? ex.f.at(name[5] - '0').weight2() : 2 * ex.basis_weight;
      return {[name](Index p) { return *fixture_by_name(name, p); }, std::nullopt, w2};
    }
    throw ParseError("unknown form '" + name + "'", st);
  }

  std::string s_;
  std::size_t i_ = 0;
};

}  // namespace detail

// "eta(1)^5 * E4", "delta", "theta:odd:3", "ex1.g2", "2*E4 - E6"
inline FormExpr parse_form(const std::string& s) { return detail::ExprParser(s).parse(); }

inline Series expand_form(const std::string& s, Index prec) { return parse_form(s).build(prec); }

}  // namespace qlift
