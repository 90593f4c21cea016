#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "rational.hpp"

namespace qlift {

inline int kronecker(const Integer& a, const Integer& n) {
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline int kronecker(long a, long n) {
  Integer aa(a);
  return mpz_kronecker_si(aa.get_mpz_t(), n);
}

enum class Parity { even, odd };

// value at n: kronecker(top, n) * [gcd(n, indicator) == 1]
class RealChar {
 public:
  RealChar() : RealChar(1, 1) {}
  RealChar(long top, long indicator = 1) : top_(top), ind_(indicator) {
    if (top_ == 0) throw DomainError("character top must be nonzero");
    if (ind_ < 1) throw DomainError("indicator modulus must be positive");
    period_ = lcm_index(kron_period(top_), ind_);
    table_.resize(static_cast<std::size_t>(period_));
    for (Index n = 0; n < period_; ++n) table_[n] = static_cast<std::int8_t>(direct(n));
    at_minus_one_ = static_cast<std::int8_t>(direct(-1));
  }

  static RealChar trivial() { return RealChar(1, 1); }

  // the Jacobi symbol (n/r), r odd positive, as a Kronecker top
  static RealChar jacobi(long r) {
    if (r <= 0 || r % 2 == 0) throw DomainError("jacobi character needs odd positive r");
    return RealChar(r % 4 == 1 ? r : -r, 1);
  }

  long top() const { return top_; }
  long indicator() const { return ind_; }
  Index modulus() const { return period_; }
  bool is_trivial() const { return top_ == 1 && ind_ == 1; }

  int operator()(Index n) const {
    if (n >= 0) return table_[static_cast<std::size_t>(n % period_)];
    return at_minus_one_ * table_[static_cast<std::size_t>((-n) % period_)];
  }

  Parity parity() const { return at_minus_one_ > 0 ? Parity::even : Parity::odd; }

  // product, with square factors of the top moved into the indicator
  friend RealChar operator*(const RealChar& x, const RealChar& y) {
    long t = x.top_ * y.top_;
    long m = lcm_index(x.ind_, y.ind_);
    long sign = t < 0 ? -1 : 1;
    long core = 1;
    for (auto [p, e] : factor(t)) {
      for (int i = 0; i < e / 2; ++i) m = lcm_index(m, p);
      if (e % 2) core *= p;
    }
    return RealChar(sign * core, m);
  }

  // same values everywhere
  friend bool equivalent(const RealChar& x, const RealChar& y) {
    Index p = lcm_index(x.period_, y.period_);
    if (x.at_minus_one_ != y.at_minus_one_) return false;
    for (Index n = 0; n < p; ++n)
      if (x(n) != y(n)) return false;
    return true;
  }

  friend bool operator==(const RealChar& x, const RealChar& y) {
    return x.top_ == y.top_ && x.ind_ == y.ind_;
  }

  std::string str() const {
    return "kron(" + std::to_string(top_) + ")*ind(" + std::to_string(ind_) + ")";
  }

  static Index kron_period(long d) {
    if (d == 1) return 1;
    long ad = d < 0 ? -d : d;
    long r = ((d % 4) + 4) % 4;
    return (r == 0 || r == 1) ? ad : 4 * ad;
  }

 private:
  int direct(Index n) const {
    if (std::gcd(n < 0 ? -n : n, static_cast<Index>(ind_)) != 1) return 0;
    return kronecker(top_, static_cast<long>(n));
  }

  long top_;
  long ind_;
  Index period_ = 1;
  std::vector<std::int8_t> table_;
  std::int8_t at_minus_one_ = 1;
};

inline int char_eval(const RealChar& chi, Index n) { return chi(n); }

inline Parity char_parity(const RealChar& chi) { return chi.parity(); }

// "kron(D)*ind(M)", either factor optional; "1" is the trivial character
inline RealChar parse_char(const std::string& s) {
  long top = 1, ind = 1;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto number = [&]() -> long {
    skip();
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      throw ParseError("expected integer", start);
    return std::stol(s.substr(start, i - start));
  };
  skip();
  if (s.substr(i) == "1") return RealChar();
  bool any = false;
  while (i < s.size()) {
    skip();
    bool is_kron = s.compare(i, 5, "kron(") == 0;
    bool is_ind = s.compare(i, 4, "ind(") == 0;
    if (!is_kron && !is_ind) throw ParseError("expected kron( or ind(", i);
    i += is_kron ? 5 : 4;
    long v = number();
    skip();
    if (i >= s.size() || s[i] != ')') throw ParseError("expected )", i);
    ++i;
    if (is_kron)
      top *= v;
    else
      ind = lcm_index(ind, v);
    any = true;
    skip();
    if (i < s.size()) {
      if (s[i] != '*') throw ParseError("expected *", i);
      ++i;
    }
  }
  if (!any) throw ParseError("empty character literal", 0);
  return RealChar(top, ind);
}

}  // namespace qlift
