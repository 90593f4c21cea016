#pragma once

#include <ostream>
#include <string>

#include "rational.hpp"

namespace qlift {

// a + b*sqrt(d); d == 0 means a plain rational
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(long v) : a_(v) {}
  FieldElem(const Integer& v) : a_(v) {}
  FieldElem(const Rational& v) : a_(v) {}
  FieldElem(const Rational& a, const Rational& b, long d) : a_(a), b_(b), d_(d) {
    if (d_ == 0 && b_ != 0) throw DomainError("irrational part with disc 0");
    if (d_ != 0 && !is_squarefree(d_)) throw DomainError("disc must be square-free");
    if (d_ == 1) {
      a_ += b_;
      b_ = 0;
      d_ = 0;
    }
  }

  static FieldElem sqrt_of(long d) { return FieldElem(Rational(0), Rational(1), d); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long disc() const { return d_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  bool is_integer() const { return sgn(b_) == 0 && a_.get_den() == 1; }

  FieldElem conj() const {
    FieldElem r = *this;
    r.b_ = -r.b_;
    return r;
  }

  Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }

  FieldElem inverse() const {
    if (is_zero()) throw DomainError("inverse of zero");
    if (d_ == 0 || sgn(b_) == 0) {
      FieldElem r = *this;
      r.a_ = 1 / a_;
      return r;
    }
    Rational n = norm();
    FieldElem r = conj();
    r.a_ /= n;
    r.b_ /= n;
    return r;
  }

  FieldElem& operator+=(const FieldElem& o) {
    d_ = join(d_, o.d_);
    a_ += o.a_;
    if (sgn(o.b_)) b_ += o.b_;
    return *this;
  }
  FieldElem& operator-=(const FieldElem& o) {
    d_ = join(d_, o.d_);
    a_ -= o.a_;
    if (sgn(o.b_)) b_ -= o.b_;
    return *this;
  }
  FieldElem& operator*=(const FieldElem& o) {
    d_ = join(d_, o.d_);
    if (sgn(b_) == 0 && sgn(o.b_) == 0) {
      a_ *= o.a_;
    } else {
      Rational na = a_ * o.a_ + Rational(d_) * b_ * o.b_;
      Rational nb = a_ * o.b_ + b_ * o.a_;
      a_ = std::move(na);
      b_ = std::move(nb);
    }
    return *this;
  }
  FieldElem& operator/=(const FieldElem& o) { return *this *= o.inverse(); }

  // acc += x*y without temporaries on the rational fast path
  void addmul(const FieldElem& x, const FieldElem& y) {
    d_ = join(d_, join(x.d_, y.d_));
    if (sgn(x.b_) == 0 && sgn(y.b_) == 0) {
      a_ += x.a_ * y.a_;
      return;
    }
    a_ += x.a_ * y.a_ + Rational(d_) * x.b_ * y.b_;
    b_ += x.a_ * y.b_ + x.b_ * y.a_;
  }

  friend FieldElem operator+(FieldElem x, const FieldElem& y) { return x += y; }
  friend FieldElem operator-(FieldElem x, const FieldElem& y) { return x -= y; }
  friend FieldElem operator*(FieldElem x, const FieldElem& y) { return x *= y; }
  friend FieldElem operator/(FieldElem x, const FieldElem& y) { return x /= y; }
  FieldElem operator-() const {
    FieldElem r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
  }

  friend bool operator==(const FieldElem& x, const FieldElem& y) {
    if (x.a_ != y.a_ || x.b_ != y.b_) return false;
    return sgn(x.b_) == 0 || x.d_ == y.d_;
  }

  std::string str() const {
    if (sgn(b_) == 0) return a_.get_str();
    std::string r = "*sqrt(" + std::to_string(d_) + ")";
    if (sgn(b_) < 0) return a_.get_str() + " - " + Rational(-b_).get_str() + r;
    return a_.get_str() + " + " + b_.get_str() + r;
  }

  static long join(long d1, long d2) {
    if (d1 == d2 || d2 == 0) return d1;
    if (d1 == 0) return d2;
    throw DiscMismatch("disc " + std::to_string(d1) + " vs " + std::to_string(d2));
  }

 private:
  Rational a_;
  Rational b_;
  long d_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const FieldElem& x) { return os << x.str(); }

inline FieldElem fpow(FieldElem b, long e) {
  if (e < 0) {
    b = b.inverse();
    e = -e;
  }
  FieldElem r(1L);
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// "p/q", "p/q + r/s*sqrt(d)" or "p/q - r/s*sqrt(d)"
inline FieldElem parse_field_elem(const std::string& s) {
  auto sep = s.find(" + ");
  bool neg = false;
  if (sep == std::string::npos) {
    sep = s.find(" - ");
    neg = sep != std::string::npos;
  }
  if (sep == std::string::npos) return FieldElem(parse_rational(s));
  std::string rest = s.substr(sep + 3);
  auto star = rest.find("*sqrt(");
  auto close = rest.rfind(')');
  if (star == std::string::npos || close == std::string::npos || close < star)
    throw ParseError("bad field element '" + s + "'", sep);
  long d = std::stol(rest.substr(star + 6, close - star - 6));
  Rational b = parse_rational(rest.substr(0, star));
  if (neg) b = -b;
  return FieldElem(parse_rational(s.substr(0, sep)), b, d);
}

}  // namespace qlift
