#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlift {

using Integer = mpz_class;
using Rational = mpq_class;
using Index = std::int64_t;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DiscMismatch : Error {
  using Error::Error;
};

struct PrecisionError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct ParseError : Error {
  std::size_t pos;
  ParseError(const std::string& what, std::size_t p)
      : Error(what + " at position " + std::to_string(p)), pos(p) {}
};

inline Rational make_rational(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline Rational rpow(const Rational& b, long e) {
  if (e < 0) {
    if (b == 0) throw DomainError("zero to a negative power");
    return rpow(Rational(1) / b, -e);
  }
  Rational r(ipow(b.get_num(), e), ipow(b.get_den(), e));
  r.canonicalize();
  return r;
}

inline Index gcd_index(Index a, Index b) { return std::gcd(a, b); }

inline Index lcm_index(Index a, Index b) { return a == 0 || b == 0 ? 0 : std::lcm(a, b); }

inline bool is_squarefree(Index n) {
  if (n == 0) return false;
  if (n < 0) n = -n;
  for (Index p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    if (n % p == 0) n /= p;
  }
  return true;
}

inline bool is_prime(Index n) {
  if (n < 2) return false;
  for (Index p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

inline std::vector<Index> divisors(Index n) {
  std::vector<Index> lo, hi;
  for (Index d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    lo.push_back(d);
    if (d * d != n) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

// prime factors with multiplicity exponents
inline std::vector<std::pair<Index, int>> factor(Index n) {
  std::vector<std::pair<Index, int>> out;
  if (n < 0) n = -n;
  for (Index p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'", 0);
  r.canonicalize();
  return r;
}

}  // namespace qlift
