#include <gtest/gtest.h>

#include <qlift/chars.hpp>

using namespace qlift;

TEST(Kronecker, KnownValues) {
  EXPECT_EQ(kronecker(12, 5), -1);
  EXPECT_EQ(kronecker(12, 7), -1);
  EXPECT_EQ(kronecker(12, 11), 1);
  EXPECT_EQ(kronecker(-4, 3), -1);
  EXPECT_EQ(kronecker(8, 3), -1);
  EXPECT_EQ(kronecker(-8, 3), 1);
  EXPECT_EQ(kronecker(5, 2), -1);
  EXPECT_EQ(kronecker(-1, -1), -1);
  EXPECT_EQ(kronecker(3, 0), 0);
  EXPECT_EQ(kronecker(1, 0), 1);
}

TEST(Kronecker, BigIntegerAgrees) {
  for (long a = -30; a <= 30; ++a)
    for (long n = -30; n <= 30; ++n) EXPECT_EQ(kronecker(Integer(a), Integer(n)), kronecker(a, n));
}

TEST(RealChar, IndicatorAndPeriod) {
  RealChar c(-3, 2);
  EXPECT_EQ(c.modulus(), 6);
  EXPECT_EQ(c(2), 0);
  EXPECT_EQ(c(3), 0);
  EXPECT_EQ(c(5), -1);
  EXPECT_EQ(c(7), 1);
  EXPECT_EQ(c.parity(), Parity::odd);
  EXPECT_EQ(RealChar(12).parity(), Parity::even);
}

TEST(RealChar, NegativeArguments) {
  RealChar c(-4);
  EXPECT_EQ(c(-1), -1);
  EXPECT_EQ(c(-3), 1);
}

TEST(RealChar, ProductMovesSquares) {
  RealChar p = RealChar(12) * RealChar(3);
  EXPECT_EQ(p.top(), 1);
  EXPECT_EQ(p.indicator(), 6);
  EXPECT_TRUE(equivalent(p, RealChar(1, 6)));
  RealChar q = RealChar(8) * RealChar(1, 3);
  EXPECT_TRUE(equivalent(q, RealChar(8, 3)));
}

TEST(RealChar, Jacobi) {
  for (long r : {3L, 5L, 7L, 15L, 21L})
    for (long n = 1; n < 100; ++n) EXPECT_EQ(RealChar::jacobi(r)(n), kronecker(n, r)) << r << " " << n;
  EXPECT_THROW(RealChar::jacobi(4), DomainError);
}

TEST(RealChar, Errors) {
  EXPECT_THROW(RealChar(0), DomainError);
  EXPECT_THROW(RealChar(1, 0), DomainError);
}

TEST(ParseChar, Forms) {
  EXPECT_TRUE(parse_char("1").is_trivial());
  EXPECT_EQ(parse_char("kron(-4)"), RealChar(-4));
  EXPECT_EQ(parse_char("kron(-3) * ind(2)"), RealChar(-3, 2));
  EXPECT_EQ(parse_char("ind(6)"), RealChar(1, 6));
  EXPECT_THROW(parse_char("kron(x)"), ParseError);
  EXPECT_THROW(parse_char("foo"), ParseError);
  EXPECT_THROW(parse_char(""), ParseError);
}
