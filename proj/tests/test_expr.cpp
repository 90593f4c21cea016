#include <gtest/gtest.h>

#include <qlift/expr.hpp>

using namespace qlift;

TEST(Expr, EtaProducts) {
  FormExpr e = parse_form("eta(1)^15 * eta(5)^-3");
  ASSERT_TRUE(e.eta.has_value());
  EXPECT_EQ(*e.eta, (EtaQuotient{{1, 15}, {5, -3}}));
  EXPECT_EQ(e.weight2, 12);
  FormExpr d = parse_form("eta(1)^24");
  EXPECT_FALSE(first_mismatch(d.build(480), delta_series(480), 480));
}

TEST(Expr, NamedForms) {
  EXPECT_EQ(parse_form("E4").weight2, 8);
  EXPECT_EQ(parse_form("delta").weight2, 24);
  EXPECT_EQ(parse_form("theta:odd:3").weight2, 3);
  EXPECT_EQ(parse_form("theta:even:1").weight2, 1);
  EXPECT_EQ(parse_form("ex1.f0").weight2, 12);
  EXPECT_EQ(parse_form("ex2.g3").build(240).disc(), -14);
  Series t5 = parse_form("theta:odd:5").build(2000);
  EXPECT_FALSE(first_mismatch(t5, theta_series_build(theta_entry("odd:5"), 2000), 2000));
}

TEST(Expr, MixedProductAndSums) {
  FormExpr e = parse_form("eta(1)^5 * E4");
  EXPECT_EQ(e.weight2, 13);
  Series s = e.build(480);
  Series r = eta_quotient_series(EtaQuotient{{1, 5}}, 480) * e4_series(480);
  EXPECT_FALSE(first_mismatch(s, r, 480));
  FormExpr c = parse_form("E4^3 - 1728*delta - E6^2");
  EXPECT_EQ(c.weight2, 24);
  EXPECT_TRUE(c.build(24 * 20).is_zero());
  FormExpr n = parse_form("-E4 + (E4)");
  EXPECT_TRUE(n.build(240).is_zero());
  EXPECT_FALSE(parse_form("E4 + E6").weight2.has_value());
  Series h = parse_form("1/2*E4").build(48);
  EXPECT_EQ(h.coeff(0), FieldElem(make_rational(1, 2)));
}

TEST(Expr, Errors) {
  EXPECT_THROW(parse_form("eta(1)^-1").build(240), DomainError);
  EXPECT_THROW(parse_form("E5"), ParseError);
  EXPECT_THROW(parse_form("eta(0)"), ParseError);
  EXPECT_THROW(parse_form("E4 *"), ParseError);
  EXPECT_THROW(parse_form("(E4"), ParseError);
  EXPECT_THROW(parse_form("E4^-1"), ParseError);
  EXPECT_THROW(parse_form("theta:odd:9"), DomainError);
  try {
    parse_form("E4 ? E6");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.pos, 3u);
  }
}
