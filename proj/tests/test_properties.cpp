#include <gtest/gtest.h>

#include "properties.hpp"

using namespace qlift;

TEST(Properties, UFactor) {
  auto r = props::u_factor();
  EXPECT_TRUE(r.ok()) << r.failure;
  EXPECT_EQ(r.cases, 1500);
}

TEST(Properties, EigenMultiplicativity) {
  auto r = props::eigen_multiplicativity();
  EXPECT_TRUE(r.ok()) << r.failure;
}

TEST(Properties, TwistCommutesWithV) {
  auto r = props::twist_v_commute();
  EXPECT_TRUE(r.ok()) << r.failure;
}

TEST(Properties, ThetaLeibniz) {
  auto r = props::theta_leibniz();
  EXPECT_TRUE(r.ok()) << r.failure;
}

TEST(Properties, VThenU) {
  auto r = props::v_then_u();
  EXPECT_TRUE(r.ok()) << r.failure;
}

TEST(Properties, KroneckerWindows) {
  auto r = props::kronecker_windows();
  EXPECT_TRUE(r.ok()) << r.failure;
}

TEST(Properties, InverseRoundTrip) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    Series f = props::random_sparse(rng, 20, 24 * 30) + Series::constant(FieldElem(1L));
    if (f.coeff(0).is_zero()) continue;
    Series prod = f * series_inv(f, 24 * 30);
    EXPECT_FALSE(first_mismatch(prod, Series::constant(FieldElem(1L)), prod.prec())) << i;
  }
}

TEST(Properties, PowerAddsExponents) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 60; ++i) {
    Series f = props::random_sparse(rng, 10, 24 * 25) + Series::constant(FieldElem(1L));
    if (f.coeff(0).is_zero()) continue;
    Series a = series_pow(f, 3) * series_pow(f, 4);
    Series b = series_pow(f, 7);
    EXPECT_FALSE(first_mismatch(a, b, std::min(a.prec(), b.prec()))) << i;
  }
}
