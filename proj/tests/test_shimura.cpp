#include <gtest/gtest.h>

#include <qlift/shimura.hpp>

using namespace qlift;

namespace {

std::vector<long> ints(const Series& s, int n) {
  std::vector<long> v;
  for (int i = 1; i <= n; ++i) v.push_back(s.int_coeff(i).a().get_num().get_si());
  return v;
}

PipelineInput example_input(int which) {
  const auto& fx = example_fixture(which);
  PipelineInput in;
  in.r = fx.r;
  in.mode = fx.eta3r ? PipelineMode::eta_3r : PipelineMode::eta_r;
  in.f = fx.eta3r ? e6_series : e4_series;
  in.f_weight2 = fx.weight2_f;
  in.basis = [&fx](Index p) { return example_basis(fx, p); };
  return in;
}

}  // namespace

TEST(Lift, Example1Direct) {
  Series f = eta_quotient_series(EtaQuotient{{1, 5}}, 5 * 8 * 8 + 1) * e4_series(5 * 8 * 8 + 1);
  Series L = s_eta(f, {5, 6, RealChar(), LiftVariant::eta24});
  EXPECT_EQ(ints(L, 7), (std::vector<long>{1, -32, -243, 1024, 5766, 7776, 72464}));
  EXPECT_EQ(L.prec(), 24 * 9);
}

TEST(Lift, Example2Direct) {
  Index P = 9 * 6 * 6 + 1;
  Series f = eta_quotient_series(EtaQuotient{{1, 9}}, P) * e6_series(P);
  Series L = s_eta(f, {3, 10, RealChar(), LiftVariant::eta8});
  EXPECT_EQ(ints(L, 5), (std::vector<long>{1, -512, -13092, 262144, 6546750}));
}

TEST(Lift, ValidateT) {
  Series f = eta_quotient_series(EtaQuotient{{1, 5}}, 2000);
  EXPECT_THROW(s_eta(f, {4, 6, RealChar(), LiftVariant::eta24}), DomainError);
  EXPECT_THROW(s_eta(f, {0, 6, RealChar(), LiftVariant::eta24}), DomainError);
  LiftSpec low{1, 1, RealChar(), LiftVariant::eta24};
  EXPECT_EQ(low.validate().size(), 1u);
}

TEST(Lift, ZeroInputGivesZero) {
  Series z(2401);
  Series L = s_eta(z, {1, 12, RealChar(), LiftVariant::eta24});
  EXPECT_TRUE(L.is_zero());
  EXPECT_EQ(L.prec(), 24 * 49);
}

TEST(Lift, ResidueClassViolations) {
  Series mixed = Series::from_terms({{1, FieldElem(1L)}, {5, FieldElem(1L)}}, 1000);
  EXPECT_THROW(s_eta(mixed, {1, 6, RealChar(), LiftVariant::eta24}), DomainError);
  Series wrong = Series::monomial(3, FieldElem(1L), 1000);
  EXPECT_THROW(s_eta(wrong, {1, 6, RealChar(), LiftVariant::eta24}), DomainError);
  Series odd8 = Series::monomial(6, FieldElem(1L), 1000);
  EXPECT_THROW(s_eta(odd8, {1, 6, RealChar(), LiftVariant::eta8}), DomainError);
  EXPECT_THROW(s_eta(Series::monomial(1, FieldElem(1L)), {1, 6, RealChar(), LiftVariant::eta24}),
               PrecisionError);
}

TEST(Lift, ThetaRejectsOffGrid) {
  Series f = Series::monomial(1, FieldElem(1L), 1000);
  EXPECT_THROW(sh_theta(f, {1, 6, RealChar(), LiftVariant::theta}), DomainError);
}

TEST(Lift, SelbergForDelta) {
  Index N = 30, P = 24 * N * N + 1;
  std::vector<Series::Term> th{{0, FieldElem(1L)}};
  for (Index n = 1; 24 * n * n < P; ++n) th.emplace_back(24 * n * n, FieldElem(2L));
  Series F = op_V(delta_series((P + 3) / 4), 4).truncated(P) * Series::from_terms(th, P);
  Series L = sh_theta(F, {1, 12, RealChar(1, 2), LiftVariant::theta});
  Series D = delta_series(24 * (N + 1));
  Series R = D * D - series_scale(op_V(D, 2) * op_V(D, 2), FieldElem(2048L));
  EXPECT_FALSE(first_mismatch(L, R, std::min(L.prec(), R.prec())));
}

TEST(Lift, VariantNames) {
  EXPECT_EQ(parse_variant("eta8"), LiftVariant::eta8);
  EXPECT_STREQ(variant_name(LiftVariant::theta), "theta");
  EXPECT_THROW(parse_variant("eta12"), ParseError);
}

TEST(Pipeline, Example1BothPaths) {
  auto res = run_pipeline(example_input(1), 24 * 30, true, true);
  EXPECT_FALSE(res.disagreement);
  EXPECT_GE(res.agreement_bound, 24 * 30);
  const auto& fx = example_fixture(1);
  EXPECT_EQ(res.alpha[0], FieldElem(make_rational(-5, 67)));
  EXPECT_EQ(res.alpha[1], fx.alpha[2]);
  EXPECT_EQ(res.alpha[2], fx.alpha[1]);
  EXPECT_TRUE(res.alpha[3].is_zero());
}

TEST(Pipeline, Example2BothPaths) {
  auto res = run_pipeline(example_input(2), 24 * 20, true, true);
  EXPECT_FALSE(res.disagreement);
  const auto& fx = example_fixture(2);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(res.alpha[i], fx.alpha[i]) << i;
}

TEST(Pipeline, RangeOfR) {
  PipelineInput in = example_input(1);
  in.r = 2;
  EXPECT_THROW(pipeline_direct(in, 240), DomainError);
  in.mode = PipelineMode::eta_3r;
  in.r = 11;
  EXPECT_THROW(pipeline_direct(in, 240), DomainError);
}

TEST(Pipeline, LiftSpecCharacter) {
  PipelineInput in = example_input(1);
  LiftSpec s = pipeline_lift_spec(in);
  EXPECT_EQ(s.kappa, 6);
  EXPECT_TRUE(equivalent(s.chi, RealChar(5)));
  EXPECT_EQ(s.variant, LiftVariant::eta24);
}

TEST(Pipeline, GFormsAgreeWithLift) {
  Index N = 40;
  Series D = delta_series(24 * (N + 1));
  Series F1 = eta_quotient_series(EtaQuotient{{1, 25}}, N * N + 1);
  Series L1 = s_eta(F1, {1, 12, RealChar(), LiftVariant::eta24});
  EXPECT_FALSE(first_mismatch(L1, G_eta_r(D), L1.prec()));
  Series F3 = eta_quotient_series(EtaQuotient{{1, 27}}, 3 * N * N + 1);
  Series L3 = s_eta(F3, {1, 13, RealChar(), LiftVariant::eta8});
  EXPECT_FALSE(first_mismatch(L3, G_eta_3r(D), L3.prec()));
}

TEST(LiftRelation, BothVariants) {
  Index N = 20;
  Series f24 = eta_quotient_series(EtaQuotient{{1, 25}}, N * N + 1);
  EXPECT_TRUE(lift_relation_check(f24, {1, 12, RealChar(), LiftVariant::eta24}).passed());
  Series f8 = eta_quotient_series(EtaQuotient{{1, 27}}, 3 * N * N + 1);
  EXPECT_TRUE(lift_relation_check(f8, {1, 13, RealChar(), LiftVariant::eta8}).passed());
  Series f5 = eta_quotient_series(EtaQuotient{{1, 5}}, 5 * N * N + 1) * e4_series(5 * N * N + 1);
  EXPECT_TRUE(lift_relation_check(f5, {5, 6, RealChar(), LiftVariant::eta24}).passed());
}
