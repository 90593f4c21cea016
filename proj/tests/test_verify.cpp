#include <gtest/gtest.h>

#include <qlift/lmfdb.hpp>
#include <qlift/verify.hpp>

using namespace qlift;

TEST(Verify, T13Examples) {
  EXPECT_TRUE(check_T13("1a", eigenform("delta"), 2400).passed());
  EXPECT_TRUE(check_T13("1c", eigenform("E4"), 1200).passed());
  auto r = check_T13("2a", eigenform("delta"), 1200);
  EXPECT_TRUE(r.passed());
  EXPECT_NE(r.note.find("agree"), std::string::npos);
  EXPECT_THROW(check_T13("3a", eigenform("delta"), 240), DomainError);
}

TEST(Verify, T13AllCasesDelta) {
  for (const char* c : {"1a", "1b", "1c", "1d", "1e", "1f", "2a", "2b", "2c", "2d"}) {
    auto r = check_T13(c, eigenform("delta"), 720);
    EXPECT_TRUE(r.passed()) << r.describe();
    EXPECT_GE(r.bound, 720);
  }
}

TEST(Verify, NonEigenformSkipped) {
  Eigenform bad{"delta+E4", 12, 1, RealChar(), true, [](Index p) {
                  return delta_series(p) + series_scale(op_V(delta_series(p), 2), FieldElem(5L));
                }};
  auto r = check_T13("1a", bad, 480);
  EXPECT_EQ(r.status, Status::skipped);
  EXPECT_NE(r.reason.find("eigenform"), std::string::npos);
}

TEST(Verify, T14) {
  auto a = check_T14(1, eigenform("delta"), 1200);
  EXPECT_TRUE(a.passed()) << a.describe();
  EXPECT_TRUE(check_T14(2, eigenform("delta"), 1200).passed());
  EXPECT_TRUE(check_T14(1, eigenform("E6"), 1200).passed());
  Eigenform even = eigenform("delta");
  even.level = 2;
  EXPECT_EQ(check_T14(2, even, 240).status, Status::skipped);
  EXPECT_EQ(check_T14(1, even, 240).status, Status::skipped);
}

TEST(Verify, T17) {
  auto w1 = check_T17("1a", eigenform("delta"), 1, 1200);
  EXPECT_TRUE(w1.passed()) << w1.describe();
  EXPECT_TRUE(check_T17("2a", eigenform("delta"), 1, 1200).passed());
  EXPECT_EQ(check_T17("1a", eigenform("delta"), -1, 240).status, Status::skipped);
  EXPECT_EQ(t17_scalar("1a", 12, 0), Rational(1));
  EXPECT_EQ(t17_scalar("2a", 12, 0), Rational(1, 12));
  EXPECT_EQ(t17_scalar("1a", 12, 1), make_rational(12, 78 * 24));
}

TEST(Verify, T17SplitCasesReportBothReadings) {
  auto r = check_T17("2d", eigenform("delta"), 0, 720);
  EXPECT_TRUE(r.passed());
  EXPECT_NE(r.note.find("printed reading fails"), std::string::npos);
  auto e = check_T17("1e", eigenform("delta"), 0, 720);
  EXPECT_NE(e.note.find("printed reading passes"), std::string::npos);
}

TEST(Verify, T13EqualsT17AtWeightZero) {
  EXPECT_TRUE(check_T13_T17_agree(eigenform("delta"), 2400).passed());
}

TEST(Verify, Selberg) {
  EXPECT_TRUE(check_selberg(eigenform("delta"), 2400).passed());
  EXPECT_EQ(check_selberg(eigenform("E4"), 2400).status, Status::skipped);
  EXPECT_EQ(check_selberg(eigenform("delta"), 0).status, Status::skipped);
}

TEST(Verify, ThetaTables) {
  auto reps = check_theta_tables(2000);
  ASSERT_EQ(reps.size(), 12u);
  for (auto& r : reps) EXPECT_TRUE(r.passed()) << r.id;
}

TEST(Verify, CommutationCases) {
  for (auto c : comm_cases()) {
    auto r = check_comm(c.v, c.letter, c.p, 6);
    EXPECT_TRUE(r.passed()) << r.describe();
  }
}

TEST(Verify, Examples) {
  auto ex1 = check_T15_T16(parse_example("ex1"), 1200, lmfdb_checker());
  EXPECT_TRUE(ex1.passed()) << ex1.describe();
  EXPECT_NE(ex1.note.find("6.12.a.a pass through 50"), std::string::npos) << ex1.note;
  auto custom = check_T15_T16(parse_example("custom(1,E4)"), 720);
  EXPECT_TRUE(custom.passed()) << custom.describe();
  EXPECT_THROW(parse_example("ex9"), ParseError);
}

TEST(Verify, CorruptedFixtureFails) {
  LmfdbCheck corrupt = [](const std::string& label, const Series& f, std::size_t through,
                          long weight) {
    auto rec = fetch(label, through);
    rec.a[16] += FieldElem(1L);
    return compare(rec, f, through, weight);
  };
  auto r = check_T15_T16(parse_example("ex2"), 1300, corrupt);
  EXPECT_EQ(r.status, Status::fail);
  ASSERT_TRUE(r.mismatch.has_value());
  EXPECT_EQ(*r.mismatch, 24 * 17);
}

TEST(Verify, RunAllLowPrecisionHasNoFailures) {
  auto rep = run_all(24, 2, lmfdb_checker());
  EXPECT_TRUE(rep.all_pass());
  for (auto& r : rep.reports) EXPECT_NE(r.status, Status::fail) << r.describe();
}

TEST(Verify, DeterministicOrdering) {
  auto a = run_all(48, 3), b = run_all(48, 1);
  ASSERT_EQ(a.reports.size(), b.reports.size());
  for (std::size_t i = 0; i < a.reports.size(); ++i) {
    EXPECT_EQ(a.reports[i].id, b.reports[i].id);
    EXPECT_EQ(a.reports[i].bound, b.reports[i].bound);
    EXPECT_EQ(a.reports[i].status, b.reports[i].status);
  }
  EXPECT_TRUE(std::is_sorted(a.reports.begin(), a.reports.end(),
                             [](auto& x, auto& y) { return x.id < y.id; }));
}

TEST(Verify, ReportLineFormat) {
  CheckReport r;
  r.id = "x";
  r.status = Status::pass;
  r.bound = 2424;
  r.millis = 1.25;
  EXPECT_EQ(r.line(), "x\tpass\t2424\t1.2");
}
