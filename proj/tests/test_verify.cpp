#include <gtest/gtest.h>

#include "whitlab/verify.hpp"

using namespace whitlab;
using namespace whitlab::verify;

TEST(Session, CountsAndSink) {
  std::vector<Check> seen;
  Session s({}, [&](const Check& c) { seen.push_back(c); });
  s.set_suite("x");
  EXPECT_TRUE(s.equal("same", BigInt(3), BigInt(3)));
  EXPECT_FALSE(s.equal("differ", BigInt(3), BigInt(4)));
  EXPECT_EQ(s.passed(), 1u);
  EXPECT_EQ(s.failed(), 1u);
  ASSERT_EQ(seen.size(), 2u);
  EXPECT_EQ(seen[1].suite, "x");
  EXPECT_EQ(seen[1].lhs, "3");
  EXPECT_EQ(seen[1].rhs, "4");
}

TEST(Session, BruteIsCachedAndStable) {
  Session s;
  const auto& a = s.brute_hwdl(2, 3, 2);
  for (int n = 2; n <= 4; ++n) s.brute_hwdl(2, n, 1);  // grows the registry
  const auto& b = s.brute_hwdl(2, 3, 2);
  EXPECT_EQ(&a, &b);
  EXPECT_EQ(a, (WhitneySequence{1, -6, 11, -6}));
  EXPECT_EQ(s.built().size(), 4u);
}

TEST(Session, BudgetThrowsCapExceeded) {
  Session s({1, 1e-9, 1});
  while (s.elapsed_sec() <= 1e-9) {
  }
  EXPECT_THROW(s.guard(), CapExceeded);
  EXPECT_THROW(run_suite(s, "duality"), CapExceeded);
}

TEST(Suites, UnknownSuite) {
  Session s;
  EXPECT_THROW(run_suite(s, "nope"), std::invalid_argument);
}

TEST(Suites, QuickSuitesPass) {
  for (const char* suite : {"duality", "asymptotics", "agreement"}) {
    std::vector<Check> bad;
    Session s({}, [&](const Check& c) {
      if (!c.passed) bad.push_back(c);
    });
    run_suite(s, suite);
    EXPECT_GT(s.passed(), 0u) << suite;
    for (const auto& c : bad) ADD_FAILURE() << suite << ": " << c.name << ": " << c.lhs << " vs " << c.rhs;
  }
}

TEST(Suites, RoundTripsBuildTablesWhenEmpty) {
  Session s;
  transform_round_trips(s);
  EXPECT_FALSE(s.built().empty());
  EXPECT_EQ(s.failed(), 0u);
}

TEST(Coefficients, PrintedAndCorrected) {
  // Independent: q^4 coefficient of w_2(q,6,3) from the expanded polynomial.
  EXPECT_EQ(w2_d3_coefficient(6), w2_d3_poly_in_q(6).coeff(4));
  EXPECT_EQ(w2_d3_coefficient(6), 145);
  EXPECT_EQ(w2_d3_coefficient_printed(6), -1);
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(w2_d3_coefficient(n), 0) << n;
  for (int n = 6; n <= 12; ++n) EXPECT_EQ(w2_d3_fit(n, 1).poly->coeff(4), w2_d3_coefficient(n)) << n;
  // Sharpness coefficient at n = 4 agrees with the Dowling value e_2(1,2,3) = 11.
  EXPECT_EQ(sharp_coefficient(4), 11);
}

TEST(Coefficients, PrintedComparisonFails) {
  Session s;
  w2_d3_leading_printed(s);
  EXPECT_GT(s.failed(), 0u);
}
