#include <gtest/gtest.h>

#include <vector>

#include "whitlab/exactmath.hpp"

using namespace whitlab;

namespace {

// q-Pascal recurrence; independent of the product formula used by qbinom.
BigInt qbinom_pascal(int r, int s, unsigned q) {
  if (s < 0 || s > r) return 0;
  std::vector<std::vector<BigInt>> t(r + 1, std::vector<BigInt>(r + 1, 0));
  for (int i = 0; i <= r; ++i) {
    t[i][0] = 1;
    for (int j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + qpow(q, j) * (j <= i - 1 ? t[i - 1][j] : BigInt(0));
  }
  return t[r][s];
}

BigInt direct_power_sum(unsigned j, unsigned a) {
  BigInt s = 0;
  for (unsigned i = 1; i <= a; ++i) s += pow_big(BigInt(i), j);
  return s;
}

}  // namespace

TEST(Binom, ZeroConvention) {
  EXPECT_EQ(binom(5, 2), 10);
  EXPECT_EQ(binom(5, -1), 0);
  EXPECT_EQ(binom(5, 6), 0);
  EXPECT_EQ(binom(-1, 0), 0);
  EXPECT_EQ(binom(0, 0), 1);
}

TEST(QBinom, Examples) {
  EXPECT_EQ(qbinom(7, 0, 3), 1);
  EXPECT_EQ(qbinom(4, 2, 2), 35);
  EXPECT_EQ(qbinom(5, 2, 3), qbinom(5, 3, 3));
  EXPECT_EQ(qbinom(3, 5, 2), 0);
  EXPECT_EQ(qbinom(-1, 0, 2), 0);
  EXPECT_EQ(qbinom(3, -1, 2), 0);
  EXPECT_THROW(qbinom(3, 1, 1), std::invalid_argument);
}

TEST(QBinom, MatchesPascalRecurrence) {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u})
    for (int r = 0; r <= 9; ++r)
      for (int s = 0; s <= r; ++s) EXPECT_EQ(qbinom(r, s, q), qbinom_pascal(r, s, q)) << r << " " << s << " " << q;
}

TEST(QBinom, ProductIdentity) {
  for (unsigned q : {2u, 3u, 4u, 5u})
    for (int r = 0; r <= 8; ++r)
      for (int s = 0; s <= r; ++s)
        for (int t = 0; t <= s; ++t)
          EXPECT_EQ(qbinom(r, s, q) * qbinom(s, t, q), qbinom(r, t, q) * qbinom(r - t, r - s, q));
}

TEST(QBinom, AlternatingSumVanishes) {
  for (unsigned q : {2u, 3u, 4u, 5u})
    for (int i = 1; i <= 8; ++i) {
      BigInt acc = 0;
      for (int k = 0; k <= i; ++k) acc += qbinom(i, k, q) * sign_pow(i - k) * qpow(q, choose2(i - k));
      EXPECT_EQ(acc, 0) << "i=" << i << " q=" << q;
    }
}

TEST(Bernoulli, Values) {
  EXPECT_EQ(bernoulli(0), Rational(1));
  EXPECT_EQ(bernoulli(1), Rational(-1, 2));
  EXPECT_EQ(bernoulli(2), Rational(1, 6));
  EXPECT_EQ(bernoulli(3), Rational(0));
  EXPECT_EQ(bernoulli(4), Rational(-1, 30));
  for (unsigned i = 3; i < 25; i += 2) EXPECT_EQ(bernoulli(i), 0) << i;
}

TEST(PowerSum, Examples) {
  EXPECT_EQ(power_sum(1, 4), 10);
  EXPECT_EQ(power_sum(2, 3), 14);
  EXPECT_EQ(power_sum(3, 5), 225);
  EXPECT_EQ(power_sum(0, 0), 0);
}

TEST(PowerSum, MatchesDirectSummation) {
  for (unsigned j = 0; j <= 8; ++j)
    for (unsigned a = 0; a <= 50; ++a) EXPECT_EQ(power_sum(j, a), direct_power_sum(j, a)) << j << " " << a;
}

TEST(Ratio, Canonical) {
  EXPECT_EQ(ratio(6, 4), Rational(3, 2));
  EXPECT_EQ(ratio(-57, 19), Rational(-3));
  EXPECT_EQ(ratio(3, -6).get_den(), 2);
  EXPECT_THROW(ratio(1, 0), std::domain_error);
}

TEST(UniPolyQ, Basics) {
  UniPolyQ zero;
  EXPECT_EQ(zero.degree(), -1);
  EXPECT_TRUE(zero.is_zero());
  UniPolyQ p({Rational(0), Rational(0), Rational(0)});
  EXPECT_TRUE(p.is_zero());
  const auto x = UniPolyQ::variable();
  const auto sq = x * x;
  EXPECT_EQ(sq.degree(), 2);
  EXPECT_EQ(sq(Rational(3)), 9);
  EXPECT_EQ((x + UniPolyQ::constant(1)).shift(2), x + UniPolyQ::constant(3));
  EXPECT_EQ(sq.shift(-1), x * x - x * Rational(2) + UniPolyQ::constant(1));
  EXPECT_EQ(UniPolyQ({Rational(-1), Rational(1, 2)}).to_string("a"), "1/2*a - 1");
}

TEST(PolyTools, ExpandLinearFactors) {
  std::vector<Rational> r{1, 2};
  auto p = expand_linear_factors(r);
  EXPECT_EQ(p, UniPolyQ({Rational(2), Rational(-3), Rational(1)}));
  EXPECT_EQ(p.to_string("λ"), "λ^2 - 3*λ + 2");

  std::vector<Rational> table{1, 2, 4, 8, 10};
  auto t = expand_linear_factors(table);
  std::vector<Rational> want{-640, 1264, -820, 220, -25, 1};
  EXPECT_EQ(t, UniPolyQ(want));
}

TEST(PolyTools, DeflateRoots) {
  std::vector<Rational> roots{1, 2, 4};
  auto p = expand_linear_factors(roots) * UniPolyQ({Rational(3), Rational(-3), Rational(1)});
  std::vector<Rational> drop{4, 1, 2};
  EXPECT_EQ(deflate_roots(p, drop), UniPolyQ({Rational(3), Rational(-3), Rational(1)}));
  std::vector<Rational> bad{5};
  try {
    deflate_roots(p, bad);
    FAIL() << "expected DeflationError";
  } catch (const DeflationError& e) {
    EXPECT_EQ(e.remainder(), p(Rational(5)));
  }
}

TEST(Lagrange, Interpolation) {
  std::vector<std::pair<Rational, Rational>> sq{{0, 0}, {1, 1}, {2, 4}};
  EXPECT_EQ(lagrange_interpolate(sq), UniPolyQ::variable() * UniPolyQ::variable());

  std::vector<std::pair<Rational, Rational>> c{{3, 7}, {5, 7}, {11, 7}};
  EXPECT_EQ(lagrange_interpolate(c).degree(), 0);

  std::vector<Rational> r{1, 2};
  auto target = expand_linear_factors(r);
  std::vector<std::pair<Rational, Rational>> pts;
  for (int x = 0; x <= 2; ++x) pts.emplace_back(x, target(Rational(x)));
  EXPECT_EQ(lagrange_interpolate(pts), target);

  std::vector<std::pair<Rational, Rational>> dup{{1, 2}, {1, 3}};
  EXPECT_THROW(lagrange_interpolate(dup), std::invalid_argument);
}

TEST(Lagrange, ReproducesOrdinates) {
  std::vector<std::pair<Rational, Rational>> pts;
  for (int x = -3; x <= 4; ++x) pts.emplace_back(ratio(x, 2), ratio(x * x * x - 7, 3 + x * x));
  auto p = lagrange_interpolate(pts);
  for (const auto& [x, y] : pts) EXPECT_EQ(p(x), y);
}

TEST(PowerSumPoly, MatchesDirectSums) {
  for (unsigned j = 0; j <= 8; ++j) {
    const auto S = power_sum_poly(j);
    EXPECT_EQ(S.degree(), static_cast<int>(j) + 1);
    EXPECT_EQ(S(Rational(0)), 0);
    for (std::uint64_t a = 1; a <= 30; ++a) EXPECT_EQ(S(Rational(static_cast<long>(a))), Rational(power_sum(j, a)));
  }
  EXPECT_EQ(power_sum_poly(1), UniPolyQ({0, Rational(1, 2), Rational(1, 2)}));
}
