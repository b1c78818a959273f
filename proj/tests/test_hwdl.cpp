#include <gtest/gtest.h>

#include <map>

#include "whitlab/hwdl.hpp"
#include "whitlab/lattice.hpp"

using namespace whitlab;

namespace {

// Brute-force Whitney numbers from the closed lattice, cached per (q,n,d).
const WhitneySequence& brute_whitney(std::uint64_t q, int n, int d) {
  static std::map<std::tuple<std::uint64_t, int, int>, WhitneySequence> cache;
  auto key = std::make_tuple(q, n, d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Field F(q);
  return cache.emplace(key, build_geometry(F, hwdl_atoms(F, n, d)).whitney()).first->second;
}

// Whitney numbers through the alpha transform, w_0..w_kmax only.
WhitneySequence transform_whitney(std::uint64_t q, int n, int d, int kmax) {
  Field F(q);
  return whitney_from_alpha(q, n, alpha_sequence(F, n, hwdl_atoms(F, n, d), kmax));
}

BigInt poly_q(std::initializer_list<long> coeffs_high_to_low, std::uint64_t q) {
  BigInt acc = 0;
  for (long c : coeffs_high_to_low) acc = acc * BigInt(static_cast<unsigned long>(q)) + c;
  return acc;
}

}  // namespace

TEST(WhitneyClosed, Examples) {
  for (std::uint64_t q : {2, 3, 5})
    for (int n = 1; n <= 6; ++n)
      for (int i = 0; i <= n; ++i) EXPECT_EQ(*whitney_closed(q, n, 1, i), sign_pow(i) * binom(n, i));
  for (std::uint64_t q : {2, 3, 4, 7}) EXPECT_EQ(*whitney_closed(q, 4, 3, 2), poly_q({3, 1, 2, -1, 1}, q));
  EXPECT_EQ(*whitney_closed(2, 5, 3, 3), -820);
  EXPECT_EQ(*whitney_closed(2, 5, 3, 2), 220);
  EXPECT_EQ(*whitney_closed(2, 5, 3, 2), poly_q({30, -55, 60, -35, 10}, 2));
  EXPECT_EQ(*whitney_closed(2, 5, 3, 4), 1264);  // d = n-2 covers every i
  EXPECT_FALSE(whitney_closed(2, 6, 3, 4).has_value());
  EXPECT_FALSE(whitney_closed(3, 7, 4, 3).has_value());
  // d > n is the full subspace lattice
  EXPECT_EQ(*whitney_closed(3, 3, 7, 2), *whitney_closed(3, 3, 3, 2));
}

TEST(WhitneyClosed, SmallTableForD3) {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9})
    for (int t = 2; t <= 5; ++t) EXPECT_EQ(*whitney_closed(q, t, 3, 2), w2_small_d3(q, t)) << q << " " << t;
}

TEST(WhitneyClosed, MatchesBruteForceAndTransforms) {
  for (std::uint64_t q : {2, 3, 4}) {
    Field F(q);
    for (int n = 1; n <= (q == 4 ? 4 : 5); ++n)
      for (int d = 1; d <= n; ++d) {
        const auto& brute = brute_whitney(q, n, d);
        const auto alpha = alpha_sequence(F, n, hwdl_atoms(F, n, d));
        EXPECT_EQ(whitney_from_alpha(q, n, alpha), brute) << q << " " << n << " " << d;
        EXPECT_EQ(whitney_from_beta(q, n, beta_from_alpha(q, n, alpha)), brute);
        for (int i = 0; i <= n; ++i)
          if (auto w = whitney_closed(q, n, d, i)) {
            EXPECT_EQ(*w, brute[i]) << "q=" << q << " n=" << n << " d=" << d << " i=" << i;
          }
      }
  }
}

TEST(WhitneyClosed, FiveDimensionalOverF4ViaTransform) {
  for (int d = 1; d <= 5; ++d) {
    const auto w = transform_whitney(4, 5, d, 5);
    for (int i = 0; i <= 5; ++i)
      if (auto c = whitney_closed(4, 5, d, i)) {
        EXPECT_EQ(*c, w[i]) << d << " " << i;
      }
  }
}

TEST(W2General, Examples) {
  EXPECT_EQ(w2_general(2, 5, 3), 220);
  for (std::uint64_t q : {2, 3, 4, 5, 7}) EXPECT_EQ(w2_general(q, 2, 2), BigInt(static_cast<unsigned long>(q)));
  EXPECT_EQ(w2_general(3, 4, 2), dowling_whitney(3, 4, 2));
  EXPECT_THROW(w2_general(2, 3, 4), std::invalid_argument);
  EXPECT_THROW(w2_general(2, 3, 1), std::invalid_argument);
}

TEST(W2General, MatchesBruteForce) {
  for (std::uint64_t q : {2, 3, 4, 5}) {
    for (int n = 2; n <= (q <= 3 ? 6 : 5); ++n)
      for (int d = 2; d <= n; ++d) {
        const BigInt brute = transform_whitney(q, n, d, 2)[2];
        EXPECT_EQ(w2_general(q, n, d), brute) << "q=" << q << " n=" << n << " d=" << d;
      }
  }
}

TEST(W2General, ParallelMatchesSerial) {
  EXPECT_EQ(w2_general(7, 9, 4, 3), w2_general(7, 9, 4));
  EXPECT_EQ(beta2_closed(5, 8, 3, 4), beta2_closed(5, 8, 3));
}

TEST(W2General, LargeFieldUsesPolynomialGamma) {
  // q > 256 takes the gamma_poly route inside the census
  EXPECT_EQ(w2_general(257, 6, 3), w2_d3_polynomial(257, 6));
  EXPECT_EQ(w2_general(997, 7, 3), w2_d3_reduced(997, 7));
}

TEST(Beta2Closed, Examples) {
  EXPECT_EQ(beta2_closed(2, 5, 3), 155);
  for (std::uint64_t q : {2, 3, 4})
    for (int n = 2; n <= 6; ++n) EXPECT_EQ(beta2_closed(q, n, n), qbinom(n, 2, q));
  EXPECT_EQ(beta2_closed(3, 4, 2), beta_enum(Field(3), 4, 2, 2));
}

TEST(Beta2Closed, MatchesEnumeration) {
  for (std::uint64_t q : {2, 3, 4, 5}) {
    Field F(q);
    for (int n = 2; n <= (q <= 3 ? 6 : 4); ++n)
      for (int d = 2; d <= n; ++d)
        EXPECT_EQ(beta2_closed(q, n, d), beta_enum(F, n, d, 2)) << "q=" << q << " n=" << n << " d=" << d;
  }
}

TEST(Reduction, Example) {
  std::map<int, BigInt> lower{{2, 2}, {3, 14}, {4, 63}, {5, 220}};
  EXPECT_EQ(reduction_formula(2, 6, 3, 2, lower), transform_whitney(2, 6, 3, 2)[2]);
  lower.erase(4);
  EXPECT_THROW(reduction_formula(2, 6, 3, 2, lower), std::invalid_argument);
  EXPECT_THROW(reduction_formula(2, 5, 3, 2, {}), std::invalid_argument);
}

TEST(Reduction, FirstWhitneyIsMinusAtomCount) {
  for (std::uint64_t q : {2, 3, 5})
    for (int d = 1; d <= 4; ++d)
      for (int n = d; n <= 9; ++n) {
        std::map<int, BigInt> lower;
        for (int t = 1; t < d; ++t) lower[t] = -hwdl_atom_count(q, t, d);
        EXPECT_EQ(reduction_formula(q, n, d, 1, lower), -hwdl_atom_count(q, n, d));
      }
}

TEST(Reduction, MatchesD3Specialization) {
  for (std::uint64_t q : {2, 3})
    for (int n = 6; n <= 8; ++n) {
      std::map<int, BigInt> lower;
      for (int t = 2; t <= 5; ++t) lower[t] = w2_small_d3(q, t);
      EXPECT_EQ(reduction_formula(q, n, 3, 2, lower), w2_d3_reduced(q, n));
    }
}

TEST(Reduction, MatchesBruteForceBeyondId) {
  // n >= i*d with lower values from brute force
  for (std::uint64_t q : {2, 3}) {
    const int d = 2, i = 2;
    std::map<int, BigInt> lower;
    for (int t = i; t <= i * d - 1; ++t) lower[t] = brute_whitney(q, t, d)[i];
    for (int n = 4; n <= 5; ++n) EXPECT_EQ(reduction_formula(q, n, d, i, lower), brute_whitney(q, n, d)[i]);
  }
  std::map<int, BigInt> lower;
  for (int t = 3; t <= 5; ++t) lower[t] = brute_whitney(2, t, 2)[3];
  EXPECT_EQ(reduction_formula(2, 6, 2, 3, lower), dowling_whitney(2, 6, 3));
}

TEST(W2D3, TwoFormsAgree) {
  for (std::uint64_t q : {2, 3, 4, 5, 7})
    for (int n = 6; n <= 12; ++n) EXPECT_EQ(w2_d3_reduced(q, n), w2_d3_polynomial(q, n)) << q << " " << n;
  for (std::uint64_t q : {2, 3, 4, 5})
    for (int n = 6; n <= 8; ++n) EXPECT_EQ(w2_general(q, n, 3), w2_d3_polynomial(q, n));
}

TEST(W3Binary, TableMatchesBruteForce) {
  for (int t = 3; t <= 8; ++t) EXPECT_EQ(transform_whitney(2, t, 3, 3)[3], w3_binary_d3_table(t)) << t;
}

TEST(W3Binary, NineAgainstBruteForce) {
  const BigInt brute = transform_whitney(2, 9, 3, 3)[3];
  EXPECT_EQ(w3_binary_d3(9), brute);
  // the typeset C(n,8) coefficient on the t = 7 term does not reproduce it
  EXPECT_NE(w3_binary_d3_as_printed(9), brute);
}

TEST(SupportId, Examples) {
  EXPECT_EQ(support_id_count(2, 4, 2, 2), 3);
  for (std::uint64_t q : {2, 3, 4})
    for (int d = 1; d <= 4; ++d)
      for (int n = d; n <= 8; ++n)
        EXPECT_EQ(support_id_count(q, n, d, 1), binom(n, d) * pow_big(BigInt(static_cast<unsigned long>(q - 1)), d - 1));
  // n = id: the supports partition [id] into i blocks of size d
  for (int d = 1; d <= 4; ++d)
    for (int i = 1; i <= 3; ++i) {
      BigInt blocks = 1;
      for (int j = 0; j < i; ++j) blocks *= binom((i - j) * d, d);
      for (int j = 2; j <= i; ++j) blocks /= j;  // blocks are unordered
      EXPECT_EQ(support_id_count(3, i * d, d, i), blocks * pow_big(2, i * (d - 1))) << d << " " << i;
    }
  EXPECT_THROW(support_id_count(2, 5, 3, 2), std::invalid_argument);
}

TEST(SupportId, MatchesGeometryAndMobius) {
  for (std::uint64_t q : {2, 3}) {
    Field F(q);
    for (int n = 1; n <= (q == 2 ? 6 : 5); ++n)
      for (int d = 1; d <= std::min(n, 3); ++d) {
        auto g = build_geometry(F, hwdl_atoms(F, n, d));
        for (int i = 1; i <= 2 && i * d <= n; ++i) {
          long count = 0;
          for (std::size_t x = g.layer_begin(i); x < g.layer_end(i); ++x)
            if (std::popcount(g.element(x).support_mask()) == i * d) {
              ++count;
              EXPECT_EQ(g.mobius(x), sign_pow(i));
            }
          EXPECT_EQ(support_id_count(q, n, d, i), count) << q << " " << n << " " << d << " " << i;
        }
      }
  }
}

TEST(Duality, Example) {
  const auto [l, r] = duality_residual(2, 4, 1, brute_whitney(2, 4, 1), brute_whitney(2, 4, 3));
  EXPECT_EQ(l, 1);
  EXPECT_EQ(r, 1);
  EXPECT_THROW(duality_residual(2, 4, 4, {1}, {1}), std::invalid_argument);
}

TEST(Duality, HoldsAtDeskScale) {
  for (std::uint64_t q : {2, 3})
    for (int n = 2; n <= 5; ++n)
      for (int d = 1; d < n; ++d) {
        const auto [l, r] = duality_residual(q, n, d, brute_whitney(q, n, d), brute_whitney(q, n, n - d));
        EXPECT_EQ(l, r) << q << " " << n << " " << d;
      }
}

TEST(TwoSpaces, Examples) {
  for (std::uint64_t q : {2, 3}) {
    EXPECT_EQ(whitney_two_spaces(q, 5, 2, 3, 1, 0), 1);
    EXPECT_EQ(whitney_two_spaces(q, 5, 2, 3, 1, 1), -(qbinom(2, 1, q) + qbinom(3, 1, q) - qbinom(1, 1, q)));
    for (int a = 0; a <= 4; ++a)
      for (int i = 0; i <= a; ++i) EXPECT_EQ(whitney_two_spaces(q, 4, a, a, a, i), detail::full_lattice_w(q, a, i));
  }
  EXPECT_THROW(whitney_two_spaces(2, 3, 2, 2, 0, 1), std::invalid_argument);
  EXPECT_THROW(whitney_two_spaces(2, 3, 1, 1, 2, 1), std::invalid_argument);
}

TEST(TwoSpaces, MatchesBruteForce) {
  for (std::uint64_t q : {2, 3}) {
    Field F(q);
    const int n = 4;
    for (int r1 = 0; r1 <= n; ++r1)
      for (int r2 = 0; r2 <= n; ++r2)
        for (int rm = 0; rm <= std::min(r1, r2); ++rm) {
          if (r1 + r2 - rm > n) continue;
          std::vector<int> c1, c2;
          for (int c = 0; c < r1; ++c) c1.push_back(c);
          for (int c = 0; c < rm; ++c) c2.push_back(c);
          for (int c = r1; c < r1 + r2 - rm; ++c) c2.push_back(c);
          auto A = subspace_union_atoms(F, n, {coordinate_subspace(F, n, c1), coordinate_subspace(F, n, c2)});
          auto w = build_geometry(F, A).whitney();
          w.resize(n + 1, 0);
          for (int i = 0; i <= n; ++i)
            EXPECT_EQ(whitney_two_spaces(q, n, r1, r2, rm, i), w[i]) << r1 << r2 << rm << " i=" << i;
        }
  }
}

TEST(TwoSpaces, SkewPositionMatchesBruteForce) {
  // two planes in F_3^4 meeting in a line, neither spanned by unit vectors
  Field F(3);
  Subspace A1 = canonicalize(F, 4, {{1, 1, 0, 0}, {0, 1, 1, 2}});
  Subspace A2 = canonicalize(F, 4, {{1, 1, 0, 0}, {0, 0, 1, 1}});
  ASSERT_EQ(intersect(F, A1, A2).dim(), 1);
  ASSERT_EQ(sum(F, A1, A2).dim(), 3);
  auto w = build_geometry(F, subspace_union_atoms(F, 4, {A1, A2})).whitney();
  for (int i = 0; i < static_cast<int>(w.size()); ++i) EXPECT_EQ(whitney_two_spaces(3, 4, 2, 2, 1, i), w[i]);
}

TEST(CharpolyClosed, Examples) {
  const std::vector<Rational> r123{1, 2, 3};
  EXPECT_EQ(*charpoly_closed(2, 3, 2), expand_linear_factors(r123));
  EXPECT_EQ(*charpoly_closed(2, 4, 2), expand_linear_factors(std::vector<Rational>{1, 2, 3, 4}));
  EXPECT_EQ(*charpoly_closed(3, 5, 3), expand_linear_factors(std::vector<Rational>{1, 3, 9, 25, 27}));
  EXPECT_FALSE(charpoly_closed(2, 6, 3).has_value());
}

TEST(CharpolyClosed, MatchesBruteForce) {
  for (std::uint64_t q : {2, 3})
    for (int n = 1; n <= 5; ++n)
      for (int d = 1; d <= n; ++d)
        if (auto p = charpoly_closed(q, n, d)) {
          Field F(q);
          EXPECT_EQ(*p, build_geometry(F, hwdl_atoms(F, n, d)).charpoly()) << q << " " << n << " " << d;
        }
}

TEST(CharpolyClosed, BoninAtNEqualsFourMatchesDowling) {
  // d = n-2 = 2 at n = 4: both forms are evaluated and must agree
  for (std::uint64_t q : {2, 3, 4, 5, 7, 9}) EXPECT_TRUE(charpoly_closed(q, 4, 2).has_value());
}

TEST(OddWeight, Examples) {
  EXPECT_EQ(odd_weight_whitney(3, 0), 1);
  EXPECT_EQ(odd_weight_whitney(3, 1), -4);
  EXPECT_EQ(odd_weight_whitney(3, 2), 6);
  EXPECT_EQ(odd_weight_whitney(3, 3), -3);
}

TEST(OddWeight, MatchesBruteForce) {
  Field F(2);
  for (int n = 1; n <= 5; ++n) {
    auto w = build_geometry(F, odd_weight_atoms(F, n)).whitney();
    for (int i = 0; i <= n; ++i) EXPECT_EQ(odd_weight_whitney(n, i), w[i]) << n << " " << i;
  }
}

TEST(BinomIdentity, Exhaustive) {
  EXPECT_TRUE(binom_identity_check(6, 3));
  for (int d = 1; d <= 5; ++d) {
    // n = 2d: the right side is the single term l = 1
    const auto [l, r] = binom_identity_sides(2 * d, d);
    EXPECT_EQ(r, binom(2 * d - 1, d - 1));
    EXPECT_EQ(l, r);
    for (int n = 2 * d; n <= 25; ++n) EXPECT_TRUE(binom_identity_check(n, d)) << n << " " << d;
  }
  EXPECT_THROW(binom_identity_check(5, 3), std::invalid_argument);
}

TEST(BetaDispatch, Examples) {
  EXPECT_EQ(beta_hwdl(2, 5, 3, 1, BetaMethod::Complement), 25);
  EXPECT_EQ(beta_hwdl(2, 5, 3, 2, BetaMethod::Complement), 155);
  EXPECT_EQ(beta_hwdl(2, 5, 3, 2, BetaMethod::Closed2), 155);
  EXPECT_EQ(beta_hwdl(2, 5, 3, 0, BetaMethod::Enum), 0);
  EXPECT_THROW(beta_hwdl(2, 5, 3, 3, BetaMethod::Closed2), std::invalid_argument);
}

TEST(BetaDispatch, MethodsAgree) {
  for (std::uint64_t q : {2, 3}) {
    Field F(q);
    for (int n = 1; n <= 5; ++n)
      for (int d = 1; d <= n; ++d)
        for (int k = 0; k <= n; ++k) {
          const BigInt e = beta_enum(F, n, d, k);
          EXPECT_EQ(beta_hwdl(q, n, d, k, BetaMethod::Enum), e);
          EXPECT_EQ(beta_hwdl(q, n, d, k, BetaMethod::Complement), e) << q << n << d << k;
          if (k == 2 && d >= 2) {
            EXPECT_EQ(beta_hwdl(q, n, d, k, BetaMethod::Closed2), e);
          }
        }
  }
}

TEST(AlphaDispatch, MethodsAgree) {
  for (std::uint64_t q : {2, 3})
    for (int n = 1; n <= 5; ++n)
      for (int d = 1; d <= n; ++d)
        for (int k = 0; k <= n; ++k) {
          bool closed = true;
          for (int i = 0; i <= k; ++i) closed = closed && whitney_closed(q, n, d, i).has_value();
          const BigInt e = alpha_hwdl(q, n, d, k, AlphaMethod::Enum);
          if (closed) {
            EXPECT_EQ(alpha_hwdl(q, n, d, k, AlphaMethod::Transform), e);
          }
          if (d == n) {
            EXPECT_EQ(alpha_hwdl(q, n, d, k, AlphaMethod::ClosedSubspace), e);
          }
        }
  EXPECT_THROW(alpha_hwdl(2, 4, 2, 1, AlphaMethod::ClosedSubspace), std::invalid_argument);
}

TEST(Density, Examples) {
  EXPECT_EQ(density_delta(2, 5, 2), 1);
  for (std::uint64_t q : {2, 3, 5}) EXPECT_EQ(density_delta(q, 4, 4), 0);
  for (int k = 1; k <= 4; ++k) {
    const Rational d = density_delta(3, 5, k);
    EXPECT_GE(d, 0);
    EXPECT_LE(d, 1);
  }
  EXPECT_THROW(density_delta(2, 3, 0), std::invalid_argument);
}
