#include <gtest/gtest.h>

#include <random>

#include "whitlab/lattice.hpp"

using namespace whitlab;

namespace {

// Möbius by subspace containment instead of atom bitsets.
std::vector<BigInt> mobius_by_containment(const RestrictionGeometry& g) {
  const Field& F = g.field();
  std::vector<BigInt> mu(g.size(), 0);
  for (std::size_t x = 0; x < g.size(); ++x) {
    if (x == 0) {
      mu[x] = 1;
      continue;
    }
    BigInt s = 0;
    for (std::size_t y = 0; y < g.size(); ++y)
      if (y != x && whitlab::leq(F, g.element(y), g.element(x))) s += mu[y];
    mu[x] = -s;
  }
  return mu;
}

std::vector<Vector> all_points(const Field& F, int n) {
  Subspace full = coordinate_subspace(F, n, [n] {
    std::vector<int> c;
    for (int i = 0; i < n; ++i) c.push_back(i);
    return c;
  }());
  return points(F, full);
}

AtomSet random_atoms(std::mt19937& rng, const Field& F, int n) {
  std::vector<Vector> pick;
  for (const auto& p : all_points(F, n))
    if (rng() % 2) pick.push_back(p);
  if (pick.empty()) pick.push_back(all_points(F, n)[0]);
  return explicit_atoms(F, n, pick);
}

AtomBits random_mask(std::mt19937& rng, std::size_t n) {
  AtomBits b(n);
  for (std::size_t i = 0; i < n; ++i)
    if (rng() % 2) b.set(i);
  return b;
}

Vector random_bits(std::mt19937& rng, int n) {
  Vector v(n);
  for (auto& x : v) x = static_cast<Element>(rng() % 2);
  return v;
}

UniPolyQ from_ints(std::vector<long> c) {
  std::vector<Rational> r;
  for (long v : c) r.emplace_back(v);
  return UniPolyQ(r);
}

}  // namespace

TEST(Geometry, SmallExamples) {
  Field F(2);
  auto g = build_geometry(F, hwdl_atoms(F, 2, 2));
  EXPECT_EQ(g.size(), 5u);
  EXPECT_EQ(g.rank(), 2);
  for (std::size_t x = g.layer_begin(1); x < g.layer_end(1); ++x) EXPECT_EQ(g.mobius(x), -1);
  EXPECT_EQ(g.mobius(g.top()), 2);

  auto o3 = build_geometry(F, odd_weight_atoms(F, 3));
  EXPECT_EQ(o3.size(), 12u);
  EXPECT_EQ(o3.layer_size(0), 1u);
  EXPECT_EQ(o3.layer_size(1), 4u);
  EXPECT_EQ(o3.layer_size(2), 6u);
  EXPECT_EQ(o3.layer_size(3), 1u);
  EXPECT_EQ(o3.mobius(o3.top()), -3);
  EXPECT_EQ(o3.charpoly(), from_ints({-3, 6, -4, 1}));

  auto empty = build_geometry(F, AtomSet{2, 3, {}});
  EXPECT_EQ(empty.size(), 1u);
  EXPECT_EQ(empty.rank(), 0);
  EXPECT_EQ(empty.whitney(), (WhitneySequence{1}));
}

TEST(Geometry, FullSubspaceLattice) {
  for (unsigned q : {2u, 3u}) {
    Field F(q);
    for (int n = 1; n <= 4; ++n) {
      auto g = build_geometry(F, hwdl_atoms(F, n, n));
      auto w = g.whitney();
      for (int i = 0; i <= n; ++i) EXPECT_EQ(w[i], sign_pow(i) * qpow(q, choose2(i)) * qbinom(n, i, q));
      BigInt count = 0;
      for (int k = 0; k <= n; ++k) count += qbinom(n, k, q);
      EXPECT_EQ(BigInt(static_cast<unsigned long>(g.size())), count);
    }
  }
}

TEST(Geometry, Table1RowTwoFiveThree) {
  Field F(2);
  auto g = build_geometry(F, hwdl_atoms(F, 5, 3));
  std::vector<Rational> roots{1, 2, 4, 8, 10};
  EXPECT_EQ(g.charpoly(), expand_linear_factors(roots));
}

TEST(Geometry, MobiusMatchesContainmentOracle) {
  std::mt19937 rng(1);
  Field F(2);
  for (int t = 0; t < 20; ++t) {
    auto g = build_geometry(F, random_atoms(rng, F, 4));
    EXPECT_EQ(g.mobius_table(), mobius_by_containment(g));
  }
  Field F3(3);
  auto g = build_geometry(F3, hwdl_atoms(F3, 3, 2));
  EXPECT_EQ(g.mobius_table(), mobius_by_containment(g));
}

TEST(Geometry, ElementsAreAtomClosures) {
  Field F(3);
  auto g = build_geometry(F, hwdl_atoms(F, 4, 2));
  for (std::size_t x = 0; x < g.size(); ++x) {
    EXPECT_EQ(g.closure(g.incidence(x)), x);
    EXPECT_EQ(g.element(x).dim(), g.rank_of(x));
  }
  for (std::size_t x = 0; x < g.size(); x += 7)
    for (std::size_t y = 0; y < g.size(); y += 5)
      EXPECT_EQ(g.element(g.join(x, y)), sum(F, g.element(x), g.element(y)));
}

TEST(Geometry, TruncatedPrefix) {
  Field F(3);
  auto A = hwdl_atoms(F, 4, 3);
  auto full = build_geometry(F, A);
  auto part = build_geometry(F, A, kDefaultClosureCap, 2);
  EXPECT_FALSE(part.complete());
  EXPECT_EQ(part.built_rank(), 2);
  auto wf = full.whitney();
  EXPECT_EQ(part.whitney(), WhitneySequence(wf.begin(), wf.begin() + 3));
  EXPECT_THROW(part.charpoly(), std::logic_error);
}

TEST(Geometry, CapExceeded) {
  Field F(2);
  EXPECT_THROW(build_geometry(F, hwdl_atoms(F, 5, 5), 50), CapExceeded);
}

TEST(Geometry, CharpolyVanishesAtOneAndSignsAlternate) {
  for (unsigned q : {2u, 3u}) {
    Field F(q);
    for (int n = 1; n <= (q == 2 ? 5 : 4); ++n)
      for (int d = 1; d <= n; ++d) {
        auto g = build_geometry(F, hwdl_atoms(F, n, d));
        EXPECT_EQ(g.charpoly()(Rational(1)), 0);
        auto w = g.whitney();
        for (int i = 0; i <= n; ++i) EXPECT_GT(sign_pow(i) * w[i], 0);
      }
  }
}

TEST(MobiusViaDistribution, Examples) {
  Field F(2);
  auto A = hwdl_atoms(F, 2, 2);
  EXPECT_EQ(mobius_via_distribution(F, coordinate_subspace(F, 2, {0, 1}), A), 2);
  EXPECT_EQ(mobius_via_distribution(F, Subspace(2, 2), A), 1);
  EXPECT_EQ(mobius_via_distribution(F, coordinate_subspace(F, 2, {0}), A), -1);
  // <(1,1,0)> is not spanned by weight-1 atoms
  auto U = canonicalize(F, 3, {{1, 1, 0}});
  EXPECT_THROW(mobius_via_distribution(F, U, hwdl_atoms(F, 3, 1)), std::invalid_argument);
}

TEST(MobiusViaDistribution, MatchesTableOnHwdl) {
  for (unsigned q : {2u, 3u}) {
    Field F(q);
    for (int n = 1; n <= (q == 2 ? 5 : 4); ++n)
      for (int d = 1; d <= n; ++d) {
        auto A = hwdl_atoms(F, n, d);
        auto g = build_geometry(F, A);
        for (std::size_t x = 0; x < g.size(); ++x)
          ASSERT_EQ(mobius_via_distribution(F, g.element(x), A), g.mobius(x)) << q << " " << n << " " << d;
      }
  }
}

TEST(MobiusViaDistribution, RandomAtomSets) {
  std::mt19937 rng(2);
  Field F(2);
  for (int t = 0; t < 20; ++t) {
    auto A = random_atoms(rng, F, 4);
    auto g = build_geometry(F, A);
    for (std::size_t x = 0; x < g.size(); ++x) EXPECT_EQ(mobius_via_distribution(F, g.element(x), A), g.mobius(x));
  }
}

TEST(CriticalExponent, Examples) {
  for (unsigned q : {2u, 3u}) {
    Field F(q);
    for (int n = 1; n <= 4; ++n) {
      EXPECT_EQ(critical_exponent(build_geometry(F, hwdl_atoms(F, n, n))), n);
      for (int d = 1; d <= n; ++d) EXPECT_GE(critical_exponent(build_geometry(F, hwdl_atoms(F, n, d))), d);
    }
  }
  Field F(2);
  EXPECT_EQ(critical_exponent(build_geometry(F, hwdl_atoms(F, 3, 2))), 2);
}

TEST(Identities, Examples) {
  Field F(2);
  auto o3 = build_geometry(F, odd_weight_atoms(F, 3));
  std::vector<AtomBits> singles;
  for (std::size_t a = 0; a < o3.atom_count(); ++a) {
    AtomBits b(o3.atom_count());
    b.set(a);
    singles.push_back(b);
  }
  auto rep = check_decomposition(o3, singles);
  EXPECT_TRUE(rep.holds) << rep.detail;
  EXPECT_EQ(rep.rhs, o3.mobius_table());

  auto g = build_geometry(F, hwdl_atoms(F, 3, 2));
  AtomBits A(g.atom_count()), B(g.atom_count());
  for (std::size_t a = 0; a < g.atom_count(); ++a) {
    const auto& v = g.atoms().vectors[a];
    if (v[2] == 0)
      A.set(a);
    else
      B.set(a);
  }
  EXPECT_TRUE(check_two_part(g, A, B).holds);

  AtomBits partial(g.atom_count());
  partial.set(0);
  EXPECT_THROW(check_two_part(g, partial, partial), std::invalid_argument);
}

TEST(Identities, ModularFactorOnCoHyperplaneFamily) {
  for (unsigned q : {2u, 3u}) {
    Field F(q);
    for (int n = 3; n <= 4; ++n) {
      auto g = build_geometry(F, hwdl_atoms(F, n, n - 1));
      std::vector<int> cols;
      for (int c = 0; c < n - 1; ++c) cols.push_back(c);
      auto t = g.find(coordinate_subspace(F, n, cols));
      ASSERT_TRUE(t.has_value());
      AtomBits all(g.atom_count());
      all.set();
      auto rep = check_modular_factor(g, *t, all);
      EXPECT_TRUE(rep.holds) << rep.detail;
      // B = atoms outside T also covers
      AtomBits outside = all - g.incidence(*t);
      EXPECT_TRUE(check_modular_factor(g, *t, outside).holds);
      // w_i = w_i([0,T]) - w_{i-1}([0,T]) * #(rank-1 elements not below T)
      std::size_t off = 0;
      for (std::size_t x = g.layer_begin(1); x < g.layer_end(1); ++x)
        if (!g.leq(x, *t)) ++off;
      for (int i = 1; i <= n; ++i) {
        BigInt wi = sign_pow(i) * qpow(q, choose2(i)) * qbinom(n - 1, i, q);
        BigInt wim = sign_pow(i - 1) * qpow(q, choose2(i - 1)) * qbinom(n - 1, i - 1, q);
        EXPECT_EQ(rep.lhs[i], wi - wim * BigInt(static_cast<unsigned long>(off)));
      }
    }
  }
}

TEST(Identities, RandomInstances) {
  std::mt19937 rng(7);
  Field F(2);
  int nested = 0, decomp = 0, two = 0, modular = 0;
  for (int t = 0; t < 100; ++t) {
    auto g = build_geometry(F, random_atoms(rng, F, 4));
    const std::size_t na = g.atom_count();

    // nested: A <= B, x in L(A), S random subset of L(B)
    AtomBits B = random_mask(rng, na), A = B & random_mask(rng, na);
    Sublattice LA(g, A), LB(g, B);
    std::size_t x = LA.members()[rng() % LA.members().size()];
    std::vector<std::size_t> S;
    for (std::size_t y : LB.members())
      if (rng() % 2) S.push_back(y);
    nested += check_nested(g, A, B, x, S).holds;

    // decomposition into 1..3 covering parts
    const int L = 1 + static_cast<int>(rng() % 3);
    std::vector<AtomBits> parts(L, AtomBits(na));
    for (std::size_t a = 0; a < na; ++a) {
      parts[rng() % L].set(a);
      if (rng() % 3 == 0) parts[rng() % L].set(a);
    }
    decomp += check_decomposition(g, parts).holds;

    // two-part: random cover
    AtomBits P = random_mask(rng, na), Q = random_mask(rng, na);
    Q |= ~P;
    two += check_two_part(g, P, Q).holds;

    // modular: add all points of a random subspace T so that T is modular
    std::vector<Vector> gens;
    const int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) gens.push_back(random_bits(rng, 4));
    Subspace T = canonicalize(F, 4, gens);
    if (T.is_zero()) T = coordinate_subspace(F, 4, {0});
    auto vecs = g.atoms().vectors;
    for (auto& p : points(F, T)) vecs.push_back(p);
    auto gm = build_geometry(F, explicit_atoms(F, 4, vecs));
    auto ti = gm.find(T);
    ASSERT_TRUE(ti.has_value());
    AtomBits Bm = random_mask(rng, gm.atom_count()) | ~gm.incidence(*ti);
    modular += check_modular_factor(gm, *ti, Bm).holds;
  }
  EXPECT_EQ(nested, 100);
  EXPECT_EQ(decomp, 100);
  EXPECT_EQ(two, 100);
  EXPECT_EQ(modular, 100);
}

TEST(Identities, DetectsBrokenInput) {
  // A non-modular t must be able to break the factorization; this guards
  // against a checker that always says yes.
  Field F(2);
  auto g = build_geometry(F, odd_weight_atoms(F, 3));
  bool any_fail = false;
  for (std::size_t t = 0; t < g.size(); ++t) {
    AtomBits all(g.atom_count());
    all.set();
    if (!check_modular_factor(g, t, all).holds) any_fail = true;
  }
  EXPECT_TRUE(any_fail);
}
