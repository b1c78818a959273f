#pragma once

// Restriction geometries L(A): closure of an atom set under joins, Möbius
// function, Whitney numbers, critical exponent, and brute-force checkers for
// the Möbius identities relating L to sublattices generated by atom subsets.

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "whitlab/distributions.hpp"
#include "whitlab/error.hpp"
#include "whitlab/exactmath.hpp"
#include "whitlab/subspaces.hpp"

namespace whitlab {

using AtomBits = boost::dynamic_bitset<std::uint64_t>;

inline constexpr std::size_t kDefaultClosureCap = 200000;

class RestrictionGeometry;

/// Closure of A under joins, layer by layer. max_rank >= 0 stops after that
/// rank (enough for w_0..w_max_rank). Throws CapExceeded once more than `cap`
/// elements have been produced.
inline RestrictionGeometry build_geometry(const Field& F, const AtomSet& A, std::size_t cap = kDefaultClosureCap,
                                          int max_rank = -1);

class RestrictionGeometry {
 public:
  const Field& field() const { return F_; }
  const AtomSet& atoms() const { return atoms_; }
  std::size_t atom_count() const { return atoms_.size(); }
  /// Rank of the top element, dim <A>.
  int rank() const { return rank_; }
  /// Highest rank layer that was built; equals rank() unless truncated.
  int built_rank() const { return static_cast<int>(layer_begin_.size()) - 2; }
  bool complete() const { return built_rank() == rank_; }

  std::size_t size() const { return elements_.size(); }
  const Subspace& element(std::size_t i) const { return elements_[i]; }
  int rank_of(std::size_t i) const { return ranks_[i]; }
  const AtomBits& incidence(std::size_t i) const { return incidence_[i]; }
  const BigInt& mobius(std::size_t i) const { return mobius_[i]; }
  const std::vector<BigInt>& mobius_table() const { return mobius_; }

  /// Element indices of rank r are [layer_begin(r), layer_end(r)).
  std::size_t layer_begin(int r) const { return layer_begin_.at(r); }
  std::size_t layer_end(int r) const { return layer_begin_.at(r + 1); }
  std::size_t layer_size(int r) const { return layer_end(r) - layer_begin(r); }
  std::size_t top() const {
    if (!complete()) throw std::logic_error("geometry: truncated, no top element");
    return layer_begin(rank_);
  }

  std::optional<std::size_t> find(const Subspace& U) const {
    auto it = index_.find(U);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool leq(std::size_t x, std::size_t y) const {
    return ranks_[x] <= ranks_[y] && incidence_[x].is_subset_of(incidence_[y]);
  }

  /// Element spanned by the atoms in `bits`.
  std::size_t closure(const AtomBits& bits) const {
    std::vector<Vector> rows;
    for (auto a = bits.find_first(); a != AtomBits::npos; a = bits.find_next(a)) rows.push_back(atoms_.vectors[a]);
    auto idx = find(canonicalize(F_, atoms_.n, std::move(rows)));
    if (!idx) throw std::logic_error("geometry: closure outside the built layers");
    return *idx;
  }

  std::size_t join(std::size_t x, std::size_t y) const {
    if (leq(x, y)) return y;
    if (leq(y, x)) return x;
    auto idx = find(sum(F_, elements_[x], elements_[y]));
    if (!idx) throw std::logic_error("geometry: join outside the built layers");
    return *idx;
  }

  /// w_i for 0 <= i <= built_rank().
  WhitneySequence whitney() const {
    WhitneySequence w;
    for (int r = 0; r <= built_rank(); ++r) {
      BigInt s = 0;
      for (std::size_t x = layer_begin(r); x < layer_end(r); ++x) s += mobius_[x];
      w.push_back(s);
    }
    return w;
  }

  /// chi(lambda) = sum_i w_i lambda^{rk-i}; needs the full lattice.
  UniPolyQ charpoly() const {
    if (!complete()) throw std::logic_error("geometry: characteristic polynomial needs the full lattice");
    const auto w = whitney();
    std::vector<Rational> c(rank_ + 1);
    for (int i = 0; i <= rank_; ++i) c[rank_ - i] = Rational(w[i]);
    return UniPolyQ(std::move(c));
  }

 private:
  friend RestrictionGeometry build_geometry(const Field&, const AtomSet&, std::size_t, int);

  RestrictionGeometry(const Field& F, AtomSet A) : F_(F), atoms_(std::move(A)) {}

  std::size_t add(Subspace U, int r, AtomBits bits) {
    const std::size_t i = elements_.size();
    index_.emplace(U, i);
    elements_.push_back(std::move(U));
    ranks_.push_back(r);
    incidence_.push_back(std::move(bits));
    return i;
  }

  void compute_mobius() {
    mobius_.assign(elements_.size(), 0);
    mobius_[0] = 1;
    for (std::size_t x = 1; x < elements_.size(); ++x) {
      BigInt s = 0;
      const auto& ix = incidence_[x];
      for (std::size_t y = 0; y < layer_begin(ranks_[x]); ++y)
        if (incidence_[y].is_subset_of(ix)) s += mobius_[y];
      mobius_[x] = -s;
    }
  }

  Field F_;
  AtomSet atoms_;
  int rank_ = 0;
  std::vector<Subspace> elements_;
  std::vector<int> ranks_;
  std::vector<AtomBits> incidence_;
  std::vector<BigInt> mobius_;
  std::vector<std::size_t> layer_begin_;
  std::unordered_map<Subspace, std::size_t, SubspaceHash> index_;
};

inline RestrictionGeometry build_geometry(const Field& F, const AtomSet& A, std::size_t cap, int max_rank) {
  if (A.q != F.q()) throw std::invalid_argument("geometry: atom set and field disagree on q");
  for (const auto& v : A.vectors)
    if (weight(v) == 0) throw std::invalid_argument("geometry: zero vector in atom set");
  RestrictionGeometry g(F, A);
  const std::size_t na = A.size();
  g.rank_ = canonicalize(F, A.n, A.vectors).dim();
  const int stop = max_rank < 0 ? g.rank_ : std::min(max_rank, g.rank_);

  g.layer_begin_.push_back(0);
  g.add(Subspace(F.q(), A.n), 0, AtomBits(na));
  g.layer_begin_.push_back(1);
  for (int r = 0; r < stop; ++r) {
    for (std::size_t x = g.layer_begin(r); x < g.layer_end(r); ++x) {
      // atoms already covered by some cover of x generated in this pass
      AtomBits done = g.incidence_[x];
      for (std::size_t a = 0; a < na; ++a) {
        if (done[a]) continue;
        Subspace y = extended(F, g.elements_[x], A.vectors[a]);
        std::size_t idx;
        if (auto it = g.index_.find(y); it != g.index_.end()) {
          idx = it->second;
        } else {
          if (g.elements_.size() >= cap)
            throw CapExceeded("geometry closure cap", cap,
                              "more than " + std::to_string(g.elements_.size()) + " elements (stopped in rank " +
                                  std::to_string(r + 1) + ")");
          AtomBits bits = g.incidence_[x];
          for (std::size_t b = 0; b < na; ++b)
            if (!bits[b] && contains(F, y, A.vectors[b])) bits.set(b);
          idx = g.add(std::move(y), r + 1, std::move(bits));
        }
        done |= g.incidence_[idx];
      }
    }
    g.layer_begin_.push_back(g.elements_.size());
  }
  g.compute_mobius();
  return g;
}

/// mu(0, U) = sum_j (-1)^{i-j} q^{C(i-j,2)} alpha_j(U, A), with i = dim U.
inline BigInt mobius_via_distribution(const Field& F, const Subspace& U, const AtomSet& A,
                                      std::uint64_t cap = kDefaultEnumerationCap) {
  const AtomSet local = restrict_atoms(F, U, A);
  if (canonicalize(F, local.n, local.vectors).dim() != U.dim())
    throw std::invalid_argument("mobius: subspace is not spanned by the atoms it contains");
  const int i = U.dim();
  BigInt s = 0;
  for (int j = 0; j <= i; ++j)
    s += sign_pow(i - j) * qpow(F.q(), choose2(i - j)) * alpha_enum(F, i, j, local, cap);
  return s;
}

/// min{r : chi(q^r) != 0} from Whitney numbers of a rank-rk lattice.
inline int crit_from_whitney(std::uint64_t q, const WhitneySequence& w, int rk) {
  for (int r = 0; r <= rk; ++r)
    if (charpoly_at_power(q, w, rk, r) != 0) return r;
  throw std::logic_error("critical exponent: chi(q^r) vanishes for all r <= rk");
}

/// rk - max{k : alpha_k(<A>, A) != 0}, with alpha by enumeration inside <A>.
inline int crit_from_distribution(const Field& F, const AtomSet& A, std::uint64_t cap = kDefaultEnumerationCap) {
  const Subspace span = canonicalize(F, A.n, A.vectors);
  const AtomSet local = restrict_atoms(F, span, A);
  const int rk = span.dim();
  for (int k = rk; k >= 0; --k)
    if (alpha_enum(F, rk, k, local, cap) != 0) return rk - k;
  throw std::logic_error("critical exponent: alpha_0 vanished");
}

/// Both characterizations, asserted equal. Needs a complete geometry.
inline int critical_exponent(const RestrictionGeometry& g, std::uint64_t cap = kDefaultEnumerationCap) {
  const int a = crit_from_whitney(g.field().q(), g.whitney(), g.rank());
  const int b = crit_from_distribution(g.field(), g.atoms(), cap);
  if (a != b)
    throw std::logic_error("critical exponent: chi gives " + std::to_string(a) + ", distribution gives " +
                           std::to_string(b));
  return a;
}

// ---------------------------------------------------------------------------
// Sublattices L(B) for B a subset of the atoms, and identity checkers.

struct IdentityReport {
  bool holds = true;
  std::vector<BigInt> lhs, rhs;
  std::string detail;
};

/// L(B) inside a built geometry: members, x^B for every x, and mu_B(0, .).
class Sublattice {
 public:
  Sublattice(const RestrictionGeometry& g, AtomBits B) : g_(&g), B_(std::move(B)) {
    if (B_.size() != g.atom_count()) throw std::invalid_argument("sublattice: atom mask has the wrong size");
    proj_.resize(g.size());
    member_.assign(g.size(), false);
    for (std::size_t x = 0; x < g.size(); ++x) {
      proj_[x] = g.closure(g.incidence(x) & B_);
      if (proj_[x] == x) {
        member_[x] = true;
        members_.push_back(x);
      }
    }
    mu0_ = mobius_from(0);
  }

  const AtomBits& atoms() const { return B_; }
  const std::vector<std::size_t>& members() const { return members_; }
  bool contains(std::size_t x) const { return member_[x]; }
  /// x^B: join of the atoms of B below x.
  std::size_t project(std::size_t x) const { return proj_[x]; }
  /// mu_B(0, x) for members x.
  const BigInt& mobius(std::size_t x) const { return mu0_.at(x); }

  /// mu_B(x, .) on the members of L(B) above x; keyed by element index.
  std::unordered_map<std::size_t, BigInt> mobius_from(std::size_t x) const {
    if (!member_[x]) throw std::invalid_argument("sublattice: element is not in L(B)");
    std::unordered_map<std::size_t, BigInt> mu;
    std::vector<std::size_t> above;
    for (std::size_t z : members_)  // members_ is rank ordered
      if (g_->leq(x, z)) above.push_back(z);
    for (std::size_t z : above) {
      if (z == x) {
        mu[z] = 1;
        continue;
      }
      BigInt s = 0;
      for (std::size_t y : above) {
        if (y == z) break;
        if (g_->leq(y, z)) s += mu[y];
      }
      mu[z] = -s;
    }
    return mu;
  }

 private:
  const RestrictionGeometry* g_;
  AtomBits B_;
  std::vector<std::size_t> proj_;
  std::vector<bool> member_;
  std::vector<std::size_t> members_;
  std::unordered_map<std::size_t, BigInt> mu0_;
};

namespace detail {
inline void require_complete(const RestrictionGeometry& g, const char* what) {
  if (!g.complete()) throw std::invalid_argument(std::string(what) + ": needs the full lattice");
}
inline void finish(IdentityReport& r) {
  r.holds = r.lhs == r.rhs;
  for (std::size_t i = 0; i < r.lhs.size() && !r.holds; ++i)
    if (r.lhs[i] != r.rhs[i]) {
      r.detail = "first mismatch at index " + std::to_string(i) + ": " + to_decimal(r.lhs[i]) +
                 " != " + to_decimal(r.rhs[i]);
      break;
    }
}
}  // namespace detail

/// A <= B <= At, x in L(A), S a set of elements of L(B):
/// sum_{z in L(A) cap S} mu_A(x,z) = sum_{t in L(B), t^A = x} sum_{y in S, y >= t} mu_B(t,y).
inline IdentityReport check_nested(const RestrictionGeometry& g, const AtomBits& A, const AtomBits& B,
                                   std::size_t x, const std::vector<std::size_t>& S) {
  detail::require_complete(g, "nested identity");
  if (!A.is_subset_of(B)) throw std::invalid_argument("nested identity: A is not contained in B");
  const Sublattice LA(g, A), LB(g, B);
  if (!LA.contains(x)) throw std::invalid_argument("nested identity: x is not in L(A)");
  for (std::size_t y : S)
    if (!LB.contains(y)) throw std::invalid_argument("nested identity: S is not contained in L(B)");

  IdentityReport rep;
  const auto muA = LA.mobius_from(x);
  BigInt lhs = 0;
  for (std::size_t z : S)
    if (LA.contains(z))
      if (auto it = muA.find(z); it != muA.end()) lhs += it->second;

  BigInt rhs = 0;
  for (std::size_t t : LB.members()) {
    if (LA.project(t) != x) continue;
    const auto muB = LB.mobius_from(t);
    for (std::size_t y : S)
      if (auto it = muB.find(y); it != muB.end()) rhs += it->second;
  }
  rep.lhs = {lhs};
  rep.rhs = {rhs};
  detail::finish(rep);
  return rep;
}

/// mu(x) = sum over (x_1..x_L) in L(A_1) x ... x L(A_L) joining to x of prod mu_{A_l}(x_l),
/// for every x, when the A_l cover the atoms.
inline IdentityReport check_decomposition(const RestrictionGeometry& g, const std::vector<AtomBits>& parts) {
  detail::require_complete(g, "decomposition identity");
  AtomBits all(g.atom_count());
  for (const auto& p : parts) all |= p;
  if (all.count() != g.atom_count()) throw std::invalid_argument("decomposition identity: parts do not cover the atoms");

  std::vector<BigInt> acc(g.size(), 0);
  acc[0] = 1;
  for (const auto& p : parts) {
    const Sublattice L(g, p);
    std::vector<BigInt> next(g.size(), 0);
    for (std::size_t y = 0; y < g.size(); ++y) {
      if (acc[y] == 0) continue;
      for (std::size_t z : L.members()) next[g.join(y, z)] += acc[y] * L.mobius(z);
    }
    acc = std::move(next);
  }
  IdentityReport rep;
  rep.lhs = g.mobius_table();
  rep.rhs = std::move(acc);
  detail::finish(rep);
  return rep;
}

/// mu(x) = sum_{x_A in L(A), x_B in L(B), x_B^A = 0, x_A v x_B = x} mu_A(x_A) mu_B(x_B),
/// for every x, when A and B cover the atoms.
inline IdentityReport check_two_part(const RestrictionGeometry& g, const AtomBits& A, const AtomBits& B) {
  detail::require_complete(g, "two-part identity");
  if ((A | B).count() != g.atom_count()) throw std::invalid_argument("two-part identity: A and B do not cover the atoms");
  const Sublattice LA(g, A), LB(g, B);
  std::vector<BigInt> rhs(g.size(), 0);
  for (std::size_t xb : LB.members()) {
    if (LA.project(xb) != 0) continue;
    for (std::size_t xa : LA.members()) rhs[g.join(xa, xb)] += LA.mobius(xa) * LB.mobius(xb);
  }
  IdentityReport rep;
  rep.lhs = g.mobius_table();
  rep.rhs = std::move(rhs);
  detail::finish(rep);
  return rep;
}

/// For t modular (not checked) and B together with the atoms below t covering
/// At: w_i(L) = sum_j w_j([0,t]) sum_{x in L(B), rk x = i-j, x meet t = 0} mu_B(x).
inline IdentityReport check_modular_factor(const RestrictionGeometry& g, std::size_t t, const AtomBits& B) {
  detail::require_complete(g, "modular factorization");
  if ((B | g.incidence(t)).count() != g.atom_count())
    throw std::invalid_argument("modular factorization: B and the atoms below t do not cover the atoms");
  const int rk = g.rank();
  std::vector<BigInt> wt(rk + 1, 0), inner(rk + 1, 0);
  for (std::size_t y = 0; y < g.size(); ++y)
    if (g.leq(y, t)) wt[g.rank_of(y)] += g.mobius(y);
  const Sublattice LB(g, B);
  for (std::size_t x : LB.members())
    if (!g.incidence(x).intersects(g.incidence(t))) inner[g.rank_of(x)] += LB.mobius(x);

  IdentityReport rep;
  rep.lhs = g.whitney();
  rep.rhs.assign(rk + 1, 0);
  for (int i = 0; i <= rk; ++i)
    for (int j = 0; j <= i; ++j) rep.rhs[i] += wt[j] * inner[i - j];
  detail::finish(rep);
  return rep;
}

}  // namespace whitlab
