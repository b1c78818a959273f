#pragma once

// Subspace distributions alpha_k(X, A), code counts beta_k, and the exact
// transforms between them and the Whitney numbers of L(A).

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "whitlab/exactmath.hpp"
#include "whitlab/subspaces.hpp"

namespace whitlab {

using WhitneySequence = std::vector<BigInt>;
using AlphaSequence = std::vector<BigInt>;
using BetaSequence = std::vector<BigInt>;

/// Number of k-dimensional subspaces of F_q^n that avoid every atom of A.
/// Pivot patterns are dealt round-robin to `jobs` threads.
inline BigInt alpha_enum(const Field& F, int n, int k, const AtomSet& A,
                         std::uint64_t cap = kDefaultEnumerationCap, unsigned jobs = 1) {
  if (A.n != n) throw std::invalid_argument("alpha: atom set lives in dimension " + std::to_string(A.n));
  if (k < 0 || k > n) return 0;
  const BigInt total = qbinom(n, k, F.q());
  if (total > BigInt(static_cast<unsigned long>(cap)))
    throw CapExceeded("subspace enumeration cap", cap, to_decimal(total) + " subspaces");
  if (A.empty() || k == 0) return total;

  const auto patterns = pivot_patterns(n, k);
  AtomMeetTester tester(F, A);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(patterns.size())));
  std::vector<std::uint64_t> counts(jobs, 0);
  auto work = [&](unsigned w) {
    std::uint64_t c = 0;
    for (std::size_t p = w; p < patterns.size(); p += jobs)
      enumerate_with_pivots(F, n, patterns[p], [&](const Subspace& V) {
        if (!tester.meets(V)) ++c;
      });
    counts[w] = c;
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  BigInt sum = 0;
  for (auto c : counts) sum += BigInt(static_cast<unsigned long>(c));
  return sum;
}

/// Atoms of A lying in U, written in the coordinates of U's RREF basis (the
/// entries at the pivot columns).
inline AtomSet restrict_atoms(const Field& F, const Subspace& U, const AtomSet& A) {
  std::vector<Vector> local;
  for (const auto& a : A.vectors) {
    if (!contains(F, U, a)) continue;
    Vector c(U.dim());
    for (int r = 0; r < U.dim(); ++r) c[r] = a[U.pivots()[r]];
    local.push_back(std::move(c));
  }
  return explicit_atoms(F, U.dim(), local);
}

/// alpha_k(U, A): k-subspaces of U avoiding A.
inline BigInt alpha_in(const Field& F, const Subspace& U, int k, const AtomSet& A,
                       std::uint64_t cap = kDefaultEnumerationCap) {
  return alpha_enum(F, U.dim(), k, restrict_atoms(F, U, A), cap);
}

inline AlphaSequence alpha_sequence(const Field& F, int n, const AtomSet& A, int kmax = -1,
                                    std::uint64_t cap = kDefaultEnumerationCap, unsigned jobs = 1) {
  if (kmax < 0 || kmax > n) kmax = n;
  AlphaSequence a;
  for (int k = 0; k <= kmax; ++k) a.push_back(alpha_enum(F, n, k, A, cap, jobs));
  return a;
}

/// k-subspaces of F_q^n avoiding a fixed a-dimensional subspace.
inline BigInt alpha_closed_subspace(std::uint64_t q, int n, int a, int k) {
  if (a < 0 || a > n) throw std::invalid_argument("alpha: need 0 <= a <= n");
  BigInt s = 0;
  for (int i = 0; i <= std::min(a, k); ++i)
    s += sign_pow(i) * qpow(q, choose2(i)) * qbinom(a, i, q) * qbinom(n - i, k - i, q);
  return s;
}

inline WhitneySequence whitney_from_alpha(std::uint64_t q, int n, const AlphaSequence& alpha) {
  WhitneySequence w;
  for (int i = 0; i < static_cast<int>(alpha.size()); ++i) {
    BigInt s = 0;
    for (int k = 0; k <= i; ++k)
      s += alpha[k] * qbinom(n - k, i - k, q) * sign_pow(i - k) * qpow(q, choose2(i - k));
    w.push_back(s);
  }
  return w;
}

inline AlphaSequence alpha_from_whitney(std::uint64_t q, int n, const WhitneySequence& w) {
  AlphaSequence a;
  for (int k = 0; k < static_cast<int>(w.size()); ++k) {
    BigInt s = 0;
    for (int i = 0; i <= k; ++i) s += w[i] * qbinom(n - i, k - i, q);
    a.push_back(s);
  }
  return a;
}

/// chi(q^r) from Whitney numbers of a rank-rk lattice.
inline BigInt charpoly_at_power(std::uint64_t q, const WhitneySequence& w, int rk, int r) {
  BigInt s = 0;
  for (int i = 0; i <= rk && i < static_cast<int>(w.size()); ++i)
    s += w[i] * qpow(q, static_cast<std::int64_t>(r) * (rk - i));
  return s;
}

/// Completes w_0..w_{rk-crit} to the full sequence using alpha_i(<A>, A) = 0
/// for i > rk - crit, then checks chi(q^r) = 0 for r < crit.
inline WhitneySequence whitney_tail_recursion(std::uint64_t q, const WhitneySequence& prefix, int rk,
                                              int crit) {
  if (crit < 0 || crit > rk) throw std::invalid_argument("tail recursion: need 0 <= crit <= rk");
  if (static_cast<int>(prefix.size()) < rk - crit + 1)
    throw std::invalid_argument("tail recursion: prefix must cover indices 0.." + std::to_string(rk - crit));
  WhitneySequence w(prefix.begin(), prefix.begin() + (rk - crit + 1));
  for (int i = rk - crit + 1; i <= rk; ++i) {
    BigInt s = 0;
    for (int j = 0; j < i; ++j) s += w[j] * qbinom(rk - j, i - j, q);
    w.push_back(-s);
  }
  for (int r = 0; r < crit; ++r)
    if (charpoly_at_power(q, w, rk, r) != 0)
      throw std::logic_error("tail recursion: chi(q^" + std::to_string(r) +
                             ") != 0, inconsistent prefix or critical exponent");
  return w;
}

inline BigInt beta_complement(std::uint64_t q, int n, int k, const BigInt& alpha_k) {
  return qbinom(n, k, q) - alpha_k;
}

/// (-1)^i w_i = sum_{k=1}^{i} beta_k [n-k, i-k] (-1)^{k-1} q^{C(i-k,2)}.
inline WhitneySequence whitney_from_beta(std::uint64_t q, int n, const BetaSequence& beta) {
  WhitneySequence w;
  if (beta.empty()) return w;
  w.push_back(1);
  for (int i = 1; i < static_cast<int>(beta.size()); ++i) {
    BigInt s = 0;
    for (int k = 1; k <= i; ++k)
      s += beta[k] * qbinom(n - k, i - k, q) * sign_pow(k - 1) * qpow(q, choose2(i - k));
    w.push_back(sign_pow(i) * s);
  }
  return w;
}

inline BetaSequence beta_from_alpha(std::uint64_t q, int n, const AlphaSequence& alpha) {
  BetaSequence b;
  for (int k = 0; k < static_cast<int>(alpha.size()); ++k) b.push_back(beta_complement(q, n, k, alpha[k]));
  return b;
}

/// alpha_k >= [n,k] - |A| [n-1,k-1]
inline BigInt alpha_lower_bound(std::uint64_t q, int n, int k, std::size_t atom_count) {
  return qbinom(n, k, q) - BigInt(static_cast<unsigned long>(atom_count)) * qbinom(n - 1, k - 1, q);
}

/// Upper bound on the number of k-codes meeting two distinct coordinate
/// subspaces of dimension d.
inline BigInt two_set_upper_bound(std::uint64_t q, int n, int d, int k) {
  const BigInt a = (qpow(q, d - 1) - 1) / BigInt(static_cast<unsigned long>(q - 1));
  const BigInt b = (qpow(q, d) - 1) / BigInt(static_cast<unsigned long>(q - 1));
  return a * qbinom(n - 1, k - 1, q) + b * b * qbinom(n - 2, k - 2, q);
}

/// Brute force count for the bound above: k-codes meeting both F_q^n(S1) and F_q^n(S2).
inline BigInt two_set_meet_count(const Field& F, int n, int k, const std::vector<int>& s1,
                                 const std::vector<int>& s2, std::uint64_t cap = kDefaultEnumerationCap) {
  const auto A1 = subspace_union_atoms(F, n, {coordinate_subspace(F, n, s1)});
  const auto A2 = subspace_union_atoms(F, n, {coordinate_subspace(F, n, s2)});
  AtomMeetTester t1(F, A1), t2(F, A2);
  std::uint64_t c = 0;
  enumerate_subspaces(
      F, n, k, [&](const Subspace& V) {
        if (t1.meets(V) && t2.meets(V)) ++c;
      },
      cap);
  return BigInt(static_cast<unsigned long>(c));
}

}  // namespace whitlab
