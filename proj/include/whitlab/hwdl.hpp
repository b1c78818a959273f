#pragma once

// Closed formulas for higher-weight Dowling lattices H(q,n,d): the lattice of
// subspaces of F_q^n spanned by vectors of Hamming weight at most d.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "whitlab/agreement.hpp"
#include "whitlab/distributions.hpp"
#include "whitlab/exactmath.hpp"
#include "whitlab/subspaces.hpp"

namespace whitlab {

struct HwdlParams {
  std::uint64_t q;
  int n;
  int d;
};

namespace detail {

inline BigInt qm1_pow(std::uint64_t q, std::int64_t e) {
  if (e < 0) throw std::logic_error("negative power of q-1");
  return pow_big(BigInt(static_cast<unsigned long>(q - 1)), static_cast<unsigned long>(e));
}

inline void check_params(std::uint64_t q, int n, int d) {
  if (q < 2) throw std::invalid_argument("hwdl: need q >= 2");
  if (n < 1 || d < 1) throw std::invalid_argument("hwdl: need n >= 1 and d >= 1");
}

inline BigInt full_lattice_w(std::uint64_t q, int n, int i) {
  return sign_pow(i) * qpow(q, choose2(i)) * qbinom(n, i, q);
}

// sum over 1 <= l_1 < ... < l_i <= n-d+1 of prod_j C(n - l_j - d(i-j), d-1),
// accumulated one row at a time.
inline BigInt disjoint_support_sum(int n, int d, int i) {
  const int top = n - d + 1;
  if (i == 0) return 1;
  if (top < i) return 0;
  std::vector<BigInt> prev(top + 1, 0);
  for (int l = 1; l <= top; ++l) prev[l] = binom(n - l - d * (i - 1), d - 1);
  for (int j = 2; j <= i; ++j) {
    std::vector<BigInt> cur(top + 1, 0);
    BigInt run = 0;
    for (int l = 1; l <= top; ++l) {
      cur[l] = run * binom(n - l - d * (i - j), d - 1);
      run += prev[l];
    }
    prev = std::move(cur);
  }
  BigInt s = 0;
  for (int l = 1; l <= top; ++l) s += prev[l];
  return s;
}

template <class F>
BigInt parallel_sum(int lo, int hi, unsigned jobs, F term) {
  if (hi < lo) return 0;
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(hi - lo + 1)));
  std::vector<BigInt> part(jobs, 0);
  auto work = [&](unsigned w) {
    for (int x = lo + static_cast<int>(w); x <= hi; x += static_cast<int>(jobs)) part[w] += term(x);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  BigInt s = 0;
  for (const auto& p : part) s += p;
  return s;
}

}  // namespace detail

/// Number of atoms (projective points of weight <= d), which is also beta_1.
inline BigInt hwdl_atom_count(std::uint64_t q, int n, int d) {
  BigInt s = 0;
  for (int j = 1; j <= std::min(d, n); ++j) s += binom(n, j) * detail::qm1_pow(q, j - 1);
  return s;
}

/// (-1)^i w_i(H(q,n,2)) = e_i(g_1..g_n), g_j = 1 + (j-1)(q-1).
inline BigInt dowling_whitney(std::uint64_t q, int n, int i) {
  std::vector<BigInt> e(n + 1, 0);
  e[0] = 1;
  for (int j = 1; j <= n; ++j) {
    const BigInt g = 1 + BigInt(j - 1) * BigInt(static_cast<unsigned long>(q - 1));
    for (int k = j; k >= 1; --k) e[k] += g * e[k - 1];
  }
  return (i < 0 || i > n) ? BigInt(0) : sign_pow(i) * e[i];
}

inline BigInt whitney_n_minus_1(std::uint64_t q, int n, int i) {
  if (n < 2 || i < 2) throw std::invalid_argument("w_i(q,n,n-1): need n >= 2, i >= 2");
  BigInt s = 0;
  for (int j = 1; j <= n - 1; ++j) s += binom(n - 1, j - 1) * detail::qm1_pow(q, j - 1);
  return detail::full_lattice_w(q, n - 1, i) - detail::full_lattice_w(q, n - 1, i - 1) * s;
}

/// alpha_1 and alpha_2 of H(q,n,n-2); alpha_k = 0 for k >= 3.
inline std::pair<BigInt, BigInt> alpha_n_minus_2(std::uint64_t q, int n) {
  const BigInt a1 = detail::qm1_pow(q, n - 1) + BigInt(n) * detail::qm1_pow(q, n - 2);
  BigInt a2 = detail::qm1_pow(q, n - 1);
  for (int j = 2; j <= n - 2; ++j) a2 *= BigInt(static_cast<unsigned long>(q)) - j;
  return {a1, a2};
}

inline BigInt whitney_n_minus_2(std::uint64_t q, int n, int i) {
  if (n < 3 || i < 2) throw std::invalid_argument("w_i(q,n,n-2): need n >= 3, i >= 2");
  const auto [a1, a2] = alpha_n_minus_2(q, n);
  const BigInt s = qbinom(n, i, q) * qpow(q, choose2(i)) - a1 * qbinom(n - 1, i - 1, q) * qpow(q, choose2(i - 1)) +
                   a2 * qbinom(n - 2, i - 2, q) * qpow(q, choose2(i - 2));
  return sign_pow(i) * s;
}

/// w_2(q,t,3) for t = 2..5, as polynomials in q.
inline BigInt w2_small_d3(std::uint64_t q, int t) {
  const BigInt Q(static_cast<unsigned long>(q));
  switch (t) {
    case 2: return Q;
    case 3: return Q * Q * Q + Q * Q + Q;
    case 4: return 3 * pow_big(Q, 4) + Q * Q * Q + 2 * Q * Q - Q + 1;
    case 5: return 30 * pow_big(Q, 4) - 55 * Q * Q * Q + 60 * Q * Q - 35 * Q + 10;
    default: throw std::invalid_argument("w2_small_d3: need 2 <= t <= 5");
  }
}

/// Number of U in H(q,n,d) of rank i whose support has the maximal size id.
inline BigInt support_id_count(std::uint64_t q, int n, int d, int i) {
  detail::check_params(q, n, d);
  if (i < 1) throw std::invalid_argument("support_id_count: need i >= 1");
  if (n < i * d) throw std::invalid_argument("support_id_count: need n >= i*d");
  return detail::qm1_pow(q, static_cast<std::int64_t>(i) * (d - 1)) * detail::disjoint_support_sum(n, d, i);
}

/// w_i(q,n,d) for n >= id from w_i(q,t,d), i <= t <= id-1.
inline BigInt reduction_formula(std::uint64_t q, int n, int d, int i, const std::map<int, BigInt>& lower_w) {
  detail::check_params(q, n, d);
  if (i < 1) throw std::invalid_argument("reduction_formula: need i >= 1");
  if (n < i * d) throw std::invalid_argument("reduction_formula: need n >= i*d");
  BigInt w = sign_pow(i) * support_id_count(q, n, d, i);
  for (int t = i; t <= i * d - 1; ++t) {
    auto it = lower_w.find(t);
    if (it == lower_w.end())
      throw std::invalid_argument("reduction_formula: missing w_" + std::to_string(i) + "(q," + std::to_string(t) +
                                  "," + std::to_string(d) + ")");
    BigInt inner = 0;
    for (int s = t; s <= i * d - 1; ++s) inner += binom(n - t, n - s) * sign_pow(s - t);
    w += binom(n, t) * it->second * inner;
  }
  return w;
}

/// Closed form of w_2(q,n,3), n >= 6, via the reduction formula with the
/// double sum over l_1 < l_2 collapsed to a single sum.
inline BigInt w2_d3_reduced(std::uint64_t q, int n) {
  if (n < 6) throw std::invalid_argument("w2_d3_reduced: need n >= 6");
  BigInt a = 0;
  for (int l = 1; l <= n - 5; ++l) a += binom(n - l, 2) * binom(n - l - 2, 3);
  BigInt w = detail::qm1_pow(q, 4) * a;
  for (int t = 2; t <= 5; ++t) {
    BigInt inner = 0;
    for (int s = t; s <= 5; ++s) inner += binom(n - t, n - s) * sign_pow(s - t);
    w += binom(n, t) * w2_small_d3(q, t) * inner;
  }
  return w;
}

/// The fully expanded bivariate polynomial for w_2(q,n,3), n >= 6, with n
/// fixed: the result is a polynomial in q of degree 4.
inline UniPolyQ w2_d3_poly_in_q(int n) {
  if (n < 6) throw std::invalid_argument("w2_d3_polynomial: need n >= 6");
  // rows: coefficient of q^4, q^3, ..., q^0; columns: n^6 .. n^1
  static const long num[5][6] = {{1, -1, 1, 1, -77, 7},
                                 {-1, 5, -49, -7, 269, -9},
                                 {1, -3, 2, -7, -43, 17},
                                 {-1, 7, -157, 19, -55, -3},
                                 {1, -1, 29, -23, 157, -11}};
  static const long den[5][6] = {{72, 12, 18, 2, 72, 12},
                                 {18, 12, 72, 6, 72, 4},
                                 {12, 4, 1, 12, 12, 6},
                                 {18, 12, 72, 6, 72, 4},
                                 {72, 6, 36, 12, 72, 12}};
  const Rational N(n);
  std::vector<Rational> c(5);
  for (int r = 0; r < 5; ++r)
    for (int k = 0; k < 6; ++k) c[4 - r] += ratio(num[r][k], den[r][k]) * pow_rat(N, 6 - k);
  for (auto& x : c) x.canonicalize();
  return UniPolyQ(std::move(c));
}

inline BigInt w2_d3_polynomial(std::uint64_t q, int n) {
  const Rational v = w2_d3_poly_in_q(n)(Rational(static_cast<unsigned long>(q)));
  if (v.get_den() != 1) throw std::logic_error("w2_d3_polynomial: non-integer value");
  return v.get_num();
}

/// -w_3(2,t,3) for t = 3..8, obtained by computer in the source literature.
/// The verification suite re-derives all six by brute force.
inline BigInt w3_binary_d3_table(int t) {
  static const long vals[] = {8, 106, 820, 4565, 19810, 70728};
  if (t < 3 || t > 8) throw std::invalid_argument("w3 table: need 3 <= t <= 8");
  return -BigInt(vals[t - 3]);
}

/// w_3(2,n,3) for n >= 9 through the reduction formula and the table.
inline BigInt w3_binary_d3(int n) {
  if (n < 9) throw std::invalid_argument("w3_binary_d3: need n >= 9");
  std::map<int, BigInt> lower;
  for (int t = 3; t <= 8; ++t) lower[t] = w3_binary_d3_table(t);
  return reduction_formula(2, n, 3, 3, lower);
}

/// The same quantity exactly as typeset in the source, whose t = 7 term
/// carries C(n,8) instead of C(n,7). Kept only to report the discrepancy.
inline BigInt w3_binary_d3_as_printed(int n) {
  if (n < 9) throw std::invalid_argument("w3_binary_d3_as_printed: need n >= 9");
  BigInt minus_w = detail::disjoint_support_sum(n, 3, 3);
  for (int t = 3; t <= 8; ++t) {
    BigInt inner = 0;
    for (int s = t; s <= 8; ++s) inner += binom(n - t, n - s) * sign_pow(s - t);
    minus_w += binom(n, t == 7 ? 8 : t) * (-w3_binary_d3_table(t)) * inner;
  }
  return -minus_w;
}

/// Number of 2-dimensional codes in F_q^n with minimum distance <= d.
inline BigInt beta2_closed(std::uint64_t q, int n, int d, unsigned jobs = 1) {
  detail::check_params(q, n, d);
  if (d < 2 || d > n) throw std::invalid_argument("beta2_closed: need n >= d >= 2");
  const BigInt Q(static_cast<unsigned long>(q));
  auto row = [&](int l1) {
    BigInt acc = 0;
    for (int l2 = l1 + 1; l2 <= n; ++l2) {
      const int tail = n - l2, mid = n - l1 - 1;
      BigInt m1 = 0;
      for (int j = 0; j <= d - 1; ++j) m1 += binom(tail, j) * detail::qm1_pow(q, j);
      acc += pow_big(Q, static_cast<unsigned long>(mid)) * m1;

      BigInt low = 0;
      for (int h = 0; h <= d - 1; ++h) low += binom(mid, h) * detail::qm1_pow(q, h);
      for (int j = d; j <= tail; ++j) acc += binom(tail, j) * detail::qm1_pow(q, j) * low;

      // t runs over 0..d-2; the proof's lower limit d-s is <= 0 here and the
      // extra negative-t terms vanish because C(m,t) = 0 for t < 0.
      for (int s = d; s <= tail; ++s)
        for (int t = 0; t <= d - 2; ++t) {
          const BigInt coef = binom(tail, s) * binom(mid - s, t);
          if (coef == 0) continue;
          BigInt g = 0;
          for (int nu = d - t; nu <= s; ++nu) g += gamma(static_cast<std::int64_t>(q), s, s - d + t + 2, nu);
          acc += coef * detail::qm1_pow(q, s + t) * g;
        }
    }
    return acc;
  };
  return detail::parallel_sum(1, n - 1, jobs, row);
}

/// w_2(q,n,d) = beta_1 [n-1,1]_q - beta_2, for n >= d >= 2.
inline BigInt w2_general(std::uint64_t q, int n, int d, unsigned jobs = 1) {
  detail::check_params(q, n, d);
  if (d < 2 || d > n) throw std::invalid_argument("w2_general: need n >= d >= 2");
  const BigInt beta1 = hwdl_atom_count(q, n, d);
  const BigInt w = beta1 * qbinom(n - 1, 1, q) - beta2_closed(q, n, d, jobs);
  // The source writes the first term as (q^{n-1}-1) sum_j C(n,j)(q-1)^{j-2}.
  Rational first = 0;
  for (int j = 1; j <= d; ++j)
    first += Rational(binom(n, j)) * pow_rat(Rational(static_cast<unsigned long>(q - 1)), j) /
             Rational(static_cast<unsigned long>((q - 1) * (q - 1)));
  first *= Rational(qpow(q, n - 1) - 1);
  first.canonicalize();
  if (first != Rational(beta1 * qbinom(n - 1, 1, q))) throw std::logic_error("w2_general: first term mismatch");
  return w;
}

/// All closed-form evaluations of w_i(q,n,d) that apply, each labelled.
inline std::vector<std::pair<std::string, BigInt>> whitney_closed_branches(std::uint64_t q, int n, int d, int i);

/// w_i(q,n,d) from every applicable closed form, asserted pairwise equal.
/// nullopt when no closed form covers (q,n,d,i).
inline std::optional<BigInt> whitney_closed(std::uint64_t q, int n, int d, int i) {
  const auto br = whitney_closed_branches(q, n, d, i);
  if (br.empty()) return std::nullopt;
  for (const auto& [name, v] : br)
    if (v != br.front().second)
      throw std::logic_error("whitney_closed(" + std::to_string(q) + "," + std::to_string(n) + "," +
                             std::to_string(d) + ", i=" + std::to_string(i) + "): branch " + name + " gives " +
                             to_decimal(v) + " but " + br.front().first + " gives " + to_decimal(br.front().second));
  return br.front().second;
}

inline std::vector<std::pair<std::string, BigInt>> whitney_closed_branches(std::uint64_t q, int n, int d, int i) {
  detail::check_params(q, n, d);
  std::vector<std::pair<std::string, BigInt>> out;
  if (i < 0 || i > n) {
    out.emplace_back("out-of-rank", 0);
    return out;
  }
  if (d > n) d = n;
  if (i == 0) out.emplace_back("w0", 1);
  if (i == 1) out.emplace_back("atoms", -hwdl_atom_count(q, n, d));
  if (d == 1) out.emplace_back("boolean", sign_pow(i) * binom(n, i));
  if (d == 2) out.emplace_back("dowling", dowling_whitney(q, n, i));
  if (d == n) out.emplace_back("full", detail::full_lattice_w(q, n, i));
  if (d == n - 1 && i >= 2) out.emplace_back("n-1", whitney_n_minus_1(q, n, i));
  if (d == n - 2 && n >= 3 && i >= 2) out.emplace_back("n-2", whitney_n_minus_2(q, n, i));
  if (d == 3 && i == 2 && n >= 6) {
    out.emplace_back("d3-reduced", w2_d3_reduced(q, n));
    out.emplace_back("d3-polynomial", w2_d3_polynomial(q, n));
  }
  if (q == 2 && d == 3 && i == 3) {
    if (n >= 3 && n <= 8) out.emplace_back("w3-table", w3_binary_d3_table(n));
    if (n >= 9) out.emplace_back("w3-binary", w3_binary_d3(n));
  }
  if (i == 2 && d >= 2) out.emplace_back("agreement", w2_general(q, n, d));
  if (i >= 1 && n >= i * d && !out.empty()) {
    // Reduction is only added when every lower value is itself closed.
    std::map<int, BigInt> lower;
    bool ok = true;
    for (int t = i; t <= i * d - 1 && ok; ++t) {
      auto v = whitney_closed(q, t, d, i);
      if (v) lower[t] = *v;
      else ok = false;
    }
    if (ok) out.emplace_back("reduction", reduction_formula(q, n, d, i, lower));
  }
  return out;
}

inline std::optional<WhitneySequence> whitney_closed_sequence(std::uint64_t q, int n, int d) {
  WhitneySequence w;
  for (int i = 0; i <= n; ++i) {
    auto v = whitney_closed(q, n, d, i);
    if (!v) return std::nullopt;
    w.push_back(*v);
  }
  return w;
}

/// sum_i w_i lambda^{n-i}
inline UniPolyQ charpoly_from_whitney(const WhitneySequence& w, int rk) {
  std::vector<Rational> c(rk + 1);
  for (int i = 0; i <= rk && i < static_cast<int>(w.size()); ++i) c[rk - i] = Rational(w[i]);
  return UniPolyQ(std::move(c));
}

/// Product forms of chi(H(q,n,d)) where one is known; each applicable form
/// is checked against the others and against the closed Whitney numbers.
inline std::optional<UniPolyQ> charpoly_closed(std::uint64_t q, int n, int d) {
  detail::check_params(q, n, d);
  if (d > n) d = n;
  std::vector<std::pair<std::string, UniPolyQ>> forms;
  if (d == 1) forms.emplace_back("boolean", UniPolyQ::linear(1).pow(n));
  if (d == 2) {
    std::vector<Rational> roots;
    for (int j = 1; j <= n; ++j) roots.emplace_back(1 + static_cast<long>(j - 1) * static_cast<long>(q - 1));
    forms.emplace_back("dowling", expand_linear_factors(roots));
  }
  if (d == n) {
    std::vector<Rational> roots;
    for (int j = 0; j < n; ++j) roots.emplace_back(qpow(q, j));
    forms.emplace_back("full", expand_linear_factors(roots));
  }
  if (d == n - 2 && n >= 3) {
    const UniPolyQ lam = UniPolyQ::variable();
    const Rational qn2(qpow(q, n - 2)), qn1(qpow(q, n - 1));
    const auto [a1, a2] = alpha_n_minus_2(q, n);
    UniPolyQ quad = UniPolyQ::linear(qn2) * UniPolyQ::linear(qn1) + UniPolyQ::linear(qn2) * Rational(a1) +
                    UniPolyQ::constant(Rational(a2));
    std::vector<Rational> roots;
    for (int j = 0; j <= n - 3; ++j) roots.emplace_back(qpow(q, j));
    forms.emplace_back("bonin", quad * expand_linear_factors(roots));
  }
  if (auto w = whitney_closed_sequence(q, n, d)) forms.emplace_back("whitney", charpoly_from_whitney(*w, n));
  if (forms.empty()) return std::nullopt;
  for (const auto& [name, p] : forms)
    if (!(p == forms.front().second))
      throw std::logic_error("charpoly_closed: " + name + " form " + p.to_string("L") + " != " + forms.front().first +
                             " form " + forms.front().second.to_string("L"));
  return forms.front().second;
}

/// Both sides of the duality between H(q,n,d) and H(q,n,n-d), 1 <= d <= n-1.
inline std::pair<BigInt, BigInt> duality_residual(std::uint64_t q, int n, int d, const WhitneySequence& w_d,
                                                  const WhitneySequence& w_dual) {
  detail::check_params(q, n, d);
  if (d >= n) throw std::invalid_argument("duality: need 1 <= d <= n-1 (H(q,n,0) is not defined)");
  if (static_cast<int>(w_d.size()) < n - d + 1 || static_cast<int>(w_dual.size()) < d + 1)
    throw std::invalid_argument("duality: Whitney sequences too short");
  BigInt lhs = 0, rhs = 0;
  for (int i = 0; i <= n - d; ++i) lhs += qbinom(n - i, d, q) * w_d[i];
  for (int i = 0; i <= d; ++i) rhs += qbinom(n - i, d - i, q) * w_dual[i];
  return {lhs, rhs};
}

/// w_i of L(A1 u A2) for subspaces A1, A2 of the given ranks and meet rank.
inline BigInt whitney_two_spaces(std::uint64_t q, int n, int r1, int r2, int rm, int i) {
  if (r1 < 0 || r2 < 0 || rm < 0 || rm > std::min(r1, r2) || r1 + r2 - rm > n)
    throw std::invalid_argument("two spaces: need rkMeet <= min(rk1, rk2) and rk1 + rk2 - rkMeet <= n");
  BigInt s = 0;
  for (int j = 0; j <= i; ++j)
    for (int h = 0; h <= i - j; ++h)
      s += sign_pow(i + h) * qpow(q, choose2(j) + choose2(i - j) + choose2(h)) * qbinom(r1, j, q) *
           qbinom(rm, h, q) * qbinom(r2 - h, i - j - h, q);
  return s;
}

inline BigInt odd_weight_whitney(int n, int i) {
  if (n < 1) throw std::invalid_argument("odd_weight_whitney: need n >= 1");
  BigInt s = 0;
  for (int k = 0; k <= i; ++k)
    s += qbinom(n - 1, k, 2) * qbinom(n - k, i - k, 2) * sign_pow(i - k) * qpow(2, choose2(i - k));
  return s;
}

/// Both sides of the binomial identity used to collapse the l_1 < l_2 sum.
inline std::pair<BigInt, BigInt> binom_identity_sides(int n, int d) {
  if (d < 1 || n < 2 * d) throw std::invalid_argument("binom identity: need d >= 1, n >= 2d");
  BigInt lhs = 0, rhs = 0;
  for (int l1 = 1; l1 <= n - d + 1; ++l1)
    for (int l2 = l1 + 1; l2 <= n - d + 1; ++l2) lhs += binom(n - l1 - d, d - 1) * binom(n - l2, d - 1);
  for (int l = 1; l <= n - 2 * d + 1; ++l) rhs += binom(n - l, d - 1) * binom(n - l - d + 1, d);
  return {lhs, rhs};
}

inline bool binom_identity_check(int n, int d) {
  auto [l, r] = binom_identity_sides(n, d);
  return l == r;
}

// ---- alpha / beta / density dispatch over methods --------------------------

enum class AlphaMethod { Enum, ClosedSubspace, Transform };
enum class BetaMethod { Complement, Enum, Closed2 };

/// alpha_k(q,n,d). Transform needs closed Whitney numbers w_0..w_k.
inline BigInt alpha_hwdl(std::uint64_t q, int n, int d, int k, AlphaMethod m,
                         std::uint64_t cap = kDefaultEnumerationCap, unsigned jobs = 1) {
  detail::check_params(q, n, d);
  if (k < 0 || k > n) return 0;
  switch (m) {
    case AlphaMethod::Enum: {
      Field F(q);
      return alpha_enum(F, n, k, hwdl_atoms(F, n, d), cap, jobs);
    }
    case AlphaMethod::ClosedSubspace:
      // H(q,n,d) has a single-subspace atom set only when d >= n.
      if (d < n) throw std::invalid_argument("alpha: closed_subspace applies only when d >= n");
      return alpha_closed_subspace(q, n, n, k);
    case AlphaMethod::Transform: {
      WhitneySequence w;
      for (int i = 0; i <= k; ++i) {
        auto v = whitney_closed(q, n, d, i);
        if (!v) throw std::invalid_argument("alpha: no closed Whitney number w_" + std::to_string(i));
        w.push_back(*v);
      }
      return alpha_from_whitney(q, n, w).back();
    }
  }
  throw std::logic_error("alpha: unknown method");
}

/// Direct count of k-codes having a nonzero word of weight <= d, by listing
/// every point of every k-subspace.
inline BigInt beta_enum(const Field& F, int n, int d, int k, std::uint64_t cap = kDefaultEnumerationCap) {
  std::uint64_t c = 0;
  enumerate_subspaces(
      F, n, k,
      [&](const Subspace& V) {
        for (const auto& p : points(F, V))
          if (weight(p) <= d) {
            ++c;
            return;
          }
      },
      cap);
  return BigInt(static_cast<unsigned long>(c));
}

/// beta_k(q,n,d). For k > n-d every k-code has distance <= d.
inline BigInt beta_hwdl(std::uint64_t q, int n, int d, int k, BetaMethod m,
                        std::uint64_t cap = kDefaultEnumerationCap, unsigned jobs = 1) {
  detail::check_params(q, n, d);
  if (k <= 0 || k > n) return 0;
  if (m == BetaMethod::Closed2 && k != 2) throw std::invalid_argument("beta: closed2 needs k = 2");
  if (k > n - d) return qbinom(n, k, q);
  switch (m) {
    case BetaMethod::Closed2: return beta2_closed(q, n, d, jobs);
    case BetaMethod::Enum: return beta_enum(Field(q), n, d, k, cap);
    case BetaMethod::Complement: {
      bool closed = true;
      for (int i = 0; i <= k && closed; ++i) closed = whitney_closed(q, n, d, i).has_value();
      const BigInt a = closed ? alpha_hwdl(q, n, d, k, AlphaMethod::Transform)
                              : alpha_hwdl(q, n, d, k, AlphaMethod::Enum, cap, jobs);
      return beta_complement(q, n, k, a);
    }
  }
  throw std::logic_error("beta: unknown method");
}

/// Fraction of k-dimensional codes in F_q^n that are not MDS.
inline Rational density_delta(std::uint64_t q, int n, int k, std::uint64_t cap = kDefaultEnumerationCap) {
  if (k < 1 || k > n) throw std::invalid_argument("density: need 1 <= k <= n");
  if (k == n) return 0;
  const int d = n - k;
  const BigInt b = (k == 2 && d >= 2) ? beta2_closed(q, n, d) : beta_hwdl(q, n, d, k, BetaMethod::Complement, cap);
  return ratio(b, qbinom(n, k, q));
}

}  // namespace whitlab
