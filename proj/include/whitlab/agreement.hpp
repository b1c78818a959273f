#pragma once

// Agreement numbers gamma_a(b,c,nu): arrays in {*,1,...,a-1}^b with exactly nu
// entries different from *, some non-* symbol occurring at least c times.

#include <algorithm>
#include <cstdint>
#include <map>
#include <shared_mutex>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <vector>

#include "whitlab/error.hpp"
#include "whitlab/exactmath.hpp"
#include "whitlab/subspaces.hpp"

namespace whitlab {

/// Above this alphabet size gamma() evaluates the polynomial in a instead of
/// walking the recursion down to a = 1.
inline constexpr std::int64_t kGammaPolyThreshold = 256;
inline constexpr std::uint64_t kGammaOracleBudget = 10'000'000;

namespace detail {

// Memo map guarded by a shared mutex. Values are computed outside the lock;
// two threads racing on the same key insert equal values, so first wins.
template <class Key, class Value>
class SharedMemo {
 public:
  bool find(const Key& k, Value& out) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(k);
    if (it == map_.end()) return false;
    out = it->second;
    return true;
  }
  void insert(const Key& k, const Value& v) {
    std::unique_lock lock(mutex_);
    map_.emplace(k, v);
  }
  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<Key, Value> map_;
};

}  // namespace detail

class GammaTable {
 public:
  using Key = std::tuple<std::int64_t, int, int, int>;

  static GammaTable& global() {
    static GammaTable t;
    return t;
  }

  /// The recursion itself. Out-of-range indices (including nu < 0 produced by
  /// the first sum) fall into the zero initial condition.
  BigInt recursion(std::int64_t a, int b, int c, int nu) {
    if (nu < 0 || nu > b || b < 0) return 0;
    // c = 0: every array of weight nu qualifies, including the all-* array at a = 1.
    if (c == 0) return binom(b, nu) * pow_big(a - 1, static_cast<unsigned long>(nu));
    if (a <= 1 || b < c || nu < c) return 0;
    if (b == c && nu == c) return BigInt(static_cast<long>(a - 1));

    const Key key{a, b, c, nu};
    BigInt v;
    if (memo_.find(key, v)) return v;
    v = 0;
    for (int s = 0; s < c; ++s) v += binom(b, s) * recursion(a - 1, b - s, c, nu - s);
    for (int s = c; s <= nu; ++s)
      v += binom(b, s) * binom(b - s, nu - s) * pow_big(a - 2, static_cast<unsigned long>(nu - s));
    memo_.insert(key, v);
    return v;
  }

  std::size_t size() const { return memo_.size(); }

 private:
  detail::SharedMemo<Key, BigInt> memo_;
};

class GammaPolyTable {
 public:
  using Key = std::tuple<int, int, int>;

  static GammaPolyTable& global() {
    static GammaPolyTable t;
    return t;
  }

  UniPolyQ get(int b, int c, int nu) {
    if (nu < 0 || nu > b || b < 0) return {};
    const UniPolyQ x_minus_1 = UniPolyQ::linear(1);
    if (c == 0) return x_minus_1.pow(static_cast<unsigned>(nu)) * Rational(binom(b, nu));
    if (b < c || nu < c) return {};
    if (b == c && nu == c) return x_minus_1;

    const Key key{b, c, nu};
    UniPolyQ p;
    if (memo_.find(key, p)) return p;

    // u(i) = gamma_i - gamma_{i-1}; then p(a) = sum_{i=2}^{a} u(i).
    UniPolyQ u;
    for (int s = 1; s < c; ++s) u += get(b - s, c, nu - s).shift(-1) * Rational(binom(b, s));
    const UniPolyQ x_minus_2 = UniPolyQ::linear(2);
    for (int s = c; s <= nu; ++s)
      u += x_minus_2.pow(static_cast<unsigned>(nu - s)) * Rational(binom(b, s) * binom(b - s, nu - s));
    for (int j = 0; j <= u.degree(); ++j)
      p += (power_sum_poly(static_cast<unsigned>(j)) - UniPolyQ::constant(1)) * u.coeff(j);

    memo_.insert(key, p);
    return p;
  }

 private:
  detail::SharedMemo<Key, UniPolyQ> memo_;
};

namespace detail {
inline void check_gamma_args(std::int64_t a, int b, int c, int nu) {
  if (a < 1 || b < 1 || c < 0 || nu < 0)
    throw std::invalid_argument("gamma: need a >= 1, b >= 1, c >= 0, nu >= 0");
}
}  // namespace detail

/// p^{b,c,nu}(x) with p(a) = gamma_a(b,c,nu) for every integer a >= 1.
inline UniPolyQ gamma_poly(int b, int c, int nu) {
  if (b < 0 || c < 0) throw std::invalid_argument("gamma_poly: need b >= 0, c >= 0");
  return GammaPolyTable::global().get(b, c, nu);
}

inline BigInt gamma_recursion(std::int64_t a, int b, int c, int nu) {
  detail::check_gamma_args(a, b, c, nu);
  return GammaTable::global().recursion(a, b, c, nu);
}

inline BigInt gamma_via_poly(std::int64_t a, int b, int c, int nu) {
  detail::check_gamma_args(a, b, c, nu);
  const Rational v = gamma_poly(b, c, nu)(Rational(static_cast<long>(a)));
  if (v.get_den() != 1) throw std::logic_error("gamma_poly: non-integer value at a = " + std::to_string(a));
  return v.get_num();
}

inline BigInt gamma(std::int64_t a, int b, int c, int nu) {
  return a > kGammaPolyThreshold ? gamma_via_poly(a, b, c, nu) : gamma_recursion(a, b, c, nu);
}

/// Counts by listing all a^b arrays; symbol 0 plays the role of *.
inline BigInt gamma_enum_oracle(std::int64_t a, int b, int c, int nu, std::uint64_t budget = kGammaOracleBudget,
                                unsigned jobs = 1) {
  detail::check_gamma_args(a, b, c, nu);
  std::uint64_t total = 1;
  for (int i = 0; i < b; ++i) {
    if (total > budget / static_cast<std::uint64_t>(a))
      throw CapExceeded("gamma oracle budget", budget, std::to_string(a) + "^" + std::to_string(b) + " arrays");
    total *= static_cast<std::uint64_t>(a);
  }
  if (nu > b) return 0;

  jobs = std::max(1u, jobs);
  std::vector<std::uint64_t> counts(jobs, 0);
  auto work = [&](unsigned w) {
    std::vector<int> mult(static_cast<std::size_t>(a));
    std::uint64_t hits = 0;
    const std::uint64_t lo = total * w / jobs, hi = total * (w + 1) / jobs;
    for (std::uint64_t code = lo; code < hi; ++code) {
      std::fill(mult.begin(), mult.end(), 0);
      std::uint64_t x = code;
      int nonstar = 0;
      for (int i = 0; i < b; ++i, x /= static_cast<std::uint64_t>(a)) {
        const auto sym = x % static_cast<std::uint64_t>(a);
        if (sym != 0) ++nonstar, ++mult[sym];
      }
      if (nonstar != nu) continue;
      int best = 0;
      for (std::size_t sym = 1; sym < mult.size(); ++sym) best = std::max(best, mult[sym]);
      if (best >= c) ++hits;
    }
    counts[w] = hits;
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  BigInt sum = 0;
  for (auto h : counts) sum += BigInt(static_cast<unsigned long>(h));
  return sum;
}

namespace detail {
inline void check_line_args(const Field& F, int n, int d, std::span<const Element> w) {
  if (n < 1 || d < 1 || d > n) throw std::invalid_argument("line_count: need 1 <= d <= n");
  if (static_cast<int>(w.size()) != n || weight(w) != n)
    throw std::invalid_argument("line_count: w must have full support in F_" + std::to_string(F.q()) + "^" +
                                std::to_string(n));
}
}  // namespace detail

/// #{v : wt(v) = nu, wt(xi v + w) <= d for some xi != 0}, w of full support.
inline BigInt line_count(const Field& F, int n, int d, int nu, std::span<const Element> w) {
  detail::check_line_args(F, n, d, w);
  if (nu < 0) throw std::invalid_argument("line_count: need nu >= 0");
  return gamma(F.q(), n, n - d, nu);
}

/// Direct enumeration of the same count over all vectors of weight nu.
inline BigInt line_count_enum(const Field& F, int n, int d, int nu, std::span<const Element> w,
                              std::uint64_t cap = kGammaOracleBudget) {
  detail::check_line_args(F, n, d, w);
  if (nu < 0) throw std::invalid_argument("line_count: need nu >= 0");
  const std::uint64_t q = F.q();
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > cap / q) throw CapExceeded("line count enumeration", cap, std::to_string(q) + "^" + std::to_string(n));
    total *= q;
  }
  std::uint64_t hits = 0;
  Vector v(n), u(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t x = code;
    for (int i = 0; i < n; ++i, x /= q) v[i] = static_cast<Element>(x % q);
    if (weight(v) != nu) continue;
    for (Element xi = 1; xi < q; ++xi) {
      for (int i = 0; i < n; ++i) u[i] = F.add(F.mul(xi, v[i]), w[i]);
      if (weight(u) <= d) {
        ++hits;
        break;
      }
    }
  }
  return BigInt(static_cast<unsigned long>(hits));
}

}  // namespace whitlab
