#pragma once

// Exact integer/rational arithmetic helpers: ordinary and Gaussian binomials,
// Bernoulli numbers, power sums, and a small univariate polynomial type with
// rational coefficients.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace whitlab {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt pow_big(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

inline BigInt pow_big(std::int64_t base, unsigned long exponent) {
  return pow_big(BigInt(static_cast<long>(base)), exponent);
}

/// num/den in lowest terms. mpq_class(num, den) alone does not canonicalize.
inline Rational ratio(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("ratio: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational pow_rat(const Rational& base, unsigned long exponent) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  r.canonicalize();
  return r;
}

/// C(m, 2) for small integers, used for the q^{C(i,2)} factors.
constexpr std::int64_t choose2(std::int64_t m) { return m * (m - 1) / 2; }

inline std::string to_decimal(const BigInt& v) { return v.get_str(10); }

inline std::string to_string(const Rational& v) {
  return v.get_den() == 1 ? v.get_num().get_str(10) : v.get_str(10);
}

/// Memoized ordinary binomials. C(m,t) = 0 whenever t < 0, t > m or m < 0.
class BinomTable {
 public:
  BigInt operator()(std::int64_t m, std::int64_t t) {
    if (m < 0 || t < 0 || t > m) return 0;
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(m, t);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(m),
                 static_cast<unsigned long>(t));
    cache_.emplace(key, r);
    return r;
  }

  static BinomTable& global() {
    static BinomTable table;
    return table;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::int64_t, std::int64_t>, BigInt> cache_;
};

inline BigInt binom(std::int64_t m, std::int64_t t) {
  return BinomTable::global()(m, t);
}

namespace detail {

inline std::mutex& qbinom_mutex() {
  static std::mutex m;
  return m;
}

inline std::map<std::tuple<std::int64_t, std::int64_t, std::uint64_t>, BigInt>&
qbinom_cache() {
  static std::map<std::tuple<std::int64_t, std::int64_t, std::uint64_t>, BigInt> c;
  return c;
}

}  // namespace detail

/// Gaussian binomial [r s]_q; zero outside 0 <= s <= r.
inline BigInt qbinom(std::int64_t r, std::int64_t s, std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("qbinom: q must be at least 2");
  if (r < 0 || s < 0 || s > r) return 0;
  if (s == 0 || s == r) return 1;
  auto key = std::make_tuple(r, s, q);
  {
    std::lock_guard lock(detail::qbinom_mutex());
    auto& cache = detail::qbinom_cache();
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  BigInt num = 1, den = 1;
  const BigInt qq(static_cast<unsigned long>(q));
  for (std::int64_t i = 0; i < s; ++i) {
    num *= pow_big(qq, static_cast<unsigned long>(r - i)) - 1;
    den *= pow_big(qq, static_cast<unsigned long>(s - i)) - 1;
  }
  BigInt result;
  mpz_divexact(result.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  std::lock_guard lock(detail::qbinom_mutex());
  detail::qbinom_cache().emplace(key, result);
  return result;
}

/// q^e as a BigInt; e must be non-negative.
inline BigInt qpow(std::uint64_t q, std::int64_t e) {
  if (e < 0) throw std::invalid_argument("qpow: negative exponent");
  return pow_big(BigInt(static_cast<unsigned long>(q)), static_cast<unsigned long>(e));
}

inline BigInt sign_pow(std::int64_t e) { return (e % 2 == 0) ? BigInt(1) : BigInt(-1); }

/// Bernoulli numbers of the first kind (x/(e^x-1)), so B_1 = -1/2.
inline Rational bernoulli(unsigned i) {
  static std::mutex mutex;
  static std::vector<Rational> memo{Rational(1)};
  std::lock_guard lock(mutex);
  while (memo.size() <= i) {
    // sum_{k=0}^{m} C(m+1,k) B_k = 0
    const auto m = static_cast<std::int64_t>(memo.size());
    Rational acc = 0;
    for (std::int64_t k = 0; k < m; ++k) acc += Rational(binom(m + 1, k)) * memo[k];
    Rational next = -acc / Rational(binom(m + 1, m));
    next.canonicalize();
    memo.push_back(next);
  }
  return memo[i];
}

/// sum_{i=1}^{a} i^j through the Faulhaber-Bernoulli formula.
inline BigInt power_sum(unsigned j, std::uint64_t a) {
  Rational acc = 0;
  const BigInt aa(static_cast<unsigned long>(a));
  for (unsigned i = 0; i <= j; ++i) {
    Rational term = Rational(binom(j + 1, i)) * bernoulli(i) *
                    Rational(pow_big(aa, j + 1 - i));
    if (i % 2 == 1) term = -term;
    acc += term;
  }
  acc /= Rational(j + 1);
  acc.canonicalize();
  if (acc.get_den() != 1)
    throw std::logic_error("power_sum: Faulhaber formula produced a non-integer");
  return acc.get_num();
}

/// Univariate polynomial with exact rational coefficients; coeffs_[i] is the
/// coefficient of x^i. Trailing zeros are always trimmed, so the zero
/// polynomial has no coefficients and degree -1.
class UniPolyQ {
 public:
  UniPolyQ() = default;
  explicit UniPolyQ(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static UniPolyQ constant(const Rational& c) { return UniPolyQ({c}); }
  static UniPolyQ monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return UniPolyQ(std::move(v));
  }
  static UniPolyQ variable() { return monomial(1, 1); }
  /// x - r
  static UniPolyQ linear(const Rational& root) { return UniPolyQ({-root, Rational(1)}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  bool has_integer_coefficients() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rational& c) { return c.get_den() == 1; });
  }

  UniPolyQ& operator+=(const UniPolyQ& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  UniPolyQ& operator-=(const UniPolyQ& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  UniPolyQ& operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    trim();
    return *this;
  }
  friend UniPolyQ operator+(UniPolyQ a, const UniPolyQ& b) { return a += b; }
  friend UniPolyQ operator-(UniPolyQ a, const UniPolyQ& b) { return a -= b; }
  friend UniPolyQ operator*(UniPolyQ a, const Rational& s) { return a *= s; }
  friend UniPolyQ operator*(const Rational& s, UniPolyQ a) { return a *= s; }
  friend UniPolyQ operator*(const UniPolyQ& a, const UniPolyQ& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UniPolyQ(std::move(out));
  }
  UniPolyQ& operator*=(const UniPolyQ& o) { return *this = *this * o; }

  UniPolyQ pow(unsigned e) const {
    UniPolyQ r = constant(1);
    for (unsigned i = 0; i < e; ++i) r *= *this;
    return r;
  }

  /// p(x + c)
  UniPolyQ shift(const Rational& c) const {
    UniPolyQ result;
    const UniPolyQ base({c, Rational(1)});
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      result = result * base;
      result += constant(*it);
    }
    return result;
  }

  friend bool operator==(const UniPolyQ& a, const UniPolyQ& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(std::string_view var = "x") const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      const Rational& c = coeffs_[k];
      if (c == 0) continue;
      Rational mag = abs(c);
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      const bool unit = (mag == 1);
      if (k == 0 || !unit) os << whitlab::to_string(mag);
      if (k >= 1) {
        if (!unit) os << "*";
        os << var;
        if (k > 1) os << "^" << k;
      }
    }
    return os.str();
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const UniPolyQ& p) { return os << p.to_string(); }

/// S_j(x) with S_j(a) = sum_{i=1}^{a} i^j for integers a >= 0.
inline UniPolyQ power_sum_poly(unsigned j) {
  std::vector<Rational> c(j + 2);
  for (unsigned i = 0; i <= j; ++i) {
    Rational term = Rational(binom(j + 1, i)) * bernoulli(i) / Rational(j + 1);
    if (i % 2 == 1) term = -term;
    term.canonicalize();
    c[j + 1 - i] = term;
  }
  return UniPolyQ(std::move(c));
}

/// prod (x - r_i)
inline UniPolyQ expand_linear_factors(std::span<const Rational> roots) {
  UniPolyQ p = UniPolyQ::constant(1);
  for (const auto& r : roots) p *= UniPolyQ::linear(r);
  return p;
}

/// Thrown when a supplied value is not a root of the polynomial being deflated.
class DeflationError : public std::invalid_argument {
 public:
  DeflationError(const Rational& root, const Rational& remainder)
      : std::invalid_argument("deflate_roots: " + whitlab::to_string(root) +
                              " is not a root (remainder " + whitlab::to_string(remainder) + ")"),
        root_(root),
        remainder_(remainder) {}
  const Rational& root() const { return root_; }
  const Rational& remainder() const { return remainder_; }

 private:
  Rational root_;
  Rational remainder_;
};

/// Divides out (x - r) for each supplied root by synthetic division.
inline UniPolyQ deflate_roots(const UniPolyQ& p, std::span<const Rational> roots) {
  std::vector<Rational> c = p.coefficients();
  for (const auto& r : roots) {
    if (c.empty()) throw DeflationError(r, 0);
    std::vector<Rational> quotient(c.size() - 1);
    Rational carry = 0;
    for (std::size_t k = c.size(); k-- > 0;) {
      carry = carry * r + c[k];
      if (k > 0) quotient[k - 1] = carry;
    }
    if (carry != 0) throw DeflationError(r, carry);
    c = std::move(quotient);
  }
  return UniPolyQ(std::move(c));
}

/// Unique polynomial of degree < points.size() through the given points.
/// Newton divided differences, then expansion into the monomial basis.
inline UniPolyQ lagrange_interpolate(std::span<const std::pair<Rational, Rational>> points) {
  const std::size_t m = points.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (points[i].first == points[j].first)
        throw std::invalid_argument("lagrange_interpolate: duplicate abscissa " +
                                    to_string(points[i].first));
  std::vector<Rational> dd(m);
  for (std::size_t i = 0; i < m; ++i) dd[i] = points[i].second;
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = m - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (points[i].first - points[i - level].first);
      if (i == level) break;
    }
  UniPolyQ result;
  for (std::size_t i = m; i-- > 0;) {
    result = result * UniPolyQ::linear(points[i].first);
    result += UniPolyQ::constant(dd[i]);
  }
  return result;
}

}  // namespace whitlab
