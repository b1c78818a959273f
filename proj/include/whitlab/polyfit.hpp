#pragma once

// Polynomiality in q: exact interpolation of count functions over prime
// powers, and comparison of degree and leading data with the growth theorems.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "whitlab/agreement.hpp"
#include "whitlab/exactmath.hpp"
#include "whitlab/gfq.hpp"
#include "whitlab/hwdl.hpp"

namespace whitlab {

/// Large field sizes for ratio checks, and the relative tolerance 1/20.
inline constexpr std::uint64_t kLargeQ[2] = {997, 1009};
inline const Rational kAsymptoticTolerance = ratio(1, 20);

using CountFunction = std::function<Rational(std::uint64_t)>;

struct FitReport {
  std::string target;
  std::vector<std::uint64_t> samples;
  std::vector<std::uint64_t> validations;
  /// Empty when some validation point disagrees with the interpolant.
  std::optional<UniPolyQ> poly;
  int degree = -1;
  Rational leading = 0;
  /// True where polynomiality is open and the fit is only evidence.
  bool evidence_only = false;
  bool fits = false;
  std::string verdict;
  /// First failing validation point, with expected and interpolated values.
  std::optional<std::uint64_t> failed_at;
};

/// The first `count` prime powers that are >= `from` and not in `skip`.
inline std::vector<std::uint64_t> prime_powers(std::size_t count, std::uint64_t from = 2,
                                               const std::vector<std::uint64_t>& skip = {}) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = std::max<std::uint64_t>(from, 2); out.size() < count; ++q)
    if (gfq::is_prime_power(q) && std::find(skip.begin(), skip.end(), q) == skip.end()) out.push_back(q);
  return out;
}

namespace detail {

// Evaluates f at every point, spreading points over `jobs` threads.
inline std::vector<Rational> evaluate_all(const CountFunction& f, const std::vector<std::uint64_t>& xs,
                                          unsigned jobs) {
  std::vector<Rational> out(xs.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(xs.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
    return out;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < xs.size(); i += jobs) out[i] = f(xs[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace detail

/// Exact interpolation through f at the sample points, then exact evaluation
/// at the validation points. The points are arbitrary integers here.
inline FitReport fit_points(const std::string& name, const CountFunction& f, std::vector<std::uint64_t> samples,
                            std::vector<std::uint64_t> validate, int expected_degree = -1, unsigned jobs = 1) {
  if (samples.empty()) throw std::invalid_argument("fit " + name + ": no sample points");
  if (validate.empty()) throw std::invalid_argument("fit " + name + ": no validation points");
  if (expected_degree >= 0 && samples.size() < static_cast<std::size_t>(expected_degree) + 1)
    throw std::invalid_argument("fit " + name + ": " + std::to_string(samples.size()) +
                                " samples cannot determine degree " + std::to_string(expected_degree));
  for (auto v : validate)
    if (std::find(samples.begin(), samples.end(), v) != samples.end())
      throw std::invalid_argument("fit " + name + ": " + std::to_string(v) + " is both a sample and a validation point");

  std::vector<std::uint64_t> all = samples;
  all.insert(all.end(), validate.begin(), validate.end());
  const auto values = detail::evaluate_all(f, all, jobs);

  std::vector<std::pair<Rational, Rational>> pts;
  for (std::size_t i = 0; i < samples.size(); ++i) pts.emplace_back(Rational(samples[i]), values[i]);
  const UniPolyQ p = lagrange_interpolate(pts);

  FitReport r;
  r.target = name;
  r.samples = std::move(samples);
  r.validations = std::move(validate);
  for (std::size_t j = 0; j < r.validations.size(); ++j)
    if (p(Rational(r.validations[j])) != values[r.samples.size() + j]) {
      r.failed_at = r.validations[j];
      break;
    }
  r.fits = !r.failed_at;
  if (r.fits) {
    r.poly = p;
    r.degree = p.degree();
    r.leading = p.leading();
    r.verdict = "fit";
  } else {
    r.verdict = "not a polynomial of this degree on tested range";
  }
  return r;
}

/// fit_points restricted to prime-power abscissae.
inline FitReport fit_in_q(const std::string& name, const CountFunction& f, std::vector<std::uint64_t> samples,
                          std::vector<std::uint64_t> validate, int expected_degree = -1, unsigned jobs = 1) {
  for (const auto* set : {&samples, &validate})
    for (auto q : *set)
      if (!gfq::is_prime_power(q)) throw std::invalid_argument("fit " + name + ": " + std::to_string(q) + " is not a prime power");
  return fit_points(name, f, std::move(samples), std::move(validate), expected_degree, jobs);
}

// ---------------------------------------------------------------------------
// Targets evaluated through closed forms only

enum class AsymKind { Beta, Whitney, Delta };

/// beta(k,n,d), w(i,n,d) or delta(k,n); d is ignored for delta.
struct AsymTarget {
  AsymKind kind;
  int index;
  int n;
  int d = 0;

  std::string name() const {
    const std::string k = std::to_string(index), n_ = std::to_string(n), d_ = std::to_string(d);
    switch (kind) {
      case AsymKind::Beta: return "beta_" + k + "(q," + n_ + "," + d_ + ")";
      case AsymKind::Whitney: return "w_" + k + "(q," + n_ + "," + d_ + ")";
      case AsymKind::Delta: return "delta_" + k + "(q," + n_ + ")";
    }
    return "?";
  }
};

/// beta_k(q,n,d) without any enumeration; nullopt when some w_i, i <= k, has
/// no closed form.
inline std::optional<BigInt> beta_closed(std::uint64_t q, int n, int d, int k) {
  if (k <= 0 || k > n) return BigInt(0);
  if (k > n - d) return qbinom(n, k, q);
  if (k == 1) return hwdl_atom_count(q, n, d);
  if (k == 2 && d >= 2) return beta2_closed(q, n, d);
  WhitneySequence w;
  for (int i = 0; i <= k; ++i) {
    auto v = whitney_closed(q, n, d, i);
    if (!v) return std::nullopt;
    w.push_back(*v);
  }
  return beta_complement(q, n, k, alpha_from_whitney(q, n, w).back());
}

namespace detail {

inline void check_target(const AsymTarget& t) {
  if (t.n < 1) throw std::invalid_argument(t.name() + ": need n >= 1");
  if (t.kind != AsymKind::Delta && t.d < 1) throw std::invalid_argument(t.name() + ": need d >= 1");
  const int lo = t.kind == AsymKind::Whitney ? 0 : 1;
  if (t.index < lo || t.index > t.n) throw std::invalid_argument(t.name() + ": index out of range");
}

}  // namespace detail

/// Exact value of the target at q; invalid_argument when no closed route exists.
inline Rational target_value(const AsymTarget& t, std::uint64_t q) {
  detail::check_target(t);
  auto unaffordable = [&] {
    return std::invalid_argument(t.name() + ": outside the families with closed forms");
  };
  switch (t.kind) {
    case AsymKind::Beta: {
      auto v = beta_closed(q, t.n, t.d, t.index);
      if (!v) throw unaffordable();
      return Rational(*v);
    }
    case AsymKind::Whitney: {
      auto v = whitney_closed(q, t.n, t.d, t.index);
      if (!v) throw unaffordable();
      return Rational(*v);
    }
    case AsymKind::Delta: {
      if (t.index == t.n) return 0;
      auto v = beta_closed(q, t.n, t.n - t.index, t.index);
      if (!v) throw unaffordable();
      return ratio(*v, qbinom(t.n, t.index, q));
    }
  }
  throw std::logic_error("target_value: unknown kind");
}

/// One growth statement: f ~ coefficient * q^exponent, or f in O(q^exponent)
/// when there is no coefficient. Absolute values are compared for w_i.
struct GrowthPrediction {
  std::string source;
  int exponent = 0;
  std::optional<Rational> coefficient;
  /// f(q) / q^exponent at each large q (absolute value).
  std::vector<Rational> ratios;
  bool passed = false;
  std::string detail;
};

struct AsymReport {
  AsymTarget target;
  /// True where the target is proved to be a polynomial in q.
  bool proven_polynomial = false;
  std::optional<FitReport> fit;
  std::vector<GrowthPrediction> predictions;
  bool passed = false;
};

/// The growth statements that apply to the target.
inline std::vector<GrowthPrediction> growth_predictions(const AsymTarget& t) {
  detail::check_target(t);
  std::vector<GrowthPrediction> out;
  auto exact = [&](std::string src, int e, Rational c) {
    c.canonicalize();
    out.push_back({std::move(src), e, c, {}, false, {}});
  };
  auto bound = [&](std::string src, int e) { out.push_back({std::move(src), e, std::nullopt, {}, false, {}}); };
  const int n = t.n, d = t.d, i = t.index;
  const auto c2 = [](int x) { return static_cast<int>(choose2(x)); };

  switch (t.kind) {
    case AsymKind::Beta:
      if (n > d && d >= 2) {
        if (i <= n - d) exact("beta growth, k <= n-d", (i - 1) * (n - i) + d - 1, Rational(binom(n, d)));
        else exact("beta growth, k > n-d", i * (n - i), 1);
      }
      break;
    case AsymKind::Delta:
      if (i >= 1 && i <= n - 2) exact("non-MDS density", -1, Rational(binom(n, i)));
      break;
    case AsymKind::Whitney: {
      if (i == 0) {
        exact("w_0", 0, 1);
        break;
      }
      if (d == 1) exact("exact growth, d = 1", 0, Rational(binom(n, i)));
      if (d == 2 && n >= 2 && i <= n - 1) {
        // sum over 2 <= j_1 < ... < j_i <= n of prod (j_t - 1) = e_i(1, ..., n-1)
        std::vector<BigInt> e(n, 0);
        e[0] = 1;
        for (int j = 1; j <= n - 1; ++j)
          for (int k = j; k >= 1; --k) e[k] += BigInt(j) * e[k - 1];
        exact("exact growth, d = 2", i, Rational(e[i]));
      }
      if (d == 2 && n >= 2 && i == n) {
        BigInt f = 1;
        for (int j = 2; j <= n - 1; ++j) f *= j;
        exact("exact growth, d = 2, i = n", n - 1, Rational(f));
      }
      if (d >= n) exact("exact growth, d >= n", i * (n - i) + c2(i), 1);
      if (n >= 3 && d == n - 1) {
        if (i == 1) exact("exact growth, d = n-1, i = 1", n - 2, n);
        else exact("exact growth, d = n-1", i * n - 1 - c2(i + 1), n - 1);
      }
      if (n >= 4 && d == n - 2 && i == 2) {
        const Rational N(n);
        exact("sharpness, w_2(q,n,n-2)", 2 * n - 6,
              ratio(1, 8) * pow_rat(N, 4) - ratio(3, 4) * pow_rat(N, 3) + ratio(19, 8) * N * N - ratio(11, 4) * N);
      }
      if (n >= 6 && d == 3 && i == 2) {
        // Signs of the n^3, n^2, n terms as in the expanded formula for
        // w_2(q,n,3); only these make the coefficient vanish at n = 0..3.
        const Rational N(n);
        exact("w_2(q,n,3) growth", 4,
              ratio(1, 72) * pow_rat(N, 6) - ratio(1, 12) * pow_rat(N, 5) + ratio(1, 18) * pow_rat(N, 4) +
                  ratio(1, 2) * pow_rat(N, 3) - ratio(77, 72) * N * N + ratio(7, 12) * N);
      }
      if (d >= 2 && n >= d + 2 && i >= 2) bound("upper bound", d - 1 + n * (i - 1) - c2(i + 1));
      if (n >= 3 && d >= 3 && i >= 2 && n >= i * d)
        bound("large-n bound", std::max(i * (d + 1) - 1 - c2(i + 1), d * (i * i - i + 1) - i - c2(i + 1)));
      break;
    }
  }
  return out;
}

/// Fixed constant for O-bound ratio checks: |f(q)| / q^e must stay below it
/// at every large q. Independent of q, so growth beyond q^e shows up as a
/// ratio near q times a coefficient.
inline BigInt bound_constant(int n) { return pow_big(4, static_cast<unsigned long>(n)); }

/// True for beta_1, beta_2 and w_0..w_2 (proved), and beta_k with k > n-d
/// (a Gaussian binomial). Everything else is interpolation evidence only.
inline bool proven_polynomial(const AsymTarget& t) {
  switch (t.kind) {
    case AsymKind::Beta: return t.index <= 2 || t.index > t.n - t.d;
    case AsymKind::Whitney: return t.index <= 2;
    case AsymKind::Delta: return false;
  }
  return false;
}

inline AsymReport check_asymptotics(const AsymTarget& t, unsigned jobs = 1) {
  AsymReport rep{t, proven_polynomial(t), std::nullopt, growth_predictions(t), false};
  if (rep.predictions.empty()) throw std::invalid_argument(t.name() + ": no growth statement covers this target");

  const std::vector<std::uint64_t> large(std::begin(kLargeQ), std::end(kLargeQ));
  const auto f = [&t](std::uint64_t q) { return target_value(t, q); };

  if (rep.proven_polynomial) {
    int deg = 0;
    for (const auto& p : rep.predictions) deg = std::max(deg, p.exponent);
    rep.fit = fit_in_q(t.name(), f, prime_powers(static_cast<std::size_t>(deg) + 1), large, deg, jobs);
    for (auto& p : rep.predictions) {
      if (!rep.fit->fits) {
        p.detail = "degree exceeds " + std::to_string(deg) + ": interpolant fails at q = " + std::to_string(*rep.fit->failed_at);
        continue;
      }
      const int fd = rep.fit->degree;
      const Rational lead = abs(rep.fit->leading);
      if (p.coefficient) {
        p.passed = fd == p.exponent && lead == *p.coefficient;
        p.detail = "fitted degree " + std::to_string(fd) + ", |leading| " + to_string(lead);
      } else {
        p.passed = fd <= p.exponent;
        p.detail = "fitted degree " + std::to_string(fd);
      }
    }
  } else {
    const auto values = detail::evaluate_all(f, large, jobs);
    for (auto& p : rep.predictions) {
      p.passed = true;
      for (std::size_t j = 0; j < large.size(); ++j) {
        const Rational qe = p.exponent >= 0 ? Rational(qpow(large[j], p.exponent)) : ratio(1, qpow(large[j], -p.exponent));
        Rational r = abs(values[j]) / qe;
        r.canonicalize();
        p.ratios.push_back(r);
        if (p.coefficient) p.passed = p.passed && abs(r - *p.coefficient) <= *p.coefficient * kAsymptoticTolerance;
        else p.passed = p.passed && r <= Rational(bound_constant(t.n));
      }
      p.detail = p.coefficient ? "ratio within 1/20 of " + to_string(*p.coefficient)
                               : "ratio below " + to_decimal(bound_constant(t.n));
    }
  }
  rep.passed = std::all_of(rep.predictions.begin(), rep.predictions.end(), [](const auto& p) { return p.passed; });
  return rep;
}

// ---------------------------------------------------------------------------
// Polynomiality

/// gamma_a(b,c,nu) in a: the constructed polynomial against interpolation of
/// recursion values at a = 1..deg+1, validated at two further points.
inline FitReport check_gamma_polynomiality(int b, int c, int nu, unsigned jobs = 1) {
  const UniPolyQ built = gamma_poly(b, c, nu);
  const int deg = std::max(0, nu + 1);
  std::vector<std::uint64_t> samples, validate{static_cast<std::uint64_t>(deg) + 2, static_cast<std::uint64_t>(deg) + 3};
  for (int a = 1; a <= deg + 1; ++a) samples.push_back(static_cast<std::uint64_t>(a));
  const std::string name = "gamma(" + std::to_string(b) + "," + std::to_string(c) + "," + std::to_string(nu) + ")";
  FitReport r = fit_points(
      name, [&](std::uint64_t a) { return Rational(gamma_recursion(static_cast<std::int64_t>(a), b, c, nu)); }, samples,
      validate, deg, jobs);
  if (r.fits && !(*r.poly == built)) {
    r.fits = false;
    r.verdict = "interpolant differs from constructed polynomial " + built.to_string();
  }
  return r;
}

/// Upper bound on deg_q w_2(q,n,d) = beta_1 [n-1,1]_q - beta_2.
inline int w2_degree_bound(int n, int d) { return std::max(n + d - 3, 2 * (n - 2)); }

/// Upper bound on deg_q beta_2(q,n,d).
inline int beta2_degree_bound(int n, int d) { return 2 <= n - d ? (n - 2) + d - 1 : 2 * (n - 2); }

/// beta_2 or w_2 over the first deg+1 prime powers, validated on the next two.
inline FitReport check_beta2_polynomiality(int n, int d, unsigned jobs = 1) {
  if (d < 2 || d > n) throw std::invalid_argument("beta_2 polynomiality: need n >= d >= 2");
  const int deg = beta2_degree_bound(n, d);
  const auto qs = prime_powers(static_cast<std::size_t>(deg) + 3);
  return fit_in_q(
      AsymTarget{AsymKind::Beta, 2, n, d}.name(), [&](std::uint64_t q) { return Rational(beta2_closed(q, n, d)); },
      {qs.begin(), qs.end() - 2}, {qs.end() - 2, qs.end()}, deg, jobs);
}

inline FitReport check_w2_polynomiality(int n, int d, unsigned jobs = 1) {
  if (d < 2 || d > n) throw std::invalid_argument("w_2 polynomiality: need n >= d >= 2");
  const int deg = w2_degree_bound(n, d);
  const auto qs = prime_powers(static_cast<std::size_t>(deg) + 3);
  return fit_in_q(
      AsymTarget{AsymKind::Whitney, 2, n, d}.name(), [&](std::uint64_t q) { return Rational(w2_general(q, n, d)); },
      {qs.begin(), qs.end() - 2}, {qs.end() - 2, qs.end()}, deg, jobs);
}

/// Interpolation evidence for a target whose polynomiality is open. The
/// report is labelled evidence_only and asserts nothing beyond the fit.
inline FitReport polynomial_evidence(const AsymTarget& t, int degree_guess, unsigned jobs = 1) {
  const auto qs = prime_powers(static_cast<std::size_t>(degree_guess) + 3);
  FitReport r = fit_in_q(
      t.name(), [&](std::uint64_t q) { return target_value(t, q); }, {qs.begin(), qs.end() - 2},
      {qs.end() - 2, qs.end()}, degree_guess, jobs);
  r.evidence_only = !proven_polynomial(t);
  return r;
}

}  // namespace whitlab
