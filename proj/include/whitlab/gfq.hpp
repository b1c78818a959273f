#pragma once

// Finite field arithmetic over F_q for prime powers q. Elements are dense
// indices 0..q-1; for q = p^e the index of a residue c_0 + c_1 x + ... is
// sum c_i p^i, so index 0 is zero and index 1 is one.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace whitlab::gfq {

using Element = std::uint32_t;

inline constexpr std::uint64_t kDefaultFieldCap = 1u << 20;

struct PrimePower {
  std::uint32_t p = 0;
  std::uint32_t e = 0;
};

/// Returns {p, e} with q = p^e, or {0, 0} when q is not a prime power.
inline PrimePower factor_prime_power(std::uint64_t q) {
  if (q < 2) return {};
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) return {static_cast<std::uint32_t>(q), 1};
  std::uint32_t e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return {};
  return {static_cast<std::uint32_t>(p), e};
}

inline bool is_prime_power(std::uint64_t q) { return factor_prime_power(q).p != 0; }

class Field {
 public:
  explicit Field(std::uint64_t q, std::uint64_t cap = kDefaultFieldCap) {
    if (q > cap)
      throw std::invalid_argument("field: q = " + std::to_string(q) + " exceeds cap " +
                                  std::to_string(cap));
    auto pp = factor_prime_power(q);
    if (pp.p == 0) throw std::invalid_argument("field: " + std::to_string(q) + " is not a prime power");
    q_ = static_cast<std::uint32_t>(q);
    p_ = pp.p;
    e_ = pp.e;
    if (e_ >= 2) {
      modulus_ = smallest_irreducible();
      if (q_ <= (1u << 16)) build_log_tables();
    }
    if (q_ <= 256) build_full_tables();
  }

  std::uint32_t q() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return e_; }
  /// Monic modulus coefficients, constant term first. Empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Element add(Element a, Element b) const {
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    if (e_ == 1) return static_cast<Element>((std::uint64_t{a} + b) % p_);
    if (p_ == 2) return a ^ b;
    return digitwise(a, b, false);
  }

  Element sub(Element a, Element b) const {
    if (e_ == 1) return static_cast<Element>((std::uint64_t{a} + p_ - b) % p_);
    if (p_ == 2) return a ^ b;
    return digitwise(a, b, true);
  }

  Element neg(Element a) const { return sub(0, a); }

  Element mul(Element a, Element b) const {
    if (!mul_table_.empty()) return mul_table_[a * q_ + b];
    if (a == 0 || b == 0) return 0;
    if (e_ == 1) return static_cast<Element>((std::uint64_t{a} * b) % p_);
    if (!log_.empty()) {
      std::uint32_t s = log_[a] + log_[b];
      if (s >= q_ - 1) s -= q_ - 1;
      return exp_[s];
    }
    return poly_mul(a, b);
  }

  Element inv(Element a) const {
    if (a == 0) throw std::domain_error("field: inverse of zero");
    if (!inv_table_.empty()) return inv_table_[a];
    if (!log_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    return pow(a, q_ - 2);
  }

  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  Element pow(Element a, std::uint64_t k) const {
    Element r = 1;
    while (k) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.q_ == b.q_ && a.modulus_ == b.modulus_;
  }

 private:
  std::vector<std::uint32_t> digits(Element a) const {
    std::vector<std::uint32_t> d(e_);
    for (std::uint32_t i = 0; i < e_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  Element from_digits(const std::vector<std::uint32_t>& d) const {
    Element r = 0;
    for (std::uint32_t i = e_; i-- > 0;) r = r * p_ + d[i];
    return r;
  }

  Element digitwise(Element a, Element b, bool subtract) const {
    Element r = 0, scale = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
      std::uint32_t x = a % p_, y = b % p_;
      a /= p_;
      b /= p_;
      r += scale * (subtract ? (x + p_ - y) % p_ : (x + y) % p_);
      scale *= p_;
    }
    return r;
  }

  // Schoolbook product of residues followed by reduction by the monic modulus.
  Element poly_mul(Element a, Element b) const {
    auto x = digits(a), y = digits(b);
    std::vector<std::uint64_t> prod(2 * e_ - 1, 0);
    for (std::uint32_t i = 0; i < e_; ++i)
      for (std::uint32_t j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p_;
    for (std::size_t k = prod.size(); k-- > e_;) {
      const std::uint64_t c = prod[k];
      if (c == 0) continue;
      for (std::uint32_t i = 0; i <= e_; ++i) {
        const std::uint64_t sub = (c * modulus_[i]) % p_;
        prod[k - e_ + i] = (prod[k - e_ + i] + p_ - sub) % p_;
      }
    }
    std::vector<std::uint32_t> out(e_);
    for (std::uint32_t i = 0; i < e_; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return from_digits(out);
  }

  // A monic degree-e polynomial over F_p is irreducible iff it has no monic
  // factor of degree 1..e/2; trial division suffices at these sizes.
  static bool divides(const std::vector<std::uint32_t>& f, std::vector<std::uint32_t> g,
                      std::uint32_t p) {
    // f monic of degree < deg g; returns whether f | g over F_p.
    const std::size_t df = f.size() - 1;
    for (std::size_t k = g.size(); k-- > df;) {
      const std::uint64_t c = g[k];
      if (c == 0) continue;
      for (std::size_t i = 0; i <= df; ++i)
        g[k - df + i] = static_cast<std::uint32_t>((g[k - df + i] + p - (c * f[i]) % p) % p);
    }
    for (std::size_t i = 0; i < df; ++i)
      if (g[i] != 0) return false;
    return true;
  }

  static std::vector<std::uint32_t> monic_from_index(std::uint64_t idx, std::uint32_t deg,
                                                     std::uint32_t p) {
    std::vector<std::uint32_t> c(deg + 1);
    for (std::uint32_t i = 0; i < deg; ++i) {
      c[i] = static_cast<std::uint32_t>(idx % p);
      idx /= p;
    }
    c[deg] = 1;
    return c;
  }

  // Lexicographic order with the constant term as the most significant
  // coordinate, then x, then x^2...
  static std::uint64_t lex_to_index(std::uint64_t rank, std::uint32_t deg, std::uint32_t p) {
    std::vector<std::uint32_t> c(deg);
    for (std::uint32_t i = deg; i-- > 0;) {
      c[i] = static_cast<std::uint32_t>(rank % p);
      rank /= p;
    }
    std::uint64_t idx = 0;
    for (std::uint32_t i = deg; i-- > 0;) idx = idx * p + c[i];
    return idx;
  }

  std::vector<std::uint32_t> smallest_irreducible() const {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < e_; ++i) count *= p_;
    for (std::uint64_t rank = 0; rank < count; ++rank) {
      auto f = monic_from_index(lex_to_index(rank, e_, p_), e_, p_);
      if (f[0] == 0) continue;
      bool irreducible = true;
      for (std::uint32_t dg = 1; dg <= e_ / 2 && irreducible; ++dg) {
        std::uint64_t nd = 1;
        for (std::uint32_t i = 0; i < dg; ++i) nd *= p_;
        for (std::uint64_t j = 0; j < nd; ++j)
          if (divides(monic_from_index(j, dg, p_), f, p_)) {
            irreducible = false;
            break;
          }
      }
      if (irreducible) return f;
    }
    throw std::logic_error("field: no irreducible polynomial found");
  }

  void build_log_tables() {
    const std::uint32_t order = q_ - 1;
    for (Element g = 2; g < q_; ++g) {
      std::vector<std::uint32_t> exp(order);
      Element x = 1;
      bool primitive = true;
      for (std::uint32_t k = 0; k < order; ++k) {
        if (k > 0 && x == 1) {
          primitive = false;
          break;
        }
        exp[k] = x;
        x = poly_mul(x, g);
      }
      if (!primitive || x != 1) continue;
      exp_ = std::move(exp);
      log_.assign(q_, 0);
      for (std::uint32_t k = 0; k < order; ++k) log_[exp_[k]] = k;
      return;
    }
    throw std::logic_error("field: no primitive element found");
  }

  void build_full_tables() {
    std::vector<Element> add(q_ * q_), mul(q_ * q_), inv(q_, 0);
    for (Element a = 0; a < q_; ++a)
      for (Element b = 0; b < q_; ++b) {
        add[a * q_ + b] = e_ == 1 ? (a + b) % p_ : (p_ == 2 ? a ^ b : digitwise(a, b, false));
        Element m;
        if (a == 0 || b == 0) m = 0;
        else if (e_ == 1) m = (a * b) % p_;
        else m = poly_mul(a, b);
        mul[a * q_ + b] = m;
        if (m == 1) inv[a] = b;
      }
    add_table_ = std::move(add);
    mul_table_ = std::move(mul);
    inv_table_ = std::move(inv);
  }

  std::uint32_t q_ = 0, p_ = 0, e_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> log_, exp_;
  std::vector<Element> add_table_, mul_table_, inv_table_;
};

}  // namespace whitlab::gfq
