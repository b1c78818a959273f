#pragma once

// Vectors and subspaces of F_q^n. A subspace is stored as its reduced
// row-echelon basis, which makes equality and hashing structural.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "whitlab/error.hpp"
#include "whitlab/exactmath.hpp"
#include "whitlab/gfq.hpp"

namespace whitlab {

using gfq::Element;
using gfq::Field;
using Vector = std::vector<Element>;

inline int weight(std::span<const Element> v) {
  return static_cast<int>(std::count_if(v.begin(), v.end(), [](Element x) { return x != 0; }));
}

/// Support as a 0-based column bitmask; n is limited to 64 here.
inline std::uint64_t support_mask(std::span<const Element> v) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) m |= std::uint64_t{1} << i;
  return m;
}

/// 1-based support indices, matching the usual coordinate labels.
inline std::vector<int> support(std::span<const Element> v) {
  std::vector<int> s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.push_back(static_cast<int>(i) + 1);
  return s;
}

/// Scales v so that its first nonzero entry is 1. Zero vectors are unchanged.
inline void normalize(const Field& F, Vector& v) {
  auto it = std::find_if(v.begin(), v.end(), [](Element x) { return x != 0; });
  if (it == v.end() || *it == 1) return;
  const Element s = F.inv(*it);
  for (; it != v.end(); ++it) *it = F.mul(*it, s);
}

class Subspace;

namespace detail {
struct SubspaceAccess;
}

class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace of F_q^n.
  Subspace(std::uint32_t q, int n) : q_(q), n_(n) {}

  std::uint32_t q() const { return q_; }
  int ambient() const { return n_; }
  int dim() const { return k_; }
  bool is_zero() const { return k_ == 0; }
  const std::vector<int>& pivots() const { return pivots_; }
  std::span<const Element> row(int r) const {
    return {rows_.data() + static_cast<std::size_t>(r) * n_, static_cast<std::size_t>(n_)};
  }
  Element at(int r, int c) const { return rows_[static_cast<std::size_t>(r) * n_ + c]; }

  std::vector<Vector> basis() const {
    std::vector<Vector> b;
    for (int r = 0; r < k_; ++r) b.emplace_back(row(r).begin(), row(r).end());
    return b;
  }

  std::uint64_t support_mask() const {
    std::uint64_t m = 0;
    for (int r = 0; r < k_; ++r) m |= whitlab::support_mask(row(r));
    return m;
  }
  std::vector<int> support() const {
    std::vector<int> s;
    const auto m = support_mask();
    for (int i = 0; i < n_; ++i)
      if (m >> i & 1) s.push_back(i + 1);
    return s;
  }

  std::size_t hash() const {
    std::size_t h = std::hash<std::uint64_t>{}((std::uint64_t{q_} << 32) ^ (std::uint64_t(n_) << 8) ^
                                                 static_cast<std::uint64_t>(k_));
    for (int p : pivots_) h = h * 1099511628211ULL ^ static_cast<std::size_t>(p);
    for (Element e : rows_) h = h * 1099511628211ULL ^ e;
    return h;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.q_ == b.q_ && a.n_ == b.n_ && a.k_ == b.k_ && a.pivots_ == b.pivots_ &&
           a.rows_ == b.rows_;
  }

  std::string to_string() const {
    if (k_ == 0) return "<0>";
    std::ostringstream os;
    os << "<";
    for (int r = 0; r < k_; ++r) {
      if (r) os << ",";
      for (int c = 0; c < n_; ++c) os << (c ? " " : "") << at(r, c);
    }
    os << ">";
    return os.str();
  }

 private:
  friend struct detail::SubspaceAccess;
  std::uint32_t q_ = 0;
  int n_ = 0;
  int k_ = 0;
  std::vector<Element> rows_;  // k_ * n_, row-major
  std::vector<int> pivots_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const { return s.hash(); }
};

namespace detail {

struct SubspaceAccess {
  static std::vector<Element>& rows(Subspace& s) { return s.rows_; }
  static std::vector<int>& pivots(Subspace& s) { return s.pivots_; }
  static int& k(Subspace& s) { return s.k_; }
};

inline void check_field(const Field& F, const Subspace& U) {
  if (F.q() != U.q()) throw std::invalid_argument("subspace: field mismatch");
}

}  // namespace detail

/// Unique RREF basis of the row space of `rows`.
inline Subspace canonicalize(const Field& F, int n, std::vector<Vector> rows) {
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != n)
      throw std::invalid_argument("canonicalize: row length " + std::to_string(r.size()) +
                                  " does not match n = " + std::to_string(n));
  std::size_t rank = 0;
  std::vector<int> pivots;
  for (int col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    Vector& pr = rows[rank];
    if (pr[col] != 1) {
      const Element s = F.inv(pr[col]);
      for (int c = col; c < n; ++c) pr[c] = F.mul(pr[c], s);
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Element f = rows[r][col];
      for (int c = col; c < n; ++c) rows[r][c] = F.sub(rows[r][c], F.mul(f, pr[c]));
    }
    pivots.push_back(col);
    ++rank;
  }
  Subspace U(F.q(), n);
  auto& data = detail::SubspaceAccess::rows(U);
  for (std::size_t r = 0; r < rank; ++r) data.insert(data.end(), rows[r].begin(), rows[r].end());
  detail::SubspaceAccess::pivots(U) = std::move(pivots);
  detail::SubspaceAccess::k(U) = static_cast<int>(rank);
  return U;
}

/// v minus its projection onto U along the RREF pivots; zero iff v is in U.
inline Vector reduce(const Field& F, const Subspace& U, Vector v) {
  const auto& piv = U.pivots();
  for (int r = 0; r < U.dim(); ++r) {
    const Element f = v[piv[r]];
    if (f == 0) continue;
    auto row = U.row(r);
    for (int c = piv[r]; c < U.ambient(); ++c)
      if (row[c] != 0) v[c] = F.sub(v[c], F.mul(f, row[c]));
  }
  return v;
}

inline bool contains(const Field& F, const Subspace& U, std::span<const Element> v) {
  detail::check_field(F, U);
  if (static_cast<int>(v.size()) != U.ambient())
    throw std::invalid_argument("contains: vector length mismatch");
  // Inline reduction without allocating when possible.
  thread_local Vector scratch;
  scratch.assign(v.begin(), v.end());
  const auto& piv = U.pivots();
  for (int r = 0; r < U.dim(); ++r) {
    const Element f = scratch[piv[r]];
    if (f == 0) continue;
    auto row = U.row(r);
    for (int c = piv[r]; c < U.ambient(); ++c)
      if (row[c] != 0) scratch[c] = F.sub(scratch[c], F.mul(f, row[c]));
  }
  return std::all_of(scratch.begin(), scratch.end(), [](Element x) { return x == 0; });
}

/// U + <v>, computed incrementally from the RREF of U.
inline Subspace extended(const Field& F, const Subspace& U, const Vector& v) {
  Vector w = reduce(F, U, v);
  auto lead = std::find_if(w.begin(), w.end(), [](Element x) { return x != 0; });
  if (lead == w.end()) return U;
  const int col = static_cast<int>(lead - w.begin());
  normalize(F, w);
  const int n = U.ambient();
  std::vector<Vector> rows = U.basis();
  for (auto& r : rows) {
    const Element f = r[col];
    if (f == 0) continue;
    for (int c = col; c < n; ++c) r[c] = F.sub(r[c], F.mul(f, w[c]));
  }
  Subspace out(F.q(), n);
  auto& data = detail::SubspaceAccess::rows(out);
  auto& piv = detail::SubspaceAccess::pivots(out);
  bool placed = false;
  for (int r = 0; r <= U.dim(); ++r) {
    if (!placed && (r == U.dim() || U.pivots()[r] > col)) {
      data.insert(data.end(), w.begin(), w.end());
      piv.push_back(col);
      placed = true;
    }
    if (r < U.dim()) {
      data.insert(data.end(), rows[r].begin(), rows[r].end());
      piv.push_back(U.pivots()[r]);
    }
  }
  detail::SubspaceAccess::k(out) = U.dim() + 1;
  return out;
}

inline bool leq(const Field& F, const Subspace& U, const Subspace& V) {
  if (U.ambient() != V.ambient()) throw std::invalid_argument("leq: dimension mismatch");
  if (U.dim() > V.dim()) return false;
  for (int r = 0; r < U.dim(); ++r)
    if (!contains(F, V, U.row(r))) return false;
  return true;
}

inline Subspace sum(const Field& F, const Subspace& U, const Subspace& V) {
  if (U.ambient() != V.ambient()) throw std::invalid_argument("sum: dimension mismatch");
  detail::check_field(F, U);
  detail::check_field(F, V);
  auto rows = U.basis();
  for (auto& r : V.basis()) rows.push_back(std::move(r));
  return canonicalize(F, U.ambient(), std::move(rows));
}

/// Zassenhaus: echelonize [[U | U], [V | 0]]; rows with zero left half span U ∩ V.
inline Subspace intersect(const Field& F, const Subspace& U, const Subspace& V) {
  const int n = U.ambient();
  if (n != V.ambient()) throw std::invalid_argument("intersect: dimension mismatch");
  detail::check_field(F, U);
  detail::check_field(F, V);
  std::vector<Vector> rows;
  for (int r = 0; r < U.dim(); ++r) {
    Vector x(2 * n);
    std::copy(U.row(r).begin(), U.row(r).end(), x.begin());
    std::copy(U.row(r).begin(), U.row(r).end(), x.begin() + n);
    rows.push_back(std::move(x));
  }
  for (int r = 0; r < V.dim(); ++r) {
    Vector x(2 * n, 0);
    std::copy(V.row(r).begin(), V.row(r).end(), x.begin());
    rows.push_back(std::move(x));
  }
  const Subspace Z = canonicalize(F, 2 * n, std::move(rows));
  std::vector<Vector> meet;
  for (int r = 0; r < Z.dim(); ++r)
    if (Z.pivots()[r] >= n) meet.emplace_back(Z.row(r).begin() + n, Z.row(r).end());
  return canonicalize(F, n, std::move(meet));
}

/// Orthogonal complement under the standard dot product (null space of the RREF).
inline Subspace orthogonal(const Field& F, const Subspace& U) {
  detail::check_field(F, U);
  const int n = U.ambient();
  std::vector<bool> is_pivot(n, false);
  for (int p : U.pivots()) is_pivot[p] = true;
  std::vector<Vector> rows;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector x(n, 0);
    x[f] = 1;
    for (int r = 0; r < U.dim(); ++r) x[U.pivots()[r]] = F.neg(U.at(r, f));
    rows.push_back(std::move(x));
  }
  return canonicalize(F, n, std::move(rows));
}

/// Projective points of U, one normalized representative each.
inline std::vector<Vector> points(const Field& F, const Subspace& U) {
  std::vector<Vector> out;
  const int k = U.dim(), n = U.ambient();
  const std::uint32_t q = F.q();
  for (int lead = 0; lead < k; ++lead) {
    // coefficients: c[lead] = 1, c[j] free for j > lead
    std::vector<Element> c(k, 0);
    c[lead] = 1;
    while (true) {
      Vector v(n, 0);
      for (int r = lead; r < k; ++r) {
        if (c[r] == 0) continue;
        for (int col = 0; col < n; ++col) v[col] = F.add(v[col], F.mul(c[r], U.at(r, col)));
      }
      out.push_back(std::move(v));
      int j = k - 1;
      while (j > lead && c[j] == q - 1) c[j--] = 0;
      if (j == lead) break;
      ++c[j];
    }
  }
  return out;
}

/// Base-q integer key for a vector, used for hashing atoms. Returns false if it
/// would overflow 64 bits.
inline bool vector_key(std::uint32_t q, std::span<const Element> v, std::uint64_t& key) {
  key = 0;
  for (std::size_t i = v.size(); i-- > 0;) {
    if (key > (std::numeric_limits<std::uint64_t>::max() - v[i]) / q) return false;
    key = key * q + v[i];
  }
  return true;
}

// ---------------------------------------------------------------------------
// Enumeration

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<int>> pivot_patterns(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

/// Visits every subspace with the given pivot columns. The same Subspace
/// object is reused between callbacks; copy it if it must outlive the call.
template <class Fn>
void enumerate_with_pivots(const Field& F, int n, const std::vector<int>& pivots, Fn&& fn) {
  const int k = static_cast<int>(pivots.size());
  Subspace U(F.q(), n);
  auto& rows = detail::SubspaceAccess::rows(U);
  detail::SubspaceAccess::pivots(U) = pivots;
  detail::SubspaceAccess::k(U) = k;
  rows.assign(static_cast<std::size_t>(k) * n, 0);
  std::vector<bool> is_pivot(n, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (int r = 0; r < k; ++r) {
    rows[static_cast<std::size_t>(r) * n + pivots[r]] = 1;
    for (int c = pivots[r] + 1; c < n; ++c)
      if (!is_pivot[c]) free.push_back(static_cast<std::size_t>(r) * n + c);
  }
  const Element top = F.q() - 1;
  while (true) {
    fn(static_cast<const Subspace&>(U));
    std::size_t j = free.size();
    while (j > 0 && rows[free[j - 1]] == top) rows[free[--j]] = 0;
    if (j == 0) break;
    ++rows[free[j - 1]];
  }
}

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Visits each k-dimensional subspace of F_q^n once, pivot patterns in lex
/// order and free entries as an odometer.
template <class Fn>
void enumerate_subspaces(const Field& F, int n, int k, Fn&& fn,
                         std::uint64_t cap = kDefaultEnumerationCap) {
  if (k < 0 || k > n) throw std::invalid_argument("enumerate_subspaces: need 0 <= k <= n");
  const BigInt count = qbinom(n, k, F.q());
  if (count > BigInt(static_cast<unsigned long>(cap)))
    throw CapExceeded("subspace enumeration cap", cap, to_decimal(count) + " subspaces");
  for (const auto& p : pivot_patterns(n, k)) enumerate_with_pivots(F, n, p, fn);
}

// ---------------------------------------------------------------------------
// Atom sets

struct AtomSet {
  std::uint32_t q = 0;
  int n = 0;
  std::vector<Vector> vectors;  // normalized, pairwise non-proportional

  std::size_t size() const { return vectors.size(); }
  bool empty() const { return vectors.empty(); }
};

/// Normalizes, drops zero vectors and keeps the first representative of each
/// projective point.
inline AtomSet explicit_atoms(const Field& F, int n, const std::vector<Vector>& vectors) {
  AtomSet A{F.q(), n, {}};
  std::unordered_set<std::uint64_t> seen_keys;
  for (Vector v : vectors) {
    if (static_cast<int>(v.size()) != n)
      throw std::invalid_argument("atoms: vector length " + std::to_string(v.size()) +
                                  " does not match n = " + std::to_string(n));
    for (Element x : v)
      if (x >= F.q()) throw std::invalid_argument("atoms: entry " + std::to_string(x) + " is not in F_q");
    if (weight(v) == 0) continue;
    normalize(F, v);
    std::uint64_t key;
    if (vector_key(F.q(), v, key)) {
      if (!seen_keys.insert(key).second) continue;
    } else if (std::find(A.vectors.begin(), A.vectors.end(), v) != A.vectors.end()) {
      continue;
    }
    A.vectors.push_back(std::move(v));
  }
  return A;
}

/// Projective points of Hamming weight 1..min(d,n), ordered by weight, then
/// support (lex), then entries.
inline AtomSet hwdl_atoms(const Field& F, int n, int d) {
  if (n < 1 || d < 1) throw std::invalid_argument("hwdl atoms: need n, d >= 1");
  AtomSet A{F.q(), n, {}};
  const int top = std::min(d, n);
  for (int w = 1; w <= top; ++w) {
    for (const auto& supp : pivot_patterns(n, w)) {
      std::vector<Element> vals(w, 1);
      while (true) {
        Vector v(n, 0);
        for (int j = 0; j < w; ++j) v[supp[j]] = vals[j];
        A.vectors.push_back(std::move(v));
        int j = w - 1;
        while (j > 0 && vals[j] == F.q() - 1) vals[j--] = 1;
        if (j == 0) break;
        ++vals[j];
      }
    }
  }
  return A;
}

inline AtomSet odd_weight_atoms(const Field& F, int n) {
  if (F.q() != 2) throw std::invalid_argument("odd-weight atoms require q = 2");
  AtomSet A{2, n, {}};
  for (int w = 1; w <= n; w += 2)
    for (const auto& supp : pivot_patterns(n, w)) {
      Vector v(n, 0);
      for (int i : supp) v[i] = 1;
      A.vectors.push_back(std::move(v));
    }
  return A;
}

inline AtomSet subspace_union_atoms(const Field& F, int n, const std::vector<Subspace>& spaces) {
  std::vector<Vector> all;
  for (const auto& U : spaces) {
    if (U.ambient() != n) throw std::invalid_argument("atoms: subspace dimension mismatch");
    for (auto& p : points(F, U)) all.push_back(std::move(p));
  }
  return explicit_atoms(F, n, all);
}

/// Coordinate subspace F_q^n(S) for a set of 0-based columns.
inline Subspace coordinate_subspace(const Field& F, int n, const std::vector<int>& cols) {
  std::vector<Vector> rows;
  for (int c : cols) {
    Vector v(n, 0);
    v[c] = 1;
    rows.push_back(std::move(v));
  }
  return canonicalize(F, n, std::move(rows));
}

struct AtomsFile {
  std::uint32_t q = 0;
  int n = 0;
  std::vector<Vector> vectors;
};

/// Text format: first line "q n", then one vector per line; '#' starts a
/// comment line.
inline AtomsFile parse_atoms(std::istream& in) {
  AtomsFile out;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (!header) {
      long long q = 0, n = 0;
      if (!(ls >> q >> n) || q < 2 || n < 1)
        throw std::invalid_argument("atoms file line " + std::to_string(lineno) + ": expected 'q n'");
      out.q = static_cast<std::uint32_t>(q);
      out.n = static_cast<int>(n);
      header = true;
      continue;
    }
    Vector v;
    long long x;
    while (ls >> x) {
      if (x < 0 || x >= out.q)
        throw std::invalid_argument("atoms file line " + std::to_string(lineno) + ": entry out of range");
      v.push_back(static_cast<Element>(x));
    }
    if (!ls.eof() || static_cast<int>(v.size()) != out.n)
      throw std::invalid_argument("atoms file line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(out.n) + " entries");
    out.vectors.push_back(std::move(v));
  }
  if (!header) throw std::invalid_argument("atoms file: missing 'q n' header");
  return out;
}

inline AtomsFile read_atoms_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open atoms file " + path);
  return parse_atoms(in);
}

/// Fast "does V contain one of the atoms" test. Picks between enumerating the
/// points of V against a hash of the atoms and reducing each atom against V.
class AtomMeetTester {
 public:
  AtomMeetTester(const Field& F, const AtomSet& A) : F_(F), A_(A) {
    hashed_ = true;
    for (const auto& v : A.vectors) {
      std::uint64_t key;
      if (!vector_key(F.q(), v, key)) {
        hashed_ = false;
        keys_.clear();
        break;
      }
      keys_.insert(key);
    }
  }

  bool meets(const Subspace& V) const {
    if (V.dim() == 0 || A_.empty()) return false;
    const double npoints = point_count(V.dim());
    if (hashed_ && npoints < static_cast<double>(A_.size())) return meets_by_points(V);
    for (const auto& a : A_.vectors)
      if (contains(F_, V, a)) return true;
    return false;
  }

 private:
  double point_count(int k) const {
    double p = 1, s = 0;
    for (int i = 0; i < k; ++i) {
      s += p;
      p *= F_.q();
    }
    return s;
  }

  bool meets_by_points(const Subspace& V) const {
    const int k = V.dim(), n = V.ambient();
    const std::uint32_t q = F_.q();
    std::vector<Element> c(k, 0);
    Vector v(n);
    for (int lead = 0; lead < k; ++lead) {
      std::fill(c.begin(), c.end(), 0);
      c[lead] = 1;
      while (true) {
        std::fill(v.begin(), v.end(), 0);
        for (int r = lead; r < k; ++r) {
          if (c[r] == 0) continue;
          auto row = V.row(r);
          for (int col = 0; col < n; ++col)
            if (row[col] != 0) v[col] = F_.add(v[col], F_.mul(c[r], row[col]));
        }
        std::uint64_t key;
        vector_key(q, v, key);
        if (keys_.count(key)) return true;
        int j = k - 1;
        while (j > lead && c[j] == q - 1) c[j--] = 0;
        if (j == lead) break;
        ++c[j];
      }
    }
    return false;
  }

  const Field& F_;
  const AtomSet& A_;
  bool hashed_ = false;
  std::unordered_set<std::uint64_t> keys_;
};

}  // namespace whitlab
