// whitlab: command-line front end for the whitlab library.
//
// Exit codes: 0 success, 1 a verification check failed, 2 invalid
// parameters, 3 a cap or budget was exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "whitlab/agreement.hpp"
#include "whitlab/distributions.hpp"
#include "whitlab/hwdl.hpp"
#include "whitlab/lattice.hpp"
#include "whitlab/polyfit.hpp"
#include "whitlab/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace whitlab;

namespace {

constexpr int kSchemaVersion = 1;

struct Record {
  std::string kind;
  json params = json::object();
  std::vector<std::string> values;
  std::string method;
  long long runtime_ms = 0;
  json extra = json::object();
};

json to_json(const Record& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = r.kind;
  j["params"] = r.params;
  j["values"] = r.values;
  j["method"] = r.method;
  j["runtime_ms"] = r.runtime_ms;
  for (auto it = r.extra.begin(); it != r.extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

Record from_json(const json& j) {
  Record r;
  r.kind = j.at("kind").get<std::string>();
  r.params = j.at("params");
  r.values = j.at("values").get<std::vector<std::string>>();
  r.method = j.at("method").get<std::string>();
  r.runtime_ms = j.at("runtime_ms").get<long long>();
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!std::set<std::string>{"schema_version", "kind", "params", "values", "method", "runtime_ms"}.count(it.key()))
      r.extra[it.key()] = it.value();
  return r;
}

std::vector<std::string> decimals(const std::vector<BigInt>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(to_decimal(x));
  return out;
}

std::string join(const std::vector<std::string>& v, const char* sep = " ") {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : sep) + x;
  return s;
}

/// Coefficients from the leading term down, as exact strings.
std::vector<std::string> coefficients_high(const UniPolyQ& p) {
  std::vector<std::string> out;
  for (int k = p.degree(); k >= 0; --k) out.push_back(to_string(p.coeff(static_cast<std::size_t>(k))));
  return out;
}

struct Global {
  bool json_out = false;
  bool timing = false;
  std::uint64_t cap = kDefaultEnumerationCap;
  std::uint64_t closure_cap = kDefaultClosureCap;
  unsigned jobs = 1;
};

void emit(const Global& g, const Record& r, const std::string& human) {
  if (g.json_out) std::cout << to_json(r).dump(2) << "\n";
  else std::cout << human << "\n";
}

template <class Fn>
auto timed(const Global& g, Record& r, Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  auto v = fn();
  if (g.timing)
    r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return v;
}

// ---------------------------------------------------------------------------
// Whitney numbers by method

void check_qnd(std::uint64_t q, int n, int d) {
  if (!gfq::is_prime_power(q)) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
  if (n < 1 || d < 1) throw std::invalid_argument("need n >= 1 and d >= 1");
}

/// w_0..w_top of H(q,n,d); the method actually used is written to `used`.
WhitneySequence whitney_by(std::uint64_t q, int n, int d, int top, const std::string& method, const Global& g,
                           std::string& used) {
  check_qnd(q, n, d);
  if (d > n) d = n;
  if (top < 0 || top > n) top = n;
  auto closed = [&]() -> std::optional<WhitneySequence> {
    WhitneySequence w;
    for (int i = 0; i <= top; ++i) {
      auto v = whitney_closed(q, n, d, i);
      if (!v) return std::nullopt;
      w.push_back(*v);
    }
    return w;
  };
  auto via_alpha = [&] {
    Field F(q);
    return whitney_from_alpha(q, n, alpha_sequence(F, n, hwdl_atoms(F, n, d), top, g.cap, g.jobs));
  };
  used = method;
  if (method == "auto") {
    if (auto w = closed()) {
      used = "closed";
      return *w;
    }
    used = "alpha";
    return via_alpha();
  }
  if (method == "closed") {
    if (auto w = closed()) return *w;
    throw std::invalid_argument("no closed form for w_i(" + std::to_string(q) + "," + std::to_string(n) + "," +
                                std::to_string(d) + ") up to i = " + std::to_string(top));
  }
  if (method == "alpha") return via_alpha();
  if (method == "beta") {
    BetaSequence b;
    for (int k = 0; k <= top; ++k) b.push_back(beta_hwdl(q, n, d, k, BetaMethod::Enum, g.cap, g.jobs));
    return whitney_from_beta(q, n, b);
  }
  if (method == "brute") {
    Field F(q);
    return build_geometry(F, hwdl_atoms(F, n, d), g.closure_cap, top == n ? -1 : top).whitney();
  }
  throw std::invalid_argument("unknown whitney method '" + method + "'");
}

/// w_i(q,n,d) through the reduction formula; lower values from closed forms,
/// falling back to the alpha transform.
BigInt whitney_reduction(std::uint64_t q, int n, int d, int i, const Global& g) {
  check_qnd(q, n, d);
  if (i < 1) throw std::invalid_argument("reduction: need --i >= 1");
  if (n < i * d) throw std::invalid_argument("reduction: need n >= i*d");
  std::map<int, BigInt> lower;
  for (int t = i; t <= i * d - 1; ++t) {
    std::string used;
    lower[t] = whitney_by(q, t, d, i, "auto", g, used)[i];
  }
  return reduction_formula(q, n, d, i, lower);
}

Record whitney_record(std::uint64_t q, int n, int d, std::optional<int> i, const std::string& method, const Global& g) {
  Record r;
  r.kind = "whitney";
  r.params = {{"q", q}, {"n", n}, {"d", d}};
  if (i) r.params["i"] = *i;
  if (method == "reduction") {
    if (!i) throw std::invalid_argument("reduction: give --i");
    const BigInt v = timed(g, r, [&] { return whitney_reduction(q, n, d, *i, g); });
    r.values = {to_decimal(v)};
    r.method = "reduction";
    return r;
  }
  std::string used;
  const auto w = timed(g, r, [&] { return whitney_by(q, n, d, i ? *i : -1, method, g, used); });
  r.method = used;
  if (i) {
    if (*i < 0 || *i > std::min(n, static_cast<int>(w.size()) - 1)) r.values = {"0"};
    else r.values = {to_decimal(w[*i])};
  } else {
    r.values = decimals(w);
  }
  return r;
}

Record charpoly_record(std::uint64_t q, int n, int d, const std::string& method, bool deflate, const Global& g) {
  Record r;
  r.kind = "charpoly";
  r.params = {{"q", q}, {"n", n}, {"d", d}};
  std::string used;
  const auto w = timed(g, r, [&] { return whitney_by(q, n, d, -1, method, g, used); });
  r.method = used;
  const UniPolyQ chi = charpoly_from_whitney(w, n);
  r.values = coefficients_high(chi);
  if (deflate) {
    UniPolyQ rest = chi;
    std::vector<std::string> roots;
    for (int e = 0; rest.degree() > 0; ++e) {
      const Rational root(qpow(q, e));
      if (rest(root) != 0) break;
      const std::vector<Rational> one = {root};
      rest = deflate_roots(rest, one);
      roots.push_back(to_decimal(qpow(q, e)));
    }
    r.extra["deflated_roots"] = roots;
    r.extra["quotient"] = coefficients_high(rest);
  }
  return r;
}

std::string charpoly_text(const Record& r, std::uint64_t q) {
  auto poly_from = [](const std::vector<std::string>& c) {
    std::vector<Rational> v(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) v[c.size() - 1 - k] = Rational(c[k]);
    return UniPolyQ(std::move(v));
  };
  std::string s = poly_from(r.values).to_string("λ");
  if (r.extra.contains("quotient")) {
    const auto roots = r.extra["deflated_roots"].get<std::vector<std::string>>();
    s += "\nquotient " + poly_from(r.extra["quotient"].get<std::vector<std::string>>()).to_string("λ");
    if (roots.empty()) s += " (no root of the form " + std::to_string(q) + "^i)";
    else s += " after removing (λ - " + std::to_string(q) + "^i), i=0.." + std::to_string(roots.size() - 1);
  }
  return s;
}

AlphaMethod alpha_method(const std::string& m) {
  if (m == "enum") return AlphaMethod::Enum;
  if (m == "closed_subspace") return AlphaMethod::ClosedSubspace;
  if (m == "transform") return AlphaMethod::Transform;
  throw std::invalid_argument("unknown alpha method '" + m + "'");
}

BetaMethod beta_method(const std::string& m) {
  if (m == "complement") return BetaMethod::Complement;
  if (m == "enum") return BetaMethod::Enum;
  if (m == "closed2") return BetaMethod::Closed2;
  throw std::invalid_argument("unknown beta method '" + m + "'");
}

bool closed_up_to(std::uint64_t q, int n, int d, int k) {
  for (int i = 0; i <= k; ++i)
    if (!whitney_closed(q, n, d, i)) return false;
  return true;
}

Record distribution_record(const std::string& kind, std::uint64_t q, int n, int d, std::optional<int> k,
                           std::string method, const Global& g) {
  check_qnd(q, n, d);
  Record r;
  r.kind = kind;
  r.params = {{"q", q}, {"n", n}, {"d", d}};
  if (k) r.params["k"] = *k;
  const int lo = k ? *k : 0, hi = k ? *k : n;
  if (method == "auto") {
    if (kind == "alpha") method = closed_up_to(q, n, d, std::min(hi, n)) ? "transform" : "enum";
    else method = "complement";
  }
  r.method = method;
  timed(g, r, [&] {
    for (int j = lo; j <= hi; ++j) {
      const BigInt v = kind == "alpha" ? alpha_hwdl(q, n, d, j, alpha_method(method), g.cap, g.jobs)
                                       : beta_hwdl(q, n, d, j, beta_method(method), g.cap, g.jobs);
      r.values.push_back(to_decimal(v));
    }
    return 0;
  });
  return r;
}

// ---------------------------------------------------------------------------
// Tables and the cache

std::vector<int> parse_int_list(const std::string& spec, const char* what) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      auto colon = part.find(':');
      if (colon == std::string::npos) {
        out.push_back(std::stoi(part));
      } else {
        const int a = std::stoi(part.substr(0, colon)), b = std::stoi(part.substr(colon + 1));
        if (a > b) throw std::invalid_argument("empty range");
        for (int x = a; x <= b; ++x) out.push_back(x);
      }
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("bad ") + what + " '" + spec + "' (use 2,3 or 1:5)");
    }
  }
  if (out.empty()) throw std::invalid_argument(std::string("empty ") + what);
  return out;
}

class Cache {
 public:
  explicit Cache(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) {
      std::error_code ec;
      fs::create_directories(dir_, ec);
      if (ec) throw std::invalid_argument("cannot create cache directory " + dir_ + ": " + ec.message());
    }
  }
  bool enabled() const { return !dir_.empty(); }

  static std::string key(const std::string& kind, std::uint64_t q, int n, int d, const std::string& method) {
    return "v" + std::to_string(kSchemaVersion) + "_" + kind + "_q" + std::to_string(q) + "_n" + std::to_string(n) +
           "_d" + std::to_string(d) + "_" + method;
  }

  std::optional<Record> load(const std::string& k) const {
    if (!enabled()) return std::nullopt;
    const fs::path p = fs::path(dir_) / (k + ".json");
    std::ifstream in(p);
    if (!in) return std::nullopt;
    try {
      json j = json::parse(in);
      if (j.at("schema_version").get<int>() != kSchemaVersion) {
        warn(p, "schema_version " + j.at("schema_version").dump());
        return std::nullopt;
      }
      if (j.at("cache_key").get<std::string>() != k) {
        warn(p, "key mismatch");
        return std::nullopt;
      }
      j.erase("cache_key");
      return from_json(j);
    } catch (const std::exception& e) {
      warn(p, e.what());
      return std::nullopt;
    }
  }

  void store(const std::string& k, const Record& r) const {
    if (!enabled()) return;
    json j = to_json(r);
    j["cache_key"] = k;
    const fs::path p = fs::path(dir_) / (k + ".json");
    const fs::path tmp = p.string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw std::invalid_argument("cannot write cache entry " + tmp.string());
      out << j.dump(2) << "\n";
    }
    fs::rename(tmp, p);
  }

 private:
  static void warn(const fs::path& p, const std::string& why) {
    static std::mutex m;
    std::lock_guard lock(m);
    std::cerr << "warning: ignoring cache entry " << p.string() << " (" << why << ")\n";
  }
  std::string dir_;
};

struct TableArgs {
  std::string kind = "whitney";
  std::string q_list, n_range, d_range;
  std::string out;
  std::string format = "csv";
  std::string cache;
  std::string method = "auto";
};

Record compute_cell(const TableArgs& a, std::uint64_t q, int n, int d, const Global& g) {
  if (a.kind == "whitney") return whitney_record(q, n, d, std::nullopt, a.method, g);
  if (a.kind == "charpoly") return charpoly_record(q, n, d, a.method, false, g);
  return distribution_record(a.kind, q, n, d, std::nullopt, a.method, g);
}

int run_table(const TableArgs& a, const Global& g) {
  struct Cell {
    std::uint64_t q;
    int n, d;
  };
  std::vector<Cell> cells;
  for (int q : parse_int_list(a.q_list, "q list")) {
    if (q < 2 || !gfq::is_prime_power(static_cast<std::uint64_t>(q)))
      throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
    for (int n : parse_int_list(a.n_range, "n range"))
      for (int d : parse_int_list(a.d_range, "d range"))
        if (n >= 1 && d >= 1 && d <= n) cells.push_back({static_cast<std::uint64_t>(q), n, d});
  }

  std::unique_ptr<std::ofstream> file;
  if (!a.out.empty()) {
    file = std::make_unique<std::ofstream>(a.out);
    if (!*file) throw std::invalid_argument("cannot write output file " + a.out);
  }
  std::ostream& out = file ? *file : std::cout;

  const char* env = std::getenv("WHITLAB_CACHE");
  const Cache cache(!a.cache.empty() ? a.cache : (env ? env : ""));
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<Record> records(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0}, hits{0};
  Global inner = g;
  inner.jobs = 1;  // parallelism is across cells
  auto worker = [&] {
    for (std::size_t c; (c = next++) < cells.size();) {
      try {
        const auto& cell = cells[c];
        const std::string key = Cache::key(a.kind, cell.q, cell.n, cell.d, a.method);
        if (auto r = cache.load(key)) {
          records[c] = *r;
          ++hits;
          continue;
        }
        records[c] = compute_cell(a, cell.q, cell.n, cell.d, inner);
        cache.store(key, records[c]);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(g.jobs, static_cast<unsigned>(cells.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < jobs; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  if (a.format == "json") {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    out << arr.dump(2) << "\n";
  } else {
    const bool per_cell = a.kind == "charpoly";
    const char* index = a.kind == "whitney" ? "i" : "k";
    out << (per_cell ? "q,n,d,coefficients,method\n" : std::string("q,n,d,") + index + ",value,method\n");
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto& [q, n, d] = cells[c];
      const auto& r = records[c];
      const std::string prefix = std::to_string(q) + "," + std::to_string(n) + "," + std::to_string(d) + ",";
      if (per_cell) {
        out << prefix << join(r.values) << "," << r.method << "\n";
      } else {
        for (std::size_t i = 0; i < r.values.size(); ++i) out << prefix << i << "," << r.values[i] << "," << r.method << "\n";
      }
    }
  }
  out.flush();
  if (!out) throw std::invalid_argument("write failed for " + (a.out.empty() ? std::string("stdout") : a.out));
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "table: " << cells.size() << " cells, " << hits.load() << " cache hits, " << ms << " ms\n";
  return 0;
}

// ---------------------------------------------------------------------------
// Fits

Record fit_record(const FitReport& f) {
  Record r;
  r.kind = "fit";
  r.params = {{"target", f.target}};
  if (f.poly)
    for (int k = 0; k <= f.poly->degree(); ++k) r.values.push_back(to_string(f.poly->coeff(static_cast<std::size_t>(k))));
  r.method = "lagrange";
  r.extra["coefficient_order"] = "ascending";
  r.extra["samples"] = f.samples;
  r.extra["validations"] = f.validations;
  r.extra["degree"] = f.degree;
  r.extra["leading"] = to_string(f.leading);
  r.extra["evidence_only"] = f.evidence_only;
  r.extra["verdict"] = f.verdict;
  return r;
}

std::vector<std::uint64_t> parse_q_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  for (int x : parse_int_list(s, "q list")) {
    if (x < 2) throw std::invalid_argument("q list: values must be prime powers");
    out.push_back(static_cast<std::uint64_t>(x));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"whitlab: exact Whitney numbers and code counts for higher-weight Dowling lattices"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_flag("--json", g.json_out, "print a JSON record instead of the plain line");
  app.add_flag("--timing", g.timing, "fill runtime_ms in records (makes output run dependent)");
  app.add_option("--cap", g.cap, "enumeration cap (number of subspaces or arrays)");
  app.add_option("--closure-cap", g.closure_cap, "element cap for lattices built by closure");
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::Range(1u, 1024u));

  std::uint64_t q = 0;
  int n = 0, d = 0;
  std::optional<int> idx;
  std::string method = "auto";

  auto add_qnd = [&](CLI::App* sub) {
    sub->add_option("--q", q, "field size (prime power)")->required();
    sub->add_option("--n", n, "length")->required();
    sub->add_option("--d", d, "maximal weight of the atoms")->required();
  };

  int rc = 0;
  auto* whitney = app.add_subcommand("whitney", "Whitney numbers of the first kind of H(q,n,d)");
  add_qnd(whitney);
  whitney->add_option("--i", idx, "single index");
  whitney->add_option("--method", method, "auto|closed|alpha|beta|brute|reduction")
      ->check(CLI::IsMember({"auto", "closed", "alpha", "beta", "brute", "reduction"}));
  whitney->callback([&] {
    const auto r = whitney_record(q, n, d, idx, method, g);
    emit(g, r, join(r.values));
  });

  bool deflate = false;
  auto* charpoly = app.add_subcommand("charpoly", "characteristic polynomial of H(q,n,d)");
  add_qnd(charpoly);
  charpoly->add_flag("--deflate-powers", deflate, "divide out (λ - q^i), i = 0, 1, ... while they are roots");
  charpoly->add_option("--method", method, "auto|closed|alpha|beta|brute")
      ->check(CLI::IsMember({"auto", "closed", "alpha", "beta", "brute"}));
  charpoly->callback([&] {
    const auto r = charpoly_record(q, n, d, method, deflate, g);
    emit(g, r, charpoly_text(r, q));
  });

  for (const char* kind : {"alpha", "beta"}) {
    auto* sub = app.add_subcommand(kind, std::string(kind) == "alpha" ? "k-subspaces avoiding every atom of H(q,n,d)"
                                                                       : "k-codes with minimum distance <= d");
    add_qnd(sub);
    sub->add_option("--k", idx, "dimension (all k when omitted)");
    sub->add_option("--method", method,
                    std::string(kind) == "alpha" ? "auto|enum|closed_subspace|transform" : "auto|complement|enum|closed2");
    sub->callback([&, kind] {
      const auto r = distribution_record(kind, q, n, d, idx, method, g);
      emit(g, r, join(r.values));
    });
  }

  std::int64_t ga = 0;
  int gb = 0, gc = 0, gnu = 0;
  auto* gam = app.add_subcommand("gamma", "agreement number gamma_a(b,c,nu)");
  gam->add_option("--a", ga, "alphabet size including *")->required();
  gam->add_option("--b", gb, "array length")->required();
  gam->add_option("--c", gc, "required multiplicity")->required();
  gam->add_option("--nu", gnu, "number of non-* entries")->required();
  gam->add_option("--method", method, "auto|recursion|enum|poly")
      ->check(CLI::IsMember({"auto", "recursion", "enum", "poly"}));
  gam->callback([&] {
    Record r;
    r.kind = "gamma";
    r.params = {{"a", ga}, {"b", gb}, {"c", gc}, {"nu", gnu}};
    r.method = method == "auto" ? (ga > kGammaPolyThreshold ? "poly" : "recursion") : method;
    const BigInt v = timed(g, r, [&] {
      if (method == "recursion") return gamma_recursion(ga, gb, gc, gnu);
      if (method == "poly") return gamma_via_poly(ga, gb, gc, gnu);
      if (method == "enum") return gamma_enum_oracle(ga, gb, gc, gnu, g.cap, g.jobs);
      return gamma(ga, gb, gc, gnu);
    });
    r.values = {to_decimal(v)};
    emit(g, r, r.values[0]);
  });

  auto* crit = app.add_subcommand("crit", "critical exponent of H(q,n,d)");
  add_qnd(crit);
  crit->add_option("--method", method, "auto|closed|alpha|beta|brute")
      ->check(CLI::IsMember({"auto", "closed", "alpha", "beta", "brute"}));
  crit->callback([&] {
    Record r;
    r.kind = "crit";
    r.params = {{"q", q}, {"n", n}, {"d", d}};
    std::string used;
    const auto w = timed(g, r, [&] { return whitney_by(q, n, d, -1, method, g, used); });
    r.method = used;
    r.values = {std::to_string(crit_from_whitney(q, w, std::min(n, static_cast<int>(w.size()) - 1)))};
    emit(g, r, r.values[0]);
  });

  std::string atoms_path;
  bool want_whitney = false, want_charpoly = false, want_crit = false;
  auto* geo = app.add_subcommand("geometry", "restriction geometry of an explicit atom set");
  geo->add_option("--atoms", atoms_path, "atoms file: 'q n' header, then one vector per line")->required();
  auto* fw = geo->add_flag("--whitney", want_whitney, "Whitney numbers (default)");
  auto* fc = geo->add_flag("--charpoly", want_charpoly, "characteristic polynomial");
  auto* fk = geo->add_flag("--crit", want_crit, "critical exponent");
  fw->excludes(fc)->excludes(fk);
  fc->excludes(fk);
  geo->callback([&] {
    const auto file = read_atoms_file(atoms_path);
    Field F(file.q);
    const auto A = explicit_atoms(F, file.n, file.vectors);
    Record r;
    r.params = {{"q", file.q}, {"n", file.n}, {"atoms", file.vectors.size()}};
    r.method = "closure";
    const auto geom = timed(g, r, [&] { return build_geometry(F, A, g.closure_cap); });
    if (want_crit) {
      r.kind = "crit";
      r.values = {std::to_string(critical_exponent(geom, g.cap))};
      emit(g, r, r.values[0]);
    } else if (want_charpoly) {
      r.kind = "charpoly";
      r.values = coefficients_high(geom.charpoly());
      emit(g, r, geom.charpoly().to_string("λ"));
    } else {
      r.kind = "whitney";
      r.values = decimals(geom.whitney());
      emit(g, r, join(r.values));
    }
  });

  TableArgs ta;
  auto* table = app.add_subcommand("table", "grid of values written as CSV or JSON");
  table->add_option("--kind", ta.kind, "whitney|charpoly|alpha|beta")
      ->check(CLI::IsMember({"whitney", "charpoly", "alpha", "beta"}));
  table->add_option("--q-list", ta.q_list, "field sizes, e.g. 2,3,4")->required();
  table->add_option("--n-range", ta.n_range, "lengths, e.g. 1:5")->required();
  table->add_option("--d-range", ta.d_range, "weights, e.g. 1:5; cells with d > n are skipped")->required();
  table->add_option("--out", ta.out, "output file (stdout when omitted)");
  table->add_option("--format", ta.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--cache", ta.cache, "cache directory (default $WHITLAB_CACHE)");
  table->add_option("--method", ta.method, "method passed to every cell");
  table->callback([&] { rc = run_table(ta, g); });

  std::string target = "w";
  std::string q_samples, q_validate;
  int degree = -1;
  bool asymptotics = false;
  auto* fit = app.add_subcommand("fit", "interpolate a count in q (or gamma in a) and validate");
  fit->add_option("--target", target, "beta|w|delta|gamma")->check(CLI::IsMember({"beta", "w", "delta", "gamma"}));
  fit->add_option("--index", idx, "k for beta/delta, i for w");
  fit->add_option("--n", n, "length");
  fit->add_option("--d", d, "maximal weight");
  fit->add_option("--b", gb, "gamma: array length");
  fit->add_option("--c", gc, "gamma: required multiplicity");
  fit->add_option("--nu", gnu, "gamma: number of non-* entries");
  fit->add_option("--q-samples", q_samples, "sample field sizes");
  fit->add_option("--q-validate", q_validate, "held-out field sizes");
  fit->add_option("--degree", degree, "expected degree");
  fit->add_flag("--asymptotics", asymptotics, "also compare with the growth theorems");
  fit->callback([&] {
    if (target == "gamma") {
      const auto f = check_gamma_polynomiality(gb, gc, gnu, g.jobs);
      const auto r = fit_record(f);
      emit(g, r, f.target + ": " + (f.poly ? f.poly->to_string("a") : f.verdict));
      if (!f.fits) rc = 1;
      return;
    }
    if (!idx) throw std::invalid_argument("fit: give --index");
    const AsymKind kind = target == "beta" ? AsymKind::Beta : target == "w" ? AsymKind::Whitney : AsymKind::Delta;
    const AsymTarget t{kind, *idx, n, d};
    FitReport f;
    if (!q_samples.empty()) {
      if (q_validate.empty()) throw std::invalid_argument("fit: --q-samples needs --q-validate");
      f = fit_in_q(t.name(), [&](std::uint64_t x) { return target_value(t, x); }, parse_q_list(q_samples),
                   parse_q_list(q_validate), degree, g.jobs);
      f.evidence_only = !proven_polynomial(t);
    } else {
      if (degree < 0)
        for (const auto& p : growth_predictions(t)) degree = std::max(degree, p.exponent);
      if (degree < 0) throw std::invalid_argument("fit: give --degree or --q-samples");
      f = polynomial_evidence(t, degree, g.jobs);
    }
    Record r = fit_record(f);
    std::string human = f.target + ": " + (f.poly ? f.poly->to_string("q") : f.verdict) +
                        (f.evidence_only ? " [evidence]" : "");
    if (asymptotics) {
      const auto rep = check_asymptotics(t, g.jobs);
      json preds = json::array();
      for (const auto& p : rep.predictions) {
        preds.push_back({{"source", p.source},
                         {"exponent", p.exponent},
                         {"coefficient", p.coefficient ? to_string(*p.coefficient) : "O-bound"},
                         {"passed", p.passed},
                         {"detail", p.detail}});
        human += "\n  " + std::string(p.passed ? "ok   " : "FAIL ") + p.source + ": exponent " +
                 std::to_string(p.exponent) + (p.coefficient ? ", coefficient " + to_string(*p.coefficient) : "") +
                 " (" + p.detail + ")";
      }
      r.extra["asymptotics"] = preds;
      if (!rep.passed) rc = 1;
    }
    emit(g, r, human);
    if (!f.fits) rc = 1;
  });

  verify::Options vo;
  std::string suite;
  bool quiet = false;
  auto* ver = app.add_subcommand("verify", "run verification suites");
  ver->add_option("--suite", suite, "identities|closed-forms|duality|agreement|asymptotics|paper-tables|all")
      ->required();
  ver->add_option("--seed", vo.seed, "seed for random instances");
  ver->add_option("--budget-sec", vo.budget_sec, "wall-clock budget in seconds (0 = none)");
  ver->add_flag("--quiet", quiet, "print failures and the summary only");
  ver->callback([&] {
    const auto& names = verify::suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
      throw std::invalid_argument("verify: unknown suite '" + suite + "'");
    vo.jobs = g.jobs;
    verify::Session s(vo, [&](const verify::Check& c) {
      if (c.passed && quiet) return;
      std::cout << (c.passed ? "PASS " : "FAIL ") << "[" << c.suite << "] " << c.name;
      if (!c.passed) std::cout << ": lhs=" << c.lhs << " rhs=" << c.rhs;
      std::cout << "\n";
    });
    verify::run_suite(s, suite);
    std::cout << "verify " << suite << ": " << s.passed() << " passed, " << s.failed() << " failed\n";
    std::cerr << "verify " << suite << ": " << static_cast<long long>(s.elapsed_sec() * 1000) << " ms\n";
    rc = s.failed() == 0 ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
