#include "billiards/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>

#include "billiards/numtheory.hpp"

namespace billiards::oracle {

using nt::i64;

Caps default_caps() {
  Caps caps;
  if (const char* env = std::getenv("BILLIARD_MONODROMY_MAX_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      caps.span = v;
      caps.group = v;
    }
  }
  return caps;
}

PermutationPair build_permutations(const PolygonTuple& t) {
  PermutationPair pp;
  pp.n = t.modulus();
  pp.k = static_cast<i64>(t.k());
  const auto& a = t.entries();
  const auto size = static_cast<std::size_t>(pp.n * pp.k);
  pp.sigma0.resize(size);
  pp.sigma1.resize(size);
  for (i64 m = 0; m < pp.n; ++m) {
    for (i64 i = 0; i < pp.k; ++i) {
      const auto src = pp.index({m, i});
      const i64 prev = nt::mod(i - 1, pp.k);
      pp.sigma0[src] = pp.index({m, (i + 1) % pp.k});
      pp.sigma1[src] = pp.index({nt::mod(m - a[static_cast<std::size_t>(prev)], pp.n), prev});
    }
  }
  return pp;
}

namespace {

using Perm = std::vector<std::uint32_t>;

Perm compose(const Perm& g, const Perm& h) {  // g after h
  Perm out(h.size());
  for (std::size_t x = 0; x < h.size(); ++x) out[x] = g[h[x]];
  return out;
}

Perm inverse(const Perm& g) {
  Perm out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) out[g[x]] = static_cast<std::uint32_t>(x);
  return out;
}

Perm identity(std::size_t size) {
  Perm out(size);
  for (std::size_t x = 0; x < size; ++x) out[x] = static_cast<std::uint32_t>(x);
  return out;
}

Perm power(const Perm& g, i64 e) {
  Perm out = identity(g.size());
  for (i64 j = 0; j < e; ++j) out = compose(g, out);
  return out;
}

// Set of permutations of a fixed degree stored back to back in one arena.
class PermSet {
 public:
  explicit PermSet(std::size_t degree) : degree_(degree), table_(1024, kEmpty) {
    if (degree > std::numeric_limits<std::uint16_t>::max()) {
      throw CapExceededError("too many edges for the permutation oracle", 0);
    }
  }

  std::size_t size() const { return count_; }

  Perm at(std::size_t idx) const {
    Perm out(degree_);
    const std::uint16_t* p = arena_.data() + idx * degree_;
    for (std::size_t x = 0; x < degree_; ++x) out[x] = p[x];
    return out;
  }

  bool contains(const Perm& g) const { return find(g) != kEmpty; }

  bool insert(const Perm& g) {
    if (find(g) != kEmpty) return false;
    if (2 * (count_ + 1) > table_.size()) grow();
    for (std::uint32_t v : g) arena_.push_back(static_cast<std::uint16_t>(v));
    place(static_cast<std::uint32_t>(count_), hash(g));
    ++count_;
    return true;
  }

 private:
  static constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

  static std::uint64_t hash(const Perm& g) {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint32_t v : g) h = (h ^ v) * 1099511628211ULL;
    return h ^ (h >> 29);
  }

  bool equal(std::uint32_t idx, const Perm& g) const {
    const std::uint16_t* p = arena_.data() + static_cast<std::size_t>(idx) * degree_;
    for (std::size_t x = 0; x < degree_; ++x) {
      if (p[x] != g[x]) return false;
    }
    return true;
  }

  std::uint32_t find(const Perm& g) const {
    const std::size_t mask = table_.size() - 1;
    for (std::size_t slot = hash(g) & mask;; slot = (slot + 1) & mask) {
      if (table_[slot] == kEmpty) return kEmpty;
      if (equal(table_[slot], g)) return table_[slot];
    }
  }

  void place(std::uint32_t idx, std::uint64_t h) {
    const std::size_t mask = table_.size() - 1;
    std::size_t slot = h & mask;
    while (table_[slot] != kEmpty) slot = (slot + 1) & mask;
    table_[slot] = idx;
  }

  void grow() {
    table_.assign(table_.size() * 2, kEmpty);
    for (std::size_t idx = 0; idx < count_; ++idx) place(static_cast<std::uint32_t>(idx), hash(at(idx)));
  }

  std::size_t degree_;
  std::size_t count_ = 0;
  std::vector<std::uint16_t> arena_;
  std::vector<std::uint32_t> table_;
};

PermSet closure(const std::vector<Perm>& generators, std::size_t degree, std::uint64_t cap,
                const std::string& what) {
  PermSet set(degree);
  set.insert(identity(degree));
  for (std::size_t next = 0; next < set.size(); ++next) {
    const Perm g = set.at(next);
    for (const Perm& s : generators) {
      if (set.insert(compose(s, g)) && set.size() > cap) {
        throw CapExceededError(what + " exceeds cap " + std::to_string(cap), set.size());
      }
    }
  }
  return set;
}

std::vector<std::vector<i64>> enumerate_span(const std::vector<std::vector<i64>>& gens, i64 n,
                                             std::size_t k, std::uint64_t cap) {
  std::set<std::vector<i64>> seen;
  std::vector<std::vector<i64>> order;
  std::vector<i64> zero(k, 0);
  seen.insert(zero);
  order.push_back(zero);
  for (std::size_t next = 0; next < order.size(); ++next) {
    for (const auto& g : gens) {
      std::vector<i64> v = order[next];
      for (std::size_t i = 0; i < k; ++i) v[i] = (v[i] + g[i]) % n;
      if (seen.insert(v).second) {
        order.push_back(std::move(v));
        if (order.size() > cap) {
          throw CapExceededError("span exceeds cap " + std::to_string(cap), order.size());
        }
      }
    }
  }
  return order;
}

// Vector x with g(m, i) = (m + x_i, i), or empty when g does not have that shape.
std::vector<i64> translation_vector(const Perm& g, const PermutationPair& pp) {
  std::vector<i64> x(static_cast<std::size_t>(pp.k));
  for (i64 i = 0; i < pp.k; ++i) {
    EdgeLabel img = pp.label(g[pp.index({0, i})]);
    if (img.i != i) return {};
    x[static_cast<std::size_t>(i)] = img.m;
  }
  for (i64 m = 0; m < pp.n; ++m) {
    for (i64 i = 0; i < pp.k; ++i) {
      EdgeLabel img = pp.label(g[pp.index({m, i})]);
      if (img.i != i || img.m != (m + x[static_cast<std::size_t>(i)]) % pp.n) return {};
    }
  }
  return x;
}

std::string show(const std::vector<i64>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace

std::uint64_t group_order(const PermutationPair& pp, std::uint64_t cap) {
  return closure({pp.sigma0, pp.sigma1}, pp.sigma0.size(), cap, "group").size();
}

std::vector<i64> invariants_from_counts(i64 n, const std::vector<std::vector<i64>>& elements) {
  // per_prime[j] lists the cyclic factors for the j-th prime, largest first.
  std::vector<std::vector<i64>> per_prime;
  for (auto [p, e] : nt::factorize(n)) {
    std::vector<int> at_least(static_cast<std::size_t>(e) + 2, 0);
    std::uint64_t prev = 1;
    i64 q = 1;
    for (int j = 1; j <= e; ++j) {
      q *= p;
      std::uint64_t count = 0;
      for (const auto& x : elements) {
        bool killed = std::all_of(x.begin(), x.end(), [&](i64 v) { return nt::mul_mod(q, v, n) == 0; });
        if (killed) ++count;
      }
      std::uint64_t ratio = count / prev;
      int r = 0;
      while (ratio > 1) {
        ratio /= static_cast<std::uint64_t>(p);
        ++r;
      }
      at_least[static_cast<std::size_t>(j)] = r;
      prev = count;
    }
    std::vector<i64> powers;
    for (int j = e; j >= 1; --j) {
      int exact = at_least[static_cast<std::size_t>(j)] - at_least[static_cast<std::size_t>(j) + 1];
      for (int c = 0; c < exact; ++c) powers.push_back(nt::ipow(p, j));
    }
    per_prime.push_back(std::move(powers));
  }
  std::size_t length = 0;
  for (const auto& v : per_prime) length = std::max(length, v.size());
  std::vector<i64> factors(length, 1);
  for (const auto& v : per_prime) {
    for (std::size_t i = 0; i < v.size(); ++i) factors[i] *= v[i];
  }
  return factors;
}

AbelianInvariants span_invariants(const PolygonTuple& t, std::uint64_t cap) {
  const i64 n = t.modulus();
  const std::size_t k = t.k();
  const auto a = t.residues();
  std::vector<std::vector<i64>> columns;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<i64> col(k);
    for (std::size_t i = 0; i < k; ++i) col[i] = a[(i + k - j) % k];
    columns.push_back(std::move(col));
  }
  auto elements = enumerate_span(columns, n, k, cap);
  return {elements.size(), invariants_from_counts(n, elements)};
}

bool StructureReport::all_passed() const { return failed() == nullptr; }

const Clause* StructureReport::failed() const {
  for (const auto& c : clauses) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

StructureReport check_structure(const PolygonTuple& t, const Caps& caps) {
  const PermutationPair pp = build_permutations(t);
  const std::size_t degree = pp.sigma0.size();
  const i64 n = pp.n;
  const i64 k = pp.k;
  const auto a = t.residues();
  StructureReport report;
  auto add = [&](std::string name, bool ok, std::string detail) {
    report.clauses.push_back({std::move(name), ok, ok ? std::string() : std::move(detail)});
  };

  const PermSet group = closure({pp.sigma0, pp.sigma1}, degree, caps.group, "group");
  report.group_order = group.size();

  // sigma0^x sigma1^x, 0 < x < k (sigma1 applied first).
  std::vector<Perm> gens;
  for (i64 x = 1; x < k; ++x) gens.push_back(compose(power(pp.sigma0, x), power(pp.sigma1, x)));

  {
    bool ok = true;
    std::string detail;
    for (std::size_t x = 0; x < gens.size() && ok; ++x) {
      for (std::size_t y = x + 1; y < gens.size() && ok; ++y) {
        if (compose(gens[x], gens[y]) != compose(gens[y], gens[x])) {
          ok = false;
          detail = "x=" + std::to_string(x + 1) + ", y=" + std::to_string(y + 1) + " do not commute";
        }
      }
    }
    add("generators of N commute", ok, detail);
  }

  {
    bool ok = true;
    std::string detail;
    for (i64 x = 1; x < k && ok; ++x) {
      const Perm& g = gens[static_cast<std::size_t>(x - 1)];
      for (i64 m = 0; m < n && ok; ++m) {
        for (i64 i = 0; i < k && ok; ++i) {
          i64 s = 0;
          for (i64 j = i - x; j <= i - 1; ++j) s += a[static_cast<std::size_t>(nt::mod(j, k))];
          EdgeLabel want{nt::mod(m - s, n), i};
          if (pp.label(g[pp.index({m, i})]) != want) {
            ok = false;
            detail = "x=" + std::to_string(x) + " at (" + std::to_string(m) + "," + std::to_string(i) + ")";
          }
        }
      }
    }
    add("sigma0^x sigma1^x translates the first coordinate", ok, detail);
  }

  const PermSet normal = closure(gens, degree, caps.group, "normal subgroup");
  report.normal_order = normal.size();

  {
    std::uint64_t stabilizer = 0;
    bool inside = true;
    for (std::size_t idx = 0; idx < group.size(); ++idx) {
      Perm g = group.at(idx);
      bool fixes = true;
      for (std::size_t x = 0; x < degree && fixes; ++x) fixes = g[x] % k == x % static_cast<std::size_t>(k);
      if (fixes) {
        ++stabilizer;
        inside = inside && normal.contains(g);
      }
    }
    add("N is the subgroup fixing every second coordinate", inside && stabilizer == normal.size(),
        "stabilizer has " + std::to_string(stabilizer) + " elements, N has " +
            std::to_string(normal.size()));
  }

  {
    bool ok = true;
    const std::vector<Perm> outer{pp.sigma0, pp.sigma1};
    for (const Perm& s : outer) {
      const Perm s_inv = inverse(s);
      for (const Perm& g : gens) ok = ok && normal.contains(compose(s, compose(g, s_inv)));
    }
    add("N is normal in G", ok, "a conjugate of a generator of N leaves N");
  }

  {
    bool ok = true;
    Perm r = identity(degree);
    for (i64 j = 1; j < k && ok; ++j) {
      r = compose(pp.sigma0, r);
      ok = !normal.contains(r);
    }
    add("N meets <sigma0> trivially", ok, "a nontrivial power of sigma0 lies in N");
  }

  {
    PermSet products(degree);
    Perm r = identity(degree);
    bool inside = true;
    for (i64 j = 0; j < k; ++j) {
      for (std::size_t idx = 0; idx < normal.size(); ++idx) {
        Perm g = compose(normal.at(idx), r);
        inside = inside && group.contains(g);
        products.insert(g);
      }
      r = compose(pp.sigma0, r);
    }
    add("N<sigma0> = G", inside && products.size() == group.size(),
        "N<sigma0> has " + std::to_string(products.size()) + " elements, G has " +
            std::to_string(group.size()));
  }

  add("|G| = k|N|", group.size() == static_cast<std::uint64_t>(k) * normal.size(),
      std::to_string(group.size()) + " != " + std::to_string(k) + " * " + std::to_string(normal.size()));

  {
    bool shape = true;
    bool shift = true;
    bool trivial = true;
    std::set<std::vector<i64>> vectors;
    const Perm s_inv = inverse(pp.sigma0);
    std::string detail;
    for (std::size_t idx = 0; idx < normal.size(); ++idx) {
      Perm g = normal.at(idx);
      auto x = translation_vector(g, pp);
      auto y = translation_vector(compose(pp.sigma0, compose(g, s_inv)), pp);
      if (x.empty() || y.empty()) {
        shape = false;
        detail = "an element of N is not a translation";
        break;
      }
      for (i64 i = 0; i < k; ++i) {
        if (y[static_cast<std::size_t>(i)] != x[static_cast<std::size_t>(nt::mod(i - 1, k))]) {
          shift = false;
          detail = show(x) + " conjugates to " + show(y);
        }
      }
      trivial = trivial && x == y;
      vectors.insert(std::move(x));
    }
    add("sigma0 acts on N by the cyclic shift", shape && shift, detail);
    report.action_trivial = shape && trivial;

    std::vector<std::vector<i64>> columns;
    for (i64 j = 0; j < k; ++j) {
      std::vector<i64> col(static_cast<std::size_t>(k));
      for (i64 i = 0; i < k; ++i) col[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(nt::mod(i - j, k))];
      columns.push_back(std::move(col));
    }
    auto span = enumerate_span(columns, n, static_cast<std::size_t>(k), caps.span);
    std::set<std::vector<i64>> span_set(span.begin(), span.end());
    add("N is the column span of the circulant", shape && span_set == vectors,
        "span has " + std::to_string(span_set.size()) + " vectors, N has " + std::to_string(vectors.size()));
  }
  return report;
}

}  // namespace billiards::oracle
