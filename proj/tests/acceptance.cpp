// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "billiards/construct.hpp"
#include "billiards/exactla.hpp"
#include "billiards/monodromy.hpp"
#include "billiards/numtheory.hpp"
#include "billiards/oracle.hpp"
#include "billiards/polyfp.hpp"
#include "billiards/polygon.hpp"
#include "generators.hpp"

using namespace billiards;
using nt::i64;
using V = std::vector<i64>;

namespace {

// Collects failures for one criterion; the first few are printed.
struct Checker {
  int failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures;
    if (notes.size() < 5) notes.push_back(what);
  }
};

std::string show(const V& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::vector<i64> primes_upto(i64 bound) {
  std::vector<i64> out;
  for (i64 p = 2; p <= bound; ++p) {
    if (nt::is_prime(p)) out.push_back(p);
  }
  return out;
}

// Calls visit on every k-tuple with entries in [lo, hi) for the first k-1
// slots; the last slot is left to the caller.
void odometer(std::size_t k, i64 lo, i64 hi, const std::function<void(V&)>& visit) {
  V a(k, lo);
  while (true) {
    visit(a);
    std::size_t i = 0;
    while (i + 1 < k && ++a[i] == hi) a[i++] = lo;
    if (i + 1 == k) break;
  }
}

// Every geometric k-gon mod n, by brute force over the first k-1 angles.
std::vector<PolygonTuple> geometric_polygons(std::size_t k, i64 n) {
  std::vector<PolygonTuple> out;
  odometer(k, 1, 2 * n, [&](V& a) {
    i64 s = 0;
    for (std::size_t i = 0; i + 1 < k; ++i) s += a[i];
    a[k - 1] = static_cast<i64>(k - 2) * n - s;
    if (!check(a, n, Level::geometric)) out.push_back(geometric(a, n));
  });
  return out;
}

mpz_class product(const V& v) {
  mpz_class p = 1;
  for (i64 d : v) p *= static_cast<long>(d);
  return p;
}

// ---------------------------------------------------------------------------

void reference_groups(Checker& c) {
  struct Case {
    V entries;
    i64 n;
    V deltas;
    std::string pretty;
  };
  const std::vector<Case> cases = {
      {{2, 2, 2, 4}, 5, {5, 5, 5}, "(C5 x C5 x C5) : C4"},
      {{1, 2, 4}, 7, {7}, "C7 : C3"},
      {{3, 4, 3, 4}, 7, {7}, "C7 : C4"},
      {{2, 3, 3, 2}, 5, {5, 5}, "(C5 x C5) : C4"},
      {{1, 4, 4, 1}, 5, {5, 5}, "(C5 x C5) : C4"},
      {{2, 3, 4, 3}, 6, {6, 6}, "(C6 x C6) : C4"},
      {{26, 9, 4, 21}, 30, {30, 30}, "(C30 x C30) : C4"},
      {{4, 5, 1}, 10, {10, 10}, "(C10 x C10) : C3"},
      {{1, 1, 4}, 6, {6, 2}, "(C6 x C2) : C3"},
      {{1, 2, 24, 23}, 25, {25, 5}, "(C25 x C5) : C4"},
      {{1, 2, 4, 3}, 5, {5}, "C5 : C4"},
      {{22, 23, 18, 22, 2, 18, 8, 2, 32, 8, 23, 32}, 35, {35, 5}, "(C35 x C5) : C12"},
  };
  for (const auto& tc : cases) {
    const auto t = algebraic(tc.entries, tc.n);
    const auto g = group_of(t);
    c.expect(g.deltas == tc.deltas, t.to_string() + " deltas " + show(g.deltas));
    c.expect(g.pretty() == tc.pretty, t.to_string() + " pretty " + g.pretty());
    c.expect(g.order == product(tc.deltas) * static_cast<long>(t.k()), t.to_string() + " order");
  }
  const auto snf = smith_normal_form(circulant(algebraic({2, 2, 2, 4}, 5)));
  c.expect(snf.divisors == std::vector<mpz_class>{2, 2, 2, 10}, "SNF divisors of [2,2,2,4]");
}

// Tuples shared by the oracle and structure criteria.
std::vector<PolygonTuple> oracle_corpus() {
  std::vector<PolygonTuple> out;
  for (std::size_t k = 3; k <= 4; ++k) {
    for (i64 n = 2; n <= 10; ++n) {
      for (auto& t : geometric_polygons(k, n)) out.push_back(std::move(t));
    }
  }
  const auto caps = oracle::default_caps();
  gen::Rng rng(2024);
  int drawn = 0;
  while (drawn < 200) {
    const auto k = static_cast<std::size_t>(gen::uniform(rng, 2, 7));
    const auto t = gen::algebraic(rng, k, gen::uniform(rng, 2, 40));
    const auto g = group_of(t);
    if (g.order > static_cast<long>(caps.group) || g.order > static_cast<long>(caps.span) * static_cast<long>(k)) {
      continue;
    }
    out.push_back(t);
    ++drawn;
  }
  return out;
}

void oracle_equivalence(Checker& c, const std::vector<PolygonTuple>& corpus) {
  const auto caps = oracle::default_caps();
  for (const auto& t : corpus) {
    const auto g = group_of(t);
    const auto span = oracle::span_invariants(t, caps.span);
    c.expect(mpz_class(static_cast<unsigned long>(span.order)) == product(g.deltas), t.to_string() + " span order");
    c.expect(span.factors == g.deltas, t.to_string() + " span factors " + show(span.factors));
    const auto order = oracle::group_order(oracle::build_permutations(t), caps.group);
    c.expect(mpz_class(static_cast<unsigned long>(order)) == product(g.deltas) * static_cast<long>(t.k()),
             t.to_string() + " closure order");
  }
}

void structure_suite(Checker& c, const std::vector<PolygonTuple>& corpus) {
  for (const auto& t : corpus) {
    const auto r = oracle::check_structure(t);
    if (const auto* bad = r.failed()) c.expect(false, t.to_string() + ": " + bad->name + " " + bad->detail);
    c.expect(r.action_trivial == group_of(t).trivial_action.value(), t.to_string() + " trivial action");
  }
}

void rank_gcd(Checker& c) {
  gen::Rng rng(77);
  for (std::size_t k = 2; k <= 6; ++k) {
    for (i64 p : primes_upto(13)) {
      if (static_cast<i64>(k) % p == 0) continue;
      const FpPoly xk = FpPoly::x_pow_minus_one(p, k);
      for (int s = 0; s < 200; ++s) {
        const auto t = gen::algebraic(rng, k, p);
        const auto d = static_cast<std::size_t>(gcd_poly(from_tuple(t), xk).degree());
        c.expect(rank_mod_p(circulant(t), p) == k - d, t.to_string());
      }
    }
  }
}

void prime_classification(Checker& c) {
  const auto caps = oracle::default_caps();
  for (std::size_t k = 3; k <= 7; ++k) {
    for (i64 p : primes_upto(23)) {
      if (p <= static_cast<i64>(k)) continue;
      const auto ds = achievable_d_set(k, p);
      std::set<V> predicted;
      for (int d : ds) {
        const V deltas(k - static_cast<std::size_t>(d), p);
        predicted.insert(deltas);
        const std::string tag = "k=" + std::to_string(k) + " p=" + std::to_string(p) + " d=" + std::to_string(d);
        try {
          const auto w = construct_prime_case(k, p, d);
          c.expect(w.is_geometric(), tag + " witness not geometric");
          const auto g = group_of(w);
          c.expect(g.deltas == deltas, tag + " witness " + w.to_string());
          if (g.order <= static_cast<long>(caps.group) && product(deltas) <= static_cast<long>(caps.span)) {
            c.expect(certify(w, caps) == g, tag + " oracle");
          }
        } catch (const Error& e) {
          c.expect(false, tag + ": " + e.what());
        }
      }
      if (nt::ipow(p, static_cast<int>(k) - 1) > 100000) continue;
      // Descriptors depend only on residues, so cache by residue vector.
      std::map<V, V> seen;
      for (const auto& t : geometric_polygons(k, p)) {
        V r = t.entries();
        for (auto& x : r) x %= p;
        auto it = seen.find(r);
        if (it == seen.end()) it = seen.emplace(r, group_of(t).deltas).first;
        c.expect(predicted.count(it->second) > 0, t.to_string() + " outside prediction " + show(it->second));
      }
      std::set<V> found;
      for (const auto& [r, d] : seen) found.insert(d);
      c.expect(found == predicted, "k=" + std::to_string(k) + " p=" + std::to_string(p) + " prediction not exhausted");
    }
  }
}

void triangle_classification(Checker& c) {
  for (i64 n = 3; n <= 60; ++n) {
    std::set<V> enumerated;
    for (const auto& t : geometric_polygons(3, n)) enumerated.insert(group_of(t).deltas);
    const auto r = classify_triangles(n);
    std::set<V> classified;
    for (std::size_t i = 0; i < r.achievable.size(); ++i) {
      classified.insert(r.achievable[i].deltas);
      c.expect(r.witnesses[i].is_geometric() && group_of(r.witnesses[i]) == r.achievable[i],
               "n=" + std::to_string(n) + " witness " + r.witnesses[i].to_string());
    }
    c.expect(classified == enumerated, "n=" + std::to_string(n) + " classification differs from enumeration");
  }
  const auto r = classify_triangles(81);
  c.expect(r.achievable.size() == 2, "n=81 group count");
  if (r.achievable.size() == 2) {
    c.expect(r.witnesses[0].entries() == V{1, 2, 78} && r.achievable[0].deltas == V{81, 81}, "n=81 first witness");
    c.expect(r.witnesses[1].entries() == V{1, 1, 79} && r.achievable[1].deltas == V{81, 27}, "n=81 second witness");
  }
}

void closed_forms(Checker& c) {
  for (i64 n = 2; n <= 40; ++n) {
    for (const auto& t : geometric_polygons(3, n)) {
      const auto& a = t.entries();
      c.expect(triangle_closed_form(a[0], a[1], a[2], n) == group_of(t), t.to_string());
    }
  }
  int full_d2 = 0;
  for (i64 n = 2; n <= 12; ++n) {
    for (const auto& t : geometric_polygons(4, n)) {
      const auto& a = t.entries();
      const auto g = group_of(t);
      c.expect(quadrilateral_closed_form(a[0], a[1], a[2], a[3], n) == g, t.to_string());
      if (g.deltas.size() >= 2 && g.deltas[1] == n) ++full_d2;
    }
  }
  c.expect(full_d2 > 0, "no quadrilateral with d_2 = n was exercised");
}

void constructive_toolkit(Checker& c) {
  const FpPoly f2(2, {1, 1, 1, 0, 0, 1});
  const FpPoly r1 = rotate(f2, 7);
  c.expect(r1 == FpPoly(2, {0, 1, 1, 1, 0, 0, 1}), "first rotation " + r1.to_string());
  const FpPoly r2 = rotate(r1, 7);
  c.expect(r2 == FpPoly(2, {1, 0, 1, 1, 1}), "second rotation " + r2.to_string());
  c.expect(w_function(FpPoly(7, {1, 0, 0, -1, 0, 0, 0, 1})) == 3, "w(x^7 - x^3 + 1)");

  gen::Rng rng(808);
  const auto primes = primes_upto(47);
  for (int trial = 0; trial < 500; ++trial) {
    const i64 p = primes[static_cast<std::size_t>(gen::uniform(rng, 2, static_cast<i64>(primes.size()) - 1))];
    std::set<i64> forbidden{gen::uniform(rng, 1, p - 1)};
    // degree stays below the number of admissible alphas
    const int deg = static_cast<int>(gen::uniform(rng, 1, std::min<i64>(8, p - 3)));
    V co(static_cast<std::size_t>(deg) + 1, 0);
    for (auto& x : co) x = gen::uniform(rng, 0, 2) == 0 ? gen::uniform(rng, 1, p - 1) : 0;
    co.front() = gen::uniform(rng, 1, p - 1);
    co.back() = gen::uniform(rng, 1, p - 1);
    const FpPoly f(p, co);
    try {
      const auto g = close_zero_gap(f, forbidden);
      c.expect(w_function(g.product) == std::max(w_function(f) - 1, 0) && !forbidden.count(g.alpha) &&
                   g.product == f * FpPoly::linear(p, g.alpha),
               "gap closing on " + f.to_string());
    } catch (const Error& e) {
      c.expect(false, "gap closing on " + f.to_string() + ": " + e.what());
    }

    // Bound on a random proper divisor of x^k - 1.
    const i64 q = primes[static_cast<std::size_t>(gen::uniform(rng, 0, 10))];
    auto k = static_cast<std::size_t>(gen::uniform(rng, 2, 12));
    if (static_cast<i64>(k) % q == 0) ++k;
    const auto fs = factor_xk_minus_1(k, q);
    FpPoly g = FpPoly::constant(q, 1);
    for (const auto& fac : fs) {
      if (gen::uniform(rng, 0, 1)) g = g * fac.poly;
    }
    if (g.degree() == static_cast<int>(k)) g = g / fs.front().poly;
    c.expect(w_function(g) < static_cast<int>(k) - g.degree(), "zero-gap bound on " + g.to_string());
  }

  auto expanded = [](const std::vector<Factor>& fs) {
    std::vector<std::pair<V, int>> out;
    for (const auto& f : fs) out.emplace_back(f.poly.coeffs(), f.multiplicity);
    return out;
  };
  const std::vector<std::pair<V, int>> at35 = {{{4, 1}, 1}, {{1, 1, 1}, 1}};
  c.expect(expanded(factor_xk_minus_1(3, 5)) == at35, "x^3 - 1 over F_5");
  const std::vector<std::pair<V, int>> at62 = {{{1, 1}, 2}, {{1, 1, 1}, 2}};
  c.expect(expanded(factor_xk_minus_1(6, 2)) == at62, "x^6 - 1 over F_2");
  for (std::size_t k = 1; k <= 16; ++k) {
    for (i64 p : primes_upto(31)) {
      if (k > 1 && static_cast<i64>(k) % p == 0) continue;
      std::vector<int> degs;
      for (const auto& f : factor_xk_minus_1(k, p)) {
        for (int m = 0; m < f.multiplicity; ++m) degs.push_back(f.poly.degree());
      }
      auto cos = coset_degrees(k, p);
      std::sort(degs.begin(), degs.end());
      std::sort(cos.begin(), cos.end());
      c.expect(degs == cos, "coset degrees k=" + std::to_string(k) + " p=" + std::to_string(p));
    }
  }
}

void calculus(Checker& c) {
  c.expect(combine_crt(algebraic({1, 4, 4, 1}, 5), algebraic({2, 3, 4, 3}, 6)).entries() == V{26, 9, 4, 21},
           "combine to [26,9,4,21]");
  c.expect(combine_crt(algebraic({0, 1, 1}, 2), algebraic({1, 0, 4}, 5)).entries() == V{6, 5, 9}, "combine to [6,5,9]");
  c.expect(project(algebraic({1, 2, 24, 23}, 25), 5).entries() == V{1, 2, 4, 3}, "project [1,2,24,23]");
  c.expect(project(algebraic({26, 9, 4, 21}, 30), 5).entries() == V{1, 4, 4, 1}, "project [26,9,4,21]");
  c.expect(project(algebraic({1, 1, 4}, 6), 2).entries() == V{1, 1, 0}, "project [1,1,4]");
  c.expect(lift(algebraic({3, 4}, 7), 4).entries() == V{3, 4, 3, 4}, "lift [3,4]");
  c.expect(lift(algebraic({1, 2, 4}, 7), 3).entries() == V{1, 2, 4}, "identity lift");
  c.expect(lift(algebraic({1, 2, 4}, 7), 12).entries() == V{1, 2, 4, 1, 2, 4, 1, 2, 4, 1, 2, 4}, "lift [1,2,4] to 12");
  const auto twelve = combine_coprime_k(algebraic({1, 2, 4}, 7), algebraic({2, 3, 3, 2}, 5));
  c.expect(twelve.entries() == V{22, 23, 18, 22, 2, 18, 8, 2, 32, 8, 23, 32}, "12-gon " + twelve.to_string());
  c.expect(group_of(twelve).pretty() == "(C35 x C5) : C12", "12-gon group");
  c.expect(group_of(project(algebraic({1, 2, 24, 23}, 25), 5)).deltas == V{5}, "non-coprime projection");
  for (const V& deltas : {V{35}, V{35, 7}}) {
    const auto d = composite_feasible(3, 35, deltas);
    c.expect(!d.feasible, "composite (3, 35, " + show(deltas) + ") reported feasible");
  }
}

void snf_properties(Checker& c) {
  gen::Rng rng(1010);
  for (int trial = 0; trial < 500; ++trial) {
    const auto rows = static_cast<std::size_t>(gen::uniform(rng, 1, 6));
    const auto cols = trial % 4 == 0 ? static_cast<std::size_t>(gen::uniform(rng, 1, 6)) : rows;
    const auto a = gen::matrix(rng, rows, cols, 60);
    const auto r = smith_normal_form(a);
    c.expect(r.U * r.D * r.V == a, "U D V != A");
    c.expect(abs(determinant(r.U)) == 1 && abs(determinant(r.V)) == 1, "transform not unimodular");
    const std::size_t m = std::min(rows, cols);
    mpz_class prefix = 1;
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (i != j) c.expect(r.D(i, j) == 0, "D not diagonal");
      }
    }
    for (std::size_t j = 0; j < m && j < r.divisors.size(); ++j) {
      c.expect(r.D(j, j) == r.divisors[j] && r.divisors[j] >= 0, "divisor sign");
      if (j + 1 < m) {
        const mpz_class& lo = r.divisors[j];
        const mpz_class& hi = r.divisors[j + 1];
        c.expect(lo == 0 ? hi == 0 : hi % lo == 0, "divisibility chain");
      }
      prefix *= r.divisors[j];
      c.expect(minor_gcd(a, j + 1) == prefix, "minor gcd identity");
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double budget;
    std::function<void(Checker&)> body;
  };
  std::vector<PolygonTuple> corpus;
  const std::vector<Criterion> criteria = {
      {1, "reference groups", 5, reference_groups},
      {2, "oracle equivalence", 60,
       [&](Checker& c) {
         corpus = oracle_corpus();
         oracle_equivalence(c, corpus);
       }},
      {3, "structure suite", 600, [&](Checker& c) { structure_suite(c, corpus); }},
      {4, "rank-gcd identity", 600, rank_gcd},
      {5, "prime classification", 120, prime_classification},
      {6, "triangle classification", 60, triangle_classification},
      {7, "closed forms", 600, closed_forms},
      {8, "constructive toolkit", 600, constructive_toolkit},
      {9, "calculus", 600, calculus},
      {10, "smith normal form properties", 600, snf_properties},
  };

  int failed = 0;
  for (const auto& cr : criteria) {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("uncaught: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.budget) c.expect(false, "over time budget");
    const bool ok = c.failures == 0;
    failed += !ok;
    std::printf("%s criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", cr.id, cr.name.c_str(), secs);
    for (const auto& note : c.notes) std::printf("    %s\n", note.c_str());
    if (c.failures > static_cast<int>(c.notes.size())) {
      std::printf("    ... %d failures in total\n", c.failures);
    }
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
