#include "billiards/construct.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "billiards/numtheory.hpp"
#include "billiards/polyfp.hpp"

namespace billiards {

using nt::i64;

PolygonTuple combine_crt(const PolygonTuple& t1, const PolygonTuple& t2) {
  const i64 n1 = t1.modulus();
  const i64 n2 = t2.modulus();
  if (n1 < 2 || n2 < 2) throw Error(ErrorKind::InvalidArgument, "both moduli must be at least 2");
  if (t1.k() != t2.k()) {
    throw Error(ErrorKind::LengthMismatch,
                "k = " + std::to_string(t1.k()) + " vs " + std::to_string(t2.k()));
  }
  if (nt::gcd(n1, n2) != 1) {
    throw Error(ErrorKind::ModuliNotCoprime, std::to_string(n1) + " and " + std::to_string(n2));
  }
  const auto r1 = t1.residues();
  const auto r2 = t2.residues();
  std::vector<i64> c(t1.k());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = nt::crt(r1[i], n1, r2[i], n2);
  return algebraic(c, n1 * n2);
}

PolygonTuple project(const PolygonTuple& t, i64 n1) {
  const i64 n = t.modulus();
  if (n1 <= 1 || n % n1 != 0 || n / n1 <= 1) {
    throw Error(ErrorKind::BadFactorization,
                std::to_string(n1) + " is not a proper factor of " + std::to_string(n));
  }
  std::vector<i64> r = t.residues();
  for (i64& v : r) v %= n1;
  return algebraic(r, n1);
}

PolygonTuple lift(const PolygonTuple& t, std::size_t ell) {
  const std::size_t k = t.k();
  if (ell < k || ell % k != 0) {
    throw Error(ErrorKind::NotMultiple, std::to_string(ell) + " is not a multiple of " + std::to_string(k));
  }
  const auto r = t.residues();
  std::vector<i64> out(ell);
  for (std::size_t i = 0; i < ell; ++i) out[i] = r[i % k];
  return algebraic(out, t.modulus());
}

PolygonTuple combine_coprime_k(const PolygonTuple& t1, const PolygonTuple& t2) {
  const auto k = static_cast<i64>(t1.k());
  const auto ell = static_cast<i64>(t2.k());
  if (nt::gcd(k, ell) != 1) {
    throw Error(ErrorKind::PreconditionFailed,
                "gcd(" + std::to_string(k) + ", " + std::to_string(ell) + ") != 1");
  }
  const auto m = static_cast<std::size_t>(k * ell);
  return combine_crt(lift(t1, m), lift(t2, m));
}

namespace {

void require_prime_not_dividing(std::size_t k, i64 p) {
  if (!nt::is_prime(p)) throw Error(ErrorKind::ModulusNotPrime, std::to_string(p) + " is not prime");
  if (static_cast<i64>(k) % p == 0) {
    throw Error(ErrorKind::PDividesK, std::to_string(p) + " divides " + std::to_string(k));
  }
}

std::vector<FpPoly> factors_without_x_minus_1(std::size_t k, i64 p) {
  std::vector<FpPoly> rest;
  const FpPoly x_minus_1 = FpPoly::linear(p, 1);
  for (const auto& f : factor_xk_minus_1(k, p)) {
    if (f.poly != x_minus_1) rest.push_back(f.poly);
  }
  return rest;
}

// Subset of `items` with degrees summing to `target`; earlier items preferred.
std::optional<std::vector<FpPoly>> pick_degrees(const std::vector<FpPoly>& items, int target) {
  const std::size_t m = items.size();
  // reach[i][s]: some subset of items[i..] has degree sum s.
  std::vector<std::vector<bool>> reach(m + 1, std::vector<bool>(static_cast<std::size_t>(target) + 1, false));
  reach[m][0] = true;
  for (std::size_t i = m; i-- > 0;) {
    for (int s = 0; s <= target; ++s) {
      const int d = items[i].degree();
      reach[i][static_cast<std::size_t>(s)] =
          reach[i + 1][static_cast<std::size_t>(s)] || (s >= d && reach[i + 1][static_cast<std::size_t>(s - d)]);
    }
  }
  if (!reach[0][static_cast<std::size_t>(target)]) return std::nullopt;
  std::vector<FpPoly> chosen;
  int s = target;
  for (std::size_t i = 0; i < m && s > 0; ++i) {
    const int d = items[i].degree();
    if (s >= d && reach[i + 1][static_cast<std::size_t>(s - d)]) {
      chosen.push_back(items[i]);
      s -= d;
    }
  }
  return chosen;
}

std::vector<i64> padded(const FpPoly& f, std::size_t k) {
  std::vector<i64> out(k, 0);
  for (std::size_t i = 0; i < k; ++i) out[i] = f.coeff(i);
  return out;
}

// Geometric associate of the coefficient tuple of f, if f has exactly the
// wanted gcd degree and no zero coefficient.
std::optional<PolygonTuple> realize(const FpPoly& f, std::size_t k, int d) {
  if (f.degree() != static_cast<int>(k) - 1) return std::nullopt;
  if (gcd_poly(f, FpPoly::x_pow_minus_one(f.p(), k)).degree() != d) return std::nullopt;
  const auto coeffs = padded(f, k);
  if (check(coeffs, f.p(), Level::algebraic)) return std::nullopt;
  return find_geometric_associate(algebraic(coeffs, f.p()));
}

FpPoly product(const std::vector<FpPoly>& fs, i64 p) {
  FpPoly out = FpPoly::constant(p, 1);
  for (const auto& f : fs) out = out * f;
  return out;
}

FpPoly rank_procedure(std::size_t k, i64 p, int d) {
  auto rest = factors_without_x_minus_1(k, p);
  auto chosen = pick_degrees(rest, d - 1);
  if (!chosen) throw Error(ErrorKind::DNotAchievable, "no divisor of degree " + std::to_string(d));
  chosen->push_back(FpPoly::linear(p, 1));
  FpPoly g = product(*chosen, p);
  const FpPoly cofactor = FpPoly::x_pow_minus_one(p, k) / g;
  std::set<i64> forbidden;
  for (i64 r : roots(cofactor)) forbidden.insert(r);
  for (int step = 0; step + d + 1 < static_cast<int>(k); ++step) g = close_zero_gap(g, forbidden).product;
  return g;
}

FpPoly reducing_rank(std::size_t k, i64 p, int d) {
  const FpPoly xd = FpPoly::x_pow_minus_one(p, static_cast<std::size_t>(d));
  FpPoly f = FpPoly::constant(p, 1);
  for (std::size_t j = 0; j + 1 < k / static_cast<std::size_t>(d); ++j) f = f * xd;
  return f * FpPoly(p, std::vector<i64>(static_cast<std::size_t>(d), 1));
}

FpPoly small_d(std::size_t k, i64 p, int d) {
  const std::size_t half = k / 2;
  FpPoly g = FpPoly::constant(p, 1);
  for (std::size_t j = 0; j < half - static_cast<std::size_t>(d); ++j) g = g * FpPoly::linear(p, 1);
  std::set<i64> forbidden{1};
  for (int i = 1; i < d; ++i) {
    auto step = close_zero_gap(g, forbidden);
    forbidden.insert(step.alpha);
    g = step.product;
  }
  const i64 a = nt::primitive_root(p);
  return g * (FpPoly::monomial(p, 1, half) - FpPoly::constant(p, a));
}

FpPoly large_d(std::size_t k, i64 p, int d) {
  const std::size_t half = k / 2;
  const FpPoly x_half_plus_1 = FpPoly::monomial(p, 1, half) + FpPoly::constant(p, 1);
  const auto s_roots = roots(x_half_plus_1);
  std::set<i64> allowed(s_roots.begin(), s_roots.end());
  std::vector<i64> t{1};
  for (i64 v = 2; v < p && static_cast<int>(t.size()) < d - static_cast<int>(half); ++v) {
    if (!allowed.count(v)) t.push_back(v);
  }
  allowed.insert(t.begin(), t.end());
  FpPoly g = FpPoly::constant(p, 1);
  for (i64 alpha : t) g = g * FpPoly::linear(p, alpha);
  std::set<i64> forbidden;
  for (i64 v = 1; v < p; ++v) {
    if (!allowed.count(v)) forbidden.insert(v);
  }
  for (int step = 0; step + d + 1 < static_cast<int>(k); ++step) g = close_zero_gap(g, forbidden).product;
  return g * x_half_plus_1;
}

// Lexicographic search over f = g * q, q monic of degree k-1-d, across the
// degree-d divisors g of x^k - 1 that contain x - 1.
std::optional<PolygonTuple> search_prime_case(std::size_t k, i64 p, int d) {
  auto rest = factors_without_x_minus_1(k, p);
  const std::size_t m = rest.size();
  const std::size_t qdeg = k - 1 - static_cast<std::size_t>(d);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<FpPoly> chosen{FpPoly::linear(p, 1)};
    int deg = 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) {
        chosen.push_back(rest[i]);
        deg += rest[i].degree();
      }
    }
    if (deg != d) continue;
    const FpPoly g = product(chosen, p);
    std::vector<i64> q(qdeg + 1, 0);
    q[qdeg] = 1;
    while (true) {
      if (auto t = realize(g * FpPoly(p, q), k, d)) return t;
      std::size_t i = 0;
      while (i < qdeg && ++q[i] == p) q[i++] = 0;
      if (i == qdeg) break;
    }
  }
  return std::nullopt;
}

GroupDescriptor prime_descriptor(std::size_t k, i64 p, int d) {
  return make_descriptor(p, static_cast<i64>(k), std::vector<i64>(k - static_cast<std::size_t>(d), p));
}

}  // namespace

std::set<int> achievable_d_set(std::size_t k, i64 p) {
  require_prime_not_dividing(k, p);
  std::set<int> sums{0};
  int total = 0;
  for (const auto& f : factors_without_x_minus_1(k, p)) {
    std::set<int> next = sums;
    for (int s : sums) next.insert(s + f.degree());
    sums = std::move(next);
    total += f.degree();
  }
  std::set<int> out;
  for (int s : sums) {
    if (s < total) out.insert(s + 1);
  }
  return out;
}

PolygonTuple construct_prime_case(std::size_t k, i64 p, int d) {
  if (k < 3 || p <= static_cast<i64>(k)) {
    throw Error(ErrorKind::PreconditionFailed, "need p > k >= 3");
  }
  if (!achievable_d_set(k, p).count(d)) {
    throw Error(ErrorKind::DNotAchievable, "d = " + std::to_string(d) + " for k = " + std::to_string(k) +
                                               ", p = " + std::to_string(p));
  }
  std::optional<PolygonTuple> t;
  try {
    FpPoly f = FpPoly::zero(p);
    const auto ki = static_cast<int>(k);
    if (p > static_cast<i64>(k) + 1) {
      f = rank_procedure(k, p, d);
    } else if (ki % d == 0) {
      f = reducing_rank(k, p, d);
    } else if (2 * d < ki) {
      f = small_d(k, p, d);
    } else {
      f = large_d(k, p, d);
    }
    t = realize(f, k, d);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotEnoughAlphas) throw;
  }
  if (!t) t = search_prime_case(k, p, d);
  if (!t) throw Error(ErrorKind::WitnessNotFound, "no k-gon found for d = " + std::to_string(d));
  if (!(group_of(*t) == prime_descriptor(k, p, d))) {
    throw Error(ErrorKind::InternalVerificationFailed, t->to_string() + " has group " + group_of(*t).pretty());
  }
  return *t;
}

ClassificationReport classify_prime(std::size_t k, i64 p) {
  if (!nt::is_prime(p)) throw Error(ErrorKind::ModulusNotPrime, std::to_string(p) + " is not prime");
  if (k < 3 || p <= static_cast<i64>(k)) throw Error(ErrorKind::PreconditionFailed, "need p > k >= 3");
  ClassificationReport report;
  report.k = static_cast<i64>(k);
  report.n = p;
  const auto ds = achievable_d_set(k, p);
  for (int d = 1; d < static_cast<int>(k); ++d) {
    if (ds.count(d)) {
      report.witnesses.push_back(construct_prime_case(k, p, d));
      report.achievable.push_back(group_of(report.witnesses.back()));
    } else {
      report.excluded.push_back(
          {prime_descriptor(k, p, d), "degree " + std::to_string(d) +
                                          " is not the degree of a proper divisor of x^k-1 containing x-1"});
    }
  }
  return report;
}

bool admissible_alpha(i64 n, i64 alpha) {
  if (alpha < 1 || n % alpha != 0) return false;
  for (auto [q, e] : nt::factorize(alpha)) {
    if (q == 3 ? e > 1 : q % 3 != 1) return false;
  }
  return true;
}

ClassificationReport classify_triangles(i64 n) {
  if (n < 3) throw Error(ErrorKind::NTooSmall, "n = " + std::to_string(n) + " < 3");
  ClassificationReport report;
  report.k = 3;
  report.n = n;
  auto wanted = [n](i64 alpha) { return n == 3 ? alpha == 3 : admissible_alpha(n, alpha); };
  std::map<i64, PolygonTuple> found;
  std::size_t needed = 0;
  for (i64 alpha : nt::divisors(n)) needed += wanted(alpha);
  for (i64 a0 = 1; a0 < n && found.size() < needed; ++a0) {
    for (i64 a1 = 1; a0 + a1 < n && found.size() < needed; ++a1) {
      const i64 a2 = n - a0 - a1;
      if (nt::gcd(nt::gcd(nt::gcd(a0, a1), a2), n) != 1) continue;
      const i64 alpha = nt::gcd(n, nt::mod(nt::mul_mod(a0, a2, n) - nt::mul_mod(a1, a1, n), n));
      if (!wanted(alpha)) {
        throw Error(ErrorKind::InternalVerificationFailed,
                    "triangle [" + std::to_string(a0) + "," + std::to_string(a1) + "," +
                        std::to_string(a2) + "] has inadmissible alpha " + std::to_string(alpha));
      }
      found.try_emplace(alpha, geometric({a0, a1, a2}, n));
    }
  }
  for (i64 alpha : nt::divisors(n)) {
    const GroupDescriptor desc = make_descriptor(n, 3, {n, n / alpha});
    if (!wanted(alpha)) {
      report.excluded.push_back(
          {desc, n == 3 ? "the only triangle mod 3 is [1,1,1]"
                        : "alpha = " + std::to_string(alpha) +
                              " is not 3^i times primes = 1 mod 3 with i <= 1"});
      continue;
    }
    auto it = found.find(alpha);
    if (it == found.end()) {
      throw Error(ErrorKind::WitnessNotFound, "no triangle mod " + std::to_string(n) + " with alpha " +
                                                  std::to_string(alpha));
    }
    if (!(group_of(it->second) == desc)) {
      throw Error(ErrorKind::InternalVerificationFailed, it->second.to_string());
    }
    report.achievable.push_back(group_of(it->second));
    report.witnesses.push_back(it->second);
  }
  return report;
}

CompositeDecision composite_feasible(std::size_t k, i64 n, std::vector<i64> deltas, std::uint64_t cap) {
  if (k < 3) throw Error(ErrorKind::KTooSmall, "need k >= 3");
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "need n >= 2");
  if (k > 63) throw Error(ErrorKind::InvalidArgument, "k too large for exhaustive search");
  for (i64 d : deltas) {
    if (d < 1 || n % d != 0) {
      throw Error(ErrorKind::InvalidArgument, std::to_string(d) + " does not divide " + std::to_string(n));
    }
  }
  CompositeDecision out;
  out.target = make_descriptor(n, static_cast<i64>(k), deltas);
  const std::uint64_t full = (std::uint64_t{1} << k) - 1;

  struct Path {
    std::vector<PolygonTuple> parts;
  };
  std::map<std::uint64_t, Path> reachable{{full, Path{}}};

  for (auto [p, e] : nt::factorize(n)) {
    const i64 q = nt::ipow(p, e);
    std::uint64_t space = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (space > cap / static_cast<std::uint64_t>(q) + 1) {
        space = cap + 1;
        break;
      }
      space *= static_cast<std::uint64_t>(q);
    }
    if (space > cap) {
      throw CapExceededError("undecided: " + std::to_string(q) + "^" + std::to_string(k) +
                                 " tuples exceed cap " + std::to_string(cap),
                             0);
    }
    std::vector<i64> local;
    for (i64 d : out.target.deltas) local.push_back(nt::gcd(d, q));
    const GroupDescriptor want = make_descriptor(q, static_cast<i64>(k), local);

    std::map<std::uint64_t, PolygonTuple> masks;
    std::vector<i64> a(k, 0);
    while (true) {
      i64 s = 0;
      for (std::size_t i = 0; i + 1 < k; ++i) s += a[i];
      a[k - 1] = nt::mod(-s, q);
      std::uint64_t mask = 0;
      for (std::size_t i = 0; i < k; ++i) mask |= static_cast<std::uint64_t>(a[i] == 0) << i;
      if (!masks.count(mask) && !check(a, q, Level::algebraic) && group_of(algebraic(a, q)) == want) {
        masks.emplace(mask, algebraic(a, q));
      }
      std::size_t i = 0;
      while (i + 1 < k && ++a[i] == q) a[i++] = 0;
      if (i + 1 == k) break;
    }
    if (masks.empty()) {
      out.reason = "no algebraic " + std::to_string(k) + "-gon mod " + std::to_string(q) + " has group " +
                   want.pretty();
      return out;
    }
    std::map<std::uint64_t, Path> next;
    for (const auto& [m, path] : reachable) {
      for (const auto& [mq, t] : masks) {
        if (next.count(m & mq)) continue;
        Path extended = path;
        extended.parts.push_back(t);
        next.emplace(m & mq, std::move(extended));
      }
    }
    reachable = std::move(next);
  }

  auto it = reachable.find(0);
  if (it == reachable.end()) {
    out.reason = "every combination of prime-power solutions leaves some entry = 0 mod n";
    return out;
  }
  PolygonTuple combined = it->second.parts.front();
  for (std::size_t j = 1; j < it->second.parts.size(); ++j) combined = combine_crt(combined, it->second.parts[j]);
  auto witness = find_geometric_associate(combined);
  if (!witness || !(group_of(*witness) == out.target)) {
    throw Error(ErrorKind::InternalVerificationFailed, "composite witness " + combined.to_string());
  }
  out.feasible = true;
  out.witness = witness;
  return out;
}

}  // namespace billiards
