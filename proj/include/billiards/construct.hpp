#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "billiards/monodromy.hpp"
#include "billiards/polygon.hpp"

namespace billiards {

struct Exclusion {
  GroupDescriptor descriptor;
  std::string rule;
};

struct ClassificationReport {
  std::int64_t k = 0;
  std::int64_t n = 0;
  std::vector<GroupDescriptor> achievable;
  /// witnesses[i] is a geometric polygon realizing achievable[i].
  std::vector<PolygonTuple> witnesses;
  std::vector<Exclusion> excluded;
};

/// Entrywise CRT of two algebraic k-gons with coprime moduli.
PolygonTuple combine_crt(const PolygonTuple& t1, const PolygonTuple& t2);

/// Reduction mod n1, where n1 * n2 = t.modulus() with n1, n2 > 1.
PolygonTuple project(const PolygonTuple& t, std::int64_t n1);

/// Repeats the pattern of t until it has ell entries; ell must be a multiple of k.
PolygonTuple lift(const PolygonTuple& t, std::size_t ell);

/// Lifts a k-gon and an ell-gon (gcd(k, ell) = 1) to k*ell-gons and combines them.
PolygonTuple combine_coprime_k(const PolygonTuple& t1, const PolygonTuple& t2);

/// Degrees d of proper divisors of x^k - 1 over F_p that contain x - 1.
std::set<int> achievable_d_set(std::size_t k, std::int64_t p);

/// Geometric k-gon mod p with group C_p^{k-d} : C_k.
PolygonTuple construct_prime_case(std::size_t k, std::int64_t p, int d);

ClassificationReport classify_prime(std::size_t k, std::int64_t p);

/// Exponents alpha | n that occur as gcd(n, a0 a2 - a1^2) for n > 3.
bool admissible_alpha(std::int64_t n, std::int64_t alpha);

ClassificationReport classify_triangles(std::int64_t n);

struct CompositeDecision {
  bool feasible = false;
  GroupDescriptor target;
  std::optional<PolygonTuple> witness;
  /// Why the target is impossible, naming the prime power that fails.
  std::string reason;
};

/// Decides whether some geometric k-gon mod n has N = C_{deltas[0]} x ...
/// Each prime power q || n is searched exhaustively, so q^k must not exceed
/// `cap` (CapExceededError otherwise).
CompositeDecision composite_feasible(std::size_t k, std::int64_t n, std::vector<std::int64_t> deltas,
                                     std::uint64_t cap = 1000000);

}  // namespace billiards
