#pragma once

// Brute-force ground truth. Nothing here touches the Smith normal form:
// the group is generated as explicit permutations of the n*k edges and the
// normal subgroup is enumerated as a set of vectors.

#include <cstdint>
#include <string>
#include <vector>

#include "billiards/polygon.hpp"

namespace billiards::oracle {

struct Caps {
  std::uint64_t span = 100000;
  std::uint64_t group = 1000000;
};

/// Module defaults, with BILLIARD_MONODROMY_MAX_CAP (if set to a positive
/// integer) replacing both limits.
Caps default_caps();

struct EdgeLabel {
  std::int64_t m;
  std::int64_t i;
  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
};

/// Permutations of {0, ..., n*k - 1}; edge (m, i) has index m*k + i.
struct PermutationPair {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::vector<std::uint32_t> sigma0;
  std::vector<std::uint32_t> sigma1;

  std::uint32_t index(EdgeLabel e) const { return static_cast<std::uint32_t>(e.m * k + e.i); }
  EdgeLabel label(std::uint32_t idx) const { return {idx / k, idx % k}; }
};

PermutationPair build_permutations(const PolygonTuple& t);

/// |<sigma0, sigma1>| by breadth-first closure. Throws CapExceededError
/// once more than `cap` elements have been found.
std::uint64_t group_order(const PermutationPair& pp, std::uint64_t cap);

struct AbelianInvariants {
  std::uint64_t order = 0;
  /// Invariant factors, largest first, each dividing the previous.
  std::vector<std::int64_t> factors;
};

/// Column span of the circulant inside (Z/nZ)^k, described by counting
/// solutions of p^j x = 0. Throws CapExceededError past `cap` vectors.
AbelianInvariants span_invariants(const PolygonTuple& t, std::uint64_t cap);

/// Invariant factors of a finite abelian p-group product, recovered from
/// count(d) = #{x : d x = 0} for the prime powers d dividing n.
std::vector<std::int64_t> invariants_from_counts(
    std::int64_t n, const std::vector<std::vector<std::int64_t>>& elements);

struct Clause {
  std::string name;
  bool passed;
  std::string detail;
};

struct StructureReport {
  std::vector<Clause> clauses;
  std::uint64_t group_order = 0;
  std::uint64_t normal_order = 0;
  /// sigma0 acts trivially on N by conjugation (the product is direct).
  bool action_trivial = false;

  bool all_passed() const;
  const Clause* failed() const;
};

/// Checks every structural fact about G = <sigma0, sigma1> at the
/// permutation level. Throws CapExceededError if G or N is above the caps.
StructureReport check_structure(const PolygonTuple& t, const Caps& caps = default_caps());

}  // namespace billiards::oracle
