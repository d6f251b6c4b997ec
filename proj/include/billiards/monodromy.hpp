#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "billiards/oracle.hpp"
#include "billiards/polygon.hpp"

namespace billiards {

/// G = N : C_k with N = C_{delta_1} x ... x C_{delta_r}.
struct GroupDescriptor {
  std::int64_t n = 0;
  std::int64_t k = 0;
  /// Nontrivial invariant factors, largest first, each dividing the previous.
  std::vector<std::int64_t> deltas;
  mpz_class order;
  std::optional<bool> trivial_action;

  /// "(C5 x C5 x C5) : C4", or "C3 x C3" when the action is known to be trivial.
  std::string pretty() const;

  /// Compares (n, k, deltas) only.
  friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
    return a.n == b.n && a.k == b.k && a.deltas == b.deltas;
  }
};

/// Drops 1s, sorts the rest largest first and fills in the order.
GroupDescriptor make_descriptor(std::int64_t n, std::int64_t k, std::vector<std::int64_t> deltas);

/// Circulant, Smith normal form, delta_i = n / gcd(d_i, n).
GroupDescriptor group_of(const PolygonTuple& t);

/// group_of plus a run of the permutation oracle; the descriptor's
/// trivial_action comes from the oracle. Throws InternalVerificationFailed
/// if the oracle disagrees and CapExceededError above the caps.
GroupDescriptor certify(const PolygonTuple& t, const oracle::Caps& caps = oracle::default_caps());

GroupDescriptor triangle_closed_form(std::int64_t a0, std::int64_t a1, std::int64_t a2, std::int64_t n);

GroupDescriptor quadrilateral_closed_form(std::int64_t a0, std::int64_t a1, std::int64_t a2,
                                          std::int64_t a3, std::int64_t n);

/// Tuple of the regular k-gon: all entries k-2 mod k for odd k, (k-2)/2 mod k/2 for even k.
PolygonTuple regular_kgon_tuple(std::int64_t k);

/// Certified descriptor of the regular k-gon, C_{k/gcd(k,2)} x C_k.
GroupDescriptor regular_kgon(std::int64_t k);

}  // namespace billiards
