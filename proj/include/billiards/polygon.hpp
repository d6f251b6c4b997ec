#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "billiards/error.hpp"

namespace billiards {

enum class Level { geometric, algebraic };

/// An ordered k-tuple of angle numerators with modulus n.
///
/// Only `validate` builds one, so a PolygonTuple always satisfies the
/// invariants of its level. Algebraic tuples store least nonnegative
/// residues; geometric tuples keep their literal entries, since the angle
/// a_i * pi / n depends on whether a_i is above or below n.
class PolygonTuple {
 public:
  const std::vector<std::int64_t>& entries() const noexcept { return entries_; }
  std::int64_t modulus() const noexcept { return modulus_; }
  std::size_t k() const noexcept { return entries_.size(); }
  Level level() const noexcept { return level_; }
  bool is_geometric() const noexcept { return level_ == Level::geometric; }

  /// Entries reduced to [0, n).
  std::vector<std::int64_t> residues() const;

  /// The same tuple viewed at the algebraic level (entries reduced mod n).
  PolygonTuple as_algebraic() const;

  std::string to_string() const;

  friend bool operator==(const PolygonTuple&, const PolygonTuple&) = default;

 private:
  friend PolygonTuple validate(std::span<const std::int64_t>, std::int64_t, Level);
  PolygonTuple(std::vector<std::int64_t> entries, std::int64_t modulus, Level level)
      : entries_(std::move(entries)), modulus_(modulus), level_(level) {}

  std::vector<std::int64_t> entries_;
  std::int64_t modulus_;
  Level level_;
};

/// First violated clause, or nullopt when the entries form a valid tuple.
std::optional<Error> check(std::span<const std::int64_t> entries, std::int64_t n, Level level);

/// Validated tuple; throws Error naming the first violated clause.
PolygonTuple validate(std::span<const std::int64_t> entries, std::int64_t n, Level level);

inline PolygonTuple algebraic(std::span<const std::int64_t> entries, std::int64_t n) {
  return validate(entries, n, Level::algebraic);
}
inline PolygonTuple geometric(std::span<const std::int64_t> entries, std::int64_t n) {
  return validate(entries, n, Level::geometric);
}
inline PolygonTuple algebraic(std::initializer_list<std::int64_t> entries, std::int64_t n) {
  return validate(std::vector<std::int64_t>(entries), n, Level::algebraic);
}
inline PolygonTuple geometric(std::initializer_list<std::int64_t> entries, std::int64_t n) {
  return validate(std::vector<std::int64_t>(entries), n, Level::geometric);
}

/// Entrywise c * a_i mod n. Throws CNotUnit unless gcd(c, n) = 1.
PolygonTuple scale_associate(const PolygonTuple& t, std::int64_t c);

/// A geometric k-gon associate to t, or nullopt if none exists.
///
/// When every entry is nonzero mod n the associate always exists: the
/// residues are used directly if they already sum to at most (k-2)n,
/// otherwise they are first scaled by the unit that sends the entry of
/// smallest gcd with n (lowest index on ties) to that gcd. Then n is
/// added to the lowest-index entries until the sum is (k-2)n.
std::optional<PolygonTuple> find_geometric_associate(const PolygonTuple& t);

/// A convex (all entries in (0, p)) geometric associate modulo a prime p.
/// Throws PreconditionFailed when p < k-1, n is not prime, or an entry is 0 mod p.
std::optional<PolygonTuple> find_convex_associate(const PolygonTuple& t);

/// True when some unit c has b_i = c * a_i mod n for all i.
bool are_associates(const PolygonTuple& a, const PolygonTuple& b);

}  // namespace billiards
