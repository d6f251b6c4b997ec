#include "billiards/polygon.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "billiards/numtheory.hpp"

namespace billiards {

using nt::i64;

std::vector<i64> PolygonTuple::residues() const {
  std::vector<i64> out(entries_.size());
  std::transform(entries_.begin(), entries_.end(), out.begin(),
                 [n = modulus_](i64 a) { return nt::mod(a, n); });
  return out;
}

PolygonTuple PolygonTuple::as_algebraic() const {
  return PolygonTuple(residues(), modulus_, Level::algebraic);
}

std::string PolygonTuple::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ',';
    os << entries_[i];
  }
  os << "] mod " << modulus_;
  return os.str();
}

std::optional<Error> check(std::span<const i64> entries, i64 n, Level level) {
  const std::size_t k = entries.size();
  if (n < 1) return Error(ErrorKind::InvalidArgument, "modulus must be positive");
  if (k == 0) return Error(ErrorKind::KTooSmall, "empty tuple");
  if (level == Level::geometric) {
    if (k < 3) return Error(ErrorKind::KTooSmall, "geometric polygons need k >= 3");
    for (std::size_t i = 0; i < k; ++i) {
      i64 a = entries[i];
      if (a <= 0 || a >= 2 * n || a == n) {
        return Error(ErrorKind::EntryOutOfRange,
                     "a_" + std::to_string(i) + " = " + std::to_string(a) +
                         " must satisfy 0 < a < 2n, a != n");
      }
    }
    {
      __int128 sum = 0;
      for (i64 a : entries) sum += a;
      if (sum != static_cast<__int128>(k - 2) * n) {
        return Error(ErrorKind::SumMismatch, "entries must sum to (k-2)n = " +
                                                 std::to_string(static_cast<i64>(k - 2) * n));
      }
    }
  } else {
    if (k < 2) return Error(ErrorKind::KTooSmall, "algebraic polygons need k >= 2");
    for (std::size_t i = 0; i < k; ++i) {
      if (entries[i] < 0) {
        return Error(ErrorKind::EntryOutOfRange,
                     "a_" + std::to_string(i) + " must be nonnegative");
      }
    }
    i64 sum = 0;
    for (i64 a : entries) sum = nt::mod(sum + nt::mod(a, n), n);
    if (sum != 0) return Error(ErrorKind::SumMismatch, "entries must sum to 0 mod n");
  }
  if (std::all_of(entries.begin(), entries.end(), [n](i64 a) { return a % n == 0; })) {
    return Error(ErrorKind::AllZero, "every entry is 0 mod n");
  }
  if (nt::gcd(std::vector<i64>(entries.begin(), entries.end()), n) != 1) {
    return Error(ErrorKind::GcdNotOne, "gcd(a_0, ..., a_{k-1}, n) != 1");
  }
  return std::nullopt;
}

PolygonTuple validate(std::span<const i64> entries, i64 n, Level level) {
  if (auto err = check(entries, n, level)) throw *err;
  std::vector<i64> stored(entries.begin(), entries.end());
  if (level == Level::algebraic) {
    for (i64& a : stored) a = nt::mod(a, n);
  }
  return PolygonTuple(std::move(stored), n, level);
}

PolygonTuple scale_associate(const PolygonTuple& t, i64 c) {
  const i64 n = t.modulus();
  if (nt::gcd(nt::mod(c, n), n) != 1) {
    throw Error(ErrorKind::CNotUnit,
                std::to_string(c) + " is not a unit modulo " + std::to_string(n));
  }
  std::vector<i64> scaled;
  scaled.reserve(t.k());
  for (i64 a : t.entries()) scaled.push_back(nt::mul_mod(c, a, n));
  return algebraic(scaled, n);
}

namespace {

// Prop-10 style angle lifting: residues in (0, n) with sum <= (k-2)n get n
// added to the lowest-index entries until the sum reaches (k-2)n.
std::optional<PolygonTuple> lift_to_geometric(std::vector<i64> residues, i64 n) {
  const i64 k = static_cast<i64>(residues.size());
  if (k < 3) return std::nullopt;
  i64 sum = std::accumulate(residues.begin(), residues.end(), i64{0});
  i64 target = (k - 2) * n;
  if (sum > target || (target - sum) % n != 0) return std::nullopt;
  i64 missing = (target - sum) / n;
  for (auto& a : residues) {
    if (missing == 0) break;
    if (a < n) {
      a += n;
      --missing;
    }
  }
  if (missing != 0 || check(residues, n, Level::geometric)) return std::nullopt;
  return geometric(residues, n);
}

bool has_zero_residue(const std::vector<i64>& residues) {
  return std::any_of(residues.begin(), residues.end(), [](i64 a) { return a == 0; });
}

std::vector<i64> scaled_residues(const std::vector<i64>& residues, i64 c, i64 n) {
  std::vector<i64> out;
  out.reserve(residues.size());
  for (i64 a : residues) out.push_back(nt::mul_mod(c, a, n));
  return out;
}

}  // namespace

std::optional<PolygonTuple> find_geometric_associate(const PolygonTuple& t) {
  const i64 n = t.modulus();
  if (t.k() < 3) return std::nullopt;
  const auto residues = t.residues();

  if (has_zero_residue(residues)) {
    // Unit scaling never clears a zero residue, so this search always comes
    // back empty; it is kept exhaustive so the answer does not rest on that.
    for (i64 c : nt::units(n)) {
      auto scaled = scaled_residues(residues, c, n);
      if (has_zero_residue(scaled)) continue;
      if (auto lifted = lift_to_geometric(std::move(scaled), n)) return lifted;
    }
    return std::nullopt;
  }

  if (auto direct = lift_to_geometric(residues, n)) return direct;

  std::size_t pivot = 0;
  i64 best = n + 1;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    i64 g = nt::gcd(residues[i], n);
    if (g < best) {
      best = g;
      pivot = i;
    }
  }
  for (i64 c : nt::units(n)) {
    if (nt::mul_mod(c, residues[pivot], n) != best) continue;
    if (auto lifted = lift_to_geometric(scaled_residues(residues, c, n), n)) return lifted;
    break;
  }
  throw Error(ErrorKind::InternalVerificationFailed,
              "associate scaling failed for " + t.to_string());
}

std::optional<PolygonTuple> find_convex_associate(const PolygonTuple& t) {
  const i64 p = t.modulus();
  const i64 k = static_cast<i64>(t.k());
  if (!nt::is_prime(p)) {
    throw Error(ErrorKind::PreconditionFailed, "modulus " + std::to_string(p) + " is not prime");
  }
  if (k < 3 || p < k - 1) {
    throw Error(ErrorKind::PreconditionFailed, "convex associates need k >= 3 and p >= k-1");
  }
  const auto residues = t.residues();
  if (has_zero_residue(residues)) {
    throw Error(ErrorKind::PreconditionFailed, "an entry is 0 mod p");
  }
  const i64 target = (k - 2) * p;
  auto sum_of = [](const std::vector<i64>& v) {
    return std::accumulate(v.begin(), v.end(), i64{0});
  };

  // Scale by c' with c' * (sum / p) = k - 2 (mod p).
  i64 quotient = sum_of(residues) / p;
  if (quotient % p != 0) {
    i64 scale = nt::mul_mod(k - 2, nt::inverse(quotient, p), p);
    auto scaled = scaled_residues(residues, scale, p);
    if (scale != 0 && sum_of(scaled) == target) return geometric(scaled, p);
  }
  // That scaling does not always land on (k-2)p; fall back to every unit.
  for (i64 c = 1; c < p; ++c) {
    auto scaled = scaled_residues(residues, c, p);
    if (sum_of(scaled) == target) return geometric(scaled, p);
  }
  return std::nullopt;
}

bool are_associates(const PolygonTuple& a, const PolygonTuple& b) {
  if (a.modulus() != b.modulus() || a.k() != b.k()) return false;
  const i64 n = a.modulus();
  const auto ra = a.residues();
  const auto rb = b.residues();
  for (i64 c : nt::units(n)) {
    if (scaled_residues(ra, c, n) == rb) return true;
  }
  return false;
}

}  // namespace billiards
