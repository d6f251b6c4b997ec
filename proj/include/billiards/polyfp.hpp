#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "billiards/polygon.hpp"

namespace billiards {

/// Dense polynomial over the prime field F_p. Coefficient i multiplies x^i;
/// trailing zeros are trimmed, so the zero polynomial has no coefficients.
class FpPoly {
 public:
  FpPoly(std::int64_t p, std::vector<std::int64_t> coeffs);
  static FpPoly zero(std::int64_t p) { return FpPoly(p, {}); }
  static FpPoly constant(std::int64_t p, std::int64_t c) { return FpPoly(p, {c}); }
  static FpPoly monomial(std::int64_t p, std::int64_t c, std::size_t degree);
  /// x - root
  static FpPoly linear(std::int64_t p, std::int64_t root);
  /// x^k - 1
  static FpPoly x_pow_minus_one(std::int64_t p, std::size_t k);

  std::int64_t p() const noexcept { return p_; }
  const std::vector<std::int64_t>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::int64_t coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }
  std::int64_t leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }
  bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 1; }

  FpPoly monic() const;
  FpPoly derivative() const;
  std::int64_t eval(std::int64_t x) const;

  /// "4*x^3+2*x^2+2*x+2 (mod 5)"
  std::string to_string() const;

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(std::int64_t c, const FpPoly& a);
  friend bool operator==(const FpPoly&, const FpPoly&) = default;

 private:
  void trim();

  std::int64_t p_;
  std::vector<std::int64_t> coeffs_;
};

struct PolyDivision {
  FpPoly quotient;
  FpPoly remainder;
};
PolyDivision divmod(const FpPoly& a, const FpPoly& b);
FpPoly operator/(const FpPoly& a, const FpPoly& b);
FpPoly operator%(const FpPoly& a, const FpPoly& b);

/// base^exp mod m.
FpPoly pow_mod(const FpPoly& base, std::uint64_t exp, const FpPoly& m);

/// Associated polynomial a_0 + a_1 x + ... of a tuple whose modulus is prime.
FpPoly from_tuple(const PolygonTuple& t);

/// Monic gcd; throws BothZero when both inputs vanish.
FpPoly gcd_poly(const FpPoly& a, const FpPoly& b);

/// Longest run of zero coefficients below the leading term.
int w_function(const FpPoly& f);

/// x*f - a_{k-1}(x^k - 1), which has the same gcd with x^k - 1 as f.
FpPoly rotate(const FpPoly& f, std::size_t k);

struct Factor {
  FpPoly poly;
  int multiplicity;
};

/// Complete factorization of a nonzero polynomial into monic irreducibles,
/// sorted by degree and then by coefficients from x^{d-1} down to x^0.
std::vector<Factor> factor(const FpPoly& f);
std::vector<Factor> factor_xk_minus_1(std::size_t k, std::int64_t p);

/// Orbit sizes of j -> p*j on Z/kZ, ascending. Throws PDividesK when p | k.
std::vector<int> coset_degrees(std::size_t k, std::int64_t p);

/// Roots of f in F_p, ascending.
std::vector<std::int64_t> roots(const FpPoly& f);

struct GapClosure {
  std::int64_t alpha;
  FpPoly product;
};

/// Smallest nonzero alpha outside `forbidden` with alpha != a_{j-1}/a_j for
/// every j, together with f * (x - alpha). Requires f(0) != 0. Throws
/// NotEnoughAlphas when no candidate survives.
GapClosure close_zero_gap(const FpPoly& f, const std::set<std::int64_t>& forbidden);

}  // namespace billiards
