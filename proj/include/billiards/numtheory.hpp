#pragma once

// Small-integer number theory shared by every module. Moduli in this
// library are desk-scale, so 64-bit arithmetic with 128-bit products is
// enough here; matrix work uses GMP instead.

#include <cstdint>
#include <utility>
#include <vector>

namespace billiards::nt {

using i64 = std::int64_t;

/// Least nonnegative residue of a mod m (m > 0).
i64 mod(i64 a, i64 m);

i64 gcd(i64 a, i64 b);
i64 gcd(const std::vector<i64>& values, i64 seed = 0);

/// Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
struct Bezout {
  i64 g;
  i64 x;
  i64 y;
};
Bezout ext_gcd(i64 a, i64 b);

/// Inverse of a modulo m; throws Error(CNotUnit) when gcd(a, m) != 1.
i64 inverse(i64 a, i64 m);

i64 mul_mod(i64 a, i64 b, i64 m);
i64 pow_mod(i64 base, std::uint64_t exp, i64 m);

bool is_prime(i64 n);

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<i64, int>> factorize(i64 n);

/// All positive divisors of n in increasing order.
std::vector<i64> divisors(i64 n);

/// Units of Z/nZ in increasing order.
std::vector<i64> units(i64 n);

/// Smallest generator of F_p^x.
i64 primitive_root(i64 p);

/// x with x = r1 (mod m1), x = r2 (mod m2), 0 <= x < m1*m2; requires gcd(m1, m2) = 1.
i64 crt(i64 r1, i64 m1, i64 r2, i64 m2);

i64 ipow(i64 base, int exp);

}  // namespace billiards::nt
