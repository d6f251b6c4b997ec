#include "billiards/numtheory.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "billiards/error.hpp"

namespace billiards {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SumMismatch: return "SumMismatch";
    case ErrorKind::EntryOutOfRange: return "EntryOutOfRange";
    case ErrorKind::GcdNotOne: return "GcdNotOne";
    case ErrorKind::AllZero: return "AllZero";
    case ErrorKind::KTooSmall: return "KTooSmall";
    case ErrorKind::CNotUnit: return "CNotUnit";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::JOutOfRange: return "JOutOfRange";
    case ErrorKind::PNotPrime: return "PNotPrime";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::ModulusNotPrime: return "ModulusNotPrime";
    case ErrorKind::BothZero: return "BothZero";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::PDividesK: return "PDividesK";
    case ErrorKind::NotEnoughAlphas: return "NotEnoughAlphas";
    case ErrorKind::ModuliNotCoprime: return "ModuliNotCoprime";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::BadFactorization: return "BadFactorization";
    case ErrorKind::NotMultiple: return "NotMultiple";
    case ErrorKind::DNotAchievable: return "DNotAchievable";
    case ErrorKind::NTooSmall: return "NTooSmall";
    case ErrorKind::WitnessNotFound: return "WitnessNotFound";
    case ErrorKind::InternalVerificationFailed: return "InternalVerificationFailed";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace billiards

namespace billiards::nt {

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

i64 gcd(const std::vector<i64>& values, i64 seed) {
  i64 g = std::abs(seed);
  for (i64 v : values) g = std::gcd(g, v);
  return g;
}

Bezout ext_gcd(i64 a, i64 b) {
  i64 old_r = a, r = b;
  i64 old_s = 1, s = 0;
  i64 old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
    std::tie(old_t, t) = std::pair{t, old_t - q * t};
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

i64 inverse(i64 a, i64 m) {
  auto [g, x, y] = ext_gcd(mod(a, m), m);
  (void)y;
  if (g != 1) {
    throw Error(ErrorKind::CNotUnit,
                std::to_string(a) + " is not a unit modulo " + std::to_string(m));
  }
  return mod(x, m);
}

i64 mul_mod(i64 a, i64 b, i64 m) {
  return static_cast<i64>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

i64 pow_mod(i64 base, std::uint64_t exp, i64 m) {
  i64 result = 1 % m;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
  std::vector<std::pair<i64, int>> out;
  for (i64 d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> small, large;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<i64> units(i64 n) {
  std::vector<i64> out;
  for (i64 c = 1; c < n; ++c) {
    if (std::gcd(c, n) == 1) out.push_back(c);
  }
  if (n == 1) out.push_back(0);
  return out;
}

i64 primitive_root(i64 p) {
  if (!is_prime(p)) throw Error(ErrorKind::PNotPrime, std::to_string(p) + " is not prime");
  if (p == 2) return 1;
  auto factors = factorize(p - 1);
  for (i64 g = 2; g < p; ++g) {
    bool generator = true;
    for (auto [q, e] : factors) {
      (void)e;
      if (pow_mod(g, static_cast<std::uint64_t>((p - 1) / q), p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  throw Error(ErrorKind::InternalVerificationFailed, "no primitive root found");
}

i64 crt(i64 r1, i64 m1, i64 r2, i64 m2) {
  if (std::gcd(m1, m2) != 1) {
    throw Error(ErrorKind::ModuliNotCoprime,
                "gcd(" + std::to_string(m1) + ", " + std::to_string(m2) + ") != 1");
  }
  i64 m = m1 * m2;
  // x = r1 + m1 * ((r2 - r1) * m1^{-1} mod m2)
  i64 t = mul_mod(mod(r2 - r1, m2), inverse(m1, m2), m2);
  return mod(r1 + m1 * t, m);
}

i64 ipow(i64 base, int exp) {
  i64 r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

}  // namespace billiards::nt
