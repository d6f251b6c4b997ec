#include "billiards/polyfp.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <sstream>

#include "billiards/numtheory.hpp"

namespace billiards {

using nt::i64;

FpPoly::FpPoly(i64 p, std::vector<i64> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
  if (p < 2) throw Error(ErrorKind::ModulusNotPrime, "field size must be a prime");
  for (i64& c : coeffs_) c = nt::mod(c, p_);
  trim();
}

void FpPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

FpPoly FpPoly::monomial(i64 p, i64 c, std::size_t degree) {
  std::vector<i64> v(degree + 1, 0);
  v[degree] = c;
  return FpPoly(p, std::move(v));
}

FpPoly FpPoly::linear(i64 p, i64 root) { return FpPoly(p, {-root, 1}); }

FpPoly FpPoly::x_pow_minus_one(i64 p, std::size_t k) {
  std::vector<i64> v(k + 1, 0);
  v[0] = -1;
  v[k] += 1;
  return FpPoly(p, std::move(v));
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  return nt::inverse(leading(), p_) * *this;
}

FpPoly FpPoly::derivative() const {
  std::vector<i64> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    d.push_back(nt::mul_mod(static_cast<i64>(i), coeffs_[i], p_));
  }
  return FpPoly(p_, std::move(d));
}

i64 FpPoly::eval(i64 x) const {
  i64 acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = nt::mod(nt::mul_mod(acc, x, p_) + *it, p_);
  }
  return acc;
}

std::string FpPoly::to_string() const {
  std::ostringstream os;
  if (is_zero()) {
    os << '0';
  } else {
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      i64 c = coeffs_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      if (!first) os << '+';
      first = false;
      if (i == 0) {
        os << c;
      } else {
        if (c != 1) os << c << '*';
        os << 'x';
        if (i > 1) os << '^' << i;
      }
    }
  }
  os << " (mod " << p_ << ')';
  return os.str();
}

namespace {

void require_same_field(const FpPoly& a, const FpPoly& b) {
  if (a.p() != b.p()) throw Error(ErrorKind::InvalidArgument, "polynomials over different fields");
}

}  // namespace

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  require_same_field(a, b);
  std::vector<i64> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
  return FpPoly(a.p_, std::move(out));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  require_same_field(a, b);
  std::vector<i64> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) - b.coeff(i);
  return FpPoly(a.p_, std::move(out));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  require_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return FpPoly::zero(a.p_);
  std::vector<i64> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out[i + j] = nt::mod(out[i + j] + nt::mul_mod(a.coeffs_[i], b.coeffs_[j], a.p_), a.p_);
    }
  }
  return FpPoly(a.p_, std::move(out));
}

FpPoly operator*(i64 c, const FpPoly& a) {
  std::vector<i64> out = a.coeffs_;
  for (i64& v : out) v = nt::mul_mod(c, v, a.p_);
  return FpPoly(a.p_, std::move(out));
}

PolyDivision divmod(const FpPoly& a, const FpPoly& b) {
  require_same_field(a, b);
  if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
  const i64 p = a.p();
  std::vector<i64> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {FpPoly::zero(p), a};
  std::vector<i64> quot(static_cast<std::size_t>(a.degree() - db + 1), 0);
  const i64 inv_lead = nt::inverse(b.leading(), p);
  for (int i = a.degree(); i >= db; --i) {
    i64 c = nt::mul_mod(rem[static_cast<std::size_t>(i)], inv_lead, p);
    if (c == 0) continue;
    quot[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      auto idx = static_cast<std::size_t>(i - db + j);
      rem[idx] = nt::mod(rem[idx] - nt::mul_mod(c, b.coeffs()[static_cast<std::size_t>(j)], p), p);
    }
  }
  return {FpPoly(p, std::move(quot)), FpPoly(p, std::move(rem))};
}

FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).quotient; }
FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).remainder; }

namespace {

FpPoly pow_mod_big(FpPoly base, const mpz_class& exp, const FpPoly& m) {
  FpPoly result = FpPoly::constant(m.p(), 1) % m;
  base = base % m;
  const auto bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % m;
    if (mpz_tstbit(exp.get_mpz_t(), i)) result = (result * base) % m;
  }
  return result;
}

}  // namespace

FpPoly pow_mod(const FpPoly& base, std::uint64_t exp, const FpPoly& m) {
  return pow_mod_big(base, mpz_class(static_cast<unsigned long>(exp)), m);
}

FpPoly from_tuple(const PolygonTuple& t) {
  if (!nt::is_prime(t.modulus())) {
    throw Error(ErrorKind::ModulusNotPrime, std::to_string(t.modulus()) + " is not prime");
  }
  return FpPoly(t.modulus(), t.residues());
}

FpPoly gcd_poly(const FpPoly& a, const FpPoly& b) {
  require_same_field(a, b);
  if (a.is_zero() && b.is_zero()) throw Error(ErrorKind::BothZero, "gcd(0, 0) is undefined");
  FpPoly x = a;
  FpPoly y = b;
  while (!y.is_zero()) {
    FpPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

int w_function(const FpPoly& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "w is undefined for 0");
  int best = 0;
  int run = 0;
  for (i64 c : f.coeffs()) {
    if (c == 0) {
      best = std::max(best, ++run);
    } else {
      run = 0;
    }
  }
  return best;
}

FpPoly rotate(const FpPoly& f, std::size_t k) {
  if (f.degree() > static_cast<int>(k) - 1) {
    throw Error(ErrorKind::DegreeTooLarge,
                "deg f = " + std::to_string(f.degree()) + " exceeds k-1 = " + std::to_string(k - 1));
  }
  const i64 top = f.coeff(k - 1);
  return FpPoly::monomial(f.p(), 1, 1) * f - top * FpPoly::x_pow_minus_one(f.p(), k);
}

namespace {

bool factor_less(const FpPoly& a, const FpPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    auto idx = static_cast<std::size_t>(i);
    if (a.coeff(idx) != b.coeff(idx)) return a.coeff(idx) < b.coeff(idx);
  }
  return false;
}

// f(x) = g(x^p) -> g(x); valid because a^p = a in F_p.
FpPoly pth_root(const FpPoly& f) {
  const auto p = static_cast<std::size_t>(f.p());
  std::vector<i64> out;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) out.push_back(f.coeffs()[i]);
  return FpPoly(f.p(), std::move(out));
}

// Squarefree decomposition of a monic polynomial: pairs (g, m) of coprime
// squarefree polynomials with f = prod g^m.
std::vector<Factor> squarefree(const FpPoly& f) {
  std::vector<Factor> out;
  if (f.degree() < 1) return out;
  FpPoly c = gcd_poly(f, f.derivative());
  FpPoly w = f / c;
  int i = 1;
  while (!w.is_one()) {
    FpPoly y = gcd_poly(w, c);
    FpPoly part = w / y;
    if (!part.is_one()) out.push_back({part.monic(), i});
    w = y;
    c = c / y;
    ++i;
  }
  if (!c.is_one()) {
    const int p = static_cast<int>(f.p());
    for (auto [g, m] : squarefree(pth_root(c).monic())) out.push_back({g, m * p});
  }
  return out;
}

// Distinct-degree split of a monic squarefree polynomial into products of
// equal-degree irreducibles.
std::vector<std::pair<FpPoly, int>> distinct_degree(const FpPoly& f) {
  std::vector<std::pair<FpPoly, int>> out;
  const FpPoly x = FpPoly::monomial(f.p(), 1, 1);
  FpPoly rest = f;
  FpPoly h = x % rest;
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    h = pow_mod(h, static_cast<std::uint64_t>(f.p()), rest);
    FpPoly g = gcd_poly(rest, h - x);
    if (!g.is_one()) {
      out.emplace_back(g, d);
      rest = rest / g;
      h = h % rest;
    }
  }
  if (rest.degree() >= 1) out.emplace_back(rest, rest.degree());
  return out;
}

// Trial polynomials in a fixed order: x + c, then x^2 + b x + c, ...
FpPoly trial_polynomial(i64 p, std::uint64_t index) {
  std::vector<i64> digits;
  std::uint64_t v = index;
  do {
    digits.push_back(static_cast<i64>(v % static_cast<std::uint64_t>(p)));
    v /= static_cast<std::uint64_t>(p);
  } while (v > 0);
  digits.push_back(1);
  // digits[0] is the constant term; skip the pure monomial x^j with no lower terms only
  // when it cannot split anything, which the gcd test below handles anyway.
  return FpPoly(p, std::move(digits));
}

// Equal-degree split of f (monic, squarefree, all irreducible factors of degree d).
void equal_degree(const FpPoly& f, int d, std::vector<FpPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  const i64 p = f.p();
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
  for (std::uint64_t index = 0;; ++index) {
    FpPoly t = trial_polynomial(p, index) % f;
    if (t.degree() < 1) continue;
    FpPoly s = FpPoly::zero(p);
    if (p == 2) {
      // Trace map t + t^2 + ... + t^(2^(d-1)).
      FpPoly power = t;
      for (int i = 0; i < d; ++i) {
        s = s + power;
        power = (power * power) % f;
      }
    } else {
      mpz_class e = (q - 1) / 2;
      s = pow_mod_big(t, e, f) - FpPoly::constant(p, 1);
    }
    if (s.is_zero()) continue;
    FpPoly g = gcd_poly(f, s);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, out);
      equal_degree(f / g, d, out);
      return;
    }
  }
}

}  // namespace

std::vector<Factor> factor(const FpPoly& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "cannot factor 0");
  std::vector<Factor> out;
  for (const auto& [part, mult] : squarefree(f.monic())) {
    for (const auto& [block, d] : distinct_degree(part)) {
      std::vector<FpPoly> irreducibles;
      equal_degree(block, d, irreducibles);
      for (auto& g : irreducibles) out.push_back({std::move(g), mult});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Factor& a, const Factor& b) { return factor_less(a.poly, b.poly); });
  return out;
}

std::vector<Factor> factor_xk_minus_1(std::size_t k, i64 p) {
  if (!nt::is_prime(p)) throw Error(ErrorKind::ModulusNotPrime, std::to_string(p) + " is not prime");
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be positive");
  return factor(FpPoly::x_pow_minus_one(p, k));
}

std::vector<int> coset_degrees(std::size_t k, i64 p) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be positive");
  if (k > 1 && static_cast<i64>(k) % p == 0) {
    throw Error(ErrorKind::PDividesK, std::to_string(p) + " divides " + std::to_string(k));
  }
  std::vector<bool> seen(k, false);
  std::vector<int> sizes;
  const auto step = static_cast<std::size_t>(nt::mod(p, static_cast<i64>(k)));
  for (std::size_t start = 0; start < k; ++start) {
    if (seen[start]) continue;
    int size = 0;
    std::size_t j = start;
    while (!seen[j]) {
      seen[j] = true;
      ++size;
      j = (j * step) % k;
    }
    sizes.push_back(size);
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

std::vector<i64> roots(const FpPoly& f) {
  std::vector<i64> out;
  for (i64 x = 0; x < f.p(); ++x) {
    if (f.eval(x) == 0) out.push_back(x);
  }
  return out;
}

GapClosure close_zero_gap(const FpPoly& f, const std::set<i64>& forbidden) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "cannot close gaps of 0");
  if (f.coeff(0) == 0) throw Error(ErrorKind::InvalidArgument, "f(0) must be nonzero");
  const i64 p = f.p();
  std::set<i64> ratios;
  for (std::size_t j = 1; j < f.coeffs().size(); ++j) {
    if (f.coeffs()[j] != 0) {
      ratios.insert(nt::mul_mod(f.coeffs()[j - 1], nt::inverse(f.coeffs()[j], p), p));
    }
  }
  for (i64 alpha = 1; alpha < p; ++alpha) {
    if (forbidden.count(alpha) || ratios.count(alpha)) continue;
    FpPoly product = f * FpPoly::linear(p, alpha);
    if (w_function(product) != std::max(w_function(f) - 1, 0)) {
      throw Error(ErrorKind::InternalVerificationFailed, "gap closing did not reduce w");
    }
    return {alpha, std::move(product)};
  }
  throw Error(ErrorKind::NotEnoughAlphas,
              "no admissible alpha in F_" + std::to_string(p) + " for " + f.to_string());
}

}  // namespace billiards
