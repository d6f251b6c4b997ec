#include "billiards/monodromy.hpp"

#include <algorithm>
#include <sstream>

#include "billiards/exactla.hpp"
#include "billiards/numtheory.hpp"

namespace billiards {

using nt::i64;

std::string GroupDescriptor::pretty() const {
  std::ostringstream os;
  const bool direct = trivial_action.value_or(false);
  auto factors = deltas;
  if (factors.empty()) factors.push_back(1);
  if (factors.size() > 1 && !direct) os << '(';
  for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? " x " : "") << 'C' << factors[i];
  if (factors.size() > 1 && !direct) os << ')';
  os << (direct ? " x " : " : ") << 'C' << k;
  return os.str();
}

GroupDescriptor make_descriptor(i64 n, i64 k, std::vector<i64> deltas) {
  std::erase(deltas, 1);
  std::sort(deltas.begin(), deltas.end(), std::greater<>());
  GroupDescriptor g;
  g.n = n;
  g.k = k;
  g.order = static_cast<long>(k);
  for (i64 d : deltas) g.order *= static_cast<long>(d);
  g.deltas = std::move(deltas);
  return g;
}

GroupDescriptor group_of(const PolygonTuple& t) {
  const i64 n = t.modulus();
  SnfResult snf = smith_normal_form(circulant(t.residues()));
  std::vector<i64> deltas;
  for (const mpz_class& d : snf.divisors) {
    mpz_class g = gcd(d, mpz_class(static_cast<long>(n)));
    deltas.push_back(n / g.get_si());
  }
  GroupDescriptor out = make_descriptor(n, static_cast<i64>(t.k()), std::move(deltas));
  // sigma0 shifts the columns cyclically, so it fixes N exactly when all columns agree.
  const auto r = t.residues();
  out.trivial_action = std::all_of(r.begin(), r.end(), [&](i64 v) { return v == r[0]; });
  return out;
}

GroupDescriptor certify(const PolygonTuple& t, const oracle::Caps& caps) {
  GroupDescriptor g = group_of(t);
  const auto report = oracle::check_structure(t, caps);
  if (const auto* bad = report.failed()) {
    throw Error(ErrorKind::InternalVerificationFailed,
                t.to_string() + ": " + bad->name + " (" + bad->detail + ")");
  }
  const auto span = oracle::span_invariants(t, caps.span);
  if (span.factors != g.deltas || mpz_class(static_cast<unsigned long>(report.group_order)) != g.order) {
    throw Error(ErrorKind::InternalVerificationFailed, t.to_string() + ": oracle disagrees with SNF");
  }
  g.trivial_action = report.action_trivial;
  return g;
}

GroupDescriptor triangle_closed_form(i64 a0, i64 a1, i64 a2, i64 n) {
  const std::vector<i64> v{a0, a1, a2};
  const PolygonTuple t = algebraic(v, n);
  const auto r = t.residues();
  const i64 m = nt::mod(nt::mul_mod(r[0], r[2], n) - nt::mul_mod(r[1], r[1], n), n);
  const i64 alpha = nt::gcd(n, m);
  return make_descriptor(n, 3, {n, n / alpha});
}

GroupDescriptor quadrilateral_closed_form(i64 a0, i64 a1, i64 a2, i64 a3, i64 n) {
  const std::vector<i64> v{a0, a1, a2, a3};
  const PolygonTuple t = algebraic(v, n);
  const auto r = t.residues();
  const mpz_class b0 = static_cast<long>(r[0]);
  const mpz_class b1 = static_cast<long>(r[1]);
  const mpz_class b2 = static_cast<long>(r[2]);
  const mpz_class b3 = -b0 - b1 - b2;
  const mpz_class minors[] = {b0 * b2 - b3 * b3, b0 * b1 - b2 * b3, b0 * b0 - b2 * b2,
                              b1 * b3 - b2 * b2, b0 * b3 - b1 * b2, b0 * b2 - b1 * b1};
  mpz_class g2 = 0;
  for (const auto& m : minors) g2 = gcd(g2, m);
  const mpz_class det = -(b0 + b2) * ((b0 + b1) * (b0 + b1) + (b1 + b2) * (b1 + b2));
  const mpz_class nz = static_cast<long>(n);
  const i64 d2 = mpz_class(gcd(g2, nz)).get_si();
  i64 d3 = n;
  if (g2 != 0) {
    mpz_class g3 = det / g2;
    if (g3 * g2 != det) throw Error(ErrorKind::InternalVerificationFailed, "minor gcd does not divide det");
    d3 = mpz_class(gcd(g3, nz)).get_si();
  }
  return make_descriptor(n, 4, {n, n / d2, n / d3});
}

PolygonTuple regular_kgon_tuple(i64 k) {
  if (k < 3) throw Error(ErrorKind::KTooSmall, "a polygon needs k >= 3");
  const i64 n = k % 2 ? k : k / 2;
  const i64 a = k % 2 ? k - 2 : (k - 2) / 2;
  return geometric(std::vector<i64>(static_cast<std::size_t>(k), a), n);
}

GroupDescriptor regular_kgon(i64 k) {
  const PolygonTuple t = regular_kgon_tuple(k);
  GroupDescriptor g = certify(t);
  const i64 expected = k / nt::gcd(k, 2);
  if (g.deltas != std::vector<i64>{expected} || !g.trivial_action.value_or(false)) {
    throw Error(ErrorKind::InternalVerificationFailed, "regular " + std::to_string(k) + "-gon gave " + g.pretty());
  }
  return g;
}

}  // namespace billiards
