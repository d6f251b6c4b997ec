#include "billiards/serialize.hpp"

namespace billiards::json {

json big(const mpz_class& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return v.get_si();
  if (v > 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64) {
    return std::stoull(v.get_str());
  }
  return v.get_str();
}

mpz_class big_from(const json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>());
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
  throw Error(ErrorKind::InvalidArgument, "expected an integer, got " + j.dump());
}

json tuple(const PolygonTuple& t) { return {{"n", t.modulus()}, {"entries", t.entries()}}; }

PolygonTuple tuple_from(const json& j, Level level) {
  return validate(j.at("entries").get<std::vector<std::int64_t>>(), j.at("n").get<std::int64_t>(), level);
}

json matrix(const IntMatrix& m) {
  json rows = json::array();
  for (const auto& row : m.to_rows()) {
    json r = json::array();
    for (const auto& v : row) r.push_back(big(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

IntMatrix matrix_from(const json& j) {
  std::vector<std::vector<mpz_class>> rows;
  for (const auto& row : j) {
    std::vector<mpz_class> r;
    for (const auto& v : row) r.push_back(big_from(v));
    rows.push_back(std::move(r));
  }
  return IntMatrix::from_rows(rows);
}

json descriptor(const GroupDescriptor& g) {
  return {{"n", g.n}, {"k", g.k}, {"deltas", g.deltas}, {"order", big(g.order)}};
}

GroupDescriptor descriptor_from(const json& j) {
  GroupDescriptor g = make_descriptor(j.at("n").get<std::int64_t>(), j.at("k").get<std::int64_t>(),
                                      j.at("deltas").get<std::vector<std::int64_t>>());
  if (g.order != big_from(j.at("order"))) {
    throw Error(ErrorKind::InvalidArgument, "order does not equal k * prod(deltas)");
  }
  return g;
}

json snf(const IntMatrix& a, const SnfResult& r) {
  json divisors = json::array();
  for (const auto& d : r.divisors) divisors.push_back(big(d));
  return {{"matrix", matrix(a)}, {"U", matrix(r.U)}, {"D", matrix(r.D)}, {"V", matrix(r.V)},
          {"divisors", divisors}};
}

json factorization(std::size_t k, std::int64_t p, const std::vector<Factor>& fs) {
  json factors = json::array();
  for (const auto& f : fs) {
    factors.push_back({{"coeffs", f.poly.coeffs()}, {"multiplicity", f.multiplicity}, {"text", f.poly.to_string()}});
  }
  return {{"k", k}, {"p", p}, {"factors", factors}};
}

json structure(const oracle::StructureReport& r) {
  json clauses = json::array();
  for (const auto& c : r.clauses) {
    json entry = {{"name", c.name}, {"passed", c.passed}};
    if (!c.passed) entry["detail"] = c.detail;
    clauses.push_back(std::move(entry));
  }
  return {{"clauses", clauses},
          {"group_order", r.group_order},
          {"normal_order", r.normal_order},
          {"action_trivial", r.action_trivial},
          {"passed", r.all_passed()}};
}

json classification(const ClassificationReport& r) {
  json achievable = json::array();
  for (std::size_t i = 0; i < r.achievable.size(); ++i) {
    achievable.push_back({{"descriptor", descriptor(r.achievable[i])}, {"witness", tuple(r.witnesses[i])}});
  }
  json excluded = json::array();
  for (const auto& e : r.excluded) excluded.push_back({{"descriptor", descriptor(e.descriptor)}, {"rule", e.rule}});
  return {{"k", r.k}, {"n", r.n}, {"achievable", achievable}, {"excluded", excluded}};
}

json composite(const CompositeDecision& d) {
  json out = {{"target", descriptor(d.target)}, {"feasible", d.feasible}};
  if (d.witness) out["witness"] = tuple(*d.witness);
  if (!d.feasible) out["reason"] = d.reason;
  return out;
}

}  // namespace billiards::json
