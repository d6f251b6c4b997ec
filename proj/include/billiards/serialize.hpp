#pragma once

#include <json.hpp>

#include "billiards/construct.hpp"
#include "billiards/exactla.hpp"
#include "billiards/monodromy.hpp"
#include "billiards/oracle.hpp"
#include "billiards/polyfp.hpp"
#include "billiards/polygon.hpp"

namespace billiards::json {

using nlohmann::json;

/// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
json big(const mpz_class& v);
mpz_class big_from(const json& j);

/// {"n": 5, "entries": [2, 2, 2, 4]}
json tuple(const PolygonTuple& t);
PolygonTuple tuple_from(const json& j, Level level = Level::algebraic);

/// Array of rows.
json matrix(const IntMatrix& m);
IntMatrix matrix_from(const json& j);

/// {"n": 5, "k": 4, "deltas": [5, 5, 5], "order": 500}
json descriptor(const GroupDescriptor& g);
GroupDescriptor descriptor_from(const json& j);

json snf(const IntMatrix& a, const SnfResult& r);
json factorization(std::size_t k, std::int64_t p, const std::vector<Factor>& fs);
json structure(const oracle::StructureReport& r);
json classification(const ClassificationReport& r);
json composite(const CompositeDecision& d);

}  // namespace billiards::json
