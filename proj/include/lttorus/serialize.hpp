#pragma once

// JSON views of the report types. Objects keep insertion order so that
// identical inputs always dump to identical text.

#include <json.hpp>

#include "lttorus/attractor.hpp"
#include "lttorus/families.hpp"
#include "lttorus/interp.hpp"
#include "lttorus/report.hpp"
#include "lttorus/torus.hpp"

namespace lttorus {

using Json = nlohmann::ordered_json;

// Non-finite values become the strings "inf", "-inf", "nan".
Json number(double x);

Json to_json(const BoundReport& report);
Json to_json(const torus::TorusReport& report);
Json to_json(const torus::BetaSelection& selection);
Json to_json(const interp::ConstantResult& result);
Json to_json(const interp::CurveTable& table);
Json to_json(const attractor::FlowParams& params);

// Coefficients are stored as [re, im] pairs, members[n][k + band][j].
Json to_json(const families::OrthonormalFamily& family);
families::OrthonormalFamily family_from_json(const Json& j);

}  // namespace lttorus
