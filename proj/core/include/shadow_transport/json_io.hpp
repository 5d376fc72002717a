#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "shadow_transport/coupling.hpp"
#include "shadow_transport/coupling_types.hpp"
#include "shadow_transport/decomposition.hpp"
#include "shadow_transport/measure.hpp"
#include "shadow_transport/piecewise_linear.hpp"
#include "shadow_transport/shadow.hpp"

namespace shadow_transport::json {

using json = nlohmann::ordered_json;

// Integral values are written as integers, infinities as "inf"/"-inf", and
// everything else as the shortest representation that round-trips.
json number(double v);

/// Accepts a JSON number or one of the strings "inf", "-inf". Throws ParseError.
double parse_number(const json& j);

json to_json(const DiscreteMeasure& m);
json to_json(const PiecewiseLinear& f);
json to_json(const DiscreteCoupling& pi);
json to_json(const ShadowResult& s);
json to_json(const LiftedCoupling& lc);
json to_json(const CCurve& c);
json to_json(const Decomposition& d);

/// Parses {"atoms": [{"x": .., "w": ..}, ...]}. Throws ParseError plus the
/// measure construction errors.
DiscreteMeasure parse_measure(const json& j);
PiecewiseLinear parse_pwl(const json& j);

/// Reads and parses a file. Throws std::filesystem::filesystem_error when the
/// file cannot be opened, ParseError for malformed content.
json read_file(const std::filesystem::path& path);
DiscreteMeasure read_measure(const std::filesystem::path& path);

}  // namespace shadow_transport::json
