#pragma once

#include <nlohmann/json.hpp>

#include "apnls/core/basis.hpp"
#include "apnls/core/series.hpp"

namespace apnls::io {

using nlohmann::json;

// Term literal: [n_1, ..., n_G, re, im].
json series_to_json(const APSeries& f);
APSeries series_from_json(const BasisPtr& basis, const json& terms);

// Number, or a named constant (sqrt2, sqrt3, sqrt5, golden, pi, e).
double generator_from_json(const json& value);

// {"generators": [...], "independent": bool, "independence_tol": x}.
// A bare array is accepted as the generator list.
BasisPtr basis_from_json(const json& spec);

// Number or [re, im].
Complex complex_from_json(const json& value, const std::string& what);
json complex_to_json(Complex c);

// Rejects keys of `object` that are not in `allowed` (ConfigError naming
// the offending key and the section).
void require_known_keys(const json& object, std::initializer_list<const char*> allowed,
                        const std::string& section);

}  // namespace apnls::io
