#pragma once

#include <nlohmann/json.hpp>

#include "mixsing/geometry.hpp"
#include "mixsing/newton.hpp"
#include "mixsing/polynomial.hpp"

namespace mixsing {

using json = nlohmann::json;

// ["p/q", "p/q"]
json to_json(const ComplexRational& c);
// Accepts a scalar (number or string) or a [re, im] pair.
ComplexRational complex_from_json(const json& j);

// {"nvars", "terms": [{"c", "mu", "nu"}]}
json to_json(const MixedPolynomial& f);
MixedPolynomial polynomial_from_json(const json& j);

// {"nvars", "components": [...]}, each component printed as a string.
json to_json(const MixedMap& F);
// Components may be source strings or term objects.
MixedMap map_from_json(const json& j);

// Rows of entries.
json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

// {"weights": [{"P", "faces"}], "bound"}
json to_json(const WeightEnumeration& e);

}  // namespace mixsing
