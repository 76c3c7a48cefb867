#pragma once

// JSON description of an orbifold model and an optional quaternion class.
//
//   {"schema": 1, "ambient_dim": 3, "variables": ["x","y","z","t"],
//    "equations": ["9*x^2 - 3*y^2 - t^2 + 16*z^2"],
//    "divisor": [{"form": "t", "weight": 4}],          weight may be "inf"
//    "excluded_places": [],
//    "brauer": {"d": 3, "representatives": [{"num": "t - 4*z", "den": "t"}]}}
//
// A form is either an expression string or a coefficient map {"2,0,0,0": 9, ...} keyed by
// comma-separated exponent vectors. Coefficients may be JSON integers or decimal strings.

#include <optional>
#include <string>

#include <json.hpp>

#include "orbarith/brauer.hpp"

namespace orbarith {

struct ModelFile {
    OrbifoldModelZ model;
    std::optional<QuaternionClass> cls;
};

Poly poly_from_json(const nlohmann::json& j, const std::vector<std::string>& names);
nlohmann::json poly_to_json(const Poly& f);

/// Throws ParseError on malformed input and InvalidModel when the model fails validation.
ModelFile model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const ModelFile& m);

ModelFile load_model(const std::string& path);

}  // namespace orbarith
