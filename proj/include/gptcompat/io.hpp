#pragma once

#include <json.hpp>
#include <string>

#include "gptcompat/compat.hpp"
#include "gptcompat/effects.hpp"
#include "gptcompat/geometry.hpp"

namespace gptcompat {

using json = nlohmann::json;

// Parse a file into JSON; throws FileNotFound / ParseError.
json load_json_file(const std::string& path);

// Polytope JSON: {"vertices": [[x, y, ...], ...]}.
Polytope polytope_from_json(const json& j, double tol = kDefaultTol);
Polytope load_polytope(const std::string& path, double tol = kDefaultTol);
json polytope_to_json(const Polytope& k);

// Affine-function JSON uses ambient coordinates, either
//   {"linear": [...], "offset": b}     f(x) = linear . x + offset
// or
//   {"vertex_values": [...]}           least-squares affine fit.
// Serialization emits the ambient form with the linear part projected onto
// the polytope's affine hull (the component orthogonal to it never affects
// values on the polytope).
AffineFunction affine_from_json(const json& j, const Polytope& k);
json affine_to_json(const AffineFunction& f, const Polytope& k);

Effect effect_from_json(const json& j, const Polytope& k, double tol = kDefaultTol);

// Measurement JSON: {"effect": <affine>} for two outcomes, or
// {"outcomes": [...], "effects": [<affine>, ...]} for finitely many.
TwoOutcomeMeasurement measurement_from_json(const json& j, const Polytope& k,
                                            double tol = kDefaultTol);
TwoOutcomeMeasurement load_measurement(const std::string& path, const Polytope& k,
                                       double tol = kDefaultTol);
FiniteMeasurement finite_measurement_from_json(const json& j, const Polytope& k,
                                               double tol = kDefaultTol);
json finite_measurement_to_json(const FiniteMeasurement& m, const Polytope& k);

json certificate_to_json(const IncompatibilityCertificate& c);
json joint_to_json(const JointMeasurement& j, const Polytope& k);
json degree_result_to_json(const DegreeResult& r, const Polytope& k);
json compatibility_result_to_json(const CompatibilityResult& r, const Polytope& k);

}  // namespace gptcompat
