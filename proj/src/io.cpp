#include "gptcompat/io.hpp"

#include <fstream>

namespace gptcompat {

namespace {

Eigen::VectorXd vector_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) fail(Errc::ParseError, what + " must be an array of numbers");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) fail(Errc::ParseError, what + " must contain only numbers");
        v(static_cast<int>(i)) = j[i].get<double>();
    }
    return v;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

}  // namespace

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::FileNotFound, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(Errc::ParseError, "in '" + path + "': " + e.what());
    }
}

Polytope polytope_from_json(const json& j, double tol) {
    if (!j.is_object() || !j.contains("vertices"))
        fail(Errc::ParseError, "polytope JSON needs a 'vertices' key");
    const json& verts = j["vertices"];
    if (!verts.is_array() || verts.empty())
        fail(Errc::ParseError, "'vertices' must be a non-empty array");
    std::vector<Point> pts;
    for (std::size_t i = 0; i < verts.size(); ++i)
        pts.push_back(vector_from_json(verts[i], "vertex " + std::to_string(i)));
    return Polytope::build(pts, tol);
}

Polytope load_polytope(const std::string& path, double tol) {
    return polytope_from_json(load_json_file(path), tol);
}

json polytope_to_json(const Polytope& k) {
    json verts = json::array();
    for (const auto& v : k.vertices()) verts.push_back(vector_to_json(v));
    return json{{"vertices", verts}};
}

AffineFunction affine_from_json(const json& j, const Polytope& k) {
    if (!j.is_object())
        fail(Errc::ParseError, "affine function JSON must be an object");
    if (j.contains("vertex_values"))
        return affine_from_vertex_values(k, vector_from_json(j["vertex_values"],
                                                             "'vertex_values'"));
    if (!j.contains("linear") || !j.contains("offset"))
        fail(Errc::ParseError,
             "affine function JSON needs 'linear' and 'offset', or 'vertex_values'");
    const Eigen::VectorXd lin = vector_from_json(j["linear"], "'linear'");
    if (lin.size() != k.ambient_dim())
        fail(Errc::DimensionMismatch, "'linear' has " + std::to_string(lin.size()) +
                                          " entries, ambient dimension is " +
                                          std::to_string(k.ambient_dim()));
    if (!j["offset"].is_number()) fail(Errc::ParseError, "'offset' must be a number");
    const double off = j["offset"].get<double>();
    // Ambient f(x) = lin . x + off restricted to the chart x = origin + B xi.
    return {k.chart_basis().transpose() * lin, off + lin.dot(k.chart_origin())};
}

json affine_to_json(const AffineFunction& f, const Polytope& k) {
    if (f.dim() != k.intrinsic_dim())
        fail(Errc::DimensionMismatch, "affine function does not live on this polytope's chart");
    const Eigen::VectorXd lin = k.chart_basis() * f.linear;
    const double off = f.offset - lin.dot(k.chart_origin());
    return json{{"linear", vector_to_json(lin)}, {"offset", off}};
}

Effect effect_from_json(const json& j, const Polytope& k, double tol) {
    return make_effect(affine_from_json(j, k), k, tol);
}

TwoOutcomeMeasurement measurement_from_json(const json& j, const Polytope& k, double tol) {
    if (!j.is_object() || !j.contains("effect"))
        fail(Errc::ParseError, "two-outcome measurement JSON needs an 'effect' key");
    return {effect_from_json(j["effect"], k, tol)};
}

TwoOutcomeMeasurement load_measurement(const std::string& path, const Polytope& k, double tol) {
    return measurement_from_json(load_json_file(path), k, tol);
}

FiniteMeasurement finite_measurement_from_json(const json& j, const Polytope& k, double tol) {
    if (!j.is_object() || !j.contains("outcomes") || !j.contains("effects"))
        fail(Errc::ParseError, "finite measurement JSON needs 'outcomes' and 'effects'");
    const json& outs = j["outcomes"];
    const json& effs = j["effects"];
    if (!outs.is_array() || !effs.is_array())
        fail(Errc::ParseError, "'outcomes' and 'effects' must be arrays");
    std::vector<std::string> labels;
    for (const auto& o : outs) {
        if (o.is_string())
            labels.push_back(o.get<std::string>());
        else
            labels.push_back(o.dump());
    }
    std::vector<Effect> effects;
    for (const auto& e : effs) effects.push_back(effect_from_json(e, k, tol));
    return make_finite_measurement(std::move(labels), std::move(effects), k, tol);
}

json finite_measurement_to_json(const FiniteMeasurement& m, const Polytope& k) {
    json outs = json::array();
    for (const auto& o : m.outcomes) outs.push_back(o);
    json effs = json::array();
    for (const auto& e : m.effects) effs.push_back(affine_to_json(e.f, k));
    return json{{"outcomes", outs}, {"effects", effs}};
}

json certificate_to_json(const IncompatibilityCertificate& c) {
    return json{{"a", {c.a1, c.a2, c.a3}},
                {"z", {vector_to_json(c.z1), vector_to_json(c.z2), vector_to_json(c.z3)}},
                {"violation", c.violation}};
}

json joint_to_json(const JointMeasurement& j, const Polytope& k) {
    return json{{"g11", affine_to_json(j.g11.f, k)},
                {"g12", affine_to_json(j.g12.f, k)},
                {"g21", affine_to_json(j.g21.f, k)},
                {"g22", affine_to_json(j.g22.f, k)}};
}

json degree_result_to_json(const DegreeResult& r, const Polytope& k) {
    json out{{"lambda", r.lambda},
             {"mu", r.mu},
             {"p", affine_to_json(r.p, k)},
             {"coin_biases", {r.coin_bias_1, r.coin_bias_2}}};
    out["certificate"] = r.certificate ? certificate_to_json(*r.certificate) : json(nullptr);
    return out;
}

json compatibility_result_to_json(const CompatibilityResult& r, const Polytope& k) {
    json out{{"compatible", r.compatible}};
    out["p"] = r.p ? affine_to_json(*r.p, k) : json(nullptr);
    out["joint"] = r.joint ? joint_to_json(*r.joint, k) : json(nullptr);
    return out;
}

}  // namespace gptcompat
