#include "gptcompat/effects.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gptcompat {

namespace {

void check_same_dim(const AffineFunction& a, const AffineFunction& b) {
    if (a.dim() != b.dim())
        fail(Errc::DimensionMismatch, "affine functions live on charts of dimension " +
                                          std::to_string(a.dim()) + " and " +
                                          std::to_string(b.dim()));
}

void check_chart_dim(const AffineFunction& f, const Polytope& k) {
    if (f.dim() != k.intrinsic_dim())
        fail(Errc::DimensionMismatch, "affine function has chart dimension " +
                                          std::to_string(f.dim()) + ", polytope has " +
                                          std::to_string(k.intrinsic_dim()));
}

}  // namespace

AffineFunction operator+(const AffineFunction& a, const AffineFunction& b) {
    check_same_dim(a, b);
    return {a.linear + b.linear, a.offset + b.offset};
}

AffineFunction operator-(const AffineFunction& a, const AffineFunction& b) {
    check_same_dim(a, b);
    return {a.linear - b.linear, a.offset - b.offset};
}

AffineFunction operator*(double s, const AffineFunction& a) {
    return {s * a.linear, s * a.offset};
}

AffineFunction operator+(const AffineFunction& a, double s) {
    return {a.linear, a.offset + s};
}

AffineFunction operator-(double s, const AffineFunction& a) {
    return {-a.linear, s - a.offset};
}

double evaluate(const AffineFunction& f, const Polytope& k, const Point& x) {
    check_chart_dim(f, k);
    return f.at_chart(k.to_chart(x));
}

Eigen::VectorXd vertex_values(const AffineFunction& f, const Polytope& k) {
    check_chart_dim(f, k);
    return (k.vertex_chart() * f.linear).array() + f.offset;
}

std::pair<double, double> range_on(const AffineFunction& f, const Polytope& k) {
    const Eigen::VectorXd vals = vertex_values(f, k);
    return {vals.minCoeff(), vals.maxCoeff()};
}

bool is_positive(const AffineFunction& f, const Polytope& k, double tol) {
    return range_on(f, k).first >= -tol;
}

bool is_effect(const AffineFunction& f, const Polytope& k, double tol) {
    const auto [mn, mx] = range_on(f, k);
    return mn >= -tol && mx <= 1.0 + tol;
}

Effect make_effect(const AffineFunction& f, const Polytope& k, double tol) {
    const auto [mn, mx] = range_on(f, k);
    if (mn < -tol || mx > 1.0 + tol)
        fail(Errc::EffectInvalid, "values on the polytope range over [" + std::to_string(mn) +
                                      ", " + std::to_string(mx) + "], outside [0, 1]");
    return {f};
}

AffineFunction affine_from_vertex_values(const Polytope& k, const Eigen::VectorXd& values,
                                         double fit_tol) {
    const int nv = k.vertex_count();
    if (values.size() != nv)
        fail(Errc::DimensionMismatch, "got " + std::to_string(values.size()) +
                                          " vertex values for " + std::to_string(nv) +
                                          " vertices");
    const int d = k.intrinsic_dim();
    Eigen::MatrixXd design(nv, d + 1);
    design.leftCols(d) = k.vertex_chart();
    design.col(d).setOnes();
    Eigen::VectorXd beta = design.colPivHouseholderQr().solve(values);
    const double residual = (design * beta - values).cwiseAbs().maxCoeff();
    if (residual > fit_tol)
        fail(Errc::InconsistentVertexValues,
             "no affine function matches the vertex values; best fit is off by " +
                 std::to_string(residual));
    return {beta.head(d), beta(d)};
}

Effect effect_vanishing_on_facet(const Polytope& k, const Facet& facet, double tol) {
    if (facet.normal.size() != k.intrinsic_dim())
        fail(Errc::DimensionMismatch, "facet does not belong to this polytope's chart");
    AffineFunction g{facet.normal, -facet.offset};
    const double mx = range_on(g, k).second;
    if (mx <= tol)
        fail(Errc::DegenerateFacet, "facet inequality is numerically tight everywhere");
    return {(1.0 / mx) * g};
}

Effect effect_exposing_vertex(const Polytope& k, int v, double tol) {
    const auto [at_v, off_v] = k.facets_at_vertex(v);
    if (at_v.empty())
        fail(Errc::CannotExpose, "vertex " + std::to_string(v) + " lies on no facet");
    (void)off_v;
    AffineFunction g = AffineFunction::constant(k.intrinsic_dim(), 0.0);
    for (int fi : at_v) {
        const Facet& f = k.facets()[fi];
        g = g + AffineFunction{f.normal, -f.offset};
    }
    const double mx = range_on(g, k).second;
    if (mx <= tol)
        fail(Errc::CannotExpose, "active facet inequalities sum to a vanishing function");
    return {(1.0 / mx) * g};
}

Effect second_effect(const TwoOutcomeMeasurement& m, const Polytope& k) {
    (void)k;
    return {1.0 - m.first.f};
}

TwoOutcomeMeasurement coin_toss(const Polytope& k, double t) {
    if (!(t >= 0.0 && t <= 1.0))
        fail(Errc::BiasOutOfRange, "coin bias " + std::to_string(t) + " not in [0, 1]");
    return {Effect{AffineFunction::constant(k.intrinsic_dim(), t)}};
}

TwoOutcomeMeasurement mix_with_coin(const TwoOutcomeMeasurement& m, double lambda, double t) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        fail(Errc::ParameterOutOfRange,
             "mixing weight " + std::to_string(lambda) + " not in [0, 1]");
    if (!(t >= 0.0 && t <= 1.0))
        fail(Errc::BiasOutOfRange, "coin bias " + std::to_string(t) + " not in [0, 1]");
    // Convex mixture of effects is an effect; no revalidation needed.
    return {Effect{lambda * m.first.f + (1.0 - lambda) * t}};
}

FiniteMeasurement make_finite_measurement(std::vector<std::string> outcomes,
                                          std::vector<Effect> effects, const Polytope& k,
                                          double tol) {
    if (outcomes.empty() || outcomes.size() != effects.size())
        fail(Errc::ParameterOutOfRange, "need one outcome label per effect, got " +
                                            std::to_string(outcomes.size()) + " labels and " +
                                            std::to_string(effects.size()) + " effects");
    AffineFunction sum = AffineFunction::constant(k.intrinsic_dim(), 0.0);
    for (const auto& e : effects) {
        if (!is_effect(e.f, k, tol))
            fail(Errc::EffectInvalid, "outcome effect leaves [0, 1] on the polytope");
        sum = sum + e.f;
    }
    const auto [mn, mx] = range_on(sum, k);
    if (mn < 1.0 - tol || mx > 1.0 + tol)
        fail(Errc::EffectInvalid, "outcome effects sum to [" + std::to_string(mn) + ", " +
                                      std::to_string(mx) + "] instead of 1");
    return {std::move(outcomes), std::move(effects)};
}

FiniteMeasurement to_finite(const TwoOutcomeMeasurement& m, const Polytope& k) {
    return {{"1", "2"}, {m.first, second_effect(m, k)}};
}

double apply_functional(const std::vector<WeightedPoint>& terms, const AffineFunction& f,
                        const Polytope& k) {
    double sum = 0.0;
    for (const auto& t : terms) sum += t.weight * evaluate(f, k, t.point);
    return sum;
}

bool functional_is_positive(const std::vector<WeightedPoint>& terms, const Polytope& k,
                            double tol) {
    double total = 0.0;
    Eigen::VectorXd moment = Eigen::VectorXd::Zero(k.intrinsic_dim());
    for (const auto& t : terms) {
        if (!k.contains(t.point, std::max(tol, k.tol())))
            fail(Errc::OutsidePolytope, "functional references a point outside the polytope");
        total += t.weight;
        moment += t.weight * k.to_chart(t.point);
    }
    if (total > tol) return k.contains(k.from_chart(moment / total), tol);
    if (total < -tol) return false;
    return moment.norm() <= tol;  // zero mass: positive iff the functional vanishes
}

}  // namespace gptcompat
