#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "gptcompat/geometry.hpp"

namespace gptcompat {

// Affine real-valued function on the affine hull of a polytope, stored in
// chart coordinates: f(xi) = linear . xi + offset.
struct AffineFunction {
    Eigen::VectorXd linear;
    double offset = 0.0;

    int dim() const { return static_cast<int>(linear.size()); }
    double at_chart(const Eigen::VectorXd& xi) const { return linear.dot(xi) + offset; }

    static AffineFunction constant(int dim, double value) {
        return {Eigen::VectorXd::Zero(dim), value};
    }
};

AffineFunction operator+(const AffineFunction& a, const AffineFunction& b);
AffineFunction operator-(const AffineFunction& a, const AffineFunction& b);
AffineFunction operator*(double s, const AffineFunction& a);
AffineFunction operator+(const AffineFunction& a, double s);
AffineFunction operator-(double s, const AffineFunction& a);

// Value of f at an ambient point (projected to the chart first).
double evaluate(const AffineFunction& f, const Polytope& k, const Point& x);

// Values of f at all vertices, in vertex order.
Eigen::VectorXd vertex_values(const AffineFunction& f, const Polytope& k);

// Extremes of f over the polytope; affine functions attain them at vertices.
std::pair<double, double> range_on(const AffineFunction& f, const Polytope& k);

bool is_positive(const AffineFunction& f, const Polytope& k, double tol = kDefaultTol);
bool is_effect(const AffineFunction& f, const Polytope& k, double tol = kDefaultTol);

// Effect: affine function with values in [0, 1] on the polytope.  Construct
// through make_effect, which enforces the range; operations in this library
// that are closed on effects (convex mixtures, complements) build instances
// directly.
struct Effect {
    AffineFunction f;
};

Effect make_effect(const AffineFunction& f, const Polytope& k, double tol = kDefaultTol);

// Least-squares affine fit to prescribed vertex values; throws
// InconsistentVertexValues when no affine function matches within fit_tol.
AffineFunction affine_from_vertex_values(const Polytope& k, const Eigen::VectorXd& values,
                                         double fit_tol = 1e-7);

// Effect that is 0 exactly on the given facet and reaches 1 somewhere on the
// polytope (normalized facet inequality).
Effect effect_vanishing_on_facet(const Polytope& k, const Facet& facet,
                                 double tol = kDefaultTol);

// Effect that vanishes exactly at vertex v and is positive on the rest of
// the polytope: the normalized sum of the facet inequalities active at v.
Effect effect_exposing_vertex(const Polytope& k, int v, double tol = kDefaultTol);

// Two-outcome measurement, determined by its first-outcome effect.
struct TwoOutcomeMeasurement {
    Effect first;
};

Effect second_effect(const TwoOutcomeMeasurement& m, const Polytope& k);

// Trivial measurement: first outcome fires with probability t everywhere.
TwoOutcomeMeasurement coin_toss(const Polytope& k, double t);

// lambda * m + (1 - lambda) * coin(t); closed on measurements, no polytope
// needed.
TwoOutcomeMeasurement mix_with_coin(const TwoOutcomeMeasurement& m, double lambda, double t);

// Measurement with finitely many labelled outcomes.
struct FiniteMeasurement {
    std::vector<std::string> outcomes;
    std::vector<Effect> effects;
};

FiniteMeasurement make_finite_measurement(std::vector<std::string> outcomes,
                                          std::vector<Effect> effects, const Polytope& k,
                                          double tol = kDefaultTol);

FiniteMeasurement to_finite(const TwoOutcomeMeasurement& m, const Polytope& k);

// Signed combination of point evaluations sum_i w_i f(x_i); with nonnegative
// weights these are exactly the positive functionals generated by states.
struct WeightedPoint {
    Point point;
    double weight = 0.0;
};

double apply_functional(const std::vector<WeightedPoint>& terms, const AffineFunction& f,
                        const Polytope& k);

// Does the signed combination act nonnegatively on every positive affine
// function?  Since psi(f) = c * f(z) for affine f, where c is the total
// weight and z the weighted barycenter, this reduces to a membership test:
// true iff (c > 0 and z in K) or (c = 0 and the linear part vanishes).
bool functional_is_positive(const std::vector<WeightedPoint>& terms, const Polytope& k,
                            double tol = kDefaultTol);

}  // namespace gptcompat
