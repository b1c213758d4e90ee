#pragma once

#include <optional>
#include <utility>

#include "gptcompat/effects.hpp"
#include "gptcompat/lp.hpp"

namespace gptcompat {

struct CompatOptions {
    double tol = kDefaultTol;
    double gap_tol = 1e-7;  // largest accepted primal-dual objective gap
    LpOptions lp{};
};

// Four-outcome joint observable for a pair of two-outcome measurements;
// g_ab is the effect of "first measurement gives a, second gives b".
struct JointMeasurement {
    Effect g11, g12, g21, g22;
};

// Joint measurement from a candidate pooling function p: requires each of
// p, f1 - p, f2 - p and 1 - f1 - f2 + p to be an effect; throws InfeasibleP
// otherwise.  Its marginals are exactly the inputs.
JointMeasurement joint_from_p(const TwoOutcomeMeasurement& m1, const TwoOutcomeMeasurement& m2,
                              const AffineFunction& p, const Polytope& k,
                              double tol = kDefaultTol);

std::pair<TwoOutcomeMeasurement, TwoOutcomeMeasurement> marginals(const JointMeasurement& j);

struct CompatibilityResult {
    bool compatible = false;
    std::optional<AffineFunction> p;       // pooling function when compatible
    std::optional<JointMeasurement> joint; // joint measurement built from p
};

// Exact yes/no compatibility of two measurements, decided by a feasibility LP
// over pooling functions.
CompatibilityResult is_compatible(const TwoOutcomeMeasurement& m1,
                                  const TwoOutcomeMeasurement& m2, const Polytope& k,
                                  const CompatOptions& opts = {});

// Dual witness of incompatibility: the positive functional
//   l = (a1 phi_z1, a2 phi_z2, a3 phi_z3)
// with (a1 + a2) / 2 <= 1 and a3 phi_z3 <= a1 phi_z1 + a2 phi_z2.  Its
// violation  -a1 f1(z1) - a2 f2(z2) + a3 (f1(z3) + f2(z3) - 1)  is positive
// exactly on incompatible pairs, and lower-bounds the optimal mixing cost mu.
struct IncompatibilityCertificate {
    double a1 = 0.0, a2 = 0.0, a3 = 0.0;
    Point z1, z2, z3;  // ambient coordinates, points of the polytope
    double violation = 0.0;
};

// Result of the degree-of-compatibility optimization.  lambda is the largest
// mixing weight for which the coin-smeared measurements
//   lambda * m_i + (1 - lambda) * coin(t_i)
// stay compatible; mu = (1 - lambda) / lambda is the LP objective.
struct DegreeResult {
    double lambda = 1.0;
    double mu = 0.0;
    AffineFunction p;               // optimal pooling certificate (for the smeared pair)
    JointMeasurement joint;         // joint measurement at the optimal lambda
    std::optional<IncompatibilityCertificate> certificate;  // present when lambda < 1
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double coin_bias_1 = 0.5;
    double coin_bias_2 = 0.5;
};

// Degree of compatibility with symmetric coins (t1 = t2 = 1/2), computed by
// a single LP; lambda lies in [1/2, 1] for every pair of effects.
DegreeResult degree(const TwoOutcomeMeasurement& m1, const TwoOutcomeMeasurement& m2,
                    const Polytope& k, const CompatOptions& opts = {});

// Degree of compatibility when the coin biases are optimized jointly with the
// noise level; never smaller than the symmetric-coin degree.
DegreeResult degree_free_coin(const TwoOutcomeMeasurement& m1, const TwoOutcomeMeasurement& m2,
                              const Polytope& k, const CompatOptions& opts = {});

// Assemble the certificate from the dual multipliers of the degree LP (rows
// ordered as build_degree_lp lays them out).  Throws DegenerateDual if the
// multipliers do not aggregate to a certifying functional.
IncompatibilityCertificate extract_certificate(const LpSolution& sol,
                                               const TwoOutcomeMeasurement& m1,
                                               const TwoOutcomeMeasurement& m2,
                                               const Polytope& k, double tol = kDefaultTol);

// Recompute a certificate's violation from scratch, checking the structural
// conditions (nonnegative weights, points in the polytope, normalization,
// domination) independently of any LP run.  Throws InvalidCertificate on a
// structural failure; the returned violation may still be <= 0, in which
// case the certificate does not certify anything.
double verify_certificate(const IncompatibilityCertificate& cert,
                          const TwoOutcomeMeasurement& m1, const TwoOutcomeMeasurement& m2,
                          const Polytope& k, double tol = kDefaultTol);

// The LP behind degree(): variables (mu, p+ coefficients, p- coefficients),
// rows grouped family-major: for each vertex v of K, in vertex order,
//   rows [0, n)    mu/2 - p(v) >= -f1(v)
//   rows [n, 2n)   mu/2 - p(v) >= -f2(v)
//   rows [2n, 3n)  p(v) >= f1(v) + f2(v) - 1
//   rows [3n, 4n)  p(v) >= 0.
LinearProgram build_degree_lp(const TwoOutcomeMeasurement& m1, const TwoOutcomeMeasurement& m2,
                              const Polytope& k);

// Joint observable for measurements on a simplex, by the classical recipe:
// read both outcome distributions off the unique barycentric decomposition.
// Outcome labels are "<o1>,<o2>".  Throws NotASimplex otherwise.
FiniteMeasurement simplex_product_joint(const FiniteMeasurement& m1, const FiniteMeasurement& m2,
                                        const Polytope& k);

// Marginals of a product-labelled finite measurement with n1 * n2 outcomes.
std::pair<FiniteMeasurement, FiniteMeasurement> product_marginals(const FiniteMeasurement& j,
                                                                  int n1, int n2,
                                                                  const Polytope& k);

// The universal joint for half-coin smearings: the measurements
// (m_i + coin(t_i)) / 2 are compatible on every state space, with joint
// (coin(t1) x m2 + m1 x coin(t2)) / 2.
JointMeasurement half_coin_joint(const TwoOutcomeMeasurement& m1,
                                 const TwoOutcomeMeasurement& m2, double t1, double t2,
                                 const Polytope& k);

struct WitnessSearchResult {
    TwoOutcomeMeasurement m1, m2;
    DegreeResult degree;
    int facet_index = -1;   // m1 vanishes on this facet
    int vertex_index = -1;  // m2 exposes this vertex
};

// Constructive incompatibility on a non-simplex state space: scan pairs
// (facet effect, vertex-exposing effect) and return the pair of smallest
// degree.  Throws SimplexInput on simplices (where everything is compatible)
// and SearchExhausted if no scanned pair is incompatible.
WitnessSearchResult construct_incompatible_pair(const Polytope& k,
                                                const CompatOptions& opts = {});

}  // namespace gptcompat
