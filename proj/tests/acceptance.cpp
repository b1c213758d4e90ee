// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria.  Criteria share a registry of every polytope, degree run,
// certificate and pooling instance produced along the way; the audit criteria
// (duality gaps, certificate soundness, reconstruction identities, boundary
// faces) then sweep that registry.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "gptcompat/compat.hpp"
#include "gptcompat/shapes.hpp"
#include "oracles.hpp"

using namespace gptcompat;

namespace {

struct IncompatInstance {
    Polytope k;
    TwoOutcomeMeasurement m1, m2;
    IncompatibilityCertificate cert;
};

struct PoolingInstance {
    Polytope k;
    TwoOutcomeMeasurement m1, m2;
    AffineFunction p;
};

struct Registry {
    std::vector<Polytope> polytopes;       // audited by criterion 10
    std::vector<double> gaps;              // |primal - dual|, criterion 6
    std::vector<IncompatInstance> incompatible;  // criterion 7 soundness
    std::vector<double> compatible_duals;        // criterion 7 completeness
    std::vector<PoolingInstance> feasible;       // criterion 8 round trips

    const Polytope& add(Polytope k) {
        polytopes.push_back(std::move(k));
        return polytopes.back();
    }

    void record(const Polytope& k, const TwoOutcomeMeasurement& m1,
                const TwoOutcomeMeasurement& m2, const DegreeResult& res) {
        gaps.push_back(std::abs(res.primal_objective - res.dual_objective));
        if (res.certificate)
            incompatible.push_back({k, m1, m2, *res.certificate});
        else
            compatible_duals.push_back(res.dual_objective);
    }
};

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
};

double max_abs(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

double marginal_residual(const TwoOutcomeMeasurement& got, const TwoOutcomeMeasurement& want,
                         const Polytope& k) {
    return max_abs(vertex_values(got.first.f, k) - vertex_values(want.first.f, k));
}

bool joint_is_valid(const JointMeasurement& j, const Polytope& k, double tol) {
    AffineFunction sum = AffineFunction::constant(k.intrinsic_dim(), 0.0);
    for (const Effect* e : {&j.g11, &j.g12, &j.g21, &j.g22}) {
        const auto [mn, mx] = range_on(e->f, k);
        if (mn < -tol || mx > 1.0 + tol) return false;
        sum = sum + e->f;
    }
    return max_abs(sum.linear) <= tol && std::abs(sum.offset - 1.0) <= tol;
}

// ---- criterion 1: every pair on a simplex is compatible --------------------

Outcome criterion_simplices(Registry& reg) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    std::uint64_t state = 0xC1;
    double worst_lambda_err = 0.0;
    double worst_marginal = 0.0;
    for (int dim = 1; dim <= 4; ++dim) {
        const Polytope& k = reg.add(make_simplex(dim));
        for (int trial = 0; trial < 100; ++trial) {
            const TwoOutcomeMeasurement m1{oracle::random_effect(k, state)};
            const TwoOutcomeMeasurement m2{oracle::random_effect(k, state)};
            const DegreeResult res = degree(m1, m2, k);
            reg.record(k, m1, m2, res);
            worst_lambda_err = std::max(worst_lambda_err, std::abs(res.lambda - 1.0));

            const CompatibilityResult c = is_compatible(m1, m2, k);
            if (!c.compatible || !c.p) {
                out.pass = false;
                continue;
            }
            reg.feasible.push_back({k, m1, m2, *c.p});
            const JointMeasurement j = joint_from_p(m1, m2, *c.p, k, 1e-7);
            const auto [r1, r2] = marginals(j);
            worst_marginal = std::max({worst_marginal, marginal_residual(r1, m1, k),
                                       marginal_residual(r2, m2, k)});
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (worst_lambda_err > 1e-7) out.pass = false;
    if (worst_marginal > 1e-9) out.pass = false;
    if (secs >= 30.0) out.pass = false;
    out.detail << "400 pairs on simplices dim 1-4: max |lambda - 1| = " << worst_lambda_err
               << ", max marginal residual = " << worst_marginal << ", " << secs << " s";
    return out;
}

// ---- criterion 2: non-simplices admit constructed incompatible pairs -------

Outcome criterion_witnesses(Registry& reg) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, Polytope>> shapes;
    shapes.emplace_back("square", make_hypercube(2));
    shapes.emplace_back("cube", make_hypercube(3));
    shapes.emplace_back("octahedron", make_cross_polytope(3));
    for (int n = 5; n <= 12; ++n)
        shapes.emplace_back("ngon(" + std::to_string(n) + ")", make_ngon(n));
    int made = 0;
    for (std::uint64_t seed = 1; made < 20 && seed < 200; ++seed) {
        const int dim = 2 + static_cast<int>(seed % 3);
        Polytope k = make_random_polytope(dim, dim + 4, 0xBEEF00 + seed);
        if (k.is_simplex()) continue;
        shapes.emplace_back("random(dim " + std::to_string(dim) + ")", std::move(k));
        ++made;
    }
    if (made < 20) {
        out.pass = false;
        out.detail << "could not generate 20 random non-simplex shapes";
        return out;
    }

    double worst_lambda = 0.0;
    std::string worst_name;
    for (auto& [name, shape] : shapes) {
        const Polytope& k = reg.add(std::move(shape));
        try {
            const WitnessSearchResult w = construct_incompatible_pair(k);
            reg.record(k, w.m1, w.m2, w.degree);
            if (w.degree.lambda > worst_lambda) {
                worst_lambda = w.degree.lambda;
                worst_name = name;
            }
            if (!(w.degree.lambda < 1.0 - 1e-6)) out.pass = false;
        } catch (const Error& e) {
            out.pass = false;
            out.detail << name << " threw " << e.what() << "; ";
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= 120.0) out.pass = false;
    out.detail << shapes.size() << " non-simplex shapes: every constructed pair has lambda < "
               << "1 - 1e-6 (largest " << worst_lambda << " on " << worst_name << "), " << secs
               << " s";
    return out;
}

// ---- criterion 3: lambda >= 1/2, with the constructive half-coin joint -----

Outcome criterion_lower_bound(Registry& reg) {
    Outcome out;
    std::uint64_t state = 0xC3;
    std::vector<Polytope> shapes;
    shapes.push_back(make_hypercube(2));
    shapes.push_back(make_hypercube(3));
    shapes.push_back(make_cross_polytope(2));
    shapes.push_back(make_cross_polytope(3));
    shapes.push_back(make_ngon(5));
    shapes.push_back(make_ngon(7));
    shapes.push_back(make_simplex(2));
    shapes.push_back(make_simplex(3));
    shapes.push_back(make_random_polytope(2, 6, 0x51));
    shapes.push_back(make_random_polytope(3, 7, 0x52));
    shapes.push_back(make_random_polytope(4, 8, 0x53));
    shapes.push_back(make_random_polytope(3, 9, 0x54));
    shapes.push_back(make_random_polytope(2, 8, 0x55));

    int instances = 0;
    int half_coin_ok = 0;
    double min_lambda = 1.0;
    for (const Polytope& shape : shapes) {
        const Polytope& k = reg.add(shape);
        for (int trial = 0; trial < 40; ++trial) {
            const TwoOutcomeMeasurement m1{oracle::random_effect(k, state)};
            const TwoOutcomeMeasurement m2{oracle::random_effect(k, state)};
            const DegreeResult res = degree(m1, m2, k);
            reg.record(k, m1, m2, res);
            min_lambda = std::min(min_lambda, res.lambda);
            ++instances;

            const double t1 = oracle::rand01(state);
            const double t2 = oracle::rand01(state);
            const JointMeasurement hc = half_coin_joint(m1, m2, t1, t2, k);
            const auto [r1, r2] = marginals(hc);
            const bool ok = joint_is_valid(hc, k, 1e-9) &&
                            marginal_residual(r1, mix_with_coin(m1, 0.5, t1), k) <= 1e-9 &&
                            marginal_residual(r2, mix_with_coin(m2, 0.5, t2), k) <= 1e-9;
            half_coin_ok += ok;
        }
    }
    if (instances < 500) out.pass = false;
    if (min_lambda < 0.5 - 1e-7) out.pass = false;
    if (half_coin_ok != instances) out.pass = false;
    out.detail << instances << " random instances: min lambda = " << min_lambda
               << " >= 0.5 - 1e-7; half-coin joint valid on " << half_coin_ok << "/"
               << instances;
    return out;
}

// Shared axes pair (1 + x)/2, (1 + y)/2 for shapes inside the unit ball.
TwoOutcomeMeasurement axis_measurement(const Polytope& k, int axis) {
    Eigen::VectorXd lin = Eigen::VectorXd::Zero(k.ambient_dim());
    lin(axis) = 0.5;
    AffineFunction f;
    f.linear = k.chart_basis().transpose() * lin;
    f.offset = 0.5 + lin.dot(k.chart_origin());
    return {make_effect(f, k)};
}

// ---- criterion 4: the square's sharp axes pair has degree 1/2 --------------

Outcome criterion_square_golden(Registry& reg) {
    Outcome out;
    const Polytope& sq = reg.add(make_hypercube(2));
    Eigen::VectorXd ex = Eigen::VectorXd::Zero(2), ey = Eigen::VectorXd::Zero(2);
    ex(0) = 1.0;
    ey(1) = 1.0;
    const TwoOutcomeMeasurement m1{make_effect({sq.chart_basis().transpose() * ex,
                                                ex.dot(sq.chart_origin())},
                                               sq)};
    const TwoOutcomeMeasurement m2{make_effect({sq.chart_basis().transpose() * ey,
                                                ey.dot(sq.chart_origin())},
                                               sq)};
    const DegreeResult res = degree(m1, m2, sq);
    reg.record(sq, m1, m2, res);
    const double oracle_lambda = oracle::degree_by_bisection(m1, m2, sq, 1e-8);
    if (std::abs(res.lambda - 0.5) > 1e-6) out.pass = false;
    if (std::abs(oracle_lambda - 0.5) > 1e-6) out.pass = false;
    out.detail << "sharp axes pair on the unit square: lambda = " << res.lambda
               << " (bisection oracle " << oracle_lambda << "), expected 0.5 +- 1e-6";
    return out;
}

// ---- criterion 5: disc-limit trend over regular polygons -------------------

Outcome criterion_disc_trend(Registry& reg) {
    Outcome out;
    const int ns[] = {4, 8, 16, 32, 64, 128};
    std::vector<double> lambdas;
    for (int n : ns) {
        const Polytope& k = reg.add(make_ngon(n));
        const TwoOutcomeMeasurement m1 = axis_measurement(k, 0);
        const TwoOutcomeMeasurement m2 = axis_measurement(k, 1);
        const DegreeResult res = degree(m1, m2, k);
        reg.record(k, m1, m2, res);
        lambdas.push_back(res.lambda);
    }
    char buf[64];
    out.detail << "axes pair on ngon(n): lambda =";
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        std::snprintf(buf, sizeof(buf), " %.9f@n=%d", lambdas[i], ns[i]);
        out.detail << buf;
    }
    if (std::abs(lambdas[0] - 0.5) > 1e-6) {
        out.pass = false;
        const Polytope diamond = make_ngon(4);
        const double ref = oracle::degree_by_bisection(axis_measurement(diamond, 0),
                                                       axis_measurement(diamond, 1), diamond,
                                                       1e-8);
        std::snprintf(buf, sizeof(buf), "%.9f", ref);
        out.detail << "; lambda(4) != 0.5 +- 1e-6 (bisection oracle agrees: " << buf << ")";
    }
    if (std::abs(lambdas[5] - 0.70711) > 0.01) {
        out.pass = false;
        out.detail << "; lambda(128) outside 0.70711 +- 0.01";
    }
    for (std::size_t i = 0; i + 1 < lambdas.size(); ++i) {
        if (lambdas[i + 1] < lambdas[i] - 1e-9) {
            out.pass = false;
            out.detail << "; not nondecreasing at n=" << ns[i] << "->" << ns[i + 1];
        }
    }
    return out;
}

// ---- criterion 6: zero duality gap on every degree LP ----------------------

Outcome criterion_duality(const Registry& reg) {
    Outcome out;
    double worst = 0.0;
    for (double g : reg.gaps) worst = std::max(worst, g);
    if (worst > 1e-7) out.pass = false;
    out.detail << reg.gaps.size() << " degree LPs: max |primal - dual| = " << worst;
    return out;
}

// ---- criterion 7: certificates are sound and complete ----------------------

Outcome criterion_certificates(const Registry& reg) {
    Outcome out;
    double min_violation = 1.0;
    for (const IncompatInstance& inst : reg.incompatible) {
        // verify_certificate is plain affine arithmetic, independent of the LP.
        const double v = verify_certificate(inst.cert, inst.m1, inst.m2, inst.k);
        min_violation = std::min(min_violation, v);
        if (!(v > 1e-8)) out.pass = false;
    }
    double max_dual = 0.0;
    for (double d : reg.compatible_duals) max_dual = std::max(max_dual, d);
    if (max_dual > 1e-8) out.pass = false;
    out.detail << reg.incompatible.size() << " incompatible instances re-verified (min "
               << "violation " << min_violation << "); " << reg.compatible_duals.size()
               << " compatible instances, max dual optimum = " << max_dual;
    return out;
}

// ---- criterion 8: reconstruction identities ---------------------------------

Outcome criterion_reconstruction(const Registry& reg) {
    Outcome out;
    double worst = 0.0;
    for (const PoolingInstance& inst : reg.feasible) {
        const JointMeasurement j = joint_from_p(inst.m1, inst.m2, inst.p, inst.k, 1e-7);
        const auto [r1, r2] = marginals(j);
        worst = std::max({worst, marginal_residual(r1, inst.m1, inst.k),
                          marginal_residual(r2, inst.m2, inst.k)});
    }
    if (worst > 1e-9) out.pass = false;

    std::uint64_t state = 0xC8;
    double worst_product = 0.0;
    for (int dim = 1; dim <= 4; ++dim) {
        const Polytope k = make_simplex(dim);
        for (int trial = 0; trial < 10; ++trial) {
            const FiniteMeasurement a = to_finite({oracle::random_effect(k, state)}, k);
            const FiniteMeasurement b = to_finite({oracle::random_effect(k, state)}, k);
            const FiniteMeasurement j = simplex_product_joint(a, b, k);
            const auto [r1, r2] = product_marginals(j, 2, 2, k);
            for (int i = 0; i < 2; ++i) {
                worst_product = std::max(
                    {worst_product,
                     max_abs(vertex_values(r1.effects[i].f, k) - vertex_values(a.effects[i].f, k)),
                     max_abs(vertex_values(r2.effects[i].f, k) - vertex_values(b.effects[i].f, k))});
            }
        }
    }
    if (worst_product > 1e-12) out.pass = false;
    out.detail << reg.feasible.size() << " pooling round trips: max residual = " << worst
               << "; 40 simplex products: max marginal deviation = " << worst_product;
    return out;
}

// ---- criterion 9: solver vs brute-force enumeration -------------------------

Outcome criterion_lp_oracle(Registry&) {
    Outcome out;
    // Fixed corpus: the first 30 feasible and first 20 infeasible instances
    // of the deterministic generator stream, so both solver verdicts are
    // exercised.
    std::uint64_t state = 0xC9;
    int want_optimal = 30, want_infeasible = 20;
    int solved = 0, rejected = 0;
    double worst = 0.0;
    while (want_optimal > 0 || want_infeasible > 0) {
        const LinearProgram lp = oracle::random_bounded_lp(state);
        const auto ref = oracle::brute_force_lp(lp);
        if (ref ? want_optimal == 0 : want_infeasible == 0) continue;
        (ref ? want_optimal : want_infeasible) -= 1;
        const LpSolution sol = solve_lp(lp);
        if (ref.has_value() != (sol.status == LpStatus::Optimal)) {
            out.pass = false;
            continue;
        }
        if (ref) {
            worst = std::max(worst, std::abs(sol.objective - ref->objective));
            if (std::abs(sol.objective - ref->objective) > 1e-8) out.pass = false;
            ++solved;
        } else {
            ++rejected;
        }
    }
    out.detail << "50 small LPs vs basic-solution enumeration: " << solved
               << " optimal (max objective deviation = " << worst << "), " << rejected
               << " infeasible, statuses agree on all";
    return out;
}

// ---- criterion 10: every vertex lies on and off some facet ------------------

Outcome criterion_boundary(const Registry& reg) {
    Outcome out;
    int vertices = 0;
    for (const Polytope& k : reg.polytopes) {
        for (int v = 0; v < k.vertex_count(); ++v) {
            const auto [containing, disjoint] = k.facets_at_vertex(v);
            if (containing.empty() || disjoint.empty()) out.pass = false;
            ++vertices;
        }
    }
    out.detail << reg.polytopes.size() << " corpus polytopes, " << vertices
               << " vertices: each on >= 1 facet and off >= 1 facet";
    return out;
}

}  // namespace

int main() {
    Registry reg;
    struct Entry {
        const char* label;
        Outcome outcome;
    };
    std::vector<Entry> entries;
    entries.push_back({"1. simplices: every pair compatible", criterion_simplices(reg)});
    entries.push_back({"2. non-simplices: incompatible pair constructed", criterion_witnesses(reg)});
    entries.push_back({"3. universal lower bound 1/2 + half-coin joint", criterion_lower_bound(reg)});
    entries.push_back({"4. square golden value 1/2", criterion_square_golden(reg)});
    entries.push_back({"5. disc-limit trend on regular polygons", criterion_disc_trend(reg)});
    entries.push_back({"6. zero duality gap", criterion_duality(reg)});
    entries.push_back({"7. certificate soundness and completeness", criterion_certificates(reg)});
    entries.push_back({"8. reconstruction identities", criterion_reconstruction(reg)});
    entries.push_back({"9. LP solver vs brute-force oracle", criterion_lp_oracle(reg)});
    entries.push_back({"10. boundary-face property", criterion_boundary(reg)});

    int failures = 0;
    for (const Entry& e : entries) {
        failures += !e.outcome.pass;
        std::printf("[%s] %s — %s\n", e.outcome.pass ? "PASS" : "FAIL", e.label,
                    e.outcome.detail.str().c_str());
    }
    std::printf("acceptance: %zu/%zu criteria passed\n", entries.size() - failures,
                entries.size());
    return failures;
}
