#include "gptcompat/compat.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace gptcompat {

namespace {

void check_measurement(const TwoOutcomeMeasurement& m, const Polytope& k) {
    if (m.first.f.dim() != k.intrinsic_dim())
        fail(Errc::DimensionMismatch, "measurement chart dimension " +
                                          std::to_string(m.first.f.dim()) +
                                          " does not match polytope chart dimension " +
                                          std::to_string(k.intrinsic_dim()));
}

// Evaluation functional of vertex i as a row (xi_1 .. xi_d, 1), so that
// p(v_i) = phi_i . beta for an affine p with coefficient vector beta.
Eigen::RowVectorXd eval_row(const Polytope& k, int i) {
    const int d = k.intrinsic_dim();
    Eigen::RowVectorXd phi(d + 1);
    phi.head(d) = k.vertex_chart().row(i);
    phi(d) = 1.0;
    return phi;
}

AffineFunction affine_from_coeffs(const Eigen::VectorXd& beta) {
    const int d = static_cast<int>(beta.size()) - 1;
    return {beta.head(d), beta(d)};
}

double worst_effect_violation(const AffineFunction& f, const Polytope& k) {
    const auto [mn, mx] = range_on(f, k);
    return std::max(-mn, mx - 1.0);
}

}  // namespace

JointMeasurement joint_from_p(const TwoOutcomeMeasurement& m1, const TwoOutcomeMeasurement& m2,
                              const AffineFunction& p, const Polytope& k, double tol) {
    check_measurement(m1, k);
    check_measurement(m2, k);
    const AffineFunction& f1 = m1.first.f;
    const AffineFunction& f2 = m2.first.f;
    const AffineFunction g11 = p;
    const AffineFunction g12 = f1 - p;
    const AffineFunction g21 = f2 - p;
    const AffineFunction g22 = (1.0 - f1) - (f2 - p);

    const char* names[] = {"p", "f1 - p", "f2 - p", "1 - f1 - f2 + p"};
    const AffineFunction* gs[] = {&g11, &g12, &g21, &g22};
    for (int i = 0; i < 4; ++i) {
        const double viol = worst_effect_violation(*gs[i], k);
        if (viol > tol)
            fail(Errc::InfeasibleP, std::string("outcome effect ") + names[i] +
                                        " leaves [0, 1] by " + std::to_string(viol));
    }
    return {Effect{g11}, Effect{g12}, Effect{g21}, Effect{g22}};
}

std::pair<TwoOutcomeMeasurement, TwoOutcomeMeasurement> marginals(const JointMeasurement& j) {
    return {TwoOutcomeMeasurement{Effect{j.g11.f + j.g12.f}},
            TwoOutcomeMeasurement{Effect{j.g11.f + j.g21.f}}};
}

CompatibilityResult is_compatible(const TwoOutcomeMeasurement& m1,
                                  const TwoOutcomeMeasurement& m2, const Polytope& k,
                                  const CompatOptions& opts) {
    check_measurement(m1, k);
    check_measurement(m2, k);
    const int n = k.vertex_count();
    const int d = k.intrinsic_dim();
    const int nb = d + 1;

    // Feasibility LP over pooling functions p (coefficients split as p+ - p-):
    // f1 >= p, f2 >= p, p >= f1 + f2 - 1, p >= 0, all at the vertices.
    LinearProgram lp;
    lp.c = Eigen::VectorXd::Zero(2 * nb);
    lp.A = Eigen::MatrixXd::Zero(4 * n, 2 * nb);
    lp.b = Eigen::VectorXd::Zero(4 * n);
    const Eigen::VectorXd f1v = vertex_values(m1.first.f, k);
    const Eigen::VectorXd f2v = vertex_values(m2.first.f, k);
    for (int i = 0; i < n; ++i) {
        const Eigen::RowVectorXd phi = eval_row(k, i);
        lp.A.block(i, 0, 1, nb) = -phi;
        lp.A.block(i, nb, 1, nb) = phi;
        lp.b(i) = -f1v(i);
        lp.A.block(n + i, 0, 1, nb) = -phi;
        lp.A.block(n + i, nb, 1, nb) = phi;
        lp.b(n + i) = -f2v(i);
        lp.A.block(2 * n + i, 0, 1, nb) = phi;
        lp.A.block(2 * n + i, nb, 1, nb) = -phi;
        lp.b(2 * n + i) = f1v(i) + f2v(i) - 1.0;
        lp.A.block(3 * n + i, 0, 1, nb) = phi;
        lp.A.block(3 * n + i, nb, 1, nb) = -phi;
    }

    const LpSolution sol = solve_lp(lp, opts.lp);
    CompatibilityResult res;
    if (sol.status == LpStatus::Infeasible) {
        res.compatible = false;
        return res;
    }
    if (sol.status != LpStatus::Optimal)
        fail(Errc::SolverFailure, "pooling feasibility LP reported an unbounded status");
    res.compatible = true;
    res.p = affine_from_coeffs(sol.x.head(nb) - sol.x.tail(nb));
    res.joint = joint_from_p(m1, m2, *res.p, k, std::max(opts.tol, opts.gap_tol));
    return res;
}

LinearProgram build_degree_lp(const TwoOutcomeMeasurement& m1, const TwoOutcomeMeasurement& m2,
                              const Polytope& k) {
    check_measurement(m1, k);
    check_measurement(m2, k);
    const int n = k.vertex_count();
    const int d = k.intrinsic_dim();
    const int nb = d + 1;

    LinearProgram lp;
    lp.c = Eigen::VectorXd::Zero(1 + 2 * nb);
    lp.c(0) = 1.0;
    lp.A = Eigen::MatrixXd::Zero(4 * n, 1 + 2 * nb);
    lp.b = Eigen::VectorXd::Zero(4 * n);
    const Eigen::VectorXd f1v = vertex_values(m1.first.f, k);
    const Eigen::VectorXd f2v = vertex_values(m2.first.f, k);
    for (int i = 0; i < n; ++i) {
        const Eigen::RowVectorXd phi = eval_row(k, i);
        // mu/2 - p(v) >= -f1(v)
        lp.A(i, 0) = 0.5;
        lp.A.block(i, 1, 1, nb) = -phi;
        lp.A.block(i, 1 + nb, 1, nb) = phi;
        lp.b(i) = -f1v(i);
        // mu/2 - p(v) >= -f2(v)
        lp.A(n + i, 0) = 0.5;
        lp.A.block(n + i, 1, 1, nb) = -phi;
        lp.A.block(n + i, 1 + nb, 1, nb) = phi;
        lp.b(n + i) = -f2v(i);
        // p(v) >= f1(v) + f2(v) - 1   (the mixing weight cancels here)
        lp.A.block(2 * n + i, 1, 1, nb) = phi;
        lp.A.block(2 * n + i, 1 + nb, 1, nb) = -phi;
        lp.b(2 * n + i) = f1v(i) + f2v(i) - 1.0;
        // p(v) >= 0
        lp.A.block(3 * n + i, 1, 1, nb) = phi;
        lp.A.block(3 * n + i, 1 + nb, 1, nb) = -phi;
    }
    return lp;
}

IncompatibilityCertificate extract_certificate(const LpSolution& sol,
                                               const TwoOutcomeMeasurement& m1,
                                               const TwoOutcomeMeasurement& m2,
                                               const Polytope& k, double tol) {
    const int n = k.vertex_count();
    if (sol.y.size() != 4 * n)
        fail(Errc::ParameterOutOfRange, "dual vector has " + std::to_string(sol.y.size()) +
                                            " entries, expected " + std::to_string(4 * n));
    const double check_tol = std::max(tol, 1e-7);

    // Aggregate each dual row family into a weight and a barycenter; by
    // affinity this loses nothing of the dual objective.
    double a[3];
    Point z[3];
    for (int fam = 0; fam < 3; ++fam) {
        const auto w = sol.y.segment(fam * n, n);
        a[fam] = w.sum();
        if (a[fam] > tol) {
            Point acc = Point::Zero(k.ambient_dim());
            for (int i = 0; i < n; ++i) acc += w(i) * k.vertex(i);
            z[fam] = acc / a[fam];
        } else {
            a[fam] = std::max(a[fam], 0.0);
            z[fam] = k.interior_point();
        }
    }

    IncompatibilityCertificate cert;
    cert.a1 = a[0];
    cert.a2 = a[1];
    cert.a3 = a[2];
    cert.z1 = z[0];
    cert.z2 = z[1];
    cert.z3 = z[2];

    if ((cert.a1 + cert.a2) / 2.0 > 1.0 + check_tol)
        fail(Errc::DegenerateDual, "dual multipliers break the coin normalization");
    if (!functional_is_positive({{cert.z1, cert.a1}, {cert.z2, cert.a2}, {cert.z3, -cert.a3}},
                                k, check_tol))
        fail(Errc::DegenerateDual, "dual multipliers do not dominate the third component");

    const AffineFunction& f1 = m1.first.f;
    const AffineFunction& f2 = m2.first.f;
    cert.violation = -cert.a1 * evaluate(f1, k, cert.z1) - cert.a2 * evaluate(f2, k, cert.z2) +
                     cert.a3 * (evaluate(f1, k, cert.z3) + evaluate(f2, k, cert.z3) - 1.0);
    if (cert.violation <= tol)
        fail(Errc::DegenerateDual, "dual multipliers certify no violation (" +
                                       std::to_string(cert.violation) + ")");
    return cert;
}

double verify_certificate(const IncompatibilityCertificate& cert,
                          const TwoOutcomeMeasurement& m1, const TwoOutcomeMeasurement& m2,
                          const Polytope& k, double tol) {
    check_measurement(m1, k);
    check_measurement(m2, k);
    if (cert.a1 < -tol || cert.a2 < -tol || cert.a3 < -tol)
        fail(Errc::InvalidCertificate, "certificate weights must be nonnegative");
    for (const Point* zp : {&cert.z1, &cert.z2, &cert.z3})
        if (!k.contains(*zp, std::max(tol, k.tol())))
            fail(Errc::InvalidCertificate, "certificate point lies outside the polytope");
    if ((cert.a1 + cert.a2) / 2.0 > 1.0 + tol)
        fail(Errc::InvalidCertificate, "coin normalization (a1 + a2) / 2 <= 1 fails");
    if (!functional_is_positive({{cert.z1, cert.a1}, {cert.z2, cert.a2}, {cert.z3, -cert.a3}},
                                k, tol))
        fail(Errc::InvalidCertificate,
             "a3 phi_z3 is not dominated by a1 phi_z1 + a2 phi_z2");

    const AffineFunction& f1 = m1.first.f;
    const AffineFunction& f2 = m2.first.f;
    return -cert.a1 * evaluate(f1, k, cert.z1) - cert.a2 * evaluate(f2, k, cert.z2) +
           cert.a3 * (evaluate(f1, k, cert.z3) + evaluate(f2, k, cert.z3) - 1.0);
}

namespace {

DegreeResult finish_degree(const TwoOutcomeMeasurement& m1, const TwoOutcomeMeasurement& m2,
                           const Polytope& k, const CompatOptions& opts,
                           const LinearProgram& lp, const LpSolution& sol, double mu_raw,
                           const Eigen::VectorXd& p_coeffs, double t1, double t2,
                           const LpSolution* cert_source) {
    DegreeResult res;
    res.mu = mu_raw <= opts.tol ? 0.0 : mu_raw;
    res.lambda = 1.0 / (1.0 + res.mu);
    res.coin_bias_1 = t1;
    res.coin_bias_2 = t2;
    res.primal_objective = sol.objective;
    res.dual_objective = lp.b.dot(sol.y);

    // The LP pools for the rescaled pair; the smeared pair's pooling function
    // carries the factor lambda.
    res.p = res.lambda * affine_from_coeffs(p_coeffs);
    const TwoOutcomeMeasurement s1 = mix_with_coin(m1, res.lambda, t1);
    const TwoOutcomeMeasurement s2 = mix_with_coin(m2, res.lambda, t2);
    res.joint = joint_from_p(s1, s2, res.p, k, std::max(opts.tol, opts.gap_tol));

    if (res.mu > opts.tol && cert_source != nullptr)
        res.certificate = extract_certificate(*cert_source, m1, m2, k, opts.tol);
    return res;
}

}  // namespace

DegreeResult degree(const TwoOutcomeMeasurement& m1, const TwoOutcomeMeasurement& m2,
                    const Polytope& k, const CompatOptions& opts) {
    const LinearProgram lp = build_degree_lp(m1, m2, k);
    const LpSolution sol = solve_lp(lp, opts.lp);
    if (sol.status != LpStatus::Optimal)
        fail(Errc::SolverFailure,
             "degree LP must be solvable (mu = 1 always is feasible), solver disagreed");
    const int nb = k.intrinsic_dim() + 1;
    const Eigen::VectorXd p_coeffs = sol.x.segment(1, nb) - sol.x.segment(1 + nb, nb);
    return finish_degree(m1, m2, k, opts, lp, sol, sol.objective, p_coeffs, 0.5, 0.5, &sol);
}

DegreeResult degree_free_coin(const TwoOutcomeMeasurement& m1, const TwoOutcomeMeasurement& m2,
                              const Polytope& k, const CompatOptions& opts) {
    check_measurement(m1, k);
    check_measurement(m2, k);
    const int n = k.vertex_count();
    const int d = k.intrinsic_dim();
    const int nb = d + 1;

    // Variables (mu, s1, s2, p+, p-) with s_i = mu * t_i, so bias bounds
    // become the linear rows mu - s_i >= 0.
    LinearProgram lp;
    lp.c = Eigen::VectorXd::Zero(3 + 2 * nb);
    lp.c(0) = 1.0;
    lp.A = Eigen::MatrixXd::Zero(4 * n + 2, 3 + 2 * nb);
    lp.b = Eigen::VectorXd::Zero(4 * n + 2);
    const Eigen::VectorXd f1v = vertex_values(m1.first.f, k);
    const Eigen::VectorXd f2v = vertex_values(m2.first.f, k);
    for (int i = 0; i < n; ++i) {
        const Eigen::RowVectorXd phi = eval_row(k, i);
        // s1 - p(v) >= -f1(v)
        lp.A(i, 1) = 1.0;
        lp.A.block(i, 3, 1, nb) = -phi;
        lp.A.block(i, 3 + nb, 1, nb) = phi;
        lp.b(i) = -f1v(i);
        // s2 - p(v) >= -f2(v)
        lp.A(n + i, 2) = 1.0;
        lp.A.block(n + i, 3, 1, nb) = -phi;
        lp.A.block(n + i, 3 + nb, 1, nb) = phi;
        lp.b(n + i) = -f2v(i);
        // mu + p(v) - s1 - s2 >= f1(v) + f2(v) - 1
        lp.A(2 * n + i, 0) = 1.0;
        lp.A(2 * n + i, 1) = -1.0;
        lp.A(2 * n + i, 2) = -1.0;
        lp.A.block(2 * n + i, 3, 1, nb) = phi;
        lp.A.block(2 * n + i, 3 + nb, 1, nb) = -phi;
        lp.b(2 * n + i) = f1v(i) + f2v(i) - 1.0;
        // p(v) >= 0
        lp.A.block(3 * n + i, 3, 1, nb) = phi;
        lp.A.block(3 * n + i, 3 + nb, 1, nb) = -phi;
    }
    lp.A(4 * n, 0) = 1.0;
    lp.A(4 * n, 1) = -1.0;
    lp.A(4 * n + 1, 0) = 1.0;
    lp.A(4 * n + 1, 2) = -1.0;

    const LpSolution sol = solve_lp(lp, opts.lp);
    if (sol.status != LpStatus::Optimal)
        fail(Errc::SolverFailure,
             "free-coin degree LP must be solvable, solver disagreed");

    const double mu_raw = sol.objective;
    double t1 = 0.5, t2 = 0.5;
    if (mu_raw > opts.tol) {
        t1 = std::clamp(sol.x(1) / mu_raw, 0.0, 1.0);
        t2 = std::clamp(sol.x(2) / mu_raw, 0.0, 1.0);
    }
    const Eigen::VectorXd p_coeffs = sol.x.segment(3, nb) - sol.x.segment(3 + nb, nb);

    // The free-coin dual has extra structure; the certificate is read off a
    // symmetric-coin solve instead, which witnesses the same incompatibility.
    if (mu_raw > opts.tol) {
        const LinearProgram sym_lp = build_degree_lp(m1, m2, k);
        const LpSolution sym_sol = solve_lp(sym_lp, opts.lp);
        if (sym_sol.status != LpStatus::Optimal)
            fail(Errc::SolverFailure, "symmetric-coin certificate solve failed");
        DegreeResult res =
            finish_degree(m1, m2, k, opts, lp, sol, mu_raw, p_coeffs, t1, t2, &sym_sol);
        return res;
    }
    return finish_degree(m1, m2, k, opts, lp, sol, mu_raw, p_coeffs, t1, t2, nullptr);
}

FiniteMeasurement simplex_product_joint(const FiniteMeasurement& m1, const FiniteMeasurement& m2,
                                        const Polytope& k) {
    if (!k.is_simplex())
        fail(Errc::NotASimplex, "the classical product joint needs a simplex state space");
    const int d = k.intrinsic_dim();
    const int nv = k.vertex_count();

    // Barycentric coordinate functions as affine functions: lambda(x) solves
    // S lambda = (xi(x), 1), so lambda_i has coefficient row i of S^{-1}.
    Eigen::MatrixXd s(d + 1, d + 1);
    s.topRows(d) = k.vertex_chart().transpose();
    s.bottomRows(1).setOnes();
    const Eigen::MatrixXd sinv = s.inverse();
    std::vector<AffineFunction> bary(nv);
    for (int i = 0; i < nv; ++i)
        bary[i] = AffineFunction{sinv.row(i).head(d).transpose(), sinv(i, d)};

    const int n1 = static_cast<int>(m1.effects.size());
    const int n2 = static_cast<int>(m2.effects.size());
    std::vector<std::string> labels;
    std::vector<Effect> effects;
    labels.reserve(n1 * n2);
    effects.reserve(n1 * n2);
    for (int j = 0; j < n1; ++j) {
        const Eigen::VectorXd v1 = vertex_values(m1.effects[j].f, k);
        for (int kk = 0; kk < n2; ++kk) {
            const Eigen::VectorXd v2 = vertex_values(m2.effects[kk].f, k);
            AffineFunction g = AffineFunction::constant(d, 0.0);
            for (int i = 0; i < nv; ++i) g = g + (v1(i) * v2(i)) * bary[i];
            labels.push_back(m1.outcomes[j] + "," + m2.outcomes[kk]);
            effects.push_back(Effect{g});
        }
    }
    return make_finite_measurement(std::move(labels), std::move(effects), k);
}

std::pair<FiniteMeasurement, FiniteMeasurement> product_marginals(const FiniteMeasurement& j,
                                                                  int n1, int n2,
                                                                  const Polytope& k) {
    if (static_cast<int>(j.effects.size()) != n1 * n2 || n1 <= 0 || n2 <= 0)
        fail(Errc::ParameterOutOfRange, "joint has " + std::to_string(j.effects.size()) +
                                            " outcomes, expected " + std::to_string(n1) + " * " +
                                            std::to_string(n2));
    auto label_part = [&](int idx, bool first_half) {
        const std::string& s = j.outcomes[idx];
        const auto comma = s.find(',');
        if (comma == std::string::npos) return s;
        return first_half ? s.substr(0, comma) : s.substr(comma + 1);
    };
    std::vector<std::string> lab1, lab2;
    std::vector<Effect> eff1, eff2;
    for (int a = 0; a < n1; ++a) {
        AffineFunction sum = AffineFunction::constant(k.intrinsic_dim(), 0.0);
        for (int b = 0; b < n2; ++b) sum = sum + j.effects[a * n2 + b].f;
        lab1.push_back(label_part(a * n2, true));
        eff1.push_back(Effect{sum});
    }
    for (int b = 0; b < n2; ++b) {
        AffineFunction sum = AffineFunction::constant(k.intrinsic_dim(), 0.0);
        for (int a = 0; a < n1; ++a) sum = sum + j.effects[a * n2 + b].f;
        lab2.push_back(label_part(b, false));
        eff2.push_back(Effect{sum});
    }
    return {make_finite_measurement(std::move(lab1), std::move(eff1), k),
            make_finite_measurement(std::move(lab2), std::move(eff2), k)};
}

JointMeasurement half_coin_joint(const TwoOutcomeMeasurement& m1,
                                 const TwoOutcomeMeasurement& m2, double t1, double t2,
                                 const Polytope& k) {
    check_measurement(m1, k);
    check_measurement(m2, k);
    if (!(t1 >= 0.0 && t1 <= 1.0) || !(t2 >= 0.0 && t2 <= 1.0))
        fail(Errc::BiasOutOfRange, "coin biases must lie in [0, 1]");
    const AffineFunction& f1 = m1.first.f;
    const AffineFunction& f2 = m2.first.f;
    const AffineFunction c1 = 1.0 - f1;
    const AffineFunction c2 = 1.0 - f2;
    return {Effect{0.5 * (t1 * f2 + t2 * f1)},
            Effect{0.5 * (t1 * c2 + (1.0 - t2) * f1)},
            Effect{0.5 * ((1.0 - t1) * f2 + t2 * c1)},
            Effect{0.5 * ((1.0 - t1) * c2 + (1.0 - t2) * c1)}};
}

WitnessSearchResult construct_incompatible_pair(const Polytope& k, const CompatOptions& opts) {
    if (k.is_simplex())
        fail(Errc::SimplexInput,
             "every pair of measurements on a simplex is compatible; no witness exists");

    WitnessSearchResult best;
    bool have_best = false;
    const auto& facets = k.facets();
    for (std::size_t fi = 0; fi < facets.size(); ++fi) {
        const TwoOutcomeMeasurement mf{effect_vanishing_on_facet(k, facets[fi], opts.tol)};
        const auto& on_facet = facets[fi].vertex_indices;
        for (int v = 0; v < k.vertex_count(); ++v) {
            if (std::binary_search(on_facet.begin(), on_facet.end(), v)) continue;
            const TwoOutcomeMeasurement mv{effect_exposing_vertex(k, v, opts.tol)};
            DegreeResult deg = degree(mf, mv, k, opts);
            if (!have_best || deg.lambda < best.degree.lambda) {
                best.m1 = mf;
                best.m2 = mv;
                best.degree = std::move(deg);
                best.facet_index = static_cast<int>(fi);
                best.vertex_index = v;
                have_best = true;
            }
        }
    }
    if (!have_best || best.degree.lambda >= 1.0 - 1e-6)
        fail(Errc::SearchExhausted,
             "no incompatible facet/vertex pair found on a non-simplex state space (best "
             "lambda " +
                 (have_best ? std::to_string(best.degree.lambda) : std::string("n/a")) + ")");
    return best;
}

}  // namespace gptcompat
