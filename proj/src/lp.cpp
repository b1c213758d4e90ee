#include "gptcompat/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace gptcompat {

namespace {

// Dense two-phase simplex working state.
//
// The program  min c.x, A x >= b, x >= 0  is brought to equational form one
// row at a time:
//   b_i >  0:   a.x - s_i + r_i = b_i     (surplus s_i, artificial r_i basic)
//   b_i <= 0:  -a.x + s_i       = -b_i    (row negated, surplus basic)
// so artificials are only spent on rows that actually need them.
//
// Tableau rows 0..m-1 are the constraints, row m holds phase-2 reduced costs
// and row m+1 phase-1 reduced costs; the last column is the rhs (cost rows
// store the negated objective there).  For both row orientations the original
// dual multiplier of row i equals the final reduced cost of surplus column i.
struct Tableau {
    Eigen::MatrixXd t;
    std::vector<int> basis;     // basis[i] = column basic in row i
    int m = 0;                  // constraint rows
    int n = 0;                  // structural columns
    int n_art = 0;              // artificial columns
    int rhs = 0;                // rhs column index

    double& at(int i, int j) { return t(i, j); }

    void pivot(int r, int jc) {
        t.row(r) /= t(r, jc);
        t(r, jc) = 1.0;
        for (int k = 0; k < t.rows(); ++k) {
            if (k == r) continue;
            double f = t(k, jc);
            if (f != 0.0) {
                t.row(k) -= f * t.row(r);
                t(k, jc) = 0.0;
            }
        }
        basis[r] = jc;
    }
};

// Only structurals and surpluses may enter the basis (j < n + m); artificials
// start basic and are never allowed back in.
int price_dantzig(const Tableau& tab, int cost_row, double opt_tol) {
    int best = -1;
    double best_val = -opt_tol;
    for (int j = 0; j < tab.n + tab.m; ++j) {
        double d = tab.t(cost_row, j);
        if (d < best_val) {
            best_val = d;
            best = j;
        }
    }
    return best;
}

int price_bland(const Tableau& tab, int cost_row, double opt_tol) {
    for (int j = 0; j < tab.n + tab.m; ++j) {
        if (tab.t(cost_row, j) < -opt_tol) return j;
    }
    return -1;
}

// Smallest-ratio row; ties broken by lowest basis index (Bland compatible).
int ratio_row(const Tableau& tab, int jc, double pivot_tol) {
    int row = -1;
    double best = 0.0;
    for (int i = 0; i < tab.m; ++i) {
        double a = tab.t(i, jc);
        if (a <= pivot_tol) continue;
        double r = tab.t(i, tab.rhs) / a;
        if (row < 0 || r < best - 1e-12 ||
            (r < best + 1e-12 && tab.basis[i] < tab.basis[row])) {
            best = r;
            row = i;
        }
    }
    return row;
}

enum class PhaseEnd { Converged, Unbounded, IterationLimit };

struct PhaseRun {
    PhaseEnd end = PhaseEnd::Converged;
    int unbounded_col = -1;
    int iterations = 0;
};

PhaseRun run_phase(Tableau& tab, int cost_row, const LpOptions& opts, int iter_cap) {
    PhaseRun run;
    bool bland = false;
    int stalled = 0;
    const int stall_limit = 3 * (tab.m + tab.n + tab.m) + 50;
    double last_obj = -tab.t(cost_row, tab.rhs);
    while (true) {
        if (run.iterations >= iter_cap) {
            run.end = PhaseEnd::IterationLimit;
            return run;
        }
        int jc = bland ? price_bland(tab, cost_row, opts.opt_tol)
                       : price_dantzig(tab, cost_row, opts.opt_tol);
        if (jc < 0) return run;
        int r = ratio_row(tab, jc, opts.pivot_tol);
        if (r < 0) {
            run.end = PhaseEnd::Unbounded;
            run.unbounded_col = jc;
            return run;
        }
        tab.pivot(r, jc);
        ++run.iterations;
        double obj = -tab.t(cost_row, tab.rhs);
        if (obj < last_obj - 1e-12) {
            stalled = 0;
        } else if (++stalled > stall_limit) {
            bland = true;  // long degenerate run: switch to cycle-proof pricing
        }
        last_obj = obj;
    }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& opts) {
    const int m = lp.rows();
    const int n = lp.cols();
    if (lp.b.size() != m || lp.c.size() != n)
        fail(Errc::DimensionMismatch, "LP dimensions disagree: A is " + std::to_string(m) +
                                          "x" + std::to_string(n) + ", b has " +
                                          std::to_string(lp.b.size()) + ", c has " +
                                          std::to_string(lp.c.size()));

    Tableau tab;
    tab.m = m;
    tab.n = n;
    std::vector<int> art_rows;
    for (int i = 0; i < m; ++i)
        if (lp.b(i) > 0.0) art_rows.push_back(i);
    tab.n_art = static_cast<int>(art_rows.size());
    const int ncols = n + m + tab.n_art;
    tab.rhs = ncols;
    tab.t = Eigen::MatrixXd::Zero(m + 2, ncols + 1);
    tab.basis.assign(m, -1);

    int next_art = 0;
    for (int i = 0; i < m; ++i) {
        if (lp.b(i) > 0.0) {
            tab.t.row(i).head(n) = lp.A.row(i);
            tab.t(i, n + i) = -1.0;
            int ac = n + m + next_art++;
            tab.t(i, ac) = 1.0;
            tab.t(i, tab.rhs) = lp.b(i);
            tab.basis[i] = ac;
        } else {
            tab.t.row(i).head(n) = -lp.A.row(i);
            tab.t(i, n + i) = 1.0;
            tab.t(i, tab.rhs) = -lp.b(i);
            tab.basis[i] = n + i;
        }
    }
    tab.t.row(m).head(n) = lp.c;

    const int iter_cap = 50 * (m + ncols) + 10000;
    LpSolution sol;

    // Phase 1: minimize the sum of artificials.
    if (tab.n_art > 0) {
        for (int i : art_rows) tab.t.row(m + 1) -= tab.t.row(i);
        for (int a = 0; a < tab.n_art; ++a) tab.t(m + 1, n + m + a) += 1.0;

        PhaseRun run = run_phase(tab, m + 1, opts, iter_cap);
        sol.iterations += run.iterations;
        if (run.end == PhaseEnd::IterationLimit)
            fail(Errc::NumericalBreakdown, "simplex iteration limit in phase 1");
        if (run.end == PhaseEnd::Unbounded)
            fail(Errc::NumericalBreakdown, "phase-1 objective unbounded below");

        double infeas = -tab.t(m + 1, tab.rhs);
        if (infeas > opts.feas_tol) {
            sol.status = LpStatus::Infeasible;
            sol.y = Eigen::VectorXd(m);
            for (int i = 0; i < m; ++i) sol.y(i) = std::max(tab.t(m + 1, n + i), 0.0);
            return sol;
        }

        // Drive leftover artificials out of the basis; an all-zero row is a
        // redundant constraint and can keep its artificial (at value zero).
        for (int i = 0; i < m; ++i) {
            if (tab.basis[i] < n + m) continue;
            int jc = -1;
            double best = opts.pivot_tol;
            for (int j = 0; j < n + m; ++j) {
                if (std::abs(tab.t(i, j)) > best) {
                    best = std::abs(tab.t(i, j));
                    jc = j;
                }
            }
            if (jc >= 0) tab.pivot(i, jc);
        }
    }

    // Phase 2: minimize the true objective.
    PhaseRun run = run_phase(tab, m, opts, iter_cap);
    sol.iterations += run.iterations;
    if (run.end == PhaseEnd::IterationLimit)
        fail(Errc::NumericalBreakdown, "simplex iteration limit in phase 2");

    if (run.end == PhaseEnd::Unbounded) {
        sol.status = LpStatus::Unbounded;
        Eigen::VectorXd ray = Eigen::VectorXd::Zero(n);
        int jc = run.unbounded_col;
        if (jc < n) ray(jc) = 1.0;
        for (int i = 0; i < m; ++i)
            if (tab.basis[i] < n) ray(tab.basis[i]) = std::max(-tab.t(i, jc), 0.0);
        sol.ray = ray;
        return sol;
    }

    sol.status = LpStatus::Optimal;
    sol.x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i)
        if (tab.basis[i] < n) sol.x(tab.basis[i]) = std::max(tab.t(i, tab.rhs), 0.0);
    sol.objective = lp.c.dot(sol.x);
    sol.y = Eigen::VectorXd(m);
    for (int i = 0; i < m; ++i) sol.y(i) = std::max(tab.t(m, n + i), 0.0);
    return sol;
}

double duality_gap(const LinearProgram& lp, const LpSolution& sol) {
    if (sol.status != LpStatus::Optimal)
        fail(Errc::NotOptimal, "duality gap is defined only for optimal solutions");
    return std::abs(lp.c.dot(sol.x) - lp.b.dot(sol.y));
}

}  // namespace gptcompat
