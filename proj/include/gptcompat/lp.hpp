#pragma once

#include <Eigen/Dense>

#include "gptcompat/error.hpp"

namespace gptcompat {

// Linear program in the fixed form
//
//   minimize    c . x
//   subject to  A x >= b,  x >= 0.
//
// All other shapes (equalities, free variables, upper bounds) are encoded by
// the caller: an equality becomes two opposing inequalities, a free variable
// is split into a difference of two nonnegative ones.
struct LinearProgram {
    Eigen::VectorXd c;
    Eigen::MatrixXd A;
    Eigen::VectorXd b;

    int rows() const { return static_cast<int>(A.rows()); }
    int cols() const { return static_cast<int>(A.cols()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Eigen::VectorXd x;    // primal point (vertex of the feasible set) when Optimal
    double objective = 0.0;
    // Dual multipliers, one per row of A.  When Optimal these satisfy, up to
    // the solver tolerances, y >= 0, A^T y <= c and b . y = c . x.  When
    // Infeasible they hold a Farkas witness: y >= 0, A^T y <= 0, b . y > 0.
    Eigen::VectorXd y;
    // Improving ray when Unbounded: r >= 0, A r >= 0, c . r < 0.
    Eigen::VectorXd ray;
    int iterations = 0;
};

struct LpOptions {
    double pivot_tol = 1e-10;  // entries smaller than this never become pivots
    double opt_tol = 1e-9;     // reduced-cost threshold for optimality
    double feas_tol = 1e-9;    // phase-1 residual threshold for feasibility
};

// Two-phase dense-tableau simplex method.  Deterministic: Dantzig pricing
// with a Bland fallback after a long run of degenerate pivots, ties broken
// by lowest index.  Throws Error(NumericalBreakdown) if the iteration cap is
// exceeded.
LpSolution solve_lp(const LinearProgram& lp, const LpOptions& opts = {});

// |c . x - b . y| for an Optimal solution; by strong duality this vanishes up
// to roundoff at a true optimum.
double duality_gap(const LinearProgram& lp, const LpSolution& sol);

}  // namespace gptcompat
