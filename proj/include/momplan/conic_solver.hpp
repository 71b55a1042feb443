/**
 * @file conic_solver.hpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 *
 * QCQP front end over the cone-LP core: lowers the quadratic objective and
 * quadratic inequalities to second-order cones, solves, and maps the primal
 * point and dual multipliers back to the original problem.  Also provides
 * the from-scratch KKT residual checker and the iterative-linearization
 * baseline for difference-of-convex equality constraints.
 */

#pragma once

#include <Eigen/Dense>
#include <ostream>
#include <vector>

#include "momplan/qcqp.hpp"

namespace momplan {

struct SolveSettings {
  double feas_tol = 1e-8;      ///< primal/dual feasibility tolerance
  double gap_tol = 1e-8;       ///< absolute duality-gap tolerance
  double rel_gap_tol = 1e-9;   ///< relative duality-gap tolerance
  int max_iterations = 200;
  double frac_to_boundary = 0.99;
  double static_reg = 1e-8;
  int refine_steps = 3;
  // iterative-linearization baseline
  double penalty_mu0 = 0.0;        ///< initial slack penalty; 0: scaled
                                   ///< automatically from the initial objective
  double penalty_growth = 10.0;    ///< multiplied per escalation round
  double penalty_cap = 1e6;
  int max_outer_iterations = 30;
  double baseline_tol = 1e-6;  ///< slack-norm and iterate-change threshold
};

enum class SolveStatus {
  Optimal,
  PrimalInfeasible,
  DualInfeasible,  ///< problem unbounded below
  IterationLimit,
  NumericalError
};

const char* statusName(SolveStatus status);
std::ostream& operator<<(std::ostream& os, SolveStatus status);

struct Solution {
  SolveStatus status = SolveStatus::NumericalError;
  Eigen::VectorXd x;
  double objective = 0.0;  ///< original QCQP objective at x

  // dual multipliers, in the order of the problem's constraint lists
  Eigen::VectorXd eq_duals;
  Eigen::VectorXd ineq_duals;
  Eigen::VectorXd quad_duals;
  std::vector<Eigen::VectorXd> soc_duals;
  Eigen::VectorXd bound_duals_lower, bound_duals_upper;

  // solver-reported residuals (scaled)
  double primal_res = 0.0, dual_res = 0.0, gap = 0.0;
  int iterations = 0;
};

/// Solves a convex QCQP.  The problem must pass validatePsd().
Solution solveConvexQcqp(const QcqpProblem& problem,
                         const SolveSettings& settings = {});

/// From-scratch KKT residual report for a (problem, solution) pair; shares
/// no bookkeeping with the solver path.
struct KktReport {
  double stationarity = 0.0;        ///< max-norm of the Lagrangian gradient
  double eq_residual = 0.0;         ///< max |a'x - b|
  double ineq_violation = 0.0;      ///< max positive violation, all cones/rows
  double complementarity = 0.0;     ///< max |multiplier * residual|
  double dual_cone_violation = 0.0; ///< negative multipliers / z outside K*

  double maxResidual() const;
};

KktReport checkKkt(const QcqpProblem& problem, const Solution& solution);

/// One difference-of-convex equality  plus(x) - minus(x) = 0 with both
/// parts convex quadratic.
struct DcEquality {
  QuadConstraint plus;   ///< value() of this part is plus(x)
  QuadConstraint minus;  ///< value() of this part is minus(x)
};

struct BaselineIteration {
  double objective = 0.0;   ///< base objective (no penalty) at the iterate
  double slack_sum = 0.0;
  double step_norm = 0.0;
  double penalty_mu = 0.0;
  SolveStatus inner_status = SolveStatus::NumericalError;
};

struct BaselineResult {
  Solution solution;                      ///< final iterate, base objective
  std::vector<BaselineIteration> trace;
  bool converged = false;
};

/// Iterative-linearization (convex-concave) solver for a QCQP plus a list
/// of DC equalities.  Each equality contributes the one-sided relaxation
/// plus(x) - [minus(x_k) + grad minus(x_k)'(x - x_k)] <= s_i with s_i >= 0
/// penalized by a growing mu; the convex reverse direction is expected to
/// be part of the base problem (or supplied as a second, flipped
/// equality).  `initial` seeds the linearization point (zeros by default).
BaselineResult solveIterativeLinearization(
    const QcqpProblem& base, const std::vector<DcEquality>& dc_equalities,
    const SolveSettings& settings = {},
    const Eigen::VectorXd* initial = nullptr);

}  // namespace momplan
