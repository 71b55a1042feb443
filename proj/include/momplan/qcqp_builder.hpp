/**
 * @file qcqp_builder.hpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 *
 * Assembles the convex momentum QCQP for a fixed contact plan: discrete
 * momentum dynamics equalities, friction/torsion cones, CoP boxes, local-
 * to-world frame mappings, the normalized cross-product decomposition
 * variables with their six upper-bound quadratics, the CoM-to-effector
 * length limits, and the running + terminal cost.  Also produces the
 * difference-of-convex variant (bounds as equalities) for the iterative-
 * linearization baseline, and decodes solver output into a trajectory.
 */

#pragma once

#include <map>
#include <string>
#include <vector>

#include "momplan/conic_solver.hpp"
#include "momplan/contact_plan.hpp"
#include "momplan/qcqp.hpp"
#include "momplan/scenario.hpp"
#include "momplan/trajectory.hpp"

namespace momplan {

/// Variable-block offsets of one active (effector, timestep) pair.
/// Offsets are -1 where a block does not exist (hands carry no CoP).
struct EffectorStepVars {
  bool is_foot = true;
  Eigen::Index f_local = -1;   ///< local force, 3
  Eigen::Index tau_local = -1; ///< local torsional torque, 1
  Eigen::Index cop_local = -1; ///< local CoP, 2 (feet)
  Eigen::Index f_world = -1;   ///< world force, 3
  Eigen::Index tau_world = -1; ///< world torque, 3
  Eigen::Index cop_world = -1; ///< world CoP offset, 3 (feet)
  Eigen::Index u_plus = -1;    ///< U+, 3
  Eigen::Index u_minus = -1;   ///< U-, 3
  Eigen::Index dc[6] = {-1, -1, -1, -1, -1, -1};  ///< a..f, 2 each
};

/// Offsets of the state blocks, time-major (t = 1..N at vector index t-1).
struct VariableLayout {
  int num_steps = 0;
  std::vector<Eigen::Index> com, lin, ang, lin_rate, ang_rate;
  std::map<std::pair<std::string, int>, EffectorStepVars> effector_vars;
  std::map<std::string, double> alpha;  ///< normalization constant alpha per effector
};

struct MomentumQcqp {
  QcqpProblem problem;
  VariableLayout layout;
  TimeGrid grid;
};

/// Baseline form: same model with the six bound quadratics per active
/// (effector, timestep) replaced by DC equalities U = ||.||^2.
struct MomentumDcProblem {
  QcqpProblem base;
  std::vector<DcEquality> equalities;
  VariableLayout layout;
  TimeGrid grid;
};

/// Builds the full convex momentum program.  `grid_override` substitutes
/// the scenario time grid (used by the horizon sweep); the plan phase map
/// uses 0-based step indices.
MomentumQcqp buildMomentumQcqp(const Scenario& scenario,
                               const ContactPlan& plan,
                               const CostWeights& weights,
                               const TimeGrid* grid_override = nullptr);

MomentumDcProblem buildMomentumDcBaseline(const Scenario& scenario,
                                          const ContactPlan& plan,
                                          const CostWeights& weights,
                                          const TimeGrid* grid_override = nullptr);

/// Decodes a solver point into a trajectory; kappa is recomputed both from
/// the bounds ((alpha/4)(U+ - U-) + tau) and from the exact cross product,
/// and the per-component relaxation gaps are recomputed from decoded
/// physical values (never copied from solver internals).
MomentumTrajectory extractTrajectory(const MomentumQcqp& built,
                                     const Scenario& scenario,
                                     const ContactPlan& plan,
                                     const Solution& solution);

/// Running cost of a decoded trajectory under the stated normalization;
/// excludes the terminal cost.
double evaluateRunningCost(const MomentumTrajectory& traj,
                           const CostWeights& weights,
                           const Scenario& scenario);

/// Terminal cost of the final state.
double evaluateTerminalCost(const MomentumTrajectory& traj,
                            const CostWeights& weights);

/// Adds scale * coords' Q coords to the objective via eigendecomposition
/// (shared with the contact planner).
void addQuadraticForm(QcqpProblem& problem, double scale,
                      const Eigen::MatrixXd& q_matrix,
                      const std::vector<AffineExpr>& coords);

/// Quasi-static point for warm-starting the iterative-linearization
/// baseline: CoM held at the initial state, gravity split evenly over the
/// active effectors, decomposition variables and bounds set consistently
/// (bounds tight).  Valid for both the QCQP and the DC-baseline layout.
Eigen::VectorXd staticInitialGuess(const VariableLayout& layout,
                                   const Scenario& scenario,
                                   const ContactPlan& plan,
                                   Eigen::Index num_variables);

}  // namespace momplan
