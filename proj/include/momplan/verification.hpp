/**
 * @file verification.hpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 *
 * Solver-independent re-verification of decoded trajectories: discrete
 * Newton-Euler residuals and physical cone violations, recomputed from the
 * trajectory data alone.
 */

#pragma once

#include <Eigen/Dense>

#include "momplan/contact_plan.hpp"
#include "momplan/scenario.hpp"
#include "momplan/trajectory.hpp"

namespace momplan {

struct ResidualReport {
  Eigen::VectorXd dynamics;     ///< per step: ||ldot - Mg - sum f||_inf
  Eigen::VectorXd integration;  ///< per step: worst of the three update rows
  Eigen::VectorXd kappa;        ///< per step: ||kdot - sum (l x f + tau)||_inf
  double max_dynamics = 0.0;
  double max_integration = 0.0;
  double max_kappa = 0.0;

  double maxAll() const {
    return std::max({max_dynamics, max_integration, max_kappa});
  }
};

/// Residuals of the discrete momentum dynamics along a trajectory.
/// Throws std::invalid_argument when the trajectory and plan grids or
/// active sets disagree.
ResidualReport newtonEulerResidual(const MomentumTrajectory& traj,
                                   const ContactPlan& plan, double mass,
                                   const Eigen::Vector3d& gravity);

struct ConeViolationReport {
  double friction = 0.0;  ///< max of ||f_xy|| - mu f_z over active contacts
  double cop = 0.0;       ///< max CoP box violation
  double torsion = 0.0;   ///< max |tau_z| - mu_tau f_z
  double unilateral = 0.0;   ///< max -f_z (pushing only)
  double frame_mapping = 0.0;  ///< max ||world - R local||_inf

  double maxAll() const {
    return std::max({friction, cop, torsion, unilateral, frame_mapping});
  }
};

ConeViolationReport coneViolations(const MomentumTrajectory& traj,
                                   const Scenario& scenario,
                                   const ContactPlan& plan);

}  // namespace momplan
