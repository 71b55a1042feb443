/**
 * @file trajectory.hpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 */

#pragma once

#include <string>
#include <vector>

#include "momplan/conic_solver.hpp"
#include "momplan/dc_decomposition.hpp"
#include "momplan/dynamics.hpp"

namespace momplan {

/// Per-timestep record of one active effector: decoded wrench, bound pair,
/// and kappa evaluated both ways (from the bounds and from the cross
/// product) together with the componentwise relaxation gap.
struct EffectorSample {
  std::string effector;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  ///< p of the phase
  ContactWrench wrench;
  BoundPair bounds;
  Eigen::Vector3d kappa_bounds = Eigen::Vector3d::Zero();
  Eigen::Vector3d kappa_cross = Eigen::Vector3d::Zero();
  Eigen::Matrix<double, 6, 1> gap = Eigen::Matrix<double, 6, 1>::Zero();
};

struct TrajectoryStep {
  double time = 0.0;
  double dt = 0.0;  ///< duration of the step ending at `time` (0 at t=0)
  MomentumState state;
  std::vector<EffectorSample> effectors;
};

struct SolveStats {
  SolveStatus status = SolveStatus::NumericalError;
  int iterations = 0;
  double build_seconds = 0.0;
  double solve_seconds = 0.0;
  double primal_res = 0.0, dual_res = 0.0, gap = 0.0;
};

/// Decoded momentum optimization result.  steps[0] holds the initial state
/// (no effector samples); steps[t], t >= 1 the optimized ones.
struct MomentumTrajectory {
  std::vector<TrajectoryStep> steps;
  double objective = 0.0;
  SolveStats stats;

  int numSteps() const { return static_cast<int>(steps.size()) - 1; }
  /// Largest entry of any effector gap vector over the trajectory.
  double maxGap() const;
};

}  // namespace momplan
