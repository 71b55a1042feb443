/**
 * @file cost_weights.hpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 *
 * Weights of the running and terminal cost.  The running cost penalizes
 * linear momentum, the upper bounds of the decomposed angular-momentum
 * contributions (never the angular momentum or its rate directly: free
 * upper bounds would then open a relaxation gap), forces, torsional
 * torques and CoP offsets.  Force-dimension quantities are normalized by
 * M*||g|| and length-dimension ones by the effector nominal length, so the
 * default weights are stated in normalized units.
 */

#pragma once

#include <Eigen/Dense>

namespace momplan {

enum class AngularPenaltyMode {
  UpperBounds,   ///< cost on U+/U- (the paper's choice; keeps the gap zero)
  MomentumRate,  ///< direct cost on k_dot (regression mode: opens the gap)
};

struct TerminalGoal {
  Eigen::Vector3d com_target = Eigen::Vector3d::Zero();
  Eigen::Vector3d lin_target = Eigen::Vector3d::Zero();
  Eigen::Vector3d ang_target = Eigen::Vector3d::Zero();
  Eigen::Vector3d com_weight = Eigen::Vector3d::Constant(100.0);
  Eigen::Vector3d lin_weight = Eigen::Vector3d::Constant(10.0);
  Eigen::Vector3d ang_weight = Eigen::Vector3d::Constant(1.0);
};

struct CostWeights {
  Eigen::Matrix3d q_lin = Eigen::Matrix3d::Identity();          ///< Q_l
  Eigen::Matrix3d q_bounds = 0.1 * Eigen::Matrix3d::Identity(); ///< Q_k on U+-
  Eigen::Matrix3d q_force = 1e-3 * Eigen::Matrix3d::Identity(); ///< Q_f
  double q_torsion = 1e-3;                                      ///< Q_tau
  Eigen::Matrix2d q_cop = 0.1 * Eigen::Matrix2d::Identity();    ///< Q_z
  TerminalGoal terminal;

  AngularPenaltyMode angular_mode = AngularPenaltyMode::UpperBounds;
  Eigen::Matrix3d q_ang_rate = 0.1 * Eigen::Matrix3d::Identity();

  // contact-planner objective extras
  double step_regularizer = 1.0;
  double hand_pose_regularizer = 0.1;
  double theta_regularizer = 0.1;

  /// Symmetry and positive semidefiniteness; throws naming the weight.
  void validate() const;
};

}  // namespace momplan
