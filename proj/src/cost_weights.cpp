/**
 * @file cost_weights.cpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 */

#include "momplan/cost_weights.hpp"

#include <stdexcept>
#include <string>

namespace momplan {

namespace {

void requirePsd(const Eigen::MatrixXd& m, const std::string& name) {
  if (!m.isApprox(m.transpose(), 1e-12))
    throw std::invalid_argument("weight " + name + " is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.eigenvalues().minCoeff() < -1e-12)
    throw std::invalid_argument("weight " + name + " is not PSD");
}

}  // namespace

void CostWeights::validate() const {
  requirePsd(q_lin, "Q_l");
  requirePsd(q_bounds, "Q_k");
  requirePsd(q_force, "Q_f");
  if (q_torsion < 0.0) throw std::invalid_argument("weight Q_tau is negative");
  requirePsd(q_cop, "Q_z");
  requirePsd(q_ang_rate, "Q_kdot");
  auto nonneg = [](const Eigen::Vector3d& v, const char* name) {
    if ((v.array() < 0.0).any())
      throw std::invalid_argument(std::string("terminal weight ") + name +
                                  " has a negative entry");
  };
  nonneg(terminal.com_weight, "com");
  nonneg(terminal.lin_weight, "lin");
  nonneg(terminal.ang_weight, "ang");
  if (step_regularizer < 0.0 || hand_pose_regularizer < 0.0 ||
      theta_regularizer < 0.0)
    throw std::invalid_argument("planner regularizer weights must be >= 0");
}

}  // namespace momplan
