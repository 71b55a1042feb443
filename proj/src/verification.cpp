/**
 * @file verification.cpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 */

#include "momplan/verification.hpp"

#include <stdexcept>

#include "momplan/dynamics.hpp"

namespace momplan {

ResidualReport newtonEulerResidual(const MomentumTrajectory& traj,
                                   const ContactPlan& plan, double mass,
                                   const Eigen::Vector3d& gravity) {
  const int num_steps = traj.numSteps();
  if (num_steps < 0 || plan.horizon() > num_steps)
    throw std::invalid_argument(
        "newtonEulerResidual: plan horizon exceeds trajectory length");

  ResidualReport rep;
  rep.dynamics.setZero(num_steps);
  rep.integration.setZero(num_steps);
  rep.kappa.setZero(num_steps);

  for (int t = 1; t <= num_steps; ++t) {
    const auto& step = traj.steps[t];
    const auto& prev = traj.steps[t - 1];
    const double dt = step.dt;

    // active set must match the plan's phase map
    size_t active = 0;
    for (const auto& [id, _] : plan.phases)
      if (plan.activePhase(id, t - 1)) ++active;
    if (active != step.effectors.size())
      throw std::invalid_argument(
          "newtonEulerResidual: active effector set mismatch at step " +
          std::to_string(t));

    Eigen::Vector3d force_sum = mass * gravity;
    Eigen::Vector3d kappa_sum = Eigen::Vector3d::Zero();
    for (const auto& e : step.effectors) {
      force_sum += e.wrench.force_world;
      const Eigen::Vector3d lever =
          e.position + e.wrench.cop_world - step.state.com;
      kappa_sum += kappaExact(lever, e.wrench.force_world, e.wrench.torque_world);
    }

    rep.dynamics[t - 1] =
        (step.state.lin_momentum_rate - force_sum).lpNorm<Eigen::Infinity>();
    const double row_com =
        (step.state.com - prev.state.com -
         dt / mass * step.state.lin_momentum).lpNorm<Eigen::Infinity>();
    const double row_lin =
        (step.state.lin_momentum - prev.state.lin_momentum -
         dt * step.state.lin_momentum_rate).lpNorm<Eigen::Infinity>();
    const double row_ang =
        (step.state.ang_momentum - prev.state.ang_momentum -
         dt * step.state.ang_momentum_rate).lpNorm<Eigen::Infinity>();
    rep.integration[t - 1] = std::max({row_com, row_lin, row_ang});
    rep.kappa[t - 1] =
        (step.state.ang_momentum_rate - kappa_sum).lpNorm<Eigen::Infinity>();
  }
  rep.max_dynamics = num_steps ? rep.dynamics.maxCoeff() : 0.0;
  rep.max_integration = num_steps ? rep.integration.maxCoeff() : 0.0;
  rep.max_kappa = num_steps ? rep.kappa.maxCoeff() : 0.0;
  return rep;
}

ConeViolationReport coneViolations(const MomentumTrajectory& traj,
                                   const Scenario& scenario,
                                   const ContactPlan& plan) {
  ConeViolationReport rep;
  for (int t = 1; t <= traj.numSteps(); ++t) {
    for (const auto& e : traj.steps[t].effectors) {
      const EndEffectorSpec* eff = scenario.effector(e.effector);
      if (!eff)
        throw std::invalid_argument("coneViolations: unknown effector '" +
                                    e.effector + "'");
      const ContactPhase* phase = plan.activePhase(e.effector, t - 1);
      if (!phase)
        throw std::invalid_argument(
            "coneViolations: sample without an active phase at step " +
            std::to_string(t));
      double mu = eff->friction_coeff;
      if (const TerrainRegion* reg = scenario.region(phase->region_id))
        mu = std::min(mu, reg->friction);

      const Eigen::Vector3d& fl = e.wrench.force_local;
      rep.friction =
          std::max(rep.friction, fl.head<2>().norm() - mu * fl.z());
      rep.unilateral = std::max(rep.unilateral, -fl.z());
      rep.torsion = std::max(rep.torsion, std::abs(e.wrench.torque_z_local) -
                                              eff->torsion_coeff * fl.z());
      if (!eff->isHand()) {
        const Eigen::Vector2d& z = e.wrench.cop_local;
        for (int a = 0; a < 2; ++a) {
          rep.cop = std::max(rep.cop, eff->cop_min[a] - z[a]);
          rep.cop = std::max(rep.cop, z[a] - eff->cop_max[a]);
        }
      }
      const Eigen::Matrix3d& rot = phase->rotation;
      rep.frame_mapping = std::max(
          rep.frame_mapping,
          (e.wrench.force_world - rot * fl).lpNorm<Eigen::Infinity>());
      rep.frame_mapping = std::max(
          rep.frame_mapping,
          (e.wrench.torque_world - rot.col(2) * e.wrench.torque_z_local)
              .lpNorm<Eigen::Infinity>());
      if (!eff->isHand())
        rep.frame_mapping = std::max(
            rep.frame_mapping,
            (e.wrench.cop_world - rot.leftCols<2>() * e.wrench.cop_local)
                .lpNorm<Eigen::Infinity>());
    }
  }
  return rep;
}

}  // namespace momplan
