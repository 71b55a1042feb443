/**
 * @file dynamics.cpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 */

#include "momplan/dynamics.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace momplan {

namespace {

void requireFinite(const Eigen::Vector3d& v, const char* name) {
  if (!v.allFinite()) {
    std::ostringstream msg;
    msg << "non-finite value in " << name;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

bool MomentumState::allFinite() const {
  return com.allFinite() && lin_momentum.allFinite() &&
         ang_momentum.allFinite() && lin_momentum_rate.allFinite() &&
         ang_momentum_rate.allFinite();
}

void EndEffectorSpec::validate() const {
  if (id.empty()) throw std::invalid_argument("effector id is empty");
  if (!(nominal_length > 0.0))
    throw std::invalid_argument("effector '" + id + "': nominal_length must be > 0");
  if (friction_coeff < 0.0)
    throw std::invalid_argument("effector '" + id + "': mu_f must be >= 0");
  if (torsion_coeff < 0.0)
    throw std::invalid_argument("effector '" + id + "': mu_tau must be >= 0");
  if ((cop_min.array() > cop_max.array()).any())
    throw std::invalid_argument("effector '" + id + "': cop_box min > max");
  if (isHand() && (cop_min.norm() > 0.0 || cop_max.norm() > 0.0))
    throw std::invalid_argument("effector '" + id + "': hand cop_box must be {0}");
}

void ContactPhase::validate() const {
  if (t_end < t_start) throw std::invalid_argument("contact phase span reversed");
  if (rotationDefect(rotation) > 1e-10)
    throw std::invalid_argument("contact phase rotation not orthonormal");
  requireFinite(position, "contact phase position");
}

double TimeGrid::duration() const {
  return std::accumulate(dt.begin(), dt.end(), 0.0);
}

TimeGrid TimeGrid::uniform(int num_steps, double step) {
  TimeGrid grid;
  grid.dt.assign(static_cast<size_t>(num_steps), step);
  grid.validate();
  return grid;
}

void TimeGrid::validate() const {
  for (double step : dt)
    if (!(step > 0.0) || !std::isfinite(step))
      throw std::invalid_argument("time grid contains a non-positive step");
}

double rotationDefect(const Eigen::Matrix3d& rotation) {
  return (rotation.transpose() * rotation - Eigen::Matrix3d::Identity())
      .cwiseAbs()
      .maxCoeff();
}

MomentumState integrateStep(const MomentumState& prev,
                            const Eigen::Vector3d& ang_momentum_rate,
                            const std::vector<Eigen::Vector3d>& contact_forces,
                            double dt, double mass,
                            const Eigen::Vector3d& gravity) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrateStep: dt must be > 0");
  if (!(mass > 0.0)) throw std::invalid_argument("integrateStep: mass must be > 0");
  if (!prev.allFinite()) throw std::invalid_argument("integrateStep: non-finite previous state");
  requireFinite(ang_momentum_rate, "angular momentum rate");
  requireFinite(gravity, "gravity");

  Eigen::Vector3d force_sum = mass * gravity;
  for (const auto& f : contact_forces) {
    requireFinite(f, "contact force");
    force_sum += f;
  }

  MomentumState next;
  next.lin_momentum_rate = force_sum;
  next.ang_momentum_rate = ang_momentum_rate;
  next.lin_momentum = prev.lin_momentum + next.lin_momentum_rate * dt;
  next.ang_momentum = prev.ang_momentum + next.ang_momentum_rate * dt;
  next.com = prev.com + (dt / mass) * next.lin_momentum;
  return next;
}

Eigen::Vector3d kappaExact(const Eigen::Vector3d& lever,
                           const Eigen::Vector3d& force,
                           const Eigen::Vector3d& torque) {
  return lever.cross(force) + torque;
}

ContactWrench mapLocalToWorld(const ContactPhase& phase,
                              const Eigen::Vector3d& force_local,
                              double torque_z_local,
                              const Eigen::Vector2d& cop_local) {
  if (rotationDefect(phase.rotation) > 1e-10)
    throw std::invalid_argument("mapLocalToWorld: rotation not orthonormal");
  ContactWrench w;
  w.force_local = force_local;
  w.torque_z_local = torque_z_local;
  w.cop_local = cop_local;
  w.force_world = phase.rotation * force_local;
  w.torque_world = phase.rotation.col(2) * torque_z_local;
  w.cop_world = phase.rotation.leftCols<2>() * cop_local;
  return w;
}

}  // namespace momplan
