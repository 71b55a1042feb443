/**
 * @file dynamics.hpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 *
 * Centroidal momentum state, end-effector and contact-phase descriptions,
 * and the discretized momentum dynamics map.
 */

#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace momplan {

/// Centroidal state at one timestep: CoM position, linear/angular momentum
/// and their rates, all expressed in the inertial frame.
struct MomentumState {
  Eigen::Vector3d com = Eigen::Vector3d::Zero();           ///< r [m]
  Eigen::Vector3d lin_momentum = Eigen::Vector3d::Zero();  ///< l [kg m/s]
  Eigen::Vector3d ang_momentum = Eigen::Vector3d::Zero();  ///< k [kg m^2/s]
  Eigen::Vector3d lin_momentum_rate = Eigen::Vector3d::Zero();  ///< l_dot [N]
  Eigen::Vector3d ang_momentum_rate = Eigen::Vector3d::Zero();  ///< k_dot [N m]

  bool allFinite() const;
};

enum class EffectorKind { Foot, Hand };

/// Static description of one end-effector: normalization length, friction
/// and torsion coefficients, and the conservative CoP box (feet only; hands
/// are point contacts with a degenerate box).
struct EndEffectorSpec {
  std::string id;
  EffectorKind kind = EffectorKind::Foot;
  double nominal_length = 0.0;  ///< l_max [m], also the length normalizer
  Eigen::Vector2d cop_min = Eigen::Vector2d::Zero();  ///< [m]
  Eigen::Vector2d cop_max = Eigen::Vector2d::Zero();  ///< [m]
  double friction_coeff = 0.0;  ///< mu_f
  double torsion_coeff = 0.0;   ///< mu_tau

  bool isHand() const { return kind == EffectorKind::Hand; }
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// One contact phase of an effector: fixed position and orientation over a
/// half-open span of timesteps.
struct ContactPhase {
  std::string effector;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();   ///< p [m], world
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();  ///< world-from-local
  int region_id = -1;
  int t_start = 0;  ///< first timestep of the phase
  int t_end = 0;    ///< one past the last timestep

  bool covers(int t) const { return t >= t_start && t < t_end; }
  void validate() const;
};

/// Discrete time grid with per-step durations and the phase map phi(t).
struct TimeGrid {
  std::vector<double> dt;  ///< per-step durations Delta_t [s], size N

  int steps() const { return static_cast<int>(dt.size()); }
  double duration() const;
  static TimeGrid uniform(int num_steps, double step);
  void validate() const;
};

/// Contact wrench of one effector at one timestep, in local (contact) frame
/// together with its world-frame images.  Local torque has only a z
/// component; local x/y torques are identically zero.
struct ContactWrench {
  Eigen::Vector3d force_local = Eigen::Vector3d::Zero();   ///< [N]
  double torque_z_local = 0.0;                             ///< [N m]
  Eigen::Vector2d cop_local = Eigen::Vector2d::Zero();     ///< [m]
  Eigen::Vector3d force_world = Eigen::Vector3d::Zero();
  Eigen::Vector3d torque_world = Eigen::Vector3d::Zero();
  Eigen::Vector3d cop_world = Eigen::Vector3d::Zero();
};

/// Maximum orthonormality defect ||R^T R - I||_inf.
double rotationDefect(const Eigen::Matrix3d& rotation);

/// One step of the discretized centroidal dynamics.  Semi-implicit update:
/// the CoM row uses the updated linear momentum l_t, not l_{t-1}.
///
///   l_t = l_{t-1} + l_dot_t * dt,   l_dot_t = M g + sum_e f_e
///   k_t = k_{t-1} + k_dot_t * dt
///   r_t = r_{t-1} + (dt / M) l_t
///
/// Throws std::invalid_argument on non-finite input, dt <= 0 or mass <= 0.
MomentumState integrateStep(const MomentumState& prev,
                            const Eigen::Vector3d& ang_momentum_rate,
                            const std::vector<Eigen::Vector3d>& contact_forces,
                            double dt, double mass,
                            const Eigen::Vector3d& gravity);

/// End-effector contribution to the angular momentum rate:
/// kappa = lever x force + torque, with lever = p + z - r built by the caller.
Eigen::Vector3d kappaExact(const Eigen::Vector3d& lever,
                           const Eigen::Vector3d& force,
                           const Eigen::Vector3d& torque);

/// Maps a local wrench into the world frame:
///   f = R f_L,  tau = R_col_z tau_z_L,  z = R_cols_xy z_xy_L.
/// Only the world-frame members of the result are recomputed; local members
/// are copied through.  Throws std::invalid_argument if R is not orthonormal.
ContactWrench mapLocalToWorld(const ContactPhase& phase,
                              const Eigen::Vector3d& force_local,
                              double torque_z_local,
                              const Eigen::Vector2d& cop_local);

}  // namespace momplan
