/**
 * @file scenario.hpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 */

#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "momplan/contact_plan.hpp"
#include "momplan/cost_weights.hpp"
#include "momplan/dynamics.hpp"
#include "momplan/terrain.hpp"

namespace momplan {

struct DisturbanceEvent {
  double time = 0.0;                 ///< [s] simulated time of the impulse
  Eigen::Vector3d delta_lin_momentum = Eigen::Vector3d::Zero();  ///< [kg m/s]
};

/// Robot-specific reachability data for the contact planner.
struct ReachabilitySpec {
  /// Per foot: the two offset points r_1, r_2 (in the new step's yawed
  /// frame, xy) and the radii d_1, d_2 around them.
  std::map<std::string, std::array<Eigen::Vector2d, 2>> foot_offsets;
  Eigen::Vector2d step_radius = Eigen::Vector2d(0.25, 0.25);
  double max_step_dz = 0.3;  ///< vertical reach between consecutive steps

  std::map<std::string, Eigen::Vector3d> shoulder_offsets;  ///< r_sh per hand
  Eigen::Vector3d torso_offset = Eigen::Vector3d::Zero();   ///< r_tr
  Eigen::Vector3d hand_default_pose = Eigen::Vector3d::Zero();
};

struct PlannerParams {
  std::vector<std::string> foot_order;  ///< foot moved at each phase change
  std::vector<std::string> hands;
  int phases = 3;
  int steps_per_phase = 5;
  double coarse_dt = 0.25;     ///< [s]
  int n_max = 4;               ///< max hand activations over the horizon
  int pwa_pieces_sin = 5;
  int pwa_pieces_cos = 5;
  double theta_min = -M_PI / 2.0;
  double theta_max = M_PI / 2.0;
  double force_cap_factor = 3.0;  ///< force bound = factor * M * ||g||
};

/// Initial stance of one effector.
struct InitialContact {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double yaw = 0.0;
  int region_id = -1;
  bool active = true;  ///< hands may start detached
};

struct Scenario {
  std::string name;
  int schema_version = 1;
  double mass = 1.0;                                     ///< [kg]
  Eigen::Vector3d gravity = {0.0, 0.0, -9.81};           ///< [m/s^2]
  std::vector<EndEffectorSpec> effectors;
  std::vector<TerrainRegion> regions;
  MomentumState initial_state;
  std::map<std::string, InitialContact> initial_contacts;

  double fine_dt = 0.1;  ///< [s] momentum-stage discretization
  int fine_steps = 0;    ///< 0: derive from the fixed plan horizon
  std::optional<ContactPlan> fixed_plan;  ///< for fixed-contact solves

  CostWeights weights;
  ReachabilitySpec reach;
  PlannerParams planner;
  std::vector<DisturbanceEvent> disturbances;
  double recede_interval = 0.2;  ///< [s] re-plan period for `recede`

  const EndEffectorSpec* effector(const std::string& id) const;
  const TerrainRegion* region(int id) const;
  double gravityNorm() const { return gravity.norm(); }

  /// Cross-reference and physical-parameter checks; throws naming the field.
  void validate() const;
};

}  // namespace momplan
