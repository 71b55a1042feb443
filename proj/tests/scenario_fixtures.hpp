// Shared in-code scenario fixtures for unit tests (the bundled JSON
// scenarios under scenarios/ are the user-facing equivalents).
#pragma once

#include <cmath>

#include "momplan/scenario.hpp"

namespace momplan::testing {

inline EndEffectorSpec makeFoot(const std::string& id) {
  EndEffectorSpec foot;
  foot.id = id;
  foot.kind = EffectorKind::Foot;
  foot.nominal_length = 0.45;
  foot.cop_min = {-0.04, -0.025};
  foot.cop_max = {0.04, 0.025};
  foot.friction_coeff = 0.7;
  foot.torsion_coeff = 0.05;
  return foot;
}

inline EndEffectorSpec makeHand(const std::string& id) {
  EndEffectorSpec hand;
  hand.id = id;
  hand.kind = EffectorKind::Hand;
  hand.nominal_length = 0.5;
  hand.cop_min.setZero();
  hand.cop_max.setZero();
  hand.friction_coeff = 0.6;
  hand.torsion_coeff = 0.03;
  return hand;
}

inline ContactPhase makePhase(const std::string& eff,
                              const Eigen::Vector3d& pos, int region,
                              int t_start, int t_end,
                              const Eigen::Matrix3d& rot =
                                  Eigen::Matrix3d::Identity()) {
  ContactPhase phase;
  phase.effector = eff;
  phase.position = pos;
  phase.rotation = rot;
  phase.region_id = region;
  phase.t_start = t_start;
  phase.t_end = t_end;
  return phase;
}

/// Two feet standing on flat ground, N timesteps of 100 ms.
inline Scenario makeStandingScenario(int num_steps = 10) {
  Scenario sc;
  sc.name = "standing-fixture";
  sc.mass = 1.2;
  sc.effectors = {makeFoot("lf"), makeFoot("rf")};
  sc.regions = {TerrainRegion::rectangle(0, {0, 0, 0}, {0, 0, 1}, 0.0, 1.0,
                                         1.0, 0.8)};
  sc.initial_state.com = {0.0, 0.0, 0.30};
  sc.fine_dt = 0.1;
  sc.fine_steps = num_steps;

  ContactPlan plan;
  plan.phases["lf"] = {makePhase("lf", {0.0, 0.09, 0.0}, 0, 0, num_steps)};
  plan.phases["rf"] = {makePhase("rf", {0.0, -0.09, 0.0}, 0, 0, num_steps)};
  sc.fixed_plan = plan;

  sc.initial_contacts["lf"] = {{0.0, 0.09, 0.0}, 0.0, 0, true};
  sc.initial_contacts["rf"] = {{0.0, -0.09, 0.0}, 0.0, 0, true};

  sc.weights.terminal.com_target = sc.initial_state.com;
  // strong capturability penalty and a light bound penalty keep the
  // optimum at (near-)static equilibrium instead of a crouch-and-recover
  sc.weights.q_lin = 10.0 * Eigen::Matrix3d::Identity();
  sc.weights.q_bounds = 0.01 * Eigen::Matrix3d::Identity();
  return sc;
}

/// Two feet, one forward step of the left foot with a two-step swing gap.
inline Scenario makeWalkScenario(int num_steps = 16) {
  Scenario sc = makeStandingScenario(num_steps);
  sc.name = "walk-fixture";
  const int lift = num_steps / 2 - 1;
  const int land = lift + 2;
  ContactPlan plan;
  plan.phases["lf"] = {
      makePhase("lf", {0.0, 0.09, 0.0}, 0, 0, lift),
      makePhase("lf", {0.18, 0.09, 0.0}, 0, land, num_steps)};
  plan.phases["rf"] = {makePhase("rf", {0.0, -0.09, 0.0}, 0, 0, num_steps)};
  sc.fixed_plan = plan;
  sc.weights.terminal.com_target = {0.09, 0.0, 0.30};
  return sc;
}

/// Two feet on flat ground with planner data; `split_ground` replaces the
/// single ground plate with two plates separated by `gap` along x.
inline Scenario makeSteppingScenario(int phases = 3, bool split_ground = false,
                                     double gap = 0.05) {
  Scenario sc = makeStandingScenario(phases * 5);
  sc.name = "stepping-fixture";
  sc.fixed_plan.reset();
  sc.regions.clear();
  if (split_ground) {
    sc.regions.push_back(
        TerrainRegion::rectangle(0, {0.0, 0.0, 0.0}, {0, 0, 1}, 0.0, 0.22, 0.5, 0.8));
    const double x1 = 0.22 + gap + 0.22;
    sc.regions.push_back(TerrainRegion::rectangle(
        1, {x1, 0.0, 0.0}, {0, 0, 1}, 0.0, 0.22, 0.5, 0.8));
  } else {
    sc.regions.push_back(
        TerrainRegion::rectangle(0, {0.2, 0.0, 0.0}, {0, 0, 1}, 0.0, 0.7, 0.5, 0.8));
  }
  sc.planner.phases = phases;
  sc.planner.steps_per_phase = 5;
  sc.planner.coarse_dt = 0.2;
  sc.planner.foot_order = {"lf", "rf"};
  sc.planner.pwa_pieces_sin = 2;
  sc.planner.pwa_pieces_cos = 2;
  sc.planner.theta_min = -M_PI / 4.0;
  sc.planner.theta_max = M_PI / 4.0;
  sc.reach.foot_offsets["lf"] = {Eigen::Vector2d(0.03, 0.18),
                                 Eigen::Vector2d(-0.03, 0.18)};
  sc.reach.foot_offsets["rf"] = {Eigen::Vector2d(0.03, -0.18),
                                 Eigen::Vector2d(-0.03, -0.18)};
  sc.reach.step_radius = {0.16, 0.16};
  sc.reach.max_step_dz = 0.2;
  sc.weights.terminal.com_target = {0.15, 0.0, 0.30};
  sc.weights.terminal.com_weight = Eigen::Vector3d::Constant(50.0);
  return sc;
}

/// One hand hanging from overhead bars; no feet.  Mirrors the planner
/// binary-count example: H and J per phase for the hand, S/C per phase.
inline Scenario makeHangingScenario(int phases = 3, int num_bars = 3) {
  Scenario sc;
  sc.name = "hanging-fixture";
  sc.mass = 1.0;
  sc.effectors = {makeHand("h")};
  for (int b = 0; b < num_bars; ++b)
    sc.regions.push_back(TerrainRegion::rectangle(
        b, {0.25 * b, 0.0, 0.62}, {0, 0, 1}, 0.0, 0.08, 0.25, 0.9));
  sc.initial_state.com = {0.0, 0.0, 0.25};
  sc.fine_dt = 0.1;
  sc.initial_contacts["h"] = {{0.0, 0.0, 0.62}, 0.0, 0, true};
  sc.planner.phases = phases;
  sc.planner.steps_per_phase = 4;
  sc.planner.coarse_dt = 0.2;
  sc.planner.hands = {"h"};
  sc.planner.n_max = 2;
  sc.planner.pwa_pieces_sin = 2;
  sc.planner.pwa_pieces_cos = 2;
  sc.planner.theta_min = -M_PI / 4.0;
  sc.planner.theta_max = M_PI / 4.0;
  sc.reach.shoulder_offsets["h"] = {0.0, 0.0, 0.15};
  sc.reach.torso_offset = {0.0, 0.0, 0.05};
  sc.reach.hand_default_pose = {0.0, 0.0, 0.35};
  sc.weights.q_lin = 10.0 * Eigen::Matrix3d::Identity();
  sc.weights.q_bounds = 0.01 * Eigen::Matrix3d::Identity();
  sc.weights.terminal.com_target = sc.initial_state.com;
  sc.weights.terminal.com_weight = Eigen::Vector3d::Constant(50.0);
  return sc;
}

/// Free fall: no effectors, no contacts.
inline Scenario makeFreeFallScenario(int num_steps = 5) {
  Scenario sc;
  sc.name = "freefall-fixture";
  sc.mass = 1.0;
  sc.initial_state.com = {0.0, 0.0, 1.0};
  sc.fine_dt = 0.1;
  sc.fine_steps = num_steps;
  sc.fixed_plan = ContactPlan{};
  sc.weights.terminal.com_weight.setZero();
  sc.weights.terminal.lin_weight.setZero();
  sc.weights.terminal.ang_weight.setZero();
  return sc;
}

}  // namespace momplan::testing
