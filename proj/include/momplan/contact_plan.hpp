/**
 * @file contact_plan.hpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 */

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "momplan/dynamics.hpp"

namespace momplan {

/// A full contact plan: for every effector, an ordered list of phases with
/// fixed position/orientation.  Swing intervals are simply timesteps not
/// covered by any phase of that effector.
struct ContactPlan {
  std::map<std::string, std::vector<ContactPhase>> phases;
  /// Planner decode extras, empty when the plan was authored by hand.
  std::map<std::string, std::vector<double>> phase_yaw;  ///< theta_j per phase
  double objective = 0.0;

  /// Phase of `effector` active at timestep t, or nullptr.
  const ContactPhase* activePhase(const std::string& effector, int t) const;
  /// All effector ids, sorted.
  std::vector<std::string> effectorIds() const;
  /// Checks span ordering/disjointness and rotations; throws on violation.
  void validate() const;
  /// Largest t_end over all phases.
  int horizon() const;
};

}  // namespace momplan
