/**
 * @file contact_plan.cpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 */

#include "momplan/contact_plan.hpp"

#include <algorithm>
#include <stdexcept>

namespace momplan {

const ContactPhase* ContactPlan::activePhase(const std::string& effector,
                                             int t) const {
  auto it = phases.find(effector);
  if (it == phases.end()) return nullptr;
  for (const auto& phase : it->second)
    if (phase.covers(t)) return &phase;
  return nullptr;
}

std::vector<std::string> ContactPlan::effectorIds() const {
  std::vector<std::string> ids;
  ids.reserve(phases.size());
  for (const auto& [id, _] : phases) ids.push_back(id);
  return ids;  // std::map iteration is already sorted
}

void ContactPlan::validate() const {
  for (const auto& [id, list] : phases) {
    int prev_end = std::numeric_limits<int>::min();
    for (const auto& phase : list) {
      phase.validate();
      if (phase.effector != id)
        throw std::invalid_argument("plan: phase filed under wrong effector '" + id + "'");
      if (phase.t_start < prev_end)
        throw std::invalid_argument("plan: overlapping or unordered phases for '" + id + "'");
      prev_end = phase.t_end;
    }
  }
}

int ContactPlan::horizon() const {
  int h = 0;
  for (const auto& [_, list] : phases)
    for (const auto& phase : list) h = std::max(h, phase.t_end);
  return h;
}

}  // namespace momplan
