/**
 * @file scenario.cpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 */

#include "momplan/scenario.hpp"

#include <stdexcept>

namespace momplan {

const EndEffectorSpec* Scenario::effector(const std::string& id) const {
  for (const auto& e : effectors)
    if (e.id == id) return &e;
  return nullptr;
}

const TerrainRegion* Scenario::region(int id) const {
  for (const auto& r : regions)
    if (r.id == id) return &r;
  return nullptr;
}

void Scenario::validate() const {
  if (!(mass > 0.0)) throw std::invalid_argument("mass must be > 0");
  if (!(gravityNorm() > 0.0))
    throw std::invalid_argument("gravity must be nonzero");
  if (!(fine_dt > 0.0)) throw std::invalid_argument("time.fine_dt must be > 0");
  if (effectors.empty() && fixed_plan && !fixed_plan->phases.empty())
    throw std::invalid_argument("fixed plan references effectors but none are defined");
  for (size_t i = 0; i < effectors.size(); ++i) {
    try {
      effectors[i].validate();
    } catch (const std::invalid_argument& err) {
      throw std::invalid_argument("effectors[" + std::to_string(i) +
                                  "]: " + err.what());
    }
  }
  for (const auto& r : regions) r.validate();
  if (!initial_state.allFinite())
    throw std::invalid_argument("initial_state has non-finite entries");

  for (const auto& [id, contact] : initial_contacts) {
    if (!effector(id))
      throw std::invalid_argument("initial_contacts references unknown effector '" + id + "'");
    if (contact.region_id >= 0 && !region(contact.region_id))
      throw std::invalid_argument("initial_contacts['" + id +
                                  "'] references unknown region " +
                                  std::to_string(contact.region_id));
  }
  if (fixed_plan) {
    fixed_plan->validate();
    for (const auto& [id, phases] : fixed_plan->phases) {
      if (!effector(id))
        throw std::invalid_argument("fixed_plan references unknown effector '" + id + "'");
      for (const auto& ph : phases)
        if (ph.region_id >= 0 && !region(ph.region_id))
          throw std::invalid_argument("fixed_plan phase references unknown region " +
                                      std::to_string(ph.region_id));
    }
  }
  for (const auto& id : planner.foot_order) {
    const auto* e = effector(id);
    if (!e || e->isHand())
      throw std::invalid_argument("planner.foot_order entry '" + id +
                                  "' is not a foot effector");
  }
  for (const auto& id : planner.hands) {
    const auto* e = effector(id);
    if (!e || !e->isHand())
      throw std::invalid_argument("planner.hands entry '" + id +
                                  "' is not a hand effector");
    if (!reach.shoulder_offsets.count(id))
      throw std::invalid_argument("reachability.shoulder_offsets missing for hand '" +
                                  id + "'");
  }
  if (planner.phases < 1) throw std::invalid_argument("planner.phases must be >= 1");
  if (planner.steps_per_phase < 1)
    throw std::invalid_argument("planner.steps_per_phase must be >= 1");
  if (!(planner.coarse_dt > 0.0))
    throw std::invalid_argument("planner.coarse_dt must be > 0");
  if (planner.pwa_pieces_sin < 1 || planner.pwa_pieces_cos < 1)
    throw std::invalid_argument("planner PWA piece counts must be >= 1");
  if (!(planner.theta_min < planner.theta_max))
    throw std::invalid_argument("planner theta range is empty");
  weights.validate();
}

}  // namespace momplan
