/**
 * @file contact_planner.cpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 */

#include "momplan/contact_planner.hpp"

#include <algorithm>
#include <future>
#include <queue>
#include <set>
#include <stdexcept>

#include "momplan/dc_decomposition.hpp"

namespace momplan {

namespace {

// Position of an effector during a phase: a decided placement (variable)
// or the initial stance (constant).
struct PosRef {
  bool variable = false;
  Eigen::Index var = -1;            // base of 3 vars when variable
  Eigen::Vector3d value = Eigen::Vector3d::Zero();  // when constant
  int placement = -1;               // index into layout.placements
  int region_id = -1;               // when constant
  double yaw = 0.0;                 // when constant
};

struct BuildState {
  const Scenario& sc;
  MiqcqpProblem out;
  int num_phases = 0;
  int spp = 0;
  std::vector<std::string> feet;   // participating feet (plan order domain)
  std::vector<std::string> hands;
  Eigen::AlignedBox3d global_box;
  double force_cap = 0.0;
};

std::string tag(const char* base, int a, int b = -1) {
  std::string s = std::string(base) + "[" + std::to_string(a);
  if (b >= 0) s += "," + std::to_string(b);
  return s + "]";
}

// Upper bound of an affine expression over the variable box; used to pick
// per-row big-M constants.
double intervalMax(const QcqpProblem& prob, const AffineExpr& expr) {
  double hi = expr.constant;
  const auto& lb = prob.lowerBounds();
  const auto& ub = prob.upperBounds();
  for (const auto& [var, coeff] : expr.terms) {
    const double a = coeff * lb[var], b = coeff * ub[var];
    const double best = std::max(a, b);
    if (!std::isfinite(best))
      throw std::invalid_argument(
          "big-M derivation hit an unbounded variable (index " +
          std::to_string(var) + ")");
    hi += best;
  }
  return hi;
}

// expr <= 0 whenever `binary` is 1 (row relaxed by M(1 - binary) otherwise).
void addImplication(QcqpProblem& prob, AffineExpr expr, Eigen::Index binary,
                    std::string label) {
  const double big_m = std::max(0.0, intervalMax(prob, expr));
  expr.add(binary, big_m);
  expr.constant -= big_m;
  prob.addInequality(std::move(expr), std::move(label));
}

// expr <= 0 whenever both binaries are 1.
void addImplication2(QcqpProblem& prob, AffineExpr expr, Eigen::Index bin_a,
                     Eigen::Index bin_b, std::string label) {
  const double big_m = std::max(0.0, intervalMax(prob, expr));
  expr.add(bin_a, big_m);
  expr.add(bin_b, big_m);
  expr.constant -= 2.0 * big_m;
  prob.addInequality(std::move(expr), std::move(label));
}

int phaseOf(const BuildState& st, int step) { return step / st.spp; }

}  // namespace

int MiqcqpProblem::freeBinaryCount() const {
  int count = 0;
  for (const auto& group : exactly_one)
    if (group.vars.size() > 1) count += static_cast<int>(group.vars.size());
  return count;
}

MiqcqpProblem buildContactMiqcqp(const Scenario& scenario, int num_phases) {
  scenario.validate();
  if (num_phases < 1)
    throw std::invalid_argument("buildContactMiqcqp: phases must be >= 1");
  if (scenario.regions.empty())
    throw std::invalid_argument("buildContactMiqcqp: no terrain regions");

  BuildState st{scenario, {}, num_phases, scenario.planner.steps_per_phase};
  MiqcqpProblem& out = st.out;
  QcqpProblem& prob = out.problem;
  PlannerLayout& layout = out.layout;
  const auto& plan_params = scenario.planner;
  const int num_steps = num_phases * st.spp;
  out.coarse_grid = TimeGrid::uniform(num_steps, plan_params.coarse_dt);
  out.pwa = buildPwaSincos(plan_params.pwa_pieces_sin, plan_params.pwa_pieces_cos,
                           plan_params.theta_min, plan_params.theta_max);
  layout.phases = num_phases;
  layout.steps_per_phase = st.spp;

  // participating effectors
  for (const auto& id : plan_params.foot_order)
    if (std::find(st.feet.begin(), st.feet.end(), id) == st.feet.end())
      st.feet.push_back(id);
  for (const auto& [id, contact] : scenario.initial_contacts) {
    const auto* eff = scenario.effector(id);
    if (eff && !eff->isHand() &&
        std::find(st.feet.begin(), st.feet.end(), id) == st.feet.end())
      st.feet.push_back(id);
  }
  std::sort(st.feet.begin(), st.feet.end());
  st.hands = plan_params.hands;
  std::sort(st.hands.begin(), st.hands.end());
  for (const auto& id : st.feet)
    if (!scenario.initial_contacts.count(id))
      throw std::invalid_argument("foot '" + id + "' has no initial contact");
  for (const auto& id : st.hands)
    if (!scenario.initial_contacts.count(id))
      throw std::invalid_argument("hand '" + id + "' has no initial contact");

  st.force_cap =
      plan_params.force_cap_factor * scenario.mass * scenario.gravityNorm();
  st.global_box.setEmpty();
  for (const auto& region : scenario.regions)
    st.global_box.extend(region.bounding_box);
  double max_len = 0.0;
  for (const auto& eff : scenario.effectors)
    max_len = std::max(max_len, eff.nominal_length);
  st.global_box.min() -= Eigen::Vector3d::Constant(0.25 + max_len);
  st.global_box.max() += Eigen::Vector3d::Constant(0.25 + max_len);

  // ---- decision variables --------------------------------------------------
  layout.theta.resize(num_phases);
  layout.sin_var.resize(num_phases);
  layout.cos_var.resize(num_phases);
  for (int j = 0; j < num_phases; ++j) {
    layout.theta[j] = prob.addBlock(tag("theta", j), 1);
    layout.sin_var[j] = prob.addBlock(tag("s", j), 1);
    layout.cos_var[j] = prob.addBlock(tag("c", j), 1);
    prob.setBounds(layout.theta[j], plan_params.theta_min, plan_params.theta_max);
    prob.setBounds(layout.sin_var[j], -1.0, 1.0);
    prob.setBounds(layout.cos_var[j], -1.0, 1.0);
  }

  const bool feet_move = !plan_params.foot_order.empty() && num_phases > 1;
  if (feet_move) {
    const auto& order = plan_params.foot_order;
    for (int k = 1; k < num_phases; ++k) {
      FootPlacement placement;
      placement.effector = order[(k - 1) % order.size()];
      placement.phase = k;
      placement.position = prob.addBlock("p[" + placement.effector + "," +
                                             std::to_string(k) + "]",
                                         3);
      for (int a = 0; a < 3; ++a)
        prob.setBounds(placement.position + a, st.global_box.min()[a],
                       st.global_box.max()[a]);
      layout.placements.push_back(std::move(placement));
    }
  }
  for (const auto& id : st.hands) {
    auto& list = layout.hands[id];
    list.resize(num_phases);
    for (int j = 0; j < num_phases; ++j) {
      list[j].position = prob.addBlock("p[" + id + "," + std::to_string(j) + "]", 3);
      for (int a = 0; a < 3; ++a)
        prob.setBounds(list[j].position + a, st.global_box.min()[a],
                       st.global_box.max()[a]);
    }
  }

  // binaries (all relaxed to [0, 1] here)
  auto addBinary = [&](const std::string& name, BinaryGroupKind kind,
                       int phase, int choice, const std::string& effector) {
    const Eigen::Index var = prob.addBlock(name, 1);
    prob.setBounds(var, 0.0, 1.0);
    out.binaries.push_back({var, kind, phase, choice, effector});
    return var;
  };
  auto addExactlyOne = [&](std::vector<Eigen::Index> vars, std::string label) {
    AffineExpr row;
    for (Eigen::Index v : vars) row.add(v, 1.0);
    row.constant = -1.0;
    prob.addEquality(row, label);
    out.exactly_one.push_back({std::move(vars), std::move(label)});
  };

  for (auto& placement : layout.placements) {
    for (const auto& region : scenario.regions)
      placement.region_binaries.push_back(
          addBinary("H[" + placement.effector + "," +
                        std::to_string(placement.phase) + "," +
                        std::to_string(region.id) + "]",
                    BinaryGroupKind::Region, placement.phase, region.id,
                    placement.effector));
    addExactlyOne(placement.region_binaries,
                  "region of " + placement.effector + "@" +
                      std::to_string(placement.phase));
  }
  layout.sin_binaries.resize(num_phases);
  layout.cos_binaries.resize(num_phases);
  for (int j = 0; j < num_phases; ++j) {
    for (size_t u = 0; u < out.pwa.sin_pieces.size(); ++u)
      layout.sin_binaries[j].push_back(
          addBinary(tag("S", j, static_cast<int>(u)), BinaryGroupKind::SinPiece,
                    j, static_cast<int>(u), ""));
    addExactlyOne(layout.sin_binaries[j], "sin piece@" + std::to_string(j));
    for (size_t v = 0; v < out.pwa.cos_pieces.size(); ++v)
      layout.cos_binaries[j].push_back(
          addBinary(tag("C", j, static_cast<int>(v)), BinaryGroupKind::CosPiece,
                    j, static_cast<int>(v), ""));
    addExactlyOne(layout.cos_binaries[j], "cos piece@" + std::to_string(j));
  }
  for (const auto& id : st.hands) {
    auto& list = layout.hands.at(id);
    for (int j = 0; j < num_phases; ++j) {
      for (const auto& region : scenario.regions)
        list[j].region_binaries.push_back(addBinary(
            "H[" + id + "," + std::to_string(j) + "," +
                std::to_string(region.id) + "]",
            BinaryGroupKind::Region, j, region.id, id));
      addExactlyOne(list[j].region_binaries,
                    "region of " + id + "@" + std::to_string(j));
      list[j].contact = addBinary("J1[" + id + "," + std::to_string(j) + "]",
                                  BinaryGroupKind::HandContact, j, 1, id);
      list[j].release = addBinary("J2[" + id + "," + std::to_string(j) + "]",
                                  BinaryGroupKind::HandContact, j, 0, id);
      addExactlyOne({list[j].contact, list[j].release},
                    "activation of " + id + "@" + std::to_string(j));
    }
    AffineExpr at_most;
    MiqcqpProblem::AtMostRow row;
    for (int j = 0; j < num_phases; ++j) {
      at_most.add(list[j].contact, 1.0);
      row.vars.push_back(list[j].contact);
    }
    at_most.constant = -static_cast<double>(plan_params.n_max);
    prob.addInequality(at_most, "n_max of " + id);
    row.bound = plan_params.n_max;
    row.label = "n_max of " + id;
    out.at_most.push_back(std::move(row));
  }

  // ---- schedule helpers -----------------------------------------------------
  auto placementFor = [&](const std::string& foot, int phase) -> const FootPlacement* {
    const FootPlacement* found = nullptr;
    for (const auto& pl : layout.placements)
      if (pl.effector == foot && pl.phase <= phase) found = &pl;
    return found;
  };
  auto footPos = [&](const std::string& foot, int phase) -> PosRef {
    if (const FootPlacement* pl = placementFor(foot, phase)) {
      PosRef ref;
      ref.variable = true;
      ref.var = pl->position;
      ref.placement = static_cast<int>(pl - layout.placements.data());
      return ref;
    }
    const InitialContact& init = scenario.initial_contacts.at(foot);
    PosRef ref;
    ref.value = init.position;
    ref.region_id = init.region_id;
    ref.yaw = init.yaw;
    return ref;
  };
  auto footActive = [&](const std::string& foot, int phase) {
    for (const auto& pl : layout.placements)
      if (pl.effector == foot && pl.phase == phase + 1) return false;
    return true;
  };

  // ---- momentum core on the coarse grid -------------------------------------
  VariableLayout& core = layout.momentum;
  core.num_steps = num_steps;
  core.com.resize(num_steps);
  core.lin.resize(num_steps);
  core.ang.resize(num_steps);
  core.lin_rate.resize(num_steps);
  core.ang_rate.resize(num_steps);
  const double mass = scenario.mass;
  const double gnorm = scenario.gravityNorm();
  const Eigen::Vector3d com_lo =
      st.global_box.min() - Eigen::Vector3d::Constant(0.25 + max_len);
  const Eigen::Vector3d com_hi =
      st.global_box.max() + Eigen::Vector3d::Constant(0.25 + max_len);

  std::vector<std::string> effector_ids = st.feet;
  effector_ids.insert(effector_ids.end(), st.hands.begin(), st.hands.end());
  std::sort(effector_ids.begin(), effector_ids.end());
  auto isHandId = [&](const std::string& id) {
    return std::find(st.hands.begin(), st.hands.end(), id) != st.hands.end();
  };
  auto activeAtStep = [&](const std::string& id, int step) {
    if (isHandId(id)) return true;  // gated by J, variables always present
    return footActive(id, phaseOf(st, step));
  };

  for (int t = 1; t <= num_steps; ++t) {
    core.com[t - 1] = prob.addBlock(tag("r", t), 3);
    core.lin[t - 1] = prob.addBlock(tag("l", t), 3);
    core.ang[t - 1] = prob.addBlock(tag("k", t), 3);
    core.lin_rate[t - 1] = prob.addBlock(tag("ldot", t), 3);
    core.ang_rate[t - 1] = prob.addBlock(tag("kdot", t), 3);
    for (int a = 0; a < 3; ++a)
      prob.setBounds(core.com[t - 1] + a, com_lo[a], com_hi[a]);
    for (const auto& id : effector_ids) {
      if (!activeAtStep(id, t - 1)) continue;
      const EndEffectorSpec& eff = *scenario.effector(id);
      core.alpha[id] = eff.nominal_length * mass * gnorm;
      EffectorStepVars v;
      v.is_foot = !eff.isHand();
      v.f_local = prob.addBlock("fL[" + id + "," + std::to_string(t) + "]", 3);
      v.tau_local = prob.addBlock("tauL[" + id + "," + std::to_string(t) + "]", 1);
      if (v.is_foot) {
        v.cop_local = prob.addBlock("zL[" + id + "," + std::to_string(t) + "]", 2);
        for (int a = 0; a < 2; ++a)
          prob.setBounds(v.cop_local + a, eff.cop_min[a], eff.cop_max[a]);
      }
      v.f_world = prob.addBlock("f[" + id + "," + std::to_string(t) + "]", 3);
      v.tau_world = prob.addBlock("tau[" + id + "," + std::to_string(t) + "]", 3);
      if (v.is_foot)
        v.cop_world = prob.addBlock("z[" + id + "," + std::to_string(t) + "]", 3);
      v.u_plus = prob.addBlock("uplus[" + id + "," + std::to_string(t) + "]", 3);
      v.u_minus = prob.addBlock("uminus[" + id + "," + std::to_string(t) + "]", 3);
      static const char* dc_names[6] = {"dca", "dcb", "dcc", "dcd", "dce", "dcf"};
      for (int d = 0; d < 6; ++d)
        v.dc[d] = prob.addBlock(std::string(dc_names[d]) + "[" + id + "," +
                                    std::to_string(t) + "]",
                                2);
      // bounds used by the big-M derivations
      const double cap = st.force_cap;
      prob.setBounds(v.f_local + 0, -cap, cap);
      prob.setBounds(v.f_local + 1, -cap, cap);
      prob.setBounds(v.f_local + 2, 0.0, cap);
      for (int a = 0; a < 3; ++a)
        prob.setBounds(v.f_world + a, -1.8 * cap, 1.8 * cap);
      const double tau_cap = eff.torsion_coeff * cap;
      prob.setBounds(v.tau_local, -tau_cap, tau_cap);
      for (int a = 0; a < 3; ++a)
        prob.setBounds(v.tau_world + a, -1.8 * tau_cap, 1.8 * tau_cap);
      if (v.is_foot) {
        const double cop_cap =
            2.0 * std::max(eff.cop_max.cwiseAbs().maxCoeff(),
                           eff.cop_min.cwiseAbs().maxCoeff());
        for (int a = 0; a < 3; ++a)
          prob.setBounds(v.cop_world + a, -cop_cap, cop_cap);
      }
      core.effector_vars[{id, t}] = v;
    }
  }

  // dynamics equalities
  const Eigen::Vector3d r0 = scenario.initial_state.com;
  const Eigen::Vector3d l0 = scenario.initial_state.lin_momentum;
  const Eigen::Vector3d k0 = scenario.initial_state.ang_momentum;
  const double dt = plan_params.coarse_dt;
  for (int t = 1; t <= num_steps; ++t) {
    for (int a = 0; a < 3; ++a) {
      AffineExpr com_row;
      com_row.add(core.com[t - 1] + a, 1.0);
      com_row.add(core.lin[t - 1] + a, -dt / mass);
      if (t > 1)
        com_row.add(core.com[t - 2] + a, -1.0);
      else
        com_row.constant = -r0[a];
      prob.addEquality(std::move(com_row));

      AffineExpr lin_row;
      lin_row.add(core.lin[t - 1] + a, 1.0);
      lin_row.add(core.lin_rate[t - 1] + a, -dt);
      if (t > 1)
        lin_row.add(core.lin[t - 2] + a, -1.0);
      else
        lin_row.constant = -l0[a];
      prob.addEquality(std::move(lin_row));

      AffineExpr ang_row;
      ang_row.add(core.ang[t - 1] + a, 1.0);
      ang_row.add(core.ang_rate[t - 1] + a, -dt);
      if (t > 1)
        ang_row.add(core.ang[t - 2] + a, -1.0);
      else
        ang_row.constant = -k0[a];
      prob.addEquality(std::move(ang_row));

      AffineExpr force_row;
      force_row.add(core.lin_rate[t - 1] + a, 1.0);
      force_row.constant = -mass * scenario.gravity[a];
      AffineExpr torque_row;
      torque_row.add(core.ang_rate[t - 1] + a, 1.0);
      for (const auto& id : effector_ids) {
        auto it = core.effector_vars.find({id, t});
        if (it == core.effector_vars.end()) continue;
        force_row.add(it->second.f_world + a, -1.0);
        const double quarter_alpha = 0.25 * core.alpha[id];
        torque_row.add(it->second.u_plus + a, -quarter_alpha);
        torque_row.add(it->second.u_minus + a, quarter_alpha);
        torque_row.add(it->second.tau_world + a, -1.0);
      }
      prob.addEquality(std::move(force_row));
      prob.addEquality(std::move(torque_row));
    }
  }

  // per-(effector, step) constraints
  for (const auto& [key, v] : core.effector_vars) {
    const auto& [id, t] = key;
    const int phase = phaseOf(st, t - 1);
    const EndEffectorSpec& eff = *scenario.effector(id);
    const bool hand = eff.isHand();
    const double len = eff.nominal_length;
    const double force_norm = mass * gnorm;

    PosRef pos;
    const HandPhaseVars* hand_vars = nullptr;
    if (hand) {
      hand_vars = &layout.hands.at(id)[phase];
      pos.variable = true;
      pos.var = hand_vars->position;
    } else {
      pos = footPos(id, phase);
    }

    // frame mapping, gated by the region choice of the position
    const std::vector<Eigen::Index>* region_bins = nullptr;
    if (hand)
      region_bins = &hand_vars->region_binaries;
    else if (pos.variable)
      region_bins = &layout.placements[pos.placement].region_binaries;

    auto mapRows = [&](const Eigen::Matrix3d& rot, const Eigen::Index* gate) {
      for (int a = 0; a < 3; ++a) {
        AffineExpr f_map;
        f_map.add(v.f_world + a, 1.0);
        for (int b = 0; b < 3; ++b) f_map.add(v.f_local + b, -rot(a, b));
        AffineExpr tau_map;
        tau_map.add(v.tau_world + a, 1.0);
        tau_map.add(v.tau_local, -rot(a, 2));
        AffineExpr cop_map;
        if (v.is_foot) {
          cop_map.add(v.cop_world + a, 1.0);
          cop_map.add(v.cop_local + 0, -rot(a, 0));
          cop_map.add(v.cop_local + 1, -rot(a, 1));
        }
        if (!gate) {
          prob.addEquality(std::move(f_map));
          prob.addEquality(std::move(tau_map));
          if (v.is_foot) prob.addEquality(std::move(cop_map));
        } else {
          auto both = [&](AffineExpr row) {
            AffineExpr neg = row;
            neg *= -1.0;
            addImplication(prob, std::move(row), *gate, "frame map");
            addImplication(prob, std::move(neg), *gate, "frame map");
          };
          both(std::move(f_map));
          both(std::move(tau_map));
          if (v.is_foot) both(std::move(cop_map));
        }
      }
    };
    if (region_bins) {
      for (size_t ri = 0; ri < scenario.regions.size(); ++ri)
        mapRows(scenario.regions[ri].rotation, &(*region_bins)[ri]);
    } else {
      const TerrainRegion* region = scenario.region(pos.region_id);
      mapRows(region ? region->rotation : Eigen::Matrix3d::Identity(), nullptr);
    }

    // decomposition definitions; lever = p + z_world - r
    auto leverTerm = [&](AffineExpr& row, int a, double sign) {
      if (v.cop_world >= 0) row.add(v.cop_world + a, sign / len);
      row.add(core.com[t - 1] + a, -sign / len);
      if (pos.variable)
        row.add(pos.var + a, sign / len);
      else
        row.constant += sign * pos.value[a] / len;
    };
    const int lever_axis[6] = {2, 1, 2, 0, 1, 0};
    const double lever_sign[6] = {-1, 1, 1, -1, -1, 1};
    for (int row_i = 0; row_i < 6; ++row_i) {
      AffineExpr row;
      row.add(v.dc[row_i / 2] + (row_i % 2), 1.0);
      leverTerm(row, lever_axis[row_i], -lever_sign[row_i]);
      prob.addEquality(std::move(row));
    }
    const int force_axis[6] = {1, 2, 0, 2, 0, 1};
    for (int row_i = 0; row_i < 6; ++row_i) {
      AffineExpr row;
      row.add(v.dc[3 + row_i / 2] + (row_i % 2), 1.0);
      row.add(v.f_world + force_axis[row_i], -1.0 / force_norm);
      prob.addEquality(std::move(row));
    }

    // cones on the local wrench
    {
      SocConstraint cone;
      cone.t.add(v.f_local + 2, eff.friction_coeff);
      cone.v = {AffineExpr({{v.f_local + 0, 1.0}}),
                AffineExpr({{v.f_local + 1, 1.0}})};
      cone.tag = {"friction_cone", id, t};
      prob.addSocConstraint(std::move(cone));
    }
    {
      SocConstraint cone;
      cone.t.add(v.f_local + 2, eff.torsion_coeff);
      cone.v = {AffineExpr({{v.tau_local, 1.0}})};
      cone.tag = {"torsion_cone", id, t};
      prob.addSocConstraint(std::move(cone));
    }

    // upper-bound quadratics
    for (int a = 0; a < 3; ++a) {
      for (int sign_i = 0; sign_i < 2; ++sign_i) {
        const double sgn = sign_i == 0 ? 1.0 : -1.0;
        QuadConstraint qc;
        for (int comp = 0; comp < 2; ++comp) {
          AffineExpr sq;
          sq.add(v.dc[a] + comp, 1.0);
          sq.add(v.dc[3 + a] + comp, sgn);
          qc.squares.push_back(std::move(sq));
        }
        qc.linear.add((sign_i == 0 ? v.u_plus : v.u_minus) + a, -1.0);
        qc.tag = {"bound_quadratic", id, t};
        prob.addQuadConstraint(std::move(qc));
      }
    }

    // length limit: feet via the CoM distance, hands via the shoulder
    if (!hand) {
      QuadConstraint qc;
      for (int a = 0; a < 3; ++a) {
        AffineExpr sq;
        sq.add(core.com[t - 1] + a, -1.0);
        if (pos.variable)
          sq.add(pos.var + a, 1.0);
        else
          sq.constant = pos.value[a];
        qc.squares.push_back(std::move(sq));
      }
      qc.linear.constant = -len * len;
      qc.tag = {"com_length", id, t};
      prob.addQuadConstraint(std::move(qc));
    } else {
      const Eigen::Vector3d r_sh = scenario.reach.shoulder_offsets.at(id);
      const Eigen::Vector3d r_tr = scenario.reach.torso_offset;
      SocConstraint cone;
      cone.t.constant = len;
      for (int a = 0; a < 3; ++a) {
        AffineExpr row;
        row.add(pos.var + a, 1.0);
        row.add(core.com[t - 1] + a, -1.0);
        row.constant = -r_tr[a];
        if (a == 0) {
          row.add(layout.cos_var[phase], -r_sh.x());
          row.add(layout.sin_var[phase], r_sh.y());
        } else if (a == 1) {
          row.add(layout.sin_var[phase], -r_sh.x());
          row.add(layout.cos_var[phase], -r_sh.y());
        } else {
          row.constant -= r_sh.z();
        }
        cone.v.push_back(std::move(row));
      }
      cone.tag = {"com_length", id, t};
      prob.addSocConstraint(std::move(cone));

      // hand release implies zero local force
      const Eigen::Index release = hand_vars->release;
      for (int a = 0; a < 3; ++a) {
        AffineExpr up;
        up.add(v.f_local + a, 1.0);
        addImplication(prob, std::move(up), release, "hand release");
        AffineExpr dn;
        dn.add(v.f_local + a, -1.0);
        addImplication(prob, std::move(dn), release, "hand release");
      }
    }
  }

  // ---- placement constraints -------------------------------------------------
  for (const auto& placement : layout.placements) {
    // region membership: borders plus two-sided surface-lying
    for (size_t ri = 0; ri < scenario.regions.size(); ++ri) {
      const TerrainRegion& region = scenario.regions[ri];
      const Eigen::Index gate = placement.region_binaries[ri];
      for (const auto& [normal_a, offset_b] : region.halfspaces) {
        AffineExpr row;
        for (int a = 0; a < 3; ++a) row.add(placement.position + a, normal_a[a]);
        row.constant = -offset_b;
        addImplication(prob, std::move(row), gate, "region border");
      }
      const double surf = region.normal.dot(region.surface_point);
      AffineExpr above;
      for (int a = 0; a < 3; ++a) above.add(placement.position + a, region.normal[a]);
      above.constant = -surf;
      AffineExpr below = above;
      below *= -1.0;
      addImplication(prob, std::move(above), gate, "surface lying");
      addImplication(prob, std::move(below), gate, "surface lying");
    }

    // reachability vs the previous step position
    const auto& order = plan_params.foot_order;
    const int k = placement.phase;
    const std::string prev_foot =
        order[((k - 2) % static_cast<int>(order.size()) +
               static_cast<int>(order.size())) %
              static_cast<int>(order.size())];
    const PosRef prev = footPos(prev_foot, k - 1);
    auto offsets_it = scenario.reach.foot_offsets.find(placement.effector);
    if (offsets_it == scenario.reach.foot_offsets.end())
      throw std::invalid_argument("reachability.foot_offsets missing for '" +
                                  placement.effector + "'");
    for (int i = 0; i < 2; ++i) {
      const Eigen::Vector2d r_i = offsets_it->second[static_cast<size_t>(i)];
      SocConstraint cone;
      cone.t.constant = scenario.reach.step_radius[i];
      for (int a = 0; a < 2; ++a) {
        AffineExpr row;
        row.add(placement.position + a, 1.0);
        if (prev.variable)
          row.add(prev.var + a, -1.0);
        else
          row.constant = -prev.value[a];
        if (a == 0) {
          row.add(layout.cos_var[k], -r_i.x());
          row.add(layout.sin_var[k], r_i.y());
        } else {
          row.add(layout.sin_var[k], -r_i.x());
          row.add(layout.cos_var[k], -r_i.y());
        }
        cone.v.push_back(std::move(row));
      }
      prob.addSocConstraint(std::move(cone));
    }
    for (double sign : {1.0, -1.0}) {
      AffineExpr dz;
      dz.add(placement.position + 2, sign);
      if (prev.variable)
        dz.add(prev.var + 2, -sign);
      else
        dz.constant = -sign * prev.value[2];
      dz.constant -= scenario.reach.max_step_dz;
      prob.addInequality(std::move(dz), "step height");
    }
  }

  // ---- hand phase constraints --------------------------------------------
  for (const auto& id : st.hands) {
    const auto& list = layout.hands.at(id);
    const InitialContact& init = scenario.initial_contacts.at(id);
    for (int j = 0; j < num_phases; ++j) {
      const auto& hv = list[j];
      for (size_t ri = 0; ri < scenario.regions.size(); ++ri) {
        const TerrainRegion& region = scenario.regions[ri];
        const Eigen::Index gate = hv.region_binaries[ri];
        for (const auto& [normal_a, offset_b] : region.halfspaces) {
          AffineExpr row;
          for (int a = 0; a < 3; ++a) row.add(hv.position + a, normal_a[a]);
          row.constant = -offset_b;
          addImplication(prob, std::move(row), gate, "hand region border");
        }
        const double surf = region.normal.dot(region.surface_point);
        AffineExpr epigraph;  // n'p >= n's
        for (int a = 0; a < 3; ++a) epigraph.add(hv.position + a, -region.normal[a]);
        epigraph.constant = surf;
        addImplication(prob, std::move(epigraph), gate, "hand epigraph");
        AffineExpr lying;  // contact additionally pins p onto the surface
        for (int a = 0; a < 3; ++a) lying.add(hv.position + a, region.normal[a]);
        lying.constant = -surf;
        addImplication2(prob, std::move(lying), gate, hv.contact, "hand lying");
      }
      // contact implies the position is held over the phase change
      for (int a = 0; a < 3; ++a) {
        for (double sign : {1.0, -1.0}) {
          AffineExpr hold;
          hold.add(hv.position + a, sign);
          if (j > 0)
            hold.add(list[j - 1].position + a, -sign);
          else
            hold.constant = -sign * init.position[a];
          addImplication(prob, std::move(hold), hv.contact, "hand hold");
        }
      }
    }
  }

  // ---- PWA gating ------------------------------------------------------------
  const double theta_span = plan_params.theta_max - plan_params.theta_min;
  auto gatePieces = [&](const std::vector<PwaPiece>& pieces,
                        const std::vector<Eigen::Index>& bins,
                        Eigen::Index value_var, Eigen::Index theta_var) {
    for (size_t u = 0; u < pieces.size(); ++u) {
      const PwaPiece& piece = pieces[u];
      AffineExpr lo;  // theta >= lo
      lo.add(theta_var, -1.0);
      lo.constant = piece.theta_lo;
      addImplication(prob, std::move(lo), bins[u], "pwa range");
      AffineExpr hi;
      hi.add(theta_var, 1.0);
      hi.constant = -piece.theta_hi;
      addImplication(prob, std::move(hi), bins[u], "pwa range");
      for (double sign : {1.0, -1.0}) {
        AffineExpr fit;
        fit.add(value_var, sign);
        fit.add(theta_var, -sign * piece.slope);
        fit.constant = -sign * piece.intercept;
        addImplication(prob, std::move(fit), bins[u], "pwa fit");
      }
    }
    (void)theta_span;
  };
  for (int j = 0; j < num_phases; ++j) {
    gatePieces(out.pwa.sin_pieces, layout.sin_binaries[j], layout.sin_var[j],
               layout.theta[j]);
    gatePieces(out.pwa.cos_pieces, layout.cos_binaries[j], layout.cos_var[j],
               layout.theta[j]);
  }

  // ---- objective -------------------------------------------------------------
  const CostWeights& w = scenario.weights;
  auto blockCoords = [](Eigen::Index block, int size, double scale = 1.0) {
    std::vector<AffineExpr> coords;
    for (int a = 0; a < size; ++a) {
      AffineExpr e;
      e.add(block + a, scale);
      coords.push_back(std::move(e));
    }
    return coords;
  };
  for (int t = 1; t <= num_steps; ++t) {
    addQuadraticForm(prob, dt, w.q_lin, blockCoords(core.lin[t - 1], 3));
    for (const auto& id : effector_ids) {
      auto it = core.effector_vars.find({id, t});
      if (it == core.effector_vars.end()) continue;
      const auto& v = it->second;
      const EndEffectorSpec& eff = *scenario.effector(id);
      const double force_norm = mass * gnorm;
      addQuadraticForm(prob, dt, w.q_bounds, blockCoords(v.u_plus, 3));
      addQuadraticForm(prob, dt, w.q_bounds, blockCoords(v.u_minus, 3));
      addQuadraticForm(prob, dt, w.q_force,
                       blockCoords(v.f_world, 3, 1.0 / force_norm));
      addQuadraticForm(prob, dt, Eigen::MatrixXd::Constant(1, 1, w.q_torsion),
                       blockCoords(v.tau_local, 1,
                                   1.0 / (force_norm * eff.nominal_length)));
      if (v.is_foot)
        addQuadraticForm(prob, dt, w.q_cop,
                         blockCoords(v.cop_local, 2, 1.0 / eff.nominal_length));
    }
  }
  const int last = num_steps - 1;
  for (int a = 0; a < 3; ++a) {
    AffineExpr com_dev;
    com_dev.add(core.com[last] + a, 1.0);
    com_dev.constant = -w.terminal.com_target[a];
    prob.addObjectiveSquaredTerm(w.terminal.com_weight[a], com_dev);
    AffineExpr lin_dev;
    lin_dev.add(core.lin[last] + a, 1.0);
    lin_dev.constant = -w.terminal.lin_target[a];
    prob.addObjectiveSquaredTerm(w.terminal.lin_weight[a], lin_dev);
    AffineExpr ang_dev;
    ang_dev.add(core.ang[last] + a, 1.0);
    ang_dev.constant = -w.terminal.ang_target[a];
    prob.addObjectiveSquaredTerm(w.terminal.ang_weight[a], ang_dev);
  }
  // footstep-distance regularizer
  for (const auto& placement : layout.placements) {
    const auto& order = plan_params.foot_order;
    const int k = placement.phase;
    const std::string prev_foot =
        order[((k - 2) % static_cast<int>(order.size()) +
               static_cast<int>(order.size())) %
              static_cast<int>(order.size())];
    const PosRef prev = footPos(prev_foot, k - 1);
    for (int a = 0; a < 3; ++a) {
      AffineExpr dev;
      dev.add(placement.position + a, 1.0);
      if (prev.variable)
        dev.add(prev.var + a, -1.0);
      else
        dev.constant = -prev.value[a];
      prob.addObjectiveSquaredTerm(w.step_regularizer, dev);
    }
  }
  // hand default-pose regularizer (anchored at the phase's middle step)
  for (const auto& id : st.hands) {
    const auto& list = layout.hands.at(id);
    const Eigen::Vector3d r_sh = scenario.reach.shoulder_offsets.at(id);
    const Eigen::Vector3d anchor =
        scenario.reach.torso_offset + scenario.reach.hand_default_pose;
    for (int j = 0; j < num_phases; ++j) {
      const int mid = j * st.spp + st.spp / 2;
      for (int a = 0; a < 3; ++a) {
        AffineExpr dev;
        dev.add(list[j].position + a, 1.0);
        dev.add(core.com[mid] + a, -1.0);
        dev.constant = -anchor[a];
        if (a == 0) {
          dev.add(layout.cos_var[j], -r_sh.x());
          dev.add(layout.sin_var[j], r_sh.y());
        } else if (a == 1) {
          dev.add(layout.sin_var[j], -r_sh.x());
          dev.add(layout.cos_var[j], -r_sh.y());
        } else {
          dev.constant -= r_sh.z();
        }
        prob.addObjectiveSquaredTerm(w.hand_pose_regularizer, dev);
      }
    }
  }
  // orientation regularizer toward the initial stance yaw
  {
    double yaw0 = 0.0;
    if (!scenario.initial_contacts.empty())
      yaw0 = scenario.initial_contacts.begin()->second.yaw;
    for (int j = 0; j < num_phases; ++j) {
      AffineExpr dev;
      dev.add(layout.theta[j], 1.0);
      dev.constant = -yaw0;
      prob.addObjectiveSquaredTerm(w.theta_regularizer, dev);
    }
  }

  return out;
}

// ---------------------------------------------------------------------------
// branch and bound
// ---------------------------------------------------------------------------

namespace {

struct BnbNode {
  int id = 0;
  double bound = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<Eigen::Index, double>> fixes;
};

struct NodeOrder {
  bool operator()(const BnbNode& a, const BnbNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
    return a.id > b.id;
  }
};

Solution solveWithFixes(const MiqcqpProblem& problem,
                        const std::vector<std::pair<Eigen::Index, double>>& fixes,
                        const SolveSettings& settings) {
  QcqpProblem prob = problem.problem;
  for (const auto& [var, val] : fixes) prob.setBounds(var, val, val);
  return solveConvexQcqp(prob, settings);
}

bool isIntegral(const MiqcqpProblem& problem, const Eigen::VectorXd& x,
                double int_tol) {
  for (const auto& bin : problem.binaries)
    if (std::abs(x[bin.var] - std::round(x[bin.var])) > int_tol) return false;
  return true;
}

// most fractional binary; ties by group kind then variable index
Eigen::Index selectBranchVariable(const MiqcqpProblem& problem,
                                  const Eigen::VectorXd& x) {
  Eigen::Index best = -1;
  double best_frac = -1.0;
  int best_rank = std::numeric_limits<int>::max();
  for (const auto& bin : problem.binaries) {
    const double frac = std::abs(x[bin.var] - std::round(x[bin.var]));
    const int rank = static_cast<int>(bin.kind);
    const bool better =
        frac > best_frac + 1e-12 ||
        (std::abs(frac - best_frac) <= 1e-12 &&
         (rank < best_rank || (rank == best_rank && bin.var < best)));
    if (better && frac > 1e-12) {
      best = bin.var;
      best_frac = frac;
      best_rank = rank;
    }
  }
  return best;
}

// Re-solve with every binary pinned to its rounded value; certifies an
// integral candidate.
Solution solvePinned(const MiqcqpProblem& problem, const Eigen::VectorXd& x,
                     const SolveSettings& settings) {
  std::vector<std::pair<Eigen::Index, double>> fixes;
  fixes.reserve(problem.binaries.size());
  for (const auto& bin : problem.binaries)
    fixes.emplace_back(bin.var, std::round(x[bin.var]));
  return solveWithFixes(problem, fixes, settings);
}

}  // namespace

BnbResult solveBranchAndBound(const MiqcqpProblem& problem,
                              const BnbSettings& settings) {
  BnbResult result;
  result.bound = -std::numeric_limits<double>::infinity();
  double incumbent = std::numeric_limits<double>::infinity();
  Solution incumbent_solution;
  bool have_incumbent = false;

  std::priority_queue<BnbNode, std::vector<BnbNode>, NodeOrder> queue;
  int next_id = 0;
  queue.push({next_id++, -std::numeric_limits<double>::infinity(), {}});
  int explored = 0;
  bool node_limit_hit = false;

  const auto incumbentCut = [&](double bound) {
    return have_incumbent &&
           bound >= incumbent - settings.mip_gap * std::max(1.0, std::abs(incumbent));
  };

  struct SolvedNode {
    BnbNode node;
    Solution sol;
  };

  while (!queue.empty()) {
    if (explored >= settings.max_nodes) {
      node_limit_hit = true;
      break;
    }
    // global bound = min over open nodes (best-bound order -> queue top)
    result.bound = queue.top().bound;
    if (incumbentCut(result.bound)) break;

    // pop a deterministic batch and solve (in parallel when asked to)
    std::vector<BnbNode> batch;
    const int batch_size = std::max(1, settings.threads);
    while (!queue.empty() && static_cast<int>(batch.size()) < batch_size) {
      if (incumbentCut(queue.top().bound)) break;
      batch.push_back(queue.top());
      queue.pop();
    }
    if (batch.empty()) break;

    std::vector<SolvedNode> solved(batch.size());
    if (settings.threads > 1 && batch.size() > 1) {
      std::vector<std::future<Solution>> futures;
      futures.reserve(batch.size());
      for (const auto& node : batch)
        futures.push_back(std::async(std::launch::async, [&problem, &settings,
                                                          fixes = node.fixes] {
          return solveWithFixes(problem, fixes, settings.solve);
        }));
      for (size_t i = 0; i < batch.size(); ++i)
        solved[i] = {batch[i], futures[i].get()};
    } else {
      for (size_t i = 0; i < batch.size(); ++i)
        solved[i] = {batch[i], solveWithFixes(problem, batch[i].fixes,
                                              settings.solve)};
    }

    // process in node-id order for determinism
    std::sort(solved.begin(), solved.end(),
              [](const SolvedNode& a, const SolvedNode& b) {
                return a.node.id < b.node.id;
              });
    for (auto& [node, sol] : solved) {
      ++explored;
      if (sol.status == SolveStatus::PrimalInfeasible) continue;
      if (sol.status == SolveStatus::DualInfeasible ||
          sol.status == SolveStatus::NumericalError)
        continue;  // bounded by variable boxes; treat as unusable node
      const bool certified = sol.status == SolveStatus::Optimal;
      const double node_bound =
          certified ? sol.objective : node.bound;  // keep the parent bound
      if (incumbentCut(node_bound)) continue;

      if (isIntegral(problem, sol.x, settings.int_tol)) {
        Solution pinned = solvePinned(problem, sol.x, settings.solve);
        if (pinned.status == SolveStatus::Optimal &&
            pinned.objective < incumbent) {
          incumbent = pinned.objective;
          incumbent_solution = std::move(pinned);
          have_incumbent = true;
        }
        continue;
      }
      const Eigen::Index branch_var = selectBranchVariable(problem, sol.x);
      if (branch_var < 0) continue;
      for (double val : {0.0, 1.0}) {
        BnbNode child;
        child.id = next_id++;
        child.bound = node_bound;
        child.fixes = node.fixes;
        child.fixes.emplace_back(branch_var, val);
        queue.push(std::move(child));
      }
    }
  }

  result.nodes = explored;
  if (!have_incumbent) {
    result.status = node_limit_hit ? SolveStatus::IterationLimit
                                   : SolveStatus::PrimalInfeasible;
    return result;
  }
  result.objective = incumbent;
  result.solution = std::move(incumbent_solution);
  if (queue.empty() && !node_limit_hit) result.bound = incumbent;
  result.bound = std::min(result.bound, incumbent);
  result.proven_gap = (incumbent - result.bound) /
                      std::max(1.0, std::abs(incumbent));
  result.status = node_limit_hit && result.proven_gap > settings.mip_gap
                      ? SolveStatus::IterationLimit
                      : SolveStatus::Optimal;
  return result;
}

BnbResult enumerateExact(const MiqcqpProblem& problem,
                         const SolveSettings& settings) {
  if (problem.freeBinaryCount() > 20)
    throw std::invalid_argument(
        "enumerateExact: more than 20 free binaries (" +
        std::to_string(problem.freeBinaryCount()) + ")");

  BnbResult result;
  result.status = SolveStatus::PrimalInfeasible;
  result.objective = std::numeric_limits<double>::infinity();

  const auto& groups = problem.exactly_one;
  std::vector<size_t> choice(groups.size(), 0);
  int assignments = 0;
  while (true) {
    // cardinality screen for the at-most rows
    bool ok = true;
    for (const auto& row : problem.at_most) {
      int sum = 0;
      for (size_t g = 0; g < groups.size() && ok; ++g)
        for (Eigen::Index var : row.vars)
          if (groups[g].vars[choice[g]] == var) ++sum;
      if (sum > row.bound) ok = false;
    }
    if (ok) {
      ++assignments;
      std::vector<std::pair<Eigen::Index, double>> fixes;
      for (size_t g = 0; g < groups.size(); ++g)
        for (size_t i = 0; i < groups[g].vars.size(); ++i)
          fixes.emplace_back(groups[g].vars[i], i == choice[g] ? 1.0 : 0.0);
      Solution sol = solveWithFixes(problem, fixes, settings);
      if (sol.status == SolveStatus::Optimal &&
          sol.objective < result.objective) {
        result.objective = sol.objective;
        result.solution = std::move(sol);
        result.status = SolveStatus::Optimal;
      }
    }
    // next assignment
    size_t g = 0;
    while (g < groups.size()) {
      if (++choice[g] < groups[g].vars.size()) break;
      choice[g] = 0;
      ++g;
    }
    if (g == groups.size()) break;
  }
  result.nodes = assignments;
  result.bound = result.objective;
  return result;
}

// ---------------------------------------------------------------------------
// decoding
// ---------------------------------------------------------------------------

namespace {

Eigen::Matrix3d contactRotation(const Scenario& scenario, int region_id,
                                double yaw) {
  const TerrainRegion* region = scenario.region(region_id);
  const Eigen::Matrix3d base =
      region ? region->rotation : Eigen::Matrix3d::Identity();
  return base *
         Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix();
}

struct DecodedPhase {
  Eigen::Vector3d position;
  int region_id = -1;
  double yaw = 0.0;
  bool active = true;
};

// per-effector, per-planner-phase decoded states
std::map<std::string, std::vector<DecodedPhase>> decodePhases(
    const MiqcqpProblem& problem, const Scenario& scenario,
    const Eigen::VectorXd& x, double int_tol) {
  for (const auto& bin : problem.binaries)
    if (std::abs(x[bin.var] - std::round(x[bin.var])) > int_tol)
      throw std::invalid_argument("decodeContactPlan: fractional binary " +
                                  std::to_string(bin.var));
  const PlannerLayout& layout = problem.layout;
  std::map<std::string, std::vector<DecodedPhase>> phases;

  auto chosenRegion = [&](const std::vector<Eigen::Index>& bins) {
    for (size_t ri = 0; ri < bins.size(); ++ri)
      if (x[bins[ri]] > 0.5) return scenario.regions[ri].id;
    return -1;
  };

  // feet
  std::vector<std::string> feet;
  for (const auto& [id, contact] : scenario.initial_contacts) {
    const auto* eff = scenario.effector(id);
    if (eff && !eff->isHand()) feet.push_back(id);
  }
  for (const auto& id : feet) {
    auto& list = phases[id];
    list.resize(static_cast<size_t>(layout.phases));
    for (int j = 0; j < layout.phases; ++j) {
      const FootPlacement* latest = nullptr;
      for (const auto& pl : layout.placements)
        if (pl.effector == id && pl.phase <= j) latest = &pl;
      DecodedPhase& ph = list[static_cast<size_t>(j)];
      if (latest) {
        ph.position = x.segment<3>(latest->position);
        ph.region_id = chosenRegion(latest->region_binaries);
        ph.yaw = x[layout.theta[latest->phase]];
      } else {
        const InitialContact& init = scenario.initial_contacts.at(id);
        ph.position = init.position;
        ph.region_id = init.region_id;
        ph.yaw = init.yaw;
      }
      ph.active = true;
      for (const auto& pl : layout.placements)
        if (pl.effector == id && pl.phase == j + 1) ph.active = false;
    }
  }
  // hands
  for (const auto& [id, list] : layout.hands) {
    auto& out = phases[id];
    out.resize(static_cast<size_t>(layout.phases));
    for (int j = 0; j < layout.phases; ++j) {
      DecodedPhase& ph = out[static_cast<size_t>(j)];
      ph.active = x[list[static_cast<size_t>(j)].contact] > 0.5;
      ph.position = x.segment<3>(list[static_cast<size_t>(j)].position);
      ph.region_id = chosenRegion(list[static_cast<size_t>(j)].region_binaries);
      ph.yaw = x[layout.theta[j]];
    }
  }
  return phases;
}

ContactPlan assemblePlan(const MiqcqpProblem& problem, const Scenario& scenario,
                         const std::map<std::string, std::vector<DecodedPhase>>& phases,
                         int steps_per_phase, double objective) {
  ContactPlan plan;
  plan.objective = objective;
  for (const auto& [id, list] : phases) {
    std::vector<ContactPhase>& out = plan.phases[id];
    std::vector<double>& yaws = plan.phase_yaw[id];
    for (int j = 0; j < static_cast<int>(list.size()); ++j) {
      const DecodedPhase& ph = list[static_cast<size_t>(j)];
      if (!ph.active) continue;
      const int t_start = j * steps_per_phase;
      const int t_end = (j + 1) * steps_per_phase;
      if (!out.empty() && out.back().t_end == t_start &&
          (out.back().position - ph.position).norm() <= 1e-9 &&
          out.back().region_id == ph.region_id) {
        out.back().t_end = t_end;  // merge consecutive identical phases
        continue;
      }
      ContactPhase phase;
      phase.effector = id;
      phase.position = ph.position;
      phase.rotation = contactRotation(scenario, ph.region_id, ph.yaw);
      phase.region_id = ph.region_id;
      phase.t_start = t_start;
      phase.t_end = t_end;
      out.push_back(phase);
      yaws.push_back(ph.yaw);
    }
  }
  (void)problem;
  return plan;
}

}  // namespace

ContactPlan coarsePlanFromSolution(const MiqcqpProblem& problem,
                                   const Scenario& scenario,
                                   const Solution& solution, double int_tol) {
  const auto phases = decodePhases(problem, scenario, solution.x, int_tol);
  return assemblePlan(problem, scenario, phases, problem.layout.steps_per_phase,
                      solution.objective);
}

ContactPlan decodeContactPlan(const MiqcqpProblem& problem,
                              const Scenario& scenario,
                              const Solution& solution, double int_tol) {
  const auto phases = decodePhases(problem, scenario, solution.x, int_tol);
  const double phase_seconds =
      problem.layout.steps_per_phase * problem.coarse_grid.dt.front();
  const int fine_per_phase =
      std::max(1, static_cast<int>(std::lround(phase_seconds / scenario.fine_dt)));
  return assemblePlan(problem, scenario, phases, fine_per_phase,
                      solution.objective);
}

MomentumTrajectory extractCoarseTrajectory(const MiqcqpProblem& problem,
                                           const Scenario& scenario,
                                           const ContactPlan& coarse_plan,
                                           const Solution& solution) {
  MomentumQcqp shim;
  shim.layout = problem.layout.momentum;
  shim.grid = problem.coarse_grid;
  // extractTrajectory only reads layout, grid and the variable count
  shim.problem.addBlock("x", problem.problem.numVariables());
  return extractTrajectory(shim, scenario, coarse_plan, solution);
}

}  // namespace momplan
