/**
 * @file qcqp_builder.cpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 */

#include "momplan/qcqp_builder.hpp"

#include <algorithm>
#include <stdexcept>

#include "momplan/dc_decomposition.hpp"

namespace momplan {

namespace {

std::string blockName(const char* base, int t) {
  return std::string(base) + "[" + std::to_string(t) + "]";
}

std::string blockName(const char* base, const std::string& eff, int t) {
  return std::string(base) + "[" + eff + "," + std::to_string(t) + "]";
}

AffineExpr axis(Eigen::Index block, int component, double coeff = 1.0) {
  AffineExpr e;
  e.add(block + component, coeff);
  return e;
}

// Trunk yaw used to anchor a hand phase's shoulder position.
double handPhaseYaw(const ContactPlan& plan, const std::string& eff,
                    const ContactPhase& phase) {
  auto it = plan.phase_yaw.find(eff);
  if (it == plan.phase_yaw.end()) return 0.0;
  const auto& list = plan.phases.at(eff);
  for (size_t i = 0; i < list.size(); ++i)
    if (&list[i] == &phase && i < it->second.size()) return it->second[i];
  return 0.0;
}

struct BuildContext {
  const Scenario& scenario;
  const ContactPlan& plan;
  const CostWeights& weights;
  TimeGrid grid;
  bool bounds_as_equalities = false;

  MomentumQcqp out;
  std::vector<DcEquality> dc_equalities;
};

double effectiveFriction(const Scenario& scenario, const EndEffectorSpec& eff,
                         const ContactPhase& phase) {
  double mu = eff.friction_coeff;
  if (const TerrainRegion* reg = scenario.region(phase.region_id))
    mu = std::min(mu, reg->friction);
  return mu;
}

void build(BuildContext& ctx) {
  const Scenario& sc = ctx.scenario;
  const ContactPlan& plan = ctx.plan;
  QcqpProblem& prob = ctx.out.problem;
  VariableLayout& layout = ctx.out.layout;
  const int num_steps = ctx.grid.steps();
  const double mass = sc.mass;
  const double gnorm = sc.gravityNorm();

  sc.validate();
  ctx.weights.validate();
  plan.validate();
  if (plan.horizon() > num_steps)
    throw std::invalid_argument(
        "plan/grid mismatch: plan spans " + std::to_string(plan.horizon()) +
        " steps but the grid has " + std::to_string(num_steps));

  const auto effector_ids = plan.effectorIds();
  for (const auto& id : effector_ids) {
    const EndEffectorSpec* eff = sc.effector(id);
    if (!eff)
      throw std::invalid_argument("plan references unknown effector '" + id + "'");
    layout.alpha[id] = eff->nominal_length * mass * gnorm;
  }

  // ---- variables, time-major / effector-minor --------------------------
  layout.num_steps = num_steps;
  layout.com.resize(num_steps);
  layout.lin.resize(num_steps);
  layout.ang.resize(num_steps);
  layout.lin_rate.resize(num_steps);
  layout.ang_rate.resize(num_steps);
  for (int t = 1; t <= num_steps; ++t) {
    layout.com[t - 1] = prob.addBlock(blockName("r", t), 3);
    layout.lin[t - 1] = prob.addBlock(blockName("l", t), 3);
    layout.ang[t - 1] = prob.addBlock(blockName("k", t), 3);
    layout.lin_rate[t - 1] = prob.addBlock(blockName("ldot", t), 3);
    layout.ang_rate[t - 1] = prob.addBlock(blockName("kdot", t), 3);
    for (const auto& id : effector_ids) {
      const ContactPhase* phase = plan.activePhase(id, t - 1);
      if (!phase) continue;
      const EndEffectorSpec& eff = *sc.effector(id);
      EffectorStepVars v;
      v.is_foot = !eff.isHand();
      v.f_local = prob.addBlock(blockName("fL", id, t), 3);
      v.tau_local = prob.addBlock(blockName("tauL", id, t), 1);
      if (v.is_foot) v.cop_local = prob.addBlock(blockName("zL", id, t), 2);
      v.f_world = prob.addBlock(blockName("f", id, t), 3);
      v.tau_world = prob.addBlock(blockName("tau", id, t), 3);
      if (v.is_foot) v.cop_world = prob.addBlock(blockName("z", id, t), 3);
      v.u_plus = prob.addBlock(blockName("uplus", id, t), 3);
      v.u_minus = prob.addBlock(blockName("uminus", id, t), 3);
      static const char* dc_names[6] = {"dca", "dcb", "dcc", "dcd", "dce", "dcf"};
      for (int d = 0; d < 6; ++d)
        v.dc[d] = prob.addBlock(blockName(dc_names[d], id, t), 2);
      layout.effector_vars[{id, t}] = v;
    }
  }

  // ---- dynamics equalities ---------------------------------------------
  const Eigen::Vector3d r0 = sc.initial_state.com;
  const Eigen::Vector3d l0 = sc.initial_state.lin_momentum;
  const Eigen::Vector3d k0 = sc.initial_state.ang_momentum;
  for (int t = 1; t <= num_steps; ++t) {
    const double dt = ctx.grid.dt[t - 1];
    for (int a = 0; a < 3; ++a) {
      // r_t = r_{t-1} + dt/M l_t   (semi-implicit)
      AffineExpr com_row;
      com_row.add(layout.com[t - 1] + a, 1.0);
      com_row.add(layout.lin[t - 1] + a, -dt / mass);
      if (t > 1)
        com_row.add(layout.com[t - 2] + a, -1.0);
      else
        com_row.constant = -r0[a];
      prob.addEquality(std::move(com_row));

      // l_t = l_{t-1} + ldot_t dt
      AffineExpr lin_row;
      lin_row.add(layout.lin[t - 1] + a, 1.0);
      lin_row.add(layout.lin_rate[t - 1] + a, -dt);
      if (t > 1)
        lin_row.add(layout.lin[t - 2] + a, -1.0);
      else
        lin_row.constant = -l0[a];
      prob.addEquality(std::move(lin_row));

      // k_t = k_{t-1} + kdot_t dt
      AffineExpr ang_row;
      ang_row.add(layout.ang[t - 1] + a, 1.0);
      ang_row.add(layout.ang_rate[t - 1] + a, -dt);
      if (t > 1)
        ang_row.add(layout.ang[t - 2] + a, -1.0);
      else
        ang_row.constant = -k0[a];
      prob.addEquality(std::move(ang_row));

      // ldot_t = M g + sum_e f_{e,t}
      AffineExpr force_row;
      force_row.add(layout.lin_rate[t - 1] + a, 1.0);
      force_row.constant = -mass * sc.gravity[a];
      for (const auto& id : effector_ids)
        if (auto it = layout.effector_vars.find({id, t});
            it != layout.effector_vars.end())
          force_row.add(it->second.f_world + a, -1.0);
      prob.addEquality(std::move(force_row));

      // kdot_t = sum_e (alpha_e/4)(U+ - U-) + tau_{e,t}
      AffineExpr torque_row;
      torque_row.add(layout.ang_rate[t - 1] + a, 1.0);
      for (const auto& id : effector_ids)
        if (auto it = layout.effector_vars.find({id, t});
            it != layout.effector_vars.end()) {
          const double quarter_alpha = 0.25 * layout.alpha[id];
          torque_row.add(it->second.u_plus + a, -quarter_alpha);
          torque_row.add(it->second.u_minus + a, quarter_alpha);
          torque_row.add(it->second.tau_world + a, -1.0);
        }
      prob.addEquality(std::move(torque_row));
    }
  }

  // ---- per-effector constraints ------------------------------------------
  for (const auto& [key, v] : layout.effector_vars) {
    const auto& [id, t] = key;
    const EndEffectorSpec& eff = *sc.effector(id);
    const ContactPhase& phase = *plan.activePhase(id, t - 1);
    const Eigen::Matrix3d& rot = phase.rotation;
    const double len = eff.nominal_length;
    const double force_norm = mass * gnorm;

    // frame mapping: world = R * local
    for (int a = 0; a < 3; ++a) {
      AffineExpr f_map;
      f_map.add(v.f_world + a, 1.0);
      for (int b = 0; b < 3; ++b) f_map.add(v.f_local + b, -rot(a, b));
      prob.addEquality(std::move(f_map));

      AffineExpr tau_map;
      tau_map.add(v.tau_world + a, 1.0);
      tau_map.add(v.tau_local, -rot(a, 2));
      prob.addEquality(std::move(tau_map));

      if (v.is_foot) {
        AffineExpr cop_map;
        cop_map.add(v.cop_world + a, 1.0);
        cop_map.add(v.cop_local + 0, -rot(a, 0));
        cop_map.add(v.cop_local + 1, -rot(a, 1));
        prob.addEquality(std::move(cop_map));
      }
    }

    // normalized lever components: ln_a = (p_a + z_a - r_a) / len
    auto leverTerm = [&](AffineExpr& row, int a, double sign) {
      // appends sign * ln_a to the row
      if (v.cop_world >= 0) row.add(v.cop_world + a, sign / len);
      row.add(layout.com[t - 1] + a, -sign / len);
      row.constant += sign * phase.position[a] / len;
    };
    // a = (-ln_z, ln_y); b = (ln_z, -ln_x); c = (-ln_y, ln_x)
    const int lever_axis[6] = {2, 1, 2, 0, 1, 0};
    const double lever_sign[6] = {-1, 1, 1, -1, -1, 1};
    for (int row_i = 0; row_i < 6; ++row_i) {
      AffineExpr row;
      row.add(v.dc[row_i / 2] + (row_i % 2), 1.0);
      leverTerm(row, lever_axis[row_i], -lever_sign[row_i]);
      prob.addEquality(std::move(row));
    }
    // d = (f_y, f_z)/Fn; e = (f_x, f_z)/Fn; f = (f_x, f_y)/Fn
    const int force_axis[6] = {1, 2, 0, 2, 0, 1};
    for (int row_i = 0; row_i < 6; ++row_i) {
      AffineExpr row;
      row.add(v.dc[3 + row_i / 2] + (row_i % 2), 1.0);
      row.add(v.f_world + force_axis[row_i], -1.0 / force_norm);
      prob.addEquality(std::move(row));
    }

    // friction cone on the local force
    {
      SocConstraint cone;
      cone.t = axis(v.f_local, 2, effectiveFriction(sc, eff, phase));
      cone.v = {axis(v.f_local, 0), axis(v.f_local, 1)};
      cone.tag = {"friction_cone", id, t};
      prob.addSocConstraint(std::move(cone));
    }
    // torsional cone
    {
      SocConstraint cone;
      cone.t = axis(v.f_local, 2, eff.torsion_coeff);
      cone.v = {axis(v.tau_local, 0)};
      cone.tag = {"torsion_cone", id, t};
      prob.addSocConstraint(std::move(cone));
    }
    // CoP box (feet); hands have no CoP variables at all
    if (v.is_foot)
      for (int a = 0; a < 2; ++a)
        prob.setBounds(v.cop_local + a, eff.cop_min[a], eff.cop_max[a]);

    // upper-bound quadratics ||x + y||^2 <= u+, ||x - y||^2 <= u-
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
        const Eigen::Index bound = (sign_i == 0 ? v.u_plus : v.u_minus) + a;
        if (ctx.bounds_as_equalities) {
          // keep the convex direction as a hard constraint; the baseline
          // solver linearizes only the concave reverse side U <= ||.||^2
          DcEquality dc;
          dc.plus.linear.add(bound, 1.0);
          dc.minus.squares = qc.squares;
          ctx.dc_equalities.push_back(std::move(dc));
        }
        qc.linear.add(bound, -1.0);
        qc.tag = {"bound_quadratic", id, t};
        prob.addQuadConstraint(std::move(qc));
      }
    }

    // CoM-to-effector length limit (shoulder-anchored for hands)
    {
      Eigen::Vector3d anchor = phase.position;
      if (eff.isHand()) {
        const double yaw = handPhaseYaw(plan, id, phase);
        const Eigen::Matrix3d yaw_rot =
            Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix();
        anchor -= sc.reach.torso_offset +
                  yaw_rot * sc.reach.shoulder_offsets.at(id);
      }
      QuadConstraint qc;
      for (int a = 0; a < 3; ++a) {
        AffineExpr sq;
        sq.add(layout.com[t - 1] + a, -1.0);
        sq.constant = anchor[a];
        qc.squares.push_back(std::move(sq));
      }
      qc.linear.constant = -len * len;
      qc.tag = {"com_length", id, t};
      prob.addQuadConstraint(std::move(qc));
    }
  }

  // ---- running cost -------------------------------------------------------
  auto blockCoords = [](Eigen::Index block, int size, double scale = 1.0) {
    std::vector<AffineExpr> coords;
    for (int a = 0; a < size; ++a) {
      AffineExpr e;
      e.add(block + a, scale);
      coords.push_back(std::move(e));
    }
    return coords;
  };
  const CostWeights& w = ctx.weights;
  const bool direct_rate = w.angular_mode == AngularPenaltyMode::MomentumRate;
  for (int t = 1; t <= num_steps; ++t) {
    const double dt = ctx.grid.dt[t - 1];
    addQuadraticForm(prob, dt, w.q_lin, blockCoords(layout.lin[t - 1], 3));
    if (direct_rate)
      addQuadraticForm(prob, dt, w.q_ang_rate,
                       blockCoords(layout.ang_rate[t - 1], 3));
    for (const auto& id : effector_ids) {
      auto it = layout.effector_vars.find({id, t});
      if (it == layout.effector_vars.end()) continue;
      const auto& v = it->second;
      const EndEffectorSpec& eff = *sc.effector(id);
      const double force_norm = mass * gnorm;
      if (!direct_rate) {
        addQuadraticForm(prob, dt, w.q_bounds, blockCoords(v.u_plus, 3));
        addQuadraticForm(prob, dt, w.q_bounds, blockCoords(v.u_minus, 3));
      }
      addQuadraticForm(prob, dt, w.q_force,
                       blockCoords(v.f_world, 3, 1.0 / force_norm));
      addQuadraticForm(prob, dt,
                       Eigen::MatrixXd::Constant(1, 1, w.q_torsion),
                       blockCoords(v.tau_local, 1,
                                   1.0 / (force_norm * eff.nominal_length)));
      if (v.is_foot)
        addQuadraticForm(prob, dt, w.q_cop,
                         blockCoords(v.cop_local, 2, 1.0 / eff.nominal_length));
    }
  }

  // ---- terminal cost ------------------------------------------------------
  const int last = num_steps - 1;
  for (int a = 0; a < 3; ++a) {
    AffineExpr com_dev = axis(layout.com[last], a);
    com_dev.constant = -w.terminal.com_target[a];
    prob.addObjectiveSquaredTerm(w.terminal.com_weight[a], com_dev);
    AffineExpr lin_dev = axis(layout.lin[last], a);
    lin_dev.constant = -w.terminal.lin_target[a];
    prob.addObjectiveSquaredTerm(w.terminal.lin_weight[a], lin_dev);
    AffineExpr ang_dev = axis(layout.ang[last], a);
    ang_dev.constant = -w.terminal.ang_target[a];
    prob.addObjectiveSquaredTerm(w.terminal.ang_weight[a], ang_dev);
  }
}

}  // namespace

void addQuadraticForm(QcqpProblem& problem, double scale,
                      const Eigen::MatrixXd& q_matrix,
                      const std::vector<AffineExpr>& coords) {
  if (scale == 0.0) return;
  if (q_matrix.rows() != static_cast<Eigen::Index>(coords.size()))
    throw std::invalid_argument("addQuadraticForm: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q_matrix);
  const double floor = 1e-15 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()[i];
    if (lam <= floor) continue;
    AffineExpr combo;
    for (Eigen::Index j = 0; j < q_matrix.rows(); ++j) {
      const double c = es.eigenvectors()(j, i);
      if (c == 0.0) continue;
      for (const auto& [var, coeff] : coords[j].terms) combo.add(var, c * coeff);
      combo.constant += c * coords[j].constant;
    }
    problem.addObjectiveSquaredTerm(scale * lam, combo);
  }
}

MomentumQcqp buildMomentumQcqp(const Scenario& scenario,
                               const ContactPlan& plan,
                               const CostWeights& weights,
                               const TimeGrid* grid_override) {
  BuildContext ctx{scenario, plan, weights,
                   grid_override
                       ? *grid_override
                       : TimeGrid::uniform(
                             scenario.fine_steps > 0 ? scenario.fine_steps
                                                     : plan.horizon(),
                             scenario.fine_dt)};
  ctx.bounds_as_equalities = false;
  build(ctx);
  ctx.out.grid = ctx.grid;
  return std::move(ctx.out);
}

MomentumDcProblem buildMomentumDcBaseline(const Scenario& scenario,
                                          const ContactPlan& plan,
                                          const CostWeights& weights,
                                          const TimeGrid* grid_override) {
  BuildContext ctx{scenario, plan, weights,
                   grid_override
                       ? *grid_override
                       : TimeGrid::uniform(
                             scenario.fine_steps > 0 ? scenario.fine_steps
                                                     : plan.horizon(),
                             scenario.fine_dt)};
  ctx.bounds_as_equalities = true;
  build(ctx);
  MomentumDcProblem out;
  out.base = std::move(ctx.out.problem);
  out.equalities = std::move(ctx.dc_equalities);
  out.layout = std::move(ctx.out.layout);
  out.grid = ctx.grid;
  return out;
}

MomentumTrajectory extractTrajectory(const MomentumQcqp& built,
                                     const Scenario& scenario,
                                     const ContactPlan& plan,
                                     const Solution& solution) {
  const VariableLayout& layout = built.layout;
  if (solution.x.size() < built.problem.numVariables())
    throw std::invalid_argument("extractTrajectory: solution dimension mismatch");
  const Eigen::VectorXd& x = solution.x;
  auto vec3 = [&](Eigen::Index ofs) {
    return Eigen::Vector3d(x[ofs], x[ofs + 1], x[ofs + 2]);
  };

  MomentumTrajectory traj;
  traj.objective = solution.objective;
  traj.stats.status = solution.status;
  traj.stats.iterations = solution.iterations;
  traj.stats.primal_res = solution.primal_res;
  traj.stats.dual_res = solution.dual_res;
  traj.stats.gap = solution.gap;

  TrajectoryStep init;
  init.time = 0.0;
  init.dt = 0.0;
  init.state = scenario.initial_state;
  traj.steps.push_back(std::move(init));

  double time = 0.0;
  for (int t = 1; t <= layout.num_steps; ++t) {
    const double dt = built.grid.dt[t - 1];
    time += dt;
    TrajectoryStep step;
    step.time = time;
    step.dt = dt;
    step.state.com = vec3(layout.com[t - 1]);
    step.state.lin_momentum = vec3(layout.lin[t - 1]);
    step.state.ang_momentum = vec3(layout.ang[t - 1]);
    step.state.lin_momentum_rate = vec3(layout.lin_rate[t - 1]);
    step.state.ang_momentum_rate = vec3(layout.ang_rate[t - 1]);

    for (const auto& [key, v] : layout.effector_vars) {
      if (key.second != t) continue;
      const std::string& id = key.first;
      const ContactPhase& phase = *plan.activePhase(id, t - 1);
      const EndEffectorSpec& eff = *scenario.effector(id);

      EffectorSample sample;
      sample.effector = id;
      sample.position = phase.position;
      sample.wrench.force_local = vec3(v.f_local);
      sample.wrench.torque_z_local = x[v.tau_local];
      if (v.is_foot)
        sample.wrench.cop_local = Eigen::Vector2d(x[v.cop_local], x[v.cop_local + 1]);
      sample.wrench.force_world = vec3(v.f_world);
      sample.wrench.torque_world = vec3(v.tau_world);
      if (v.is_foot) sample.wrench.cop_world = vec3(v.cop_world);
      sample.bounds.u_plus = vec3(v.u_plus);
      sample.bounds.u_minus = vec3(v.u_minus);

      const Eigen::Vector3d lever =
          phase.position + sample.wrench.cop_world - step.state.com;
      const CrossDecomposition dec = buildCrossDecomposition(
          lever, sample.wrench.force_world, eff, scenario.mass,
          scenario.gravityNorm());
      sample.kappa_cross =
          kappaExact(lever, sample.wrench.force_world, sample.wrench.torque_world);
      sample.kappa_bounds =
          sample.bounds.kappaFromBounds(dec.alpha, sample.wrench.torque_world);
      sample.gap = relaxationGap(sample.bounds, dec);
      step.effectors.push_back(std::move(sample));
    }
    traj.steps.push_back(std::move(step));
  }
  return traj;
}

double MomentumTrajectory::maxGap() const {
  double g = 0.0;
  for (const auto& step : steps)
    for (const auto& e : step.effectors)
      g = std::max(g, e.gap.cwiseAbs().maxCoeff());
  return g;
}

double evaluateRunningCost(const MomentumTrajectory& traj,
                           const CostWeights& weights,
                           const Scenario& scenario) {
  const double force_norm = scenario.mass * scenario.gravityNorm();
  double cost = 0.0;
  for (size_t i = 1; i < traj.steps.size(); ++i) {
    const auto& step = traj.steps[i];
    double run = step.state.lin_momentum.dot(weights.q_lin *
                                             step.state.lin_momentum);
    if (weights.angular_mode == AngularPenaltyMode::MomentumRate)
      run += step.state.ang_momentum_rate.dot(weights.q_ang_rate *
                                              step.state.ang_momentum_rate);
    for (const auto& e : step.effectors) {
      const EndEffectorSpec& eff = *scenario.effector(e.effector);
      if (weights.angular_mode == AngularPenaltyMode::UpperBounds)
        run += e.bounds.u_plus.dot(weights.q_bounds * e.bounds.u_plus) +
               e.bounds.u_minus.dot(weights.q_bounds * e.bounds.u_minus);
      const Eigen::Vector3d f = e.wrench.force_world / force_norm;
      run += f.dot(weights.q_force * f);
      const double tz =
          e.wrench.torque_z_local / (force_norm * eff.nominal_length);
      run += weights.q_torsion * tz * tz;
      if (!eff.isHand()) {
        const Eigen::Vector2d z = e.wrench.cop_local / eff.nominal_length;
        run += z.dot(weights.q_cop * z);
      }
    }
    cost += step.dt * run;
  }
  return cost;
}

Eigen::VectorXd staticInitialGuess(const VariableLayout& layout,
                                   const Scenario& scenario,
                                   const ContactPlan& plan,
                                   Eigen::Index num_variables) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(num_variables);
  const Eigen::Vector3d weight = -scenario.mass * scenario.gravity;
  const double gnorm = scenario.gravityNorm();
  Eigen::Vector3d ang_momentum = scenario.initial_state.ang_momentum;
  for (int t = 1; t <= layout.num_steps; ++t) {
    x.segment<3>(layout.com[t - 1]) = scenario.initial_state.com;
    int active = 0;
    for (const auto& [key, v] : layout.effector_vars)
      if (key.second == t) ++active;
    Eigen::Vector3d kdot = Eigen::Vector3d::Zero();
    for (const auto& [key, v] : layout.effector_vars) {
      if (key.second != t) continue;
      const ContactPhase& phase = *plan.activePhase(key.first, t - 1);
      const EndEffectorSpec& eff = *scenario.effector(key.first);
      const Eigen::Vector3d f_world = weight / active;
      x.segment<3>(v.f_world) = f_world;
      x.segment<3>(v.f_local) = phase.rotation.transpose() * f_world;
      const Eigen::Vector3d lever =
          phase.position - scenario.initial_state.com;
      const CrossDecomposition dec = buildCrossDecomposition(
          lever, f_world, eff, scenario.mass, gnorm);
      x.segment<2>(v.dc[0]) = dec.a;
      x.segment<2>(v.dc[1]) = dec.b;
      x.segment<2>(v.dc[2]) = dec.c;
      x.segment<2>(v.dc[3]) = dec.d;
      x.segment<2>(v.dc[4]) = dec.e;
      x.segment<2>(v.dc[5]) = dec.f;
      x.segment<3>(v.u_plus) = dec.plusSquares();
      x.segment<3>(v.u_minus) = dec.minusSquares();
      kdot += dec.reconstruct();
    }
    x.segment<3>(layout.ang_rate[t - 1]) = kdot;
    ang_momentum += kdot * scenario.fine_dt;
    x.segment<3>(layout.ang[t - 1]) = ang_momentum;
  }
  return x;
}

double evaluateTerminalCost(const MomentumTrajectory& traj,
                            const CostWeights& weights) {
  const auto& goal = weights.terminal;
  const MomentumState& fin = traj.steps.back().state;
  double cost = 0.0;
  for (int a = 0; a < 3; ++a) {
    const double dr = fin.com[a] - goal.com_target[a];
    const double dl = fin.lin_momentum[a] - goal.lin_target[a];
    const double dk = fin.ang_momentum[a] - goal.ang_target[a];
    cost += goal.com_weight[a] * dr * dr + goal.lin_weight[a] * dl * dl +
            goal.ang_weight[a] * dk * dk;
  }
  return cost;
}

}  // namespace momplan
