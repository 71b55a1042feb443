/**
 * @file conic_solver.cpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 */

#include "momplan/conic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "momplan/conelp.hpp"

namespace momplan {

std::ostream& operator<<(std::ostream& os, SolveStatus status) {
  return os << statusName(status);
}

const char* statusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::PrimalInfeasible: return "infeasible";
    case SolveStatus::DualInfeasible: return "unbounded";
    case SolveStatus::IterationLimit: return "iteration_limit";
    case SolveStatus::NumericalError: return "numerical_error";
  }
  return "unknown";
}

Solution solveConvexQcqp(const QcqpProblem& problem,
                         const SolveSettings& settings) {
  using Triplet = Eigen::Triplet<double>;
  problem.validatePsd();

  const Eigen::Index n = problem.numVariables();
  const auto& lb = problem.lowerBounds();
  const auto& ub = problem.upperBounds();

  const Eigen::Index n_ext = n;
  Eigen::VectorXd c = problem.objectiveGradient(Eigen::VectorXd::Zero(n));  // = q0

  // equalities: problem rows plus pinned bounds (lb == ub)
  std::vector<Triplet> a_trip;
  std::vector<double> b_vals;
  for (const auto& row : problem.equalities()) {
    for (const auto& [i, v] : row.lhs.terms)
      a_trip.emplace_back(static_cast<int>(b_vals.size()), i, v);
    b_vals.push_back(-row.lhs.constant);
  }
  std::vector<Eigen::Index> pinned;
  for (Eigen::Index i = 0; i < n; ++i)
    if (lb[i] == ub[i] && std::isfinite(lb[i])) {
      a_trip.emplace_back(static_cast<int>(b_vals.size()), i, 1.0);
      b_vals.push_back(lb[i]);
      pinned.push_back(i);
    }

  // cone rows
  std::vector<Triplet> g_trip;
  std::vector<double> h_vals;
  ConeDims dims;
  auto pushRow = [&](const AffineExpr& expr, double scale, double h) {
    // s_row = h - G x with s_row = scale*expr(x) + (h - scale*expr.constant)
    // handled by caller; here: emit G row = -scale*expr.terms, h as given.
    const int r = static_cast<int>(h_vals.size());
    for (const auto& [i, v] : expr.terms) g_trip.emplace_back(r, i, -scale * v);
    h_vals.push_back(h);
  };

  // orthant: inequalities, then finite (non-pinned) lower/upper bounds
  for (const auto& row : problem.inequalities())
    pushRow(row.lhs, -1.0, -row.lhs.constant);  // s = -(a'x + k) >= 0
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::isfinite(lb[i]) && lb[i] != ub[i]) {
      const int r = static_cast<int>(h_vals.size());
      g_trip.emplace_back(r, i, -1.0);
      h_vals.push_back(-lb[i]);  // s = x - lb
    }
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::isfinite(ub[i]) && lb[i] != ub[i]) {
      const int r = static_cast<int>(h_vals.size());
      g_trip.emplace_back(r, i, 1.0);
      h_vals.push_back(ub[i]);  // s = ub - x
    }
  dims.nonneg = static_cast<Eigen::Index>(h_vals.size());

  // native second-order cones
  std::vector<Eigen::Index> soc_starts;
  for (const auto& soc : problem.socConstraints()) {
    soc_starts.push_back(static_cast<Eigen::Index>(h_vals.size()));
    pushRow(soc.t, 1.0, soc.t.constant);
    for (const auto& row : soc.v) pushRow(row, 1.0, row.constant);
    dims.soc.push_back(static_cast<Eigen::Index>(soc.v.size()) + 1);
  }

  // quadratic inequalities lowered to cones:
  //   sum_r v_r(x)^2 <= w(x)  <=>  (w+1, 2v, w-1) in SOC
  std::vector<Eigen::Index> quad_starts;
  for (const auto& quad : problem.quadConstraints()) {
    quad_starts.push_back(static_cast<Eigen::Index>(h_vals.size()));
    AffineExpr w = quad.linear;  // w(x) = -linear(x)
    w *= -1.0;
    pushRow(w, 1.0, w.constant + 1.0);
    for (const auto& sq : quad.squares) pushRow(sq, 2.0, 2.0 * sq.constant);
    pushRow(w, 1.0, w.constant - 1.0);
    dims.soc.push_back(static_cast<Eigen::Index>(quad.squares.size()) + 2);
  }

  Eigen::SparseMatrix<double> A(static_cast<Eigen::Index>(b_vals.size()), n_ext);
  A.setFromTriplets(a_trip.begin(), a_trip.end());
  Eigen::SparseMatrix<double> G(static_cast<Eigen::Index>(h_vals.size()), n_ext);
  G.setFromTriplets(g_trip.begin(), g_trip.end());
  Eigen::VectorXd b = Eigen::Map<Eigen::VectorXd>(b_vals.data(), b_vals.size());
  Eigen::VectorXd h = Eigen::Map<Eigen::VectorXd>(h_vals.data(), h_vals.size());

  ConeLpSettings lp;
  lp.feas_tol = settings.feas_tol;
  lp.abs_gap_tol = settings.gap_tol;
  lp.rel_gap_tol = settings.rel_gap_tol;
  lp.max_iters = settings.max_iterations;
  lp.frac_to_boundary = settings.frac_to_boundary;
  lp.static_reg = settings.static_reg;
  lp.refine_steps = settings.refine_steps;

  ConeLpSolver solver(problem.objectiveMatrix(), c, A, b, G, h, dims);
  const ConeLpResult res = solver.solve(lp);

  Solution sol;
  sol.iterations = res.iterations;
  sol.primal_res = res.primal_res;
  sol.dual_res = res.dual_res;
  sol.gap = res.gap;
  switch (res.status) {
    case ConeLpStatus::Optimal: sol.status = SolveStatus::Optimal; break;
    case ConeLpStatus::PrimalInfeasible:
      sol.status = SolveStatus::PrimalInfeasible; break;
    case ConeLpStatus::DualInfeasible:
      sol.status = SolveStatus::DualInfeasible; break;
    case ConeLpStatus::IterationLimit:
      sol.status = SolveStatus::IterationLimit; break;
    default: sol.status = SolveStatus::NumericalError; break;
  }
  if (res.x.size() == 0) return sol;

  sol.x = res.x.head(n);
  sol.objective = problem.objectiveValue(sol.x);

  const Eigen::Index num_eq = static_cast<Eigen::Index>(problem.equalities().size());
  sol.eq_duals = res.y.size() >= num_eq ? res.y.head(num_eq).eval()
                                        : Eigen::VectorXd::Zero(num_eq).eval();
  sol.bound_duals_lower = Eigen::VectorXd::Zero(n);
  sol.bound_duals_upper = Eigen::VectorXd::Zero(n);
  // pinned bounds were lowered as equality rows: split their multiplier
  for (size_t k = 0; k < pinned.size(); ++k) {
    const double y_pin = res.y[num_eq + static_cast<Eigen::Index>(k)];
    sol.bound_duals_upper[pinned[k]] = std::max(y_pin, 0.0);
    sol.bound_duals_lower[pinned[k]] = std::max(-y_pin, 0.0);
  }

  const Eigen::Index num_in = static_cast<Eigen::Index>(problem.inequalities().size());
  sol.ineq_duals = res.z.size() > 0 ? res.z.head(num_in).eval()
                                    : Eigen::VectorXd::Zero(num_in).eval();
  // lb/ub rows were pushed in variable order
  {
    Eigen::Index idx = num_in;
    for (Eigen::Index i = 0; i < n; ++i)
      if (std::isfinite(lb[i]) && lb[i] != ub[i])
        sol.bound_duals_lower[i] = res.z[idx++];
    for (Eigen::Index i = 0; i < n; ++i)
      if (std::isfinite(ub[i]) && lb[i] != ub[i])
        sol.bound_duals_upper[i] = res.z[idx++];
  }
  for (size_t k = 0; k < soc_starts.size(); ++k) {
    const Eigen::Index d =
        static_cast<Eigen::Index>(problem.socConstraints()[k].v.size()) + 1;
    sol.soc_duals.push_back(res.z.segment(soc_starts[k], d));
  }
  sol.quad_duals = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(quad_starts.size()));
  for (size_t k = 0; k < quad_starts.size(); ++k) {
    const Eigen::Index d =
        static_cast<Eigen::Index>(problem.quadConstraints()[k].squares.size()) + 2;
    sol.quad_duals[static_cast<Eigen::Index>(k)] =
        res.z[quad_starts[k]] + res.z[quad_starts[k] + d - 1];
  }
  return sol;
}

double KktReport::maxResidual() const {
  return std::max({stationarity, eq_residual, ineq_violation, complementarity,
                   dual_cone_violation});
}

KktReport checkKkt(const QcqpProblem& problem, const Solution& solution) {
  const Eigen::Index n = problem.numVariables();
  const Eigen::VectorXd& x = solution.x;
  KktReport rep;

  Eigen::VectorXd grad = problem.objectiveGradient(x);

  const auto& eqs = problem.equalities();
  for (size_t k = 0; k < eqs.size(); ++k) {
    const double r = eqs[k].lhs.value(x);
    rep.eq_residual = std::max(rep.eq_residual, std::abs(r));
    const double y = k < static_cast<size_t>(solution.eq_duals.size())
                         ? solution.eq_duals[static_cast<Eigen::Index>(k)]
                         : 0.0;
    for (const auto& [i, v] : eqs[k].lhs.terms) grad[i] += y * v;
  }

  const auto& ins = problem.inequalities();
  for (size_t k = 0; k < ins.size(); ++k) {
    const double r = ins[k].lhs.value(x);
    rep.ineq_violation = std::max(rep.ineq_violation, r);
    const double lam = k < static_cast<size_t>(solution.ineq_duals.size())
                           ? solution.ineq_duals[static_cast<Eigen::Index>(k)]
                           : 0.0;
    rep.dual_cone_violation = std::max(rep.dual_cone_violation, -lam);
    rep.complementarity = std::max(rep.complementarity, std::abs(lam * r));
    for (const auto& [i, v] : ins[k].lhs.terms) grad[i] += lam * v;
  }

  const auto& quads = problem.quadConstraints();
  for (size_t k = 0; k < quads.size(); ++k) {
    const double r = quads[k].value(x);
    rep.ineq_violation = std::max(rep.ineq_violation, r);
    const double lam = k < static_cast<size_t>(solution.quad_duals.size())
                           ? solution.quad_duals[static_cast<Eigen::Index>(k)]
                           : 0.0;
    rep.dual_cone_violation = std::max(rep.dual_cone_violation, -lam);
    rep.complementarity = std::max(rep.complementarity, std::abs(lam * r));
    grad += lam * quads[k].gradient(x, n);
  }

  const auto& socs = problem.socConstraints();
  for (size_t k = 0; k < socs.size(); ++k) {
    const auto& soc = socs[k];
    rep.ineq_violation = std::max(rep.ineq_violation, soc.violation(x));
    if (k >= solution.soc_duals.size()) continue;
    const Eigen::VectorXd& z = solution.soc_duals[k];
    // dual cone membership: z0 >= ||z_tail||
    rep.dual_cone_violation =
        std::max(rep.dual_cone_violation, z.tail(z.size() - 1).norm() - z[0]);
    // complementarity z's = 0 with s = (t(x), v(x))
    double zs = z[0] * soc.t.value(x);
    for (size_t r = 0; r < soc.v.size(); ++r)
      zs += z[static_cast<Eigen::Index>(r) + 1] * soc.v[r].value(x);
    rep.complementarity = std::max(rep.complementarity, std::abs(zs));
    // stationarity: -A_soc' z
    for (const auto& [i, v] : soc.t.terms) grad[i] -= z[0] * v;
    for (size_t r = 0; r < soc.v.size(); ++r)
      for (const auto& [i, v] : soc.v[r].terms)
        grad[i] -= z[static_cast<Eigen::Index>(r) + 1] * v;
  }

  const auto& lb = problem.lowerBounds();
  const auto& ub = problem.upperBounds();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::isfinite(lb[i]))
      rep.ineq_violation = std::max(rep.ineq_violation, lb[i] - x[i]);
    if (std::isfinite(ub[i]))
      rep.ineq_violation = std::max(rep.ineq_violation, x[i] - ub[i]);
    const double nl = solution.bound_duals_lower.size() == n
                          ? solution.bound_duals_lower[i] : 0.0;
    const double nu = solution.bound_duals_upper.size() == n
                          ? solution.bound_duals_upper[i] : 0.0;
    rep.dual_cone_violation = std::max({rep.dual_cone_violation, -nl, -nu});
    if (std::isfinite(lb[i]))
      rep.complementarity = std::max(rep.complementarity, std::abs(nl * (x[i] - lb[i])));
    if (std::isfinite(ub[i]))
      rep.complementarity = std::max(rep.complementarity, std::abs(nu * (ub[i] - x[i])));
    grad[i] += nu - nl;
  }

  rep.stationarity = grad.lpNorm<Eigen::Infinity>();
  return rep;
}

BaselineResult solveIterativeLinearization(
    const QcqpProblem& base, const std::vector<DcEquality>& dc_equalities,
    const SolveSettings& settings, const Eigen::VectorXd* initial) {
  const Eigen::Index n = base.numVariables();
  const Eigen::Index num_slacks =
      static_cast<Eigen::Index>(dc_equalities.size());
  Eigen::VectorXd x_k = initial ? *initial : Eigen::VectorXd::Zero(n);
  // A penalty far above the objective scale acts as a hard proximal term
  // on the linearization point and freezes progress; start near the
  // objective scale and escalate only while slack persists.
  double mu = settings.penalty_mu0 > 0.0
                  ? settings.penalty_mu0
                  : std::max(1e-6, 1e-4 * (1.0 + std::abs(base.objectiveValue(x_k))));

  // One linearization step: convexify around x_k at penalty mu and solve.
  auto solveConvexified = [&](double penalty, const SolveSettings& inner_st) {
    QcqpProblem prob = base;
    const Eigen::Index s0 = prob.addBlock("cc_slack", num_slacks);

    auto addRelaxedSide = [&](const QuadConstraint& keep,
                              const QuadConstraint& linearized,
                              Eigen::Index slack) {
      const double val_k = linearized.value(x_k);
      const Eigen::VectorXd grad_k = linearized.gradient(x_k, n);
      QuadConstraint qc;
      qc.squares = keep.squares;
      qc.linear = keep.linear;
      qc.tag.kind = "cc_relaxed";
      for (Eigen::Index i = 0; i < n; ++i)
        if (grad_k[i] != 0.0) qc.linear.add(i, -grad_k[i]);
      qc.linear.constant += -val_k + grad_k.dot(x_k);
      qc.linear.add(slack, -1.0);
      if (qc.squares.empty())
        prob.addInequality(std::move(qc.linear));
      else
        prob.addQuadConstraint(std::move(qc));
      prob.setLowerBound(slack, 0.0);
      AffineExpr pen;
      pen.add(slack, penalty);
      prob.addObjectiveLinear(pen);
    };

    for (size_t i = 0; i < dc_equalities.size(); ++i) {
      const auto& dc = dc_equalities[i];
      addRelaxedSide(dc.plus, dc.minus, s0 + static_cast<Eigen::Index>(i));
    }
    return solveConvexQcqp(prob, inner_st);
  };

  // Exact penalized merit: f(x) + mu * sum |plus - minus|.
  auto merit = [&](const Eigen::VectorXd& x, double penalty) {
    double m = base.objectiveValue(x);
    for (const auto& dc : dc_equalities)
      m += penalty * std::abs(dc.plus.value(x) - dc.minus.value(x));
    return m;
  };
  // Max violation of the base problem's convex constraints (equalities are
  // affine and preserved by extrapolation, so only inequality-like rows).
  auto primalViolation = [&](const Eigen::VectorXd& x) {
    double v = 0.0;
    for (const auto& row : base.inequalities())
      v = std::max(v, row.lhs.value(x));
    for (const auto& quad : base.quadConstraints())
      v = std::max(v, quad.value(x));
    for (const auto& soc : base.socConstraints())
      v = std::max(v, soc.violation(x));
    const auto& lo = base.lowerBounds();
    const auto& hi = base.upperBounds();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::isfinite(lo[i])) v = std::max(v, lo[i] - x[i]);
      if (std::isfinite(hi[i])) v = std::max(v, x[i] - hi[i]);
    }
    return v;
  };

  // Fixed-penalty linearization steps with over-relaxation; mu escalates
  // (x10 per escalation) only when a fixed point still carries slack.
  // Growing mu every single step acts as an ever-harder proximal term and
  // freezes the iterate far from stationarity.
  BaselineResult out;
  const int budget = std::max(settings.max_outer_iterations, 1) * 10;
  double prev_step = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < budget; ++iter) {
    SolveSettings inner_settings = settings;
    if (prev_step > 1e-3) {
      // loose tolerances while the iterate is still traveling
      inner_settings.feas_tol = std::max(settings.feas_tol, 1e-6);
      inner_settings.gap_tol = std::max(settings.gap_tol, 1e-6);
      inner_settings.rel_gap_tol = std::max(settings.rel_gap_tol, 1e-7);
    }
    Solution inner = solveConvexified(mu, inner_settings);
    BaselineIteration it;
    it.penalty_mu = mu;
    it.inner_status = inner.status;
    if (inner.status != SolveStatus::Optimal &&
        inner.status != SolveStatus::IterationLimit) {
      out.solution = inner;
      out.solution.x = x_k;
      out.solution.objective = base.objectiveValue(x_k);
      out.trace.push_back(it);
      return out;
    }
    Eigen::VectorXd x_next = inner.x.head(n);
    // over-relaxation along the linearization step while the exact
    // penalized merit keeps improving and the base problem stays feasible
    {
      const Eigen::VectorXd d = x_next - x_k;
      double best = merit(x_next, mu);
      double beta = 1.0;
      while (beta < 4096.0) {
        const Eigen::VectorXd trial = x_k + (2.0 * beta) * d;
        if (primalViolation(trial) > 1e-9) break;
        const double m = merit(trial, mu);
        if (m >= best - 1e-14 * (1.0 + std::abs(best))) break;
        best = m;
        beta *= 2.0;
        x_next = trial;
      }
    }
    it.objective = base.objectiveValue(x_next);
    double viol = 0.0;  // true equality violation at the new iterate
    for (const auto& dc : dc_equalities)
      viol += std::abs(dc.plus.value(x_next) - dc.minus.value(x_next));
    it.slack_sum = viol;
    it.step_norm = (x_next - x_k).lpNorm<Eigen::Infinity>();
    out.trace.push_back(it);
    x_k = x_next;
    prev_step = it.step_norm;

    const double obj_scale = 1.0 + std::abs(it.objective);
    const bool fixed_point =
        it.step_norm <= 1e-5 * (1.0 + x_k.lpNorm<Eigen::Infinity>());
    const bool slack_ok = it.slack_sum <= settings.baseline_tol * obj_scale;
    if (fixed_point && slack_ok) {
      out.converged = true;
      out.solution = inner;
      out.solution.x = x_k;
      out.solution.objective = it.objective;
      return out;
    }
    if (fixed_point && !slack_ok)
      mu = std::min(mu * settings.penalty_growth, settings.penalty_cap);
  }

  out.solution.status = SolveStatus::IterationLimit;
  out.solution.x = x_k;
  out.solution.objective = base.objectiveValue(x_k);
  return out;
}

}  // namespace momplan
