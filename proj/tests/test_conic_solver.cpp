#include "doctest.h"

#include <Eigen/Dense>

#include "momplan/conic_solver.hpp"
#include "momplan/qcqp.hpp"

using namespace momplan;

TEST_CASE("bound-constrained quadratic: min x^2 s.t. x >= 1") {
  QcqpProblem prob;
  const auto x = prob.addBlock("x", 1);
  prob.addObjectiveSquaredTerm(1.0, AffineExpr({{x, 1.0}}));
  prob.setLowerBound(x, 1.0);

  auto sol = solveConvexQcqp(prob);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.x[0] == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(checkKkt(prob, sol).maxResidual() <= 1e-7);
}

TEST_CASE("linear objective over a disk: min x+y s.t. x^2+y^2 <= 2") {
  QcqpProblem prob;
  const auto v = prob.addBlock("v", 2);
  prob.addObjectiveLinear(AffineExpr({{v, 1.0}, {v + 1, 1.0}}));
  QuadConstraint ball;
  ball.squares = {AffineExpr({{v, 1.0}}), AffineExpr({{v + 1, 1.0}})};
  ball.linear.constant = -2.0;
  prob.addQuadConstraint(ball);

  auto sol = solveConvexQcqp(prob);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.x[0] == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(sol.x[1] == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(sol.objective == doctest::Approx(-2.0).epsilon(1e-7));
  CHECK(checkKkt(prob, sol).maxResidual() <= 1e-7);
}

TEST_CASE("small LP with equality") {
  // min -x - 2y  s.t.  x + y = 1, x >= 0, y >= 0  ->  (0, 1), obj -2
  QcqpProblem prob;
  const auto x = prob.addBlock("x", 2);
  prob.addObjectiveLinear(AffineExpr({{x, -1.0}, {x + 1, -2.0}}));
  prob.addEquality(AffineExpr({{x, 1.0}, {x + 1, 1.0}}, -1.0));
  prob.setLowerBound(x, 0.0);
  prob.setLowerBound(x + 1, 0.0);

  auto sol = solveConvexQcqp(prob);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.x[0] == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(sol.x[1] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sol.objective == doctest::Approx(-2.0).epsilon(1e-8));
  CHECK(checkKkt(prob, sol).maxResidual() <= 1e-7);
}

TEST_CASE("native second-order cone") {
  // min t s.t. ||(x-1, y-2)|| <= t  -> t = 0 at (1, 2)
  QcqpProblem prob;
  const auto x = prob.addBlock("x", 2);
  const auto t = prob.addBlock("t", 1);
  prob.addObjectiveLinear(AffineExpr({{t, 1.0}}));
  SocConstraint soc;
  soc.t = AffineExpr({{t, 1.0}});
  soc.v = {AffineExpr({{x, 1.0}}, -1.0), AffineExpr({{x + 1, 1.0}}, -2.0)};
  prob.addSocConstraint(soc);
  prob.setLowerBound(t, 0.0);

  auto sol = solveConvexQcqp(prob);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.x[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(sol.x[1] == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(sol.objective == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("infeasible linear rows are certified") {
  QcqpProblem prob;
  const auto x = prob.addBlock("x", 1);
  prob.addObjectiveSquaredTerm(1.0, AffineExpr({{x, 1.0}}));
  prob.addInequality(AffineExpr({{x, 1.0}}));          // x <= 0
  prob.addInequality(AffineExpr({{x, -1.0}}, 1.0));    // 1 - x <= 0 -> x >= 1
  auto sol = solveConvexQcqp(prob);
  CHECK(sol.status == SolveStatus::PrimalInfeasible);
}

TEST_CASE("unbounded problem is certified") {
  QcqpProblem prob;
  const auto x = prob.addBlock("x", 1);
  prob.addObjectiveLinear(AffineExpr({{x, 1.0}}));
  prob.setUpperBound(x, 0.0);
  auto sol = solveConvexQcqp(prob);
  CHECK(sol.status == SolveStatus::DualInfeasible);
}

TEST_CASE("equality-pinned variable becomes an equality row") {
  QcqpProblem prob;
  const auto x = prob.addBlock("x", 2);
  prob.addObjectiveSquaredTerm(1.0, AffineExpr({{x, 1.0}}, -3.0));
  prob.addObjectiveSquaredTerm(1.0, AffineExpr({{x + 1, 1.0}}, -3.0));
  prob.setBounds(x + 1, 1.0, 1.0);
  auto sol = solveConvexQcqp(prob);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.x[0] == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(sol.x[1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(checkKkt(prob, sol).maxResidual() <= 1e-7);
}

TEST_CASE("kkt checker flags a perturbed primal point") {
  QcqpProblem prob;
  const auto x = prob.addBlock("x", 2);
  prob.addObjectiveSquaredTerm(1.0, AffineExpr({{x, 1.0}}, -1.0));
  prob.addObjectiveSquaredTerm(1.0, AffineExpr({{x + 1, 1.0}}, 2.0));
  prob.addEquality(AffineExpr({{x, 1.0}, {x + 1, -1.0}}, -0.5));

  auto sol = solveConvexQcqp(prob);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(checkKkt(prob, sol).maxResidual() <= 1e-7);

  Solution perturbed = sol;
  perturbed.x[0] += 1e-3;
  const auto rep = checkKkt(prob, perturbed);
  CHECK(rep.maxResidual() >= 1e-4);
}

TEST_CASE("kkt checker accepts the analytic unconstrained minimizer") {
  QcqpProblem prob;
  const auto x = prob.addBlock("x", 2);
  prob.addObjectiveSquaredTerm(1.0, AffineExpr({{x, 1.0}}, -2.0));
  prob.addObjectiveSquaredTerm(2.0, AffineExpr({{x + 1, 1.0}}, 1.0));

  Solution analytic;
  analytic.status = SolveStatus::Optimal;
  analytic.x = Eigen::Vector2d(2.0, -1.0);
  analytic.eq_duals.resize(0);
  analytic.ineq_duals.resize(0);
  analytic.quad_duals.resize(0);
  analytic.bound_duals_lower = Eigen::Vector2d::Zero();
  analytic.bound_duals_upper = Eigen::Vector2d::Zero();
  CHECK(checkKkt(prob, analytic).maxResidual() <= 1e-12);
}

TEST_CASE("determinism: identical problems give identical iterates") {
  auto build = [] {
    QcqpProblem prob;
    const auto x = prob.addBlock("x", 3);
    prob.addObjectiveSquaredTerm(1.0, AffineExpr({{x, 1.0}, {x + 1, 0.5}}, -1.0));
    prob.addObjectiveSquaredTerm(0.3, AffineExpr({{x + 2, 1.0}}, 0.2));
    QuadConstraint ball;
    ball.squares = {AffineExpr({{x, 1.0}}), AffineExpr({{x + 1, 1.0}}),
                    AffineExpr({{x + 2, 1.0}})};
    ball.linear.constant = -4.0;
    prob.addQuadConstraint(ball);
    prob.addEquality(AffineExpr({{x, 1.0}, {x + 2, 1.0}}, -0.7));
    return prob;
  };
  auto s1 = solveConvexQcqp(build());
  auto s2 = solveConvexQcqp(build());
  REQUIRE(s1.status == SolveStatus::Optimal);
  REQUIRE(s2.status == SolveStatus::Optimal);
  CHECK(s1.iterations == s2.iterations);
  CHECK((s1.x - s2.x).lpNorm<Eigen::Infinity>() == 0.0);  // bit identical
}

TEST_CASE("iterative linearization: vacuous DC split") {
  // min (x-2)^2 with the trivial equality x^2 - x^2 = 0
  QcqpProblem base;
  const auto x = base.addBlock("x", 1);
  base.addObjectiveSquaredTerm(1.0, AffineExpr({{x, 1.0}}, -2.0));

  DcEquality dc;
  dc.plus.squares = {AffineExpr({{x, 1.0}})};
  dc.minus.squares = {AffineExpr({{x, 1.0}})};

  auto res = solveIterativeLinearization(base, {dc});
  CHECK(res.converged);
  CHECK(res.solution.x[0] == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(res.solution.objective == doctest::Approx(0.0).epsilon(1e-5));
}

TEST_CASE("iterative linearization solves a genuine bilinear equality") {
  // min (x-1)^2 + (y-2)^2  s.t.  z = x*y, z = 1.
  // DC form: x*y = 1/4||x+y||^2 - 1/4||x-y||^2.
  // Optimum of the restricted problem: x*y = 1 with x,y near (1, 2) ->
  // minimize (x-1)^2 + (1/x - 2)^2; stationary near x ~ 0.790, y ~ 1.266.
  QcqpProblem base;
  const auto x = base.addBlock("x", 1);
  const auto y = base.addBlock("y", 1);
  const auto z = base.addBlock("z", 1);
  base.addObjectiveSquaredTerm(1.0, AffineExpr({{x, 1.0}}, -1.0));
  base.addObjectiveSquaredTerm(1.0, AffineExpr({{y, 1.0}}, -2.0));
  base.addEquality(AffineExpr({{z, 1.0}}, -1.0));
  base.setBounds(x, -5.0, 5.0);
  base.setBounds(y, -5.0, 5.0);

  DcEquality dc;  // plus - minus = x*y - z = 0
  dc.plus.squares = {AffineExpr({{x, 0.5}, {y, 0.5}})};
  dc.minus.squares = {AffineExpr({{x, 0.5}, {y, -0.5}})};
  dc.minus.linear.add(z, 1.0);
  DcEquality flipped;  // the reverse orientation closes the equality
  flipped.plus = dc.minus;
  flipped.minus = dc.plus;

  SolveSettings st;
  Eigen::VectorXd init(3);
  init << 1.0, 1.0, 1.0;
  auto res = solveIterativeLinearization(base, {dc, flipped}, st, &init);
  REQUIRE(res.converged);
  CHECK(res.solution.x[0] * res.solution.x[1] == doctest::Approx(1.0).epsilon(1e-4));
}
