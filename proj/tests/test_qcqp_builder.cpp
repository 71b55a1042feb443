#include "doctest.h"

#include "momplan/qcqp_builder.hpp"
#include "momplan/verification.hpp"
#include "scenario_fixtures.hpp"

using namespace momplan;
using namespace momplan::testing;

TEST_CASE("constraint census: 9 quadratic/cone rows per active effector-step") {
  auto sc = makeStandingScenario(10);
  auto built = buildMomentumQcqp(sc, *sc.fixed_plan, sc.weights);
  for (int t = 1; t <= 10; ++t) {
    CHECK(built.problem.censusQuadCone("lf", t) == 9);
    CHECK(built.problem.censusQuadCone("rf", t) == 9);
  }
  CHECK(built.problem.censusQuadCone() == 2 * 10 * 9);

  SUBCASE("swing steps contribute nothing for the swing foot") {
    auto walk = makeWalkScenario(16);
    auto wb = buildMomentumQcqp(walk, *walk.fixed_plan, walk.weights);
    int active_steps = 0;
    for (int t = 1; t <= 16; ++t) {
      const bool lf_active = walk.fixed_plan->activePhase("lf", t - 1) != nullptr;
      CHECK(wb.problem.censusQuadCone("lf", t) == (lf_active ? 9 : 0));
      CHECK(wb.problem.censusQuadCone("rf", t) == 9);
      active_steps += lf_active ? 2 : 1;
    }
    CHECK(wb.problem.censusQuadCone() == 9 * active_steps);
  }

  SUBCASE("free fall has no cone or quadratic rows") {
    auto ff = makeFreeFallScenario(5);
    auto fb = buildMomentumQcqp(ff, *ff.fixed_plan, ff.weights);
    CHECK(fb.problem.censusQuadCone() == 0);
    CHECK(fb.problem.quadConstraints().empty());
    CHECK(fb.problem.socConstraints().empty());
  }
}

TEST_CASE("every paper variable has exactly one block per (effector,step)") {
  auto sc = makeStandingScenario(3);
  auto built = buildMomentumQcqp(sc, *sc.fixed_plan, sc.weights);
  for (const char* base : {"r", "l", "k", "ldot", "kdot"})
    for (int t = 1; t <= 3; ++t)
      CHECK(built.problem.findBlock(std::string(base) + "[" +
                                    std::to_string(t) + "]") != nullptr);
  for (const char* base : {"fL", "tauL", "zL", "f", "tau", "z", "uplus",
                           "uminus", "dca", "dcb", "dcc", "dcd", "dce", "dcf"})
    CHECK(built.problem.findBlock(std::string(base) + "[lf,2]") != nullptr);
  // one block each: names are unique by construction, count them
  int count = 0;
  for (const auto& blk : built.problem.blocks())
    if (blk.name == "uplus[rf,1]") ++count;
  CHECK(count == 1);
}

TEST_CASE("builder rejects bad input with named diagnostics") {
  auto sc = makeStandingScenario(10);
  SUBCASE("plan/grid mismatch") {
    sc.fine_steps = 5;  // plan spans 10
    CHECK_THROWS_WITH_AS(buildMomentumQcqp(sc, *sc.fixed_plan, sc.weights),
                         doctest::Contains("plan/grid mismatch"),
                         std::invalid_argument);
  }
  SUBCASE("non-PSD weights") {
    sc.weights.q_lin(0, 1) = 5.0;  // asymmetric
    CHECK_THROWS_WITH_AS(buildMomentumQcqp(sc, *sc.fixed_plan, sc.weights),
                         doctest::Contains("Q_l"), std::invalid_argument);
  }
  SUBCASE("unknown effector in plan") {
    ContactPlan plan = *sc.fixed_plan;
    plan.phases["xx"] = {makePhase("xx", {0, 0, 0}, 0, 0, 10)};
    CHECK_THROWS_AS(buildMomentumQcqp(sc, plan, sc.weights),
                    std::invalid_argument);
  }
}

TEST_CASE("standing solve: static equilibrium, tight relaxation") {
  auto sc = makeStandingScenario(10);
  auto built = buildMomentumQcqp(sc, *sc.fixed_plan, sc.weights);
  auto sol = solveConvexQcqp(built.problem);
  REQUIRE(sol.status == SolveStatus::Optimal);

  auto traj = extractTrajectory(built, sc, *sc.fixed_plan, sol);
  const double weight = sc.mass * 9.81;
  for (int t = 1; t <= traj.numSteps(); ++t) {
    const auto& step = traj.steps[t];
    CHECK(step.state.lin_momentum.norm() <= 2e-2);
    Eigen::Vector3d total = Eigen::Vector3d::Zero();
    for (const auto& e : step.effectors) total += e.wrench.force_world;
    CHECK(std::abs(total.x()) <= 1e-2 * weight);
    CHECK(std::abs(total.y()) <= 1e-2 * weight);
    CHECK(total.z() == doctest::Approx(weight).epsilon(1e-2));
  }
  CHECK(traj.maxGap() <= 1e-6);

  auto residuals = newtonEulerResidual(traj, *sc.fixed_plan, sc.mass, sc.gravity);
  CHECK(residuals.maxAll() <= 1e-6);
  auto cones = coneViolations(traj, sc, *sc.fixed_plan);
  CHECK(cones.maxAll() <= 1e-8);

  SUBCASE("running cost cross-check against the solver objective") {
    const double running = evaluateRunningCost(traj, sc.weights, sc);
    const double terminal = evaluateTerminalCost(traj, sc.weights);
    CHECK(std::abs(traj.objective - terminal - running) <= 1e-8);
  }

  SUBCASE("kkt residuals of the momentum program") {
    CHECK(checkKkt(built.problem, sol).maxResidual() <= 1e-7);
  }
}

TEST_CASE("free-fall solve matches the closed-form drop") {
  auto sc = makeFreeFallScenario(5);
  auto built = buildMomentumQcqp(sc, *sc.fixed_plan, sc.weights);
  auto sol = solveConvexQcqp(built.problem);
  REQUIRE(sol.status == SolveStatus::Optimal);
  auto traj = extractTrajectory(built, sc, *sc.fixed_plan, sol);

  MomentumState ref = sc.initial_state;
  for (int t = 1; t <= 5; ++t) {
    ref = integrateStep(ref, Eigen::Vector3d::Zero(), {}, 0.1, sc.mass,
                        sc.gravity);
    CHECK((traj.steps[t].state.com - ref.com).lpNorm<Eigen::Infinity>() <= 1e-7);
    CHECK((traj.steps[t].state.lin_momentum - ref.lin_momentum)
              .lpNorm<Eigen::Infinity>() <= 1e-7);
    CHECK(traj.steps[t].state.ang_momentum.norm() <= 1e-8);
  }
  auto residuals = newtonEulerResidual(traj, *sc.fixed_plan, sc.mass, sc.gravity);
  CHECK(residuals.maxAll() <= 1e-8);
}

TEST_CASE("decode round-trips a hand-assembled point") {
  auto sc = makeStandingScenario(2);
  auto built = buildMomentumQcqp(sc, *sc.fixed_plan, sc.weights);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(built.problem.numVariables());
  const auto& layout = built.layout;
  x[layout.com[0] + 2] = 0.31;
  x[layout.lin[1] + 0] = 0.5;
  const auto& v = layout.effector_vars.at({"lf", 1});
  x[v.f_world + 2] = 3.0;
  x[v.u_plus + 1] = 0.25;
  x[v.tau_local] = 0.01;

  Solution sol;
  sol.status = SolveStatus::Optimal;
  sol.x = x;
  auto traj = extractTrajectory(built, sc, *sc.fixed_plan, sol);
  CHECK(traj.steps[1].state.com.z() == 0.31);
  CHECK(traj.steps[2].state.lin_momentum.x() == 0.5);
  const auto& lf = traj.steps[1].effectors.front();
  CHECK(lf.effector == "lf");
  CHECK(lf.wrench.force_world.z() == 3.0);
  CHECK(lf.bounds.u_plus.y() == 0.25);
  CHECK(lf.wrench.torque_z_local == 0.01);

  SUBCASE("dimension mismatch rejected") {
    Solution bad;
    bad.x = Eigen::VectorXd::Zero(3);
    CHECK_THROWS_AS(extractTrajectory(built, sc, *sc.fixed_plan, bad),
                    std::invalid_argument);
  }
}

TEST_CASE("running cost formula on synthetic trajectories") {
  auto sc = makeStandingScenario(3);
  sc.weights = CostWeights{};  // spec defaults: Q_l = I
  MomentumTrajectory traj;
  traj.steps.resize(4);
  for (int t = 0; t <= 3; ++t) {
    traj.steps[t].dt = t == 0 ? 0.0 : 0.1;
    traj.steps[t].time = 0.1 * t;
  }
  SUBCASE("all-zero trajectory costs nothing") {
    CHECK(evaluateRunningCost(traj, sc.weights, sc) == 0.0);
  }
  SUBCASE("unit linear momentum at one step") {
    traj.steps[2].state.lin_momentum = {1.0, 1.0, 1.0};
    CHECK(evaluateRunningCost(traj, sc.weights, sc) ==
          doctest::Approx(0.3).epsilon(1e-12));
  }
}

TEST_CASE("dynamics residual detects a force perturbation exactly") {
  auto sc = makeStandingScenario(6);
  auto built = buildMomentumQcqp(sc, *sc.fixed_plan, sc.weights);
  auto sol = solveConvexQcqp(built.problem);
  REQUIRE(sol.status == SolveStatus::Optimal);
  auto traj = extractTrajectory(built, sc, *sc.fixed_plan, sol);

  const double eps = 1e-3;
  const double before = newtonEulerResidual(traj, *sc.fixed_plan, sc.mass,
                                            sc.gravity).dynamics[2];
  traj.steps[3].effectors[0].wrench.force_world.x() += eps;
  const double after = newtonEulerResidual(traj, *sc.fixed_plan, sc.mass,
                                           sc.gravity).dynamics[2];
  CHECK(after == doctest::Approx(before + eps).epsilon(1e-9));
}

TEST_CASE("deterministic rebuild: identical problem dumps") {
  auto sc = makeWalkScenario(8);
  auto a = buildMomentumQcqp(sc, *sc.fixed_plan, sc.weights);
  auto b = buildMomentumQcqp(sc, *sc.fixed_plan, sc.weights);
  CHECK(a.problem.dumpJson() == b.problem.dumpJson());
}

TEST_CASE("baseline on standing matches the relaxation") {
  auto sc = makeStandingScenario(6);
  auto built = buildMomentumQcqp(sc, *sc.fixed_plan, sc.weights);
  auto relax = solveConvexQcqp(built.problem);
  REQUIRE(relax.status == SolveStatus::Optimal);

  auto dc = buildMomentumDcBaseline(sc, *sc.fixed_plan, sc.weights);
  CHECK(dc.equalities.size() == 2 * 6 * 6);  // 2 feet x 6 steps x 6 rows

  SUBCASE("warm start at the relaxation optimum converges immediately") {
    Eigen::VectorXd init = relax.x;
    auto res = solveIterativeLinearization(dc.base, dc.equalities, {}, &init);
    REQUIRE(res.converged);
    CHECK(res.trace.size() <= 2);
    CHECK(res.solution.objective ==
          doctest::Approx(relax.objective).epsilon(1e-4));
  }
  SUBCASE("static warm start reaches the same objective") {
    Eigen::VectorXd init = staticInitialGuess(dc.layout, sc, *sc.fixed_plan,
                                              dc.base.numVariables());
    auto res = solveIterativeLinearization(dc.base, dc.equalities, {}, &init);
    REQUIRE(res.converged);
    CHECK(std::abs(res.solution.objective - relax.objective) <=
          1e-3 * (1.0 + std::abs(relax.objective)));
    CHECK(relax.objective <= res.solution.objective + 1e-6);
  }
}
