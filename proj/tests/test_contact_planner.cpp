#include "doctest.h"

#include "momplan/contact_planner.hpp"
#include "momplan/qcqp_builder.hpp"
#include "momplan/verification.hpp"
#include "scenario_fixtures.hpp"

using namespace momplan;
using namespace momplan::testing;

TEST_CASE("binary census matches the counting rule") {
  // 3 regions, 3 phases, 1 hand: H = 3x3, S = U*3, C = V*3, J = 2*3
  auto sc = makeHangingScenario(3, 3);
  auto mip = buildContactMiqcqp(sc, 3);
  const int U = sc.planner.pwa_pieces_sin, V = sc.planner.pwa_pieces_cos;
  CHECK(static_cast<int>(mip.binaries.size()) ==
        3 * 3 + U * 3 + V * 3 + 2 * 3);
  int hand_groups = 0, region_groups = 0;
  for (const auto& g : mip.exactly_one) {
    if (g.label.rfind("activation", 0) == 0) ++hand_groups;
    if (g.label.rfind("region", 0) == 0) ++region_groups;
  }
  CHECK(hand_groups == 3);
  CHECK(region_groups == 3);
  REQUIRE(mip.at_most.size() == 1);
  CHECK(mip.at_most[0].bound == 2);
}

TEST_CASE("momentum census inside the planner: 9 per active effector-step") {
  auto sc = makeSteppingScenario(2);
  auto mip = buildContactMiqcqp(sc, 2);
  const int steps = 2 * sc.planner.steps_per_phase;
  for (int t = 1; t <= steps; ++t) {
    const bool lf_swings = t <= sc.planner.steps_per_phase;  // lf lands at 1
    CHECK(mip.problem.censusQuadCone("lf", t) == (lf_swings ? 0 : 9));
    CHECK(mip.problem.censusQuadCone("rf", t) == 9);
  }
}

TEST_CASE("degenerate single region with singleton PWA: no free binaries") {
  auto sc = makeSteppingScenario(2);
  sc.planner.pwa_pieces_sin = 1;
  sc.planner.pwa_pieces_cos = 1;
  auto mip = buildContactMiqcqp(sc, 2);
  CHECK(mip.freeBinaryCount() == 0);

  auto bnb = solveBranchAndBound(mip);
  REQUIRE(bnb.status == SolveStatus::Optimal);
  auto exact = enumerateExact(mip);
  REQUIRE(exact.status == SolveStatus::Optimal);
  CHECK(bnb.objective ==
        doctest::Approx(exact.objective).epsilon(1e-6));
}

TEST_CASE("branch and bound agrees with enumeration on a stepping choice") {
  auto sc = makeSteppingScenario(2, /*split_ground=*/true, /*gap=*/0.02);
  sc.planner.pwa_pieces_sin = 2;
  sc.planner.pwa_pieces_cos = 2;
  auto mip = buildContactMiqcqp(sc, 2);
  CHECK(mip.freeBinaryCount() <= 10);

  BnbSettings settings;
  auto bnb = solveBranchAndBound(mip, settings);
  auto exact = enumerateExact(mip);
  REQUIRE(bnb.status == exact.status);
  if (bnb.status == SolveStatus::Optimal) {
    CHECK(std::abs(bnb.objective - exact.objective) <=
          1e-6 * (1.0 + std::abs(exact.objective)));
    CHECK(bnb.proven_gap <= settings.mip_gap + 1e-12);
  }
}

TEST_CASE("impossible gap is proven infeasible by both methods") {
  auto sc = makeSteppingScenario(3, /*split_ground=*/true, /*gap=*/0.60);
  // force the goal onto the far plate so staying put is not an option
  sc.weights.terminal.com_target = {0.9, 0.0, 0.30};
  // walking that far needs placements on the unreachable plate; region 0 is
  // too short for three growing steps, so every assignment fails
  sc.regions[0] = TerrainRegion::rectangle(0, {0.0, 0.0, 0.0}, {0, 0, 1}, 0.0,
                                           0.10, 0.5, 0.8);
  sc.regions[1] = TerrainRegion::rectangle(1, {1.2, 0.0, 0.0}, {0, 0, 1}, 0.0,
                                           0.10, 0.5, 0.8);
  // CoM must stay within leg reach of an active foot; make the terminal
  // constraint irrelevant and instead require stepping outside both plates
  sc.weights.terminal.com_target = {0.0, 0.0, 0.30};
  sc.reach.foot_offsets["lf"] = {Eigen::Vector2d(0.55, 0.18),
                                 Eigen::Vector2d(0.55, 0.18)};
  sc.reach.foot_offsets["rf"] = {Eigen::Vector2d(0.55, -0.18),
                                 Eigen::Vector2d(0.55, -0.18)};
  sc.reach.step_radius = {0.08, 0.08};  // forced ~0.55 m steps, no plate there
  auto mip = buildContactMiqcqp(sc, 2);
  auto bnb = solveBranchAndBound(mip);
  auto exact = enumerateExact(mip);
  CHECK(bnb.status == SolveStatus::PrimalInfeasible);
  CHECK(exact.status == SolveStatus::PrimalInfeasible);
}

TEST_CASE("decoded plan satisfies the implication constraints exactly") {
  auto sc = makeSteppingScenario(3);
  auto mip = buildContactMiqcqp(sc, 3);
  auto bnb = solveBranchAndBound(mip);
  REQUIRE(bnb.status == SolveStatus::Optimal);

  auto plan = decodeContactPlan(mip, sc, bnb.solution);
  plan.validate();
  for (const auto& [id, phases] : plan.phases) {
    for (const auto& phase : phases) {
      const TerrainRegion* region = sc.region(phase.region_id);
      REQUIRE(region != nullptr);
      // on the surface plane and inside the borders
      CHECK(std::abs(region->heightAbove(phase.position)) <= 1e-7);
      CHECK(region->borderViolation(phase.position) <= 1e-7);
    }
  }

  SUBCASE("decoded theta lies inside the active PWA piece") {
    const auto& layout = mip.layout;
    for (int j = 0; j < layout.phases; ++j) {
      const double theta = bnb.solution.x[layout.theta[j]];
      const double s = bnb.solution.x[layout.sin_var[j]];
      const double c = bnb.solution.x[layout.cos_var[j]];
      int active_piece = -1;
      for (size_t u = 0; u < layout.sin_binaries[j].size(); ++u)
        if (bnb.solution.x[layout.sin_binaries[j][u]] > 0.5)
          active_piece = static_cast<int>(u);
      REQUIRE(active_piece >= 0);
      const auto& piece = mip.pwa.sin_pieces[static_cast<size_t>(active_piece)];
      CHECK(piece.contains(theta, 1e-7));
      CHECK(s == doctest::Approx(piece.at(theta)).epsilon(1e-6));
      CHECK(std::abs(c) <= 1.0 + 1e-9);
    }
  }

  SUBCASE("fine-grid momentum re-solve with the decoded plan is feasible") {
    Scenario fine = sc;
    fine.fine_steps = plan.horizon();
    auto built = buildMomentumQcqp(fine, plan, fine.weights);
    auto sol = solveConvexQcqp(built.problem);
    REQUIRE(sol.status == SolveStatus::Optimal);
    auto traj = extractTrajectory(built, fine, plan, sol);
    auto residuals = newtonEulerResidual(traj, plan, fine.mass, fine.gravity);
    CHECK(residuals.maxAll() <= 1e-6);
    CHECK(coneViolations(traj, fine, plan).maxAll() <= 1e-8);
  }
}

TEST_CASE("hand activation decisions decode consistently") {
  auto sc = makeHangingScenario(3, 3);
  auto mip = buildContactMiqcqp(sc, 3);
  auto bnb = solveBranchAndBound(mip);
  REQUIRE(bnb.status == SolveStatus::Optimal);

  const auto& hand_vars = mip.layout.hands.at("h");
  auto coarse = coarsePlanFromSolution(mip, sc, bnb.solution);
  auto traj = extractCoarseTrajectory(mip, sc, coarse, bnb.solution);
  for (int j = 0; j < 3; ++j) {
    const bool active = bnb.solution.x[hand_vars[j].contact] > 0.5;
    for (int s = 0; s < mip.layout.steps_per_phase; ++s) {
      const int t = j * mip.layout.steps_per_phase + s + 1;
      double force = 0.0;
      for (const auto& e : traj.steps[t].effectors)
        force = std::max(force, e.wrench.force_local.norm());
      if (!active) CHECK(force <= 1e-6);
    }
    if (active) {
      // contact position pinned on some bar surface
      const Eigen::Vector3d p =
          bnb.solution.x.segment<3>(hand_vars[j].position);
      bool on_surface = false;
      for (const auto& region : sc.regions)
        if (std::abs(region.heightAbove(p)) <= 1e-6 &&
            region.borderViolation(p) <= 1e-6)
          on_surface = true;
      CHECK(on_surface);
    }
  }
  // at most n_max activations
  int activations = 0;
  for (int j = 0; j < 3; ++j)
    activations += bnb.solution.x[hand_vars[j].contact] > 0.5 ? 1 : 0;
  CHECK(activations <= sc.planner.n_max);
}

TEST_CASE("enumerate rejects oversized instances") {
  auto sc = makeSteppingScenario(3, true);
  sc.planner.pwa_pieces_sin = 5;
  sc.planner.pwa_pieces_cos = 5;
  auto mip = buildContactMiqcqp(sc, 3);
  REQUIRE(mip.freeBinaryCount() > 20);
  CHECK_THROWS_AS(enumerateExact(mip), std::invalid_argument);
}
