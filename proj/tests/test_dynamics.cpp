#include "doctest.h"

#include <Eigen/Dense>
#include <random>

#include "momplan/dynamics.hpp"

using namespace momplan;

namespace {

const Eigen::Vector3d kGravity(0.0, 0.0, -9.81);

// Straight-line re-implementation of the discrete update, kept independent
// of integrateStep on purpose: every row written out explicitly.
MomentumState referenceStep(const MomentumState& prev,
                            const Eigen::Vector3d& kdot,
                            const std::vector<Eigen::Vector3d>& forces,
                            double dt, double mass, const Eigen::Vector3d& g) {
  MomentumState out;
  out.lin_momentum_rate[0] = mass * g[0];
  out.lin_momentum_rate[1] = mass * g[1];
  out.lin_momentum_rate[2] = mass * g[2];
  for (const auto& f : forces) {
    out.lin_momentum_rate[0] += f[0];
    out.lin_momentum_rate[1] += f[1];
    out.lin_momentum_rate[2] += f[2];
  }
  out.ang_momentum_rate = kdot;
  for (int a = 0; a < 3; ++a) {
    out.lin_momentum[a] = prev.lin_momentum[a] + out.lin_momentum_rate[a] * dt;
    out.ang_momentum[a] = prev.ang_momentum[a] + kdot[a] * dt;
    out.com[a] = prev.com[a] + dt / mass * out.lin_momentum[a];
  }
  return out;
}

Eigen::Matrix3d yawRotation(double theta) {
  return Eigen::AngleAxisd(theta, Eigen::Vector3d::UnitZ()).toRotationMatrix();
}

}  // namespace

TEST_CASE("free fall single step") {
  MomentumState init;
  MomentumState next = integrateStep(init, Eigen::Vector3d::Zero(), {}, 0.1,
                                     1.0, kGravity);
  CHECK(next.lin_momentum.isApprox(Eigen::Vector3d(0, 0, -0.981), 1e-12));
  CHECK(next.com.isApprox(Eigen::Vector3d(0, 0, -0.0981), 1e-12));
}

TEST_CASE("hover force cancels gravity") {
  MomentumState init;
  init.com = Eigen::Vector3d(0.1, 0.2, 0.5);
  const double mass = 1.0;
  MomentumState next = integrateStep(
      init, Eigen::Vector3d::Zero(),
      {Eigen::Vector3d(0, 0, mass * 9.81)}, 0.1, mass, kGravity);
  CHECK(next.lin_momentum.norm() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(next.com.isApprox(init.com, 1e-14));
}

TEST_CASE("random sequence matches independent re-evaluation") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  auto rv = [&] { return Eigen::Vector3d(uni(rng), uni(rng), uni(rng)); };

  const double mass = 2.3;
  MomentumState a, b;
  for (int t = 0; t < 10; ++t) {
    const Eigen::Vector3d kdot = rv();
    const std::vector<Eigen::Vector3d> forces = {5.0 * rv(), 5.0 * rv()};
    const double dt = 0.05 + 0.1 * std::abs(uni(rng));
    a = integrateStep(a, kdot, forces, dt, mass, kGravity);
    b = referenceStep(b, kdot, forces, dt, mass, kGravity);
  }
  CHECK(a.com.isApprox(b.com, 1e-12));
  CHECK(a.lin_momentum.isApprox(b.lin_momentum, 1e-12));
  CHECK(a.ang_momentum.isApprox(b.ang_momentum, 1e-12));
}

TEST_CASE("integration telescopes exactly") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const double mass = 1.7;
  MomentumState state;
  state.lin_momentum = Eigen::Vector3d(0.3, -0.2, 0.1);
  Eigen::Vector3d sum = state.lin_momentum;
  for (int t = 0; t < 50; ++t) {
    const double dt = 0.05 + 0.05 * std::abs(uni(rng));
    const std::vector<Eigen::Vector3d> forces = {
        Eigen::Vector3d(uni(rng), uni(rng), uni(rng))};
    state = integrateStep(state, Eigen::Vector3d::Zero(), forces, dt, mass,
                          kGravity);
    sum += state.lin_momentum_rate * dt;
  }
  CHECK((state.lin_momentum - sum).norm() <=
        1e-10 * (1.0 + sum.norm()));
}

TEST_CASE("integrateStep rejects bad input") {
  MomentumState init;
  CHECK_THROWS_AS(integrateStep(init, Eigen::Vector3d::Zero(), {}, 0.0, 1.0,
                                kGravity),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrateStep(init, Eigen::Vector3d::Zero(), {}, 0.1, -1.0,
                                kGravity),
                  std::invalid_argument);
  init.com[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(integrateStep(init, Eigen::Vector3d::Zero(), {}, 0.1, 1.0,
                                kGravity),
                  std::invalid_argument);
}

TEST_CASE("kappa canonical values") {
  CHECK(kappaExact({1, 0, 0}, {0, 1, 0}, Eigen::Vector3d::Zero())
            .isApprox(Eigen::Vector3d(0, 0, 1)));
  // parallel lever and force: torque only
  CHECK(kappaExact({2, 4, -1}, {4, 8, -2}, {0.1, 0, 0})
            .isApprox(Eigen::Vector3d(0.1, 0, 0), 1e-12));
}

TEST_CASE("kappa matches skew-matrix expansion") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Vector3d l(uni(rng), uni(rng), uni(rng));
    const Eigen::Vector3d f(uni(rng), uni(rng), uni(rng));
    const Eigen::Vector3d tau(uni(rng), uni(rng), uni(rng));
    Eigen::Matrix3d skew;
    skew << 0, -l.z(), l.y(),
            l.z(), 0, -l.x(),
           -l.y(), l.x(), 0;
    const Eigen::Vector3d expected = skew * f + tau;
    CHECK(kappaExact(l, f, tau).isApprox(expected, 1e-13));
  }
}

TEST_CASE("kappa bilinearity and orthogonality") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Vector3d l(uni(rng), uni(rng), uni(rng));
    const Eigen::Vector3d f(uni(rng), uni(rng), uni(rng));
    const double a = uni(rng), b = uni(rng);
    const Eigen::Vector3d zero = Eigen::Vector3d::Zero();
    CHECK(kappaExact(a * l, b * f, zero)
              .isApprox(a * b * kappaExact(l, f, zero), 1e-12));
    const Eigen::Vector3d k = kappaExact(l, f, zero);
    CHECK(std::abs(k.dot(f)) <= 1e-12);
    CHECK(std::abs(k.dot(l)) <= 1e-12);
  }
}

TEST_CASE("local-to-world mapping") {
  ContactPhase phase;
  phase.rotation = Eigen::Matrix3d::Identity();

  SUBCASE("identity") {
    auto w = mapLocalToWorld(phase, {1, 2, 3}, 0.4, {0.01, -0.02});
    CHECK(w.force_world.isApprox(Eigen::Vector3d(1, 2, 3)));
    CHECK(w.torque_world.isApprox(Eigen::Vector3d(0, 0, 0.4)));
    CHECK(w.cop_world.isApprox(Eigen::Vector3d(0.01, -0.02, 0)));
  }

  SUBCASE("quarter turn about z") {
    phase.rotation = yawRotation(M_PI / 2.0);
    auto w = mapLocalToWorld(phase, {1, 0, 0}, 0.0, {0, 0});
    CHECK(w.force_world.isApprox(Eigen::Vector3d(0, 1, 0), 1e-12));
  }

  SUBCASE("random rotation preserves norm, torque along third column") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      const Eigen::Quaterniond q = Eigen::Quaterniond(
          uni(rng), uni(rng), uni(rng), uni(rng)).normalized();
      phase.rotation = q.toRotationMatrix();
      const Eigen::Vector3d f(uni(rng), uni(rng), uni(rng));
      const double tz = uni(rng);
      auto w = mapLocalToWorld(phase, f, tz, {uni(rng), uni(rng)});
      CHECK(w.force_world.norm() == doctest::Approx(f.norm()).epsilon(1e-12));
      CHECK(w.torque_world.isApprox(phase.rotation.col(2) * tz, 1e-12));
      // world images are exactly rotation-mapped local values
      CHECK((w.force_world - phase.rotation * f).lpNorm<Eigen::Infinity>() <=
            1e-12);
    }
  }

  SUBCASE("rejects non-orthonormal rotation") {
    phase.rotation(0, 0) = 2.0;
    CHECK_THROWS_AS(mapLocalToWorld(phase, {1, 0, 0}, 0.0, {0, 0}),
                    std::invalid_argument);
  }
}

TEST_CASE("effector spec validation") {
  EndEffectorSpec spec;
  spec.id = "lf";
  spec.nominal_length = 0.4;
  spec.cop_min = {-0.03, -0.02};
  spec.cop_max = {0.03, 0.02};
  spec.friction_coeff = 0.7;
  spec.torsion_coeff = 0.05;
  CHECK_NOTHROW(spec.validate());

  EndEffectorSpec bad = spec;
  bad.friction_coeff = -0.1;
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("mu_f"),
                       std::invalid_argument);
  bad = spec;
  bad.nominal_length = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.kind = EffectorKind::Hand;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);  // non-zero cop box
  bad.cop_min.setZero();
  bad.cop_max.setZero();
  CHECK_NOTHROW(bad.validate());
}
