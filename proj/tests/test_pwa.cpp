#include "doctest.h"


#include <stdexcept>
#include <cmath>

#include "momplan/pwa.hpp"

using namespace momplan;

TEST_CASE("chords are exact at breakpoints and at zero for symmetric ranges") {
  for (int pieces : {1, 2, 4, 5}) {
    auto approx = buildPwaSincos(pieces, pieces, -M_PI / 2, M_PI / 2);
    for (int u = 0; u <= pieces; ++u) {
      const double theta = -M_PI / 2 + u * (M_PI / pieces);
      CHECK(approx.sinAt(theta) == doctest::Approx(std::sin(theta)).epsilon(1e-12));
      CHECK(approx.cosAt(theta) == doctest::Approx(std::cos(theta)).epsilon(1e-12));
    }
  }
  // even piece count puts a breakpoint at zero: s = 0 and c interpolates to
  // the chord; with any symmetric partition s(0) must vanish
  auto approx = buildPwaSincos(2, 2, -M_PI / 2, M_PI / 2);
  CHECK(approx.sinAt(0.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(approx.cosAt(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  auto odd = buildPwaSincos(3, 3, -M_PI / 2, M_PI / 2);
  CHECK(odd.sinAt(0.0) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("single-piece sine chord on [0, pi/2]") {
  auto approx = buildPwaSincos(1, 1, 0.0, M_PI / 2);
  const auto& piece = approx.sin_pieces.front();
  CHECK(piece.slope == doctest::Approx(2.0 / M_PI).epsilon(1e-12));
  CHECK(piece.intercept == doctest::Approx(0.0).epsilon(1e-12));
  const double expected = std::sin(M_PI / 4) - 0.5;  // ~0.2071
  CHECK(approx.sinAt(M_PI / 4) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(piece.max_error == doctest::Approx(expected).epsilon(1e-4));
}

TEST_CASE("refinement shrinks the worst-piece error monotonically") {
  double prev_sin = 1e9, prev_cos = 1e9;
  for (int pieces : {1, 2, 4, 8}) {
    auto approx = buildPwaSincos(pieces, pieces, -M_PI / 2, M_PI / 2);
    CHECK(approx.maxSinError() <= prev_sin + 1e-12);
    CHECK(approx.maxCosError() <= prev_cos + 1e-12);
    prev_sin = approx.maxSinError();
    prev_cos = approx.maxCosError();
  }
  CHECK(prev_sin <= 0.05);
}

TEST_CASE("invalid ranges are rejected") {
  CHECK_THROWS_AS(buildPwaSincos(0, 1, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(buildPwaSincos(1, 1, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(buildPwaSincos(1, 1, -4.0, 1.0), std::invalid_argument);
}
