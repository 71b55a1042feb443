/**
 * @file pwa.hpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 */

#pragma once

#include <vector>

namespace momplan {

/// One affine piece value = slope * theta + intercept on [theta_lo, theta_hi].
struct PwaPiece {
  double theta_lo = 0.0, theta_hi = 0.0;
  double slope = 0.0, intercept = 0.0;
  double max_error = 0.0;  ///< max |true - chord| on the piece

  double at(double theta) const { return slope * theta + intercept; }
  bool contains(double theta, double tol = 1e-9) const {
    return theta >= theta_lo - tol && theta <= theta_hi + tol;
  }
};

/// Piecewise affine interpolants of sine and cosine over a theta range;
/// pieces are chords on uniform breakpoints, hence exact at breakpoints.
struct PwaApprox {
  double theta_min = 0.0, theta_max = 0.0;
  std::vector<PwaPiece> sin_pieces, cos_pieces;

  double sinAt(double theta) const;
  double cosAt(double theta) const;
  int sinPieceIndex(double theta) const;
  int cosPieceIndex(double theta) const;
  double maxSinError() const;
  double maxCosError() const;
};

/// Uniform-breakpoint chord interpolation with num_sin / num_cos pieces.
/// Throws std::invalid_argument for empty ranges, piece counts < 1, or a
/// range outside [-pi, pi].
PwaApprox buildPwaSincos(int num_sin, int num_cos, double theta_min,
                         double theta_max);

}  // namespace momplan
