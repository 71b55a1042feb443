/**
 * @file dc_decomposition.hpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 *
 * Difference-of-convex decomposition of scalar and cross products.  Each
 * component of lever x force is a scalar product of 2-vectors built from
 * lever and force entries; every scalar product x^T y splits into
 * (1/4)||x+y||^2 - (1/4)||x-y||^2, i.e. a difference of convex quadratics.
 * Lever entries are normalized by the effector nominal length and force
 * entries by M*||g||; the constant alpha restores physical units.
 */

#pragma once

#include <Eigen/Dense>

#include "momplan/dynamics.hpp"

namespace momplan {

/// Normalized 2-vector factors of the three cross-product components.
/// a,b,c come from the lever, d,e,f from the force:
///   (l x f)_x = alpha * a^T d,  (l x f)_y = alpha * b^T e,
///   (l x f)_z = alpha * c^T f.
struct CrossDecomposition {
  Eigen::Vector2d a, b, c;  ///< (-lz, ly), (lz, -lx), (-ly, lx), normalized
  Eigen::Vector2d d, e, f;  ///< (fy, fz), (fx, fz), (fx, fy), normalized
  double alpha = 0.0;       ///< l_max * M * ||g||  [N m]

  /// (alpha/4) * [ ||a+d||^2 - ||a-d||^2, ... ] == lever x force.
  Eigen::Vector3d reconstruct() const;
  /// Squared norms of the plus combinations (||a+d||^2, ||b+e||^2, ||c+f||^2).
  Eigen::Vector3d plusSquares() const;
  /// Squared norms of the minus combinations.
  Eigen::Vector3d minusSquares() const;
};

/// Upper bounds on the positive / negative definite components, in the same
/// normalized units as the decomposition vectors.
struct BoundPair {
  Eigen::Vector3d u_plus = Eigen::Vector3d::Zero();   ///< U+
  Eigen::Vector3d u_minus = Eigen::Vector3d::Zero();  ///< U-

  /// kappa implied by the bounds: (alpha/4)(U+ - U-) + torque.
  Eigen::Vector3d kappaFromBounds(double alpha,
                                  const Eigen::Vector3d& torque) const;
};

/// Splits x^T y into convex parts (q_plus, q_minus) with
/// q_plus - q_minus == x^T y.  Throws std::invalid_argument on length
/// mismatch.
std::pair<double, double> decomposeScalarProduct(
    const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Builds the normalized decomposition of lever x force for one effector.
/// Throws std::invalid_argument if the effector nominal length is not
/// positive or gravity_norm/mass are not positive.
CrossDecomposition buildCrossDecomposition(const Eigen::Vector3d& lever,
                                           const Eigen::Vector3d& force,
                                           const EndEffectorSpec& effector,
                                           double mass, double gravity_norm);

/// Per-component gaps (u+ - ||.+.||^2, u- - ||.-.||^2) for the three axes;
/// entries >= -tol certify feasibility, max entry ~ 0 certifies tightness.
/// Order: (x+, y+, z+, x-, y-, z-).
Eigen::Matrix<double, 6, 1> relaxationGap(const BoundPair& bounds,
                                          const CrossDecomposition& dec);

}  // namespace momplan
