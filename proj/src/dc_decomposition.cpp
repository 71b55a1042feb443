/**
 * @file dc_decomposition.cpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 */

#include "momplan/dc_decomposition.hpp"

#include <stdexcept>

namespace momplan {

Eigen::Vector3d CrossDecomposition::reconstruct() const {
  return 0.25 * alpha * (plusSquares() - minusSquares());
}

Eigen::Vector3d CrossDecomposition::plusSquares() const {
  return {(a + d).squaredNorm(), (b + e).squaredNorm(), (c + f).squaredNorm()};
}

Eigen::Vector3d CrossDecomposition::minusSquares() const {
  return {(a - d).squaredNorm(), (b - e).squaredNorm(), (c - f).squaredNorm()};
}

Eigen::Vector3d BoundPair::kappaFromBounds(double alpha,
                                           const Eigen::Vector3d& torque) const {
  return 0.25 * alpha * (u_plus - u_minus) + torque;
}

std::pair<double, double> decomposeScalarProduct(const Eigen::VectorXd& x,
                                                 const Eigen::VectorXd& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("decomposeScalarProduct: length mismatch");
  double q_plus = 0.25 * (x + y).squaredNorm();
  double q_minus = 0.25 * (x - y).squaredNorm();
  return {q_plus, q_minus};
}

CrossDecomposition buildCrossDecomposition(const Eigen::Vector3d& lever,
                                           const Eigen::Vector3d& force,
                                           const EndEffectorSpec& effector,
                                           double mass, double gravity_norm) {
  if (!(effector.nominal_length > 0.0))
    throw std::invalid_argument("buildCrossDecomposition: nominal_length must be > 0");
  if (!(mass > 0.0) || !(gravity_norm > 0.0))
    throw std::invalid_argument("buildCrossDecomposition: mass and gravity_norm must be > 0");

  const Eigen::Vector3d ln = lever / effector.nominal_length;
  const Eigen::Vector3d fn = force / (mass * gravity_norm);

  CrossDecomposition dec;
  dec.a = {-ln.z(), ln.y()};
  dec.b = {ln.z(), -ln.x()};
  dec.c = {-ln.y(), ln.x()};
  dec.d = {fn.y(), fn.z()};
  dec.e = {fn.x(), fn.z()};
  dec.f = {fn.x(), fn.y()};
  dec.alpha = effector.nominal_length * mass * gravity_norm;
  return dec;
}

Eigen::Matrix<double, 6, 1> relaxationGap(const BoundPair& bounds,
                                          const CrossDecomposition& dec) {
  Eigen::Matrix<double, 6, 1> gap;
  gap.head<3>() = bounds.u_plus - dec.plusSquares();
  gap.tail<3>() = bounds.u_minus - dec.minusSquares();
  return gap;
}

}  // namespace momplan
