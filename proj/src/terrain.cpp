/**
 * @file terrain.cpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 */

#include "momplan/terrain.hpp"

#include <stdexcept>

namespace momplan {

void TerrainRegion::validate() const {
  if (std::abs(normal.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("region " + std::to_string(id) +
                                ": normal must be unit length");
  if (halfspaces.empty())
    throw std::invalid_argument("region " + std::to_string(id) +
                                ": empty halfspace set");
  const Eigen::Matrix3d defect =
      rotation.transpose() * rotation - Eigen::Matrix3d::Identity();
  if (defect.cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("region " + std::to_string(id) +
                                ": rotation not orthonormal");
  if ((rotation.col(2) - normal).norm() > 1e-9)
    throw std::invalid_argument("region " + std::to_string(id) +
                                ": rotation z column must equal the normal");
  if (bounding_box.isEmpty())
    throw std::invalid_argument("region " + std::to_string(id) +
                                ": bounding box not set");
}

double TerrainRegion::heightAbove(const Eigen::Vector3d& p) const {
  return normal.dot(p - surface_point);
}

double TerrainRegion::borderViolation(const Eigen::Vector3d& p) const {
  double v = -std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : halfspaces) v = std::max(v, a.dot(p) - b);
  return v;
}

TerrainRegion TerrainRegion::rectangle(int id, const Eigen::Vector3d& center,
                                       const Eigen::Vector3d& normal_in,
                                       double yaw, double half_x,
                                       double half_y, double friction) {
  if (half_x <= 0.0 || half_y <= 0.0)
    throw std::invalid_argument("region rectangle: half extents must be > 0");
  TerrainRegion region;
  region.id = id;
  region.normal = normal_in.normalized();
  region.surface_point = center;
  region.friction = friction;

  // deterministic frame: minimal rotation taking z to the normal, then yaw
  const Eigen::Quaterniond align = Eigen::Quaterniond::FromTwoVectors(
      Eigen::Vector3d::UnitZ(), region.normal);
  region.rotation =
      align.toRotationMatrix() *
      Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix();

  const Eigen::Vector3d tx = region.rotation.col(0);
  const Eigen::Vector3d ty = region.rotation.col(1);
  region.halfspaces = {
      {tx, tx.dot(center) + half_x},
      {-tx, -tx.dot(center) + half_x},
      {ty, ty.dot(center) + half_y},
      {-ty, -ty.dot(center) + half_y},
  };

  region.bounding_box.setEmpty();
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      region.bounding_box.extend(center + sx * half_x * tx + sy * half_y * ty);
  region.bounding_box.min() -= Eigen::Vector3d::Constant(1e-6);
  region.bounding_box.max() += Eigen::Vector3d::Constant(1e-6);
  return region;
}

}  // namespace momplan
