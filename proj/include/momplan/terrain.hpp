/**
 * @file terrain.hpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 */

#pragma once

#include <Eigen/Dense>
#include <vector>

namespace momplan {

/// Convex obstacle-free terrain patch.  Feet must lie on the surface plane
/// inside the border halfspaces; hands may also hover in the epigraph.
struct TerrainRegion {
  int id = -1;
  /// Border halfspaces a'p <= b in world frame (sides of the patch).
  std::vector<std::pair<Eigen::Vector3d, double>> halfspaces;
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();  ///< outward, unit
  Eigen::Vector3d surface_point = Eigen::Vector3d::Zero();
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();  ///< col z = normal
  double friction = 1.0;

  /// Axis-aligned box containing the patch, inflated by `margin`; used to
  /// derive per-row big-M constants.
  Eigen::AlignedBox3d bounding_box;

  void validate() const;
  /// Signed height of p above the surface plane.
  double heightAbove(const Eigen::Vector3d& p) const;
  /// Max border violation (<= 0 inside), ignoring the surface plane.
  double borderViolation(const Eigen::Vector3d& p) const;

  /// Rectangular patch centered at `center` on the plane with the given
  /// normal, yawed by `yaw` about it, half side lengths `half_x`, `half_y`.
  static TerrainRegion rectangle(int id, const Eigen::Vector3d& center,
                                 const Eigen::Vector3d& normal, double yaw,
                                 double half_x, double half_y,
                                 double friction = 1.0);
};

}  // namespace momplan
