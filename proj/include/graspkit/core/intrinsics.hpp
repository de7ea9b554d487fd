#pragma once

#include <stdexcept>

#include "graspkit/core/geometry.hpp"

namespace graspkit {

/// Pinhole camera model. Pixel (col, row) = (x, y); depth is camera z in meters.
struct Intrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;
  double depth_scale = 0.001;  // meters per stored depth unit

  void validate() const {
    if (fx <= 0.0 || fy <= 0.0) throw std::invalid_argument("intrinsics: fx, fy must be positive");
    if (width <= 0 || height <= 0) throw std::invalid_argument("intrinsics: empty image size");
    if (cx < 0.0 || cx >= width || cy < 0.0 || cy >= height)
      throw std::invalid_argument("intrinsics: principal point outside image");
    if (depth_scale <= 0.0) throw std::invalid_argument("intrinsics: depth_scale must be positive");
  }

  /// Back-projects pixel (col, row) at metric depth z into camera coordinates.
  Vec3d deproject(double col, double row, double z) const {
    return {(col - cx) * z / fx, (row - cy) * z / fy, z};
  }

  /// Projects a camera-space point to pixel coordinates (col, row).
  Vec2d project(const Vec3d& p) const {
    return {fx * p.x() / p.z() + cx, fy * p.y() / p.z() + cy};
  }
};

}  // namespace graspkit
