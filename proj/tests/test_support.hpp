// Shared helpers for building small synthetic frames directly (no renderer).
#pragma once

#include <filesystem>
#include <functional>
#include <string>

#include "graspkit/core/frame.hpp"

namespace test_support {

using graspkit::Frame;
using graspkit::Image;
using graspkit::Intrinsics;
using graspkit::Rgb8;
using graspkit::Vec3d;

inline Intrinsics small_intrinsics(int width = 160, int height = 120, double f = 140.0) {
  return Intrinsics{f, f, (width - 1) / 2.0, (height - 1) / 2.0, width, height, 0.001};
}

/// Frame whose depth comes from fn(row, col); fn <= 0 marks invalid pixels.
inline Frame frame_from_depth(const Intrinsics& intr,
                              const std::function<double(int, int)>& fn) {
  Frame f = graspkit::make_empty_frame(intr);
  for (int r = 0; r < intr.height; ++r)
    for (int c = 0; c < intr.width; ++c) {
      const double z = fn(r, c);
      if (z > 0.0) f.depth.at(r, c) = z;
    }
  graspkit::deproject_cloud(f);
  return f;
}

/// Frame sampling the plane {normal . p = offset} through every pixel ray.
inline Frame plane_frame(const Intrinsics& intr, const Vec3d& normal, double offset) {
  return frame_from_depth(intr, [&](int r, int c) {
    const Vec3d ray((c - intr.cx) / intr.fx, (r - intr.cy) / intr.fy, 1.0);
    const double denom = normal.dot(ray);
    if (std::abs(denom) < 1e-9) return -1.0;
    const double z = offset / denom;
    return z > 0.0 ? z : -1.0;
  });
}

/// Unique scratch directory under the system temp dir.
inline std::string scratch_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("graspkit_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace test_support
