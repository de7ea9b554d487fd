#pragma once

#include <cstdint>

#include "graspkit/core/geometry.hpp"
#include "graspkit/core/image.hpp"
#include "graspkit/core/intrinsics.hpp"

namespace graspkit {

/// One registered RGB-D view: color, metric depth, organized cloud and
/// (optionally) per-pixel normals, all on the same pixel grid.
///
/// depth == 0 marks invalid pixels; cloud_valid mirrors that. Normals are
/// unit length and oriented toward the camera wherever normal_valid is set.
struct Frame {
  Image<Rgb8> color;
  Image<double> depth;  // meters, 0 = invalid
  Image<Vec3d> cloud;   // camera coordinates
  Image<std::uint8_t> cloud_valid;
  Image<Vec3d> normals;
  Image<std::uint8_t> normal_valid;
  Intrinsics intrinsics;

  int width() const { return depth.width(); }
  int height() const { return depth.height(); }

  bool valid(int row, int col) const { return cloud_valid.at(row, col) != 0; }
  bool valid(const Pixel& p) const { return valid(p.row, p.col); }
  bool has_normal(int row, int col) const { return normal_valid.at(row, col) != 0; }
  bool has_normal(const Pixel& p) const { return has_normal(p.row, p.col); }
};

/// Rebuilds cloud/cloud_valid from depth and intrinsics. Depth must be finite
/// and positive to count as valid.
inline void deproject_cloud(Frame& frame) {
  const int w = frame.depth.width();
  const int h = frame.depth.height();
  frame.cloud = Image<Vec3d>(w, h, Vec3d::Zero());
  frame.cloud_valid = Image<std::uint8_t>(w, h, 0);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const double z = frame.depth.at(r, c);
      if (z > 0.0 && std::isfinite(z)) {
        frame.cloud.at(r, c) = frame.intrinsics.deproject(c, r, z);
        frame.cloud_valid.at(r, c) = 1;
      }
    }
  }
}

/// Frame with given size and intrinsics, everything invalid, mid-gray color.
inline Frame make_empty_frame(const Intrinsics& intr) {
  intr.validate();
  Frame f;
  f.intrinsics = intr;
  f.color = Image<Rgb8>(intr.width, intr.height, Rgb8{128, 128, 128});
  f.depth = Image<double>(intr.width, intr.height, 0.0);
  f.cloud = Image<Vec3d>(intr.width, intr.height, Vec3d::Zero());
  f.cloud_valid = Image<std::uint8_t>(intr.width, intr.height, 0);
  f.normals = Image<Vec3d>(intr.width, intr.height, Vec3d::Zero());
  f.normal_valid = Image<std::uint8_t>(intr.width, intr.height, 0);
  return f;
}

}  // namespace graspkit
