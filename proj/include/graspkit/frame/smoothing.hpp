#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "graspkit/core/frame.hpp"

namespace graspkit {

/// Edge-preserving bilateral filter on the depth raster; the cloud is
/// re-deprojected from the smoothed depth. Neighbors further than
/// 3 * range_sigma in depth are excluded outright, so depth steps never mix.
/// Invalid pixels stay invalid and contribute nothing.
inline Frame smooth_cloud(const Frame& frame, double spatial_sigma, double range_sigma) {
  if (spatial_sigma <= 0.0 || range_sigma <= 0.0)
    throw std::invalid_argument("smooth_cloud: sigmas must be positive");

  const int radius = static_cast<int>(std::ceil(3.0 * spatial_sigma));
  const double inv_2ss = 1.0 / (2.0 * spatial_sigma * spatial_sigma);
  const double inv_2rs = 1.0 / (2.0 * range_sigma * range_sigma);
  const double range_cut = 3.0 * range_sigma;

  std::vector<double> spatial_w((2 * radius + 1) * (2 * radius + 1));
  for (int dr = -radius; dr <= radius; ++dr)
    for (int dc = -radius; dc <= radius; ++dc)
      spatial_w[(dr + radius) * (2 * radius + 1) + (dc + radius)] =
          std::exp(-(dr * dr + dc * dc) * inv_2ss);

  Frame out = frame;
  const int w = frame.width(), h = frame.height();
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!frame.valid(r, c)) continue;
      const double z0 = frame.depth.at(r, c);
      double acc = 0.0, wsum = 0.0;
      for (int dr = -radius; dr <= radius; ++dr) {
        const int rr = r + dr;
        if (rr < 0 || rr >= h) continue;
        for (int dc = -radius; dc <= radius; ++dc) {
          const int cc = c + dc;
          if (cc < 0 || cc >= w) continue;
          if (!frame.valid(rr, cc)) continue;
          const double z = frame.depth.at(rr, cc);
          const double dz = z - z0;
          if (std::abs(dz) > range_cut) continue;
          const double wgt =
              spatial_w[(dr + radius) * (2 * radius + 1) + (dc + radius)] *
              std::exp(-dz * dz * inv_2rs);
          acc += wgt * z;
          wsum += wgt;
        }
      }
      out.depth.at(r, c) = acc / wsum;  // wsum >= weight of the center pixel
    }
  }
  deproject_cloud(out);
  // smoothing invalidates any previously computed normals
  out.normals = Image<Vec3d>(w, h, Vec3d::Zero());
  out.normal_valid = Image<std::uint8_t>(w, h, 0);
  return out;
}

}  // namespace graspkit
