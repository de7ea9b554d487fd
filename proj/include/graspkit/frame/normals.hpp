#pragma once

#include <Eigen/Eigenvalues>

#include <stdexcept>

#include "graspkit/core/frame.hpp"

namespace graspkit {

/// Per-pixel surface normals from local plane fits: the smallest-eigenvalue
/// eigenvector of the covariance of valid neighbors within a square window,
/// flipped toward the camera. Pixels with fewer than 3 usable neighbors or a
/// degenerate (collinear) neighborhood are marked normal-invalid.
///
/// depth_slope_gate caps the admissible depth change per pixel of Chebyshev
/// distance: windows straddling an occlusion boundary do not mix surfaces,
/// while smooth but steeply slanted surfaces keep their neighborhoods.
inline Frame estimate_normals(const Frame& frame, int window, double depth_slope_gate = 0.02) {
  if (window < 1) throw std::invalid_argument("estimate_normals: window must be >= 1");

  Frame out = frame;
  const int w = frame.width(), h = frame.height();
  out.normals = Image<Vec3d>(w, h, Vec3d::Zero());
  out.normal_valid = Image<std::uint8_t>(w, h, 0);

  Eigen::SelfAdjointEigenSolver<Mat3d> solver;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!frame.valid(r, c)) continue;
      const double z0 = frame.depth.at(r, c);

      Vec3d sum = Vec3d::Zero();
      Mat3d sq = Mat3d::Zero();
      int n = 0;
      for (int dr = -window; dr <= window; ++dr) {
        const int rr = r + dr;
        if (rr < 0 || rr >= h) continue;
        for (int dc = -window; dc <= window; ++dc) {
          const int cc = c + dc;
          if (cc < 0 || cc >= w) continue;
          if (!frame.valid(rr, cc)) continue;
          const int dist = std::max(std::abs(dr), std::abs(dc));
          if (std::abs(frame.depth.at(rr, cc) - z0) > depth_slope_gate * std::max(dist, 1))
            continue;
          const Vec3d& p = frame.cloud.at(rr, cc);
          sum += p;
          sq += p * p.transpose();
          ++n;
        }
      }
      if (n < 3) continue;
      const Vec3d mean = sum / n;
      const Mat3d cov = sq / n - mean * mean.transpose();
      solver.computeDirect(cov);
      // collinear or collapsed neighborhoods leave the normal undefined
      if (solver.eigenvalues()[1] < 1e-14) continue;
      Vec3d normal = solver.eigenvectors().col(0);
      const double len = normal.norm();
      if (!(len > 0.0)) continue;
      normal /= len;
      if (normal.dot(frame.cloud.at(r, c)) > 0.0) normal = -normal;
      out.normals.at(r, c) = normal;
      out.normal_valid.at(r, c) = 1;
    }
  }
  return out;
}

}  // namespace graspkit
