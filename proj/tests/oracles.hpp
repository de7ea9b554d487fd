// Test-only brute-force oracles. Each one re-derives a quantity from first
// principles with plain loops, independent of the library implementation it
// cross-checks.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "graspkit/core/frame.hpp"
#include "graspkit/edges.hpp"
#include "graspkit/grasp/types.hpp"
#include "graspkit/segmentation.hpp"

namespace oracles {

using graspkit::Frame;
using graspkit::GraspFrame;
using graspkit::GripperGeometry;
using graspkit::Image;
using graspkit::Pixel;
using graspkit::Segment;
using graspkit::Vec2d;
using graspkit::Vec3d;

/// Direct bilateral filter of a depth raster: full double loop, no
/// separability or precomputation.
inline Image<double> brute_bilateral(const Image<double>& depth, double spatial_sigma,
                                     double range_sigma) {
  const int w = depth.width(), h = depth.height();
  const int radius = static_cast<int>(std::ceil(3.0 * spatial_sigma));
  Image<double> out(w, h, 0.0);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const double z0 = depth.at(r, c);
      if (!(z0 > 0.0)) continue;
      double acc = 0.0, wsum = 0.0;
      for (int rr = r - radius; rr <= r + radius; ++rr) {
        for (int cc = c - radius; cc <= c + radius; ++cc) {
          if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
          const double z = depth.at(rr, cc);
          if (!(z > 0.0)) continue;
          if (std::abs(z - z0) > 3.0 * range_sigma) continue;
          const double wgt =
              std::exp(-((rr - r) * (rr - r) + (cc - c) * (cc - c)) /
                       (2.0 * spatial_sigma * spatial_sigma)) *
              std::exp(-(z - z0) * (z - z0) / (2.0 * range_sigma * range_sigma));
          acc += wgt * z;
          wsum += wgt;
        }
      }
      out.at(r, c) = acc / wsum;
    }
  }
  return out;
}

/// Level function by scanning every edge pixel per boundary point.
inline std::vector<std::uint8_t> brute_levels(const std::vector<Pixel>& boundary,
                                              const std::vector<Pixel>& ec,
                                              const std::vector<Pixel>& ed, int radius) {
  std::vector<std::uint8_t> levels(boundary.size(), 0);
  auto near = [&](const Pixel& a, const Pixel& b) {
    return std::abs(a.row - b.row) <= radius && std::abs(a.col - b.col) <= radius;
  };
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    for (const Pixel& e : ec)
      if (near(boundary[i], e)) {
        levels[i] = 1;
        break;
      }
    if (levels[i]) continue;
    for (const Pixel& e : ed)
      if (near(boundary[i], e)) {
        levels[i] = 1;
        break;
      }
  }
  return levels;
}

struct BruteGap {
  double gap_plus;
  double gap_minus;
  double rim_plus;
  double rim_minus;
  bool accepted;
};

/// Gap measurement by iterating every valid cloud point with no spatial
/// prefilter; mirrors the documented sweep-volume rule.
inline BruteGap brute_gap(const Frame& frame, const Segment& segment, const Vec3d& center,
                          const GraspFrame& axes, const GripperGeometry& gripper,
                          double clearance_depth, double sphere_radius,
                          double boundary_margin) {
  const double half_w = gripper.w / 2.0;
  double rim_plus = 0.0, rim_minus = 0.0;
  bool any = false;
  for (const Pixel& px : segment.pixels) {
    const Vec3d d = frame.cloud.at(px) - center;
    if (d.norm() > sphere_radius) continue;
    if (std::abs(d.dot(axes.finger)) > half_w) continue;
    const double a = d.dot(axes.closing);
    if (!any) {
      rim_plus = rim_minus = a;
      any = true;
    }
    rim_plus = std::max(rim_plus, a);
    rim_minus = std::min(rim_minus, a);
  }
  BruteGap res{gripper.d / 2.0, gripper.d / 2.0, rim_plus, rim_minus, false};
  if (!any) return res;
  for (int r = 0; r < frame.height(); ++r) {
    for (int c = 0; c < frame.width(); ++c) {
      if (!frame.valid(r, c)) continue;
      const Vec3d d = frame.cloud.at(r, c) - center;
      if (d.norm() > sphere_radius) continue;
      if (std::abs(d.dot(axes.finger)) > half_w) continue;
      const double n = d.dot(axes.normal);
      if (n < 0.0 || n > clearance_depth) continue;
      const double a = d.dot(axes.closing);
      if (a > rim_plus + boundary_margin)
        res.gap_plus = std::min(res.gap_plus, a - rim_plus);
      if (a < rim_minus - boundary_margin)
        res.gap_minus = std::min(res.gap_minus, rim_minus - a);
    }
  }
  res.accepted = res.gap_plus > gripper.t && res.gap_minus > gripper.t;
  return res;
}

/// Point-in-prism occlusion test over every valid cloud point.
inline int brute_prism_blockers(const Frame& frame, const Image<int>& labels,
                                const Vec3d& center, const GraspFrame& axes, double radius,
                                int segment_id, const GripperGeometry& gripper, double margin,
                                double surface_clearance) {
  int count = 0;
  for (int r = 0; r < frame.height(); ++r) {
    for (int c = 0; c < frame.width(); ++c) {
      if (!frame.valid(r, c)) continue;
      if (labels.at(r, c) == segment_id) continue;
      const Vec3d d = frame.cloud.at(r, c) - center;
      if (std::abs(d.dot(axes.closing)) > radius + margin) continue;
      if (std::abs(d.dot(axes.finger)) > gripper.w / 2.0 + margin) continue;
      const double n = d.dot(axes.normal);
      if (n <= surface_clearance || n > gripper.l + margin) continue;
      ++count;
    }
  }
  return count;
}

/// Smallest summed squared orthogonal residual over an exhaustive sweep of
/// line angles through the centroid (0.5 degree steps).
inline double sweep_min_residual(const std::vector<Vec2d>& points, double step_deg = 0.5) {
  Vec2d centroid = Vec2d::Zero();
  for (const Vec2d& p : points) centroid += p;
  centroid /= static_cast<double>(points.size());
  double best = std::numeric_limits<double>::infinity();
  for (double deg = 0.0; deg < 180.0; deg += step_deg) {
    const double theta = deg * graspkit::kPi / 180.0;
    const Vec2d normal(-std::sin(theta), std::cos(theta));  // line direction at `theta`
    double ss = 0.0;
    for (const Vec2d& p : points) {
      const double d = (p - centroid).dot(normal);
      ss += d * d;
    }
    best = std::min(best, ss);
  }
  return best;
}

/// Summed squared orthogonal residual of a given line over a point set.
inline double line_residual(const std::vector<Vec2d>& points, const Vec2d& p0, const Vec2d& u) {
  const Vec2d normal(-u.y(), u.x());
  double ss = 0.0;
  for (const Vec2d& p : points) {
    const double d = (p - p0).dot(normal);
    ss += d * d;
  }
  return ss;
}

}  // namespace oracles
