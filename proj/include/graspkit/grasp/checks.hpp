#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "graspkit/core/frame.hpp"
#include "graspkit/edges.hpp"
#include "graspkit/grasp/types.hpp"
#include "graspkit/segmentation.hpp"

namespace graspkit {

/// Grasp frame from segment features: n̂ = mean normal, â = the chosen PCA
/// axis orthogonalized against n̂, f̂ = n̂ × â. Degenerate (axis within 5° of
/// the normal) yields nullopt.
inline std::optional<GraspFrame> darboux_frame(const SegmentFeatures& features,
                                               AxisChoice choice) {
  const Vec3d axis = choice == AxisChoice::major ? features.axis_major : features.axis_minor;
  if (axis_angle_between(axis, features.mean_normal) < deg_to_rad(5.0)) return std::nullopt;
  GraspFrame g;
  g.normal = features.mean_normal.normalized();
  g.closing = orthogonalized(axis, g.normal);
  if (g.closing.isZero()) return std::nullopt;
  g.finger = g.normal.cross(g.closing);
  return g;
}

struct GapResult {
  bool measured = false;  // rim measurement found segment points at all
  bool accepted = false;
  bool too_wide = false;  // provisional radius exceeded d/2 before the sweep
  double gap_plus = 0.0;
  double gap_minus = 0.0;
  double radius_provisional = 0.0;
  double rim_plus = 0.0;   // object extent along +â from the center
  double rim_minus = 0.0;  // object extent along -â (non-positive)
};

namespace detail {

/// Conservative pixel bbox of a sphere around a camera-space point.
struct PixelBox {
  int row0 = 0, row1 = -1, col0 = 0, col1 = -1;

  static PixelBox of_sphere(const Intrinsics& intr, const Vec3d& center, double radius) {
    PixelBox b;
    const double z_near = center.z() - radius;
    if (z_near <= 1e-3) {  // sphere reaches the camera plane: scan everything
      b.row0 = 0;
      b.row1 = intr.height - 1;
      b.col0 = 0;
      b.col1 = intr.width - 1;
      return b;
    }
    const Vec2d px = intr.project(center);
    const double rad_px = radius * std::max(intr.fx, intr.fy) / z_near + 2.0;
    b.col0 = std::max(0, static_cast<int>(std::floor(px.x() - rad_px)));
    b.col1 = std::min(intr.width - 1, static_cast<int>(std::ceil(px.x() + rad_px)));
    b.row0 = std::max(0, static_cast<int>(std::floor(px.y() - rad_px)));
    b.row1 = std::min(intr.height - 1, static_cast<int>(std::ceil(px.y() + rad_px)));
    return b;
  }
};

}  // namespace detail

/// First grasp criterion: clearance beside the object along the closing axis.
///
/// The object rim along ±â is measured from the candidate segment's points
/// within the workspace sphere and the finger band. From each rim a
/// finger-sized volume (width w along f̂, clearance_depth along n̂ starting at
/// the surface) sweeps outward; the gap is the offset to the first foreign
/// point (beyond a small blind margin that absorbs rim noise), capped at d/2.
/// Accepted iff both gaps exceed the finger thickness.
inline GapResult gap_check(const Frame& frame, const Segment& segment, const Vec3d& center,
                           const GraspFrame& axes, const GripperGeometry& gripper,
                           double clearance_depth, double sphere_radius,
                           double boundary_margin) {
  GapResult res;
  const double half_w = gripper.w / 2.0;
  const double sphere_sq = sphere_radius * sphere_radius;

  bool any = false;
  double min_a = 0.0, max_a = 0.0;
  for (const Pixel& px : segment.pixels) {
    const Vec3d d = frame.cloud.at(px) - center;
    if (d.squaredNorm() > sphere_sq) continue;
    if (std::abs(d.dot(axes.finger)) > half_w) continue;
    const double a = d.dot(axes.closing);
    if (!any) {
      min_a = max_a = a;
      any = true;
    } else {
      min_a = std::min(min_a, a);
      max_a = std::max(max_a, a);
    }
  }
  if (!any) return res;  // candidate is off the segment surface
  res.measured = true;

  res.rim_plus = max_a;
  res.rim_minus = min_a;
  res.radius_provisional = (max_a - min_a) / 2.0;
  if (res.radius_provisional > gripper.d / 2.0) {
    res.too_wide = true;
    return res;
  }

  const double cap = gripper.d / 2.0;
  double gap_plus = cap, gap_minus = cap;
  const auto box =
      detail::PixelBox::of_sphere(frame.intrinsics, center, sphere_radius);
  for (int r = box.row0; r <= box.row1; ++r) {
    for (int c = box.col0; c <= box.col1; ++c) {
      if (!frame.valid(r, c)) continue;
      const Vec3d d = frame.cloud.at(r, c) - center;
      if (d.squaredNorm() > sphere_sq) continue;
      if (std::abs(d.dot(axes.finger)) > half_w) continue;
      const double n = d.dot(axes.normal);
      if (n < 0.0 || n > clearance_depth) continue;
      const double a = d.dot(axes.closing);
      if (a > max_a + boundary_margin) gap_plus = std::min(gap_plus, a - max_a);
      if (a < min_a - boundary_margin) gap_minus = std::min(gap_minus, min_a - a);
    }
  }
  res.gap_plus = gap_plus;
  res.gap_minus = gap_minus;
  res.accepted = gap_plus > gripper.t && gap_minus > gripper.t;
  return res;
}

/// Fits one total-least-squares line per boundary side. Hypothesis-rejecting
/// failures (too few points, coincident or isotropic scatter) yield nullopt.
inline std::optional<std::pair<BoundaryLine, BoundaryLine>> extract_boundary_lines(
    const ValidatedBoundary& vb) {
  if (!vb.usable()) return std::nullopt;
  auto side_points = [](const std::vector<BoundaryPoint>& side) {
    std::vector<Vec2d> pts;
    pts.reserve(side.size());
    for (const BoundaryPoint& bp : side)
      pts.push_back(Vec2d(bp.pixel.col, bp.pixel.row));
    return pts;
  };
  const auto lp = fit_line(side_points(vb.plus_side));
  const auto lm = fit_line(side_points(vb.minus_side));
  if (!lp || !lm || lp->isotropic || lm->isotropic) return std::nullopt;
  return std::make_pair(*lp, *lm);
}

struct ParallelismResult {
  bool passed = false;
  double a_b_raw = 0.0;  // |u+ . u-|
};

/// Second criterion: the two contact lines must be parallel within theta_r.
inline ParallelismResult parallelism_check(const BoundaryLine& line_plus,
                                           const BoundaryLine& line_minus, double theta_r) {
  ParallelismResult res;
  res.a_b_raw = std::min(1.0, std::abs(line_plus.u.dot(line_minus.u)));
  res.passed = res.a_b_raw >= std::cos(theta_r);
  return res;
}

struct AxisCheckResult {
  bool passed = false;
  double a_axis_raw = 0.0;  // |â_img . u_avg|
  bool view_degenerate = false;
};

/// Rejects poses whose closing axis is not perpendicular to the boundary
/// lines in the image (the lying-cylinder failure mode). When â projects to a
/// near-zero image vector the test is a viewing degeneracy and passes flagged.
inline AxisCheckResult axis_perpendicularity_check(const Vec3d& closing_axis,
                                                   const BoundaryLine& line_plus,
                                                   const BoundaryLine& line_minus,
                                                   const Vec3d& center,
                                                   const Intrinsics& intrinsics,
                                                   double theta_axis_tol) {
  AxisCheckResult res;
  const double step = 0.01;  // 1 cm probe along the axis
  const Vec3d tip = center + step * closing_axis;
  if (center.z() <= 1e-6 || tip.z() <= 1e-6) {
    res.view_degenerate = true;
    res.passed = true;
    return res;
  }
  const Vec2d axis_img = intrinsics.project(tip) - intrinsics.project(center);
  if (axis_img.norm() < 0.25) {  // < quarter pixel per cm: grossly foreshortened
    res.view_degenerate = true;
    res.passed = true;
    return res;
  }
  Vec2d u_minus = line_minus.u;
  if (line_plus.u.dot(u_minus) < 0.0) u_minus = -u_minus;
  Vec2d u_avg = line_plus.u + u_minus;
  const double len = u_avg.norm();
  if (len < 1e-9) {
    res.view_degenerate = true;
    res.passed = true;
    return res;
  }
  u_avg /= len;
  res.a_axis_raw = std::min(1.0, std::abs(axis_img.normalized().dot(u_avg)));
  res.passed = res.a_axis_raw <= std::sin(theta_axis_tol);
  return res;
}

struct OcclusionResult {
  bool passed = false;
  int blocking_points = 0;
};

/// Final criterion: the approach corridor in front of the handle must contain
/// no valid point of another segment. The corridor is the slab between the
/// boundary lines widened by the margin, finger-band wide, extruded from just
/// above the surface toward the camera by l + margin.
inline OcclusionResult occlusion_filter(const Frame& frame, const Image<int>& labels,
                                        const Vec3d& center, const GraspFrame& axes,
                                        double radius, int segment_id,
                                        const GripperGeometry& gripper, double margin,
                                        double surface_clearance) {
  OcclusionResult res;
  const double half_a = radius + margin;
  const double half_f = gripper.w / 2.0 + margin;
  const double depth = gripper.l + margin;
  const double bound = std::sqrt(half_a * half_a + half_f * half_f + depth * depth);

  const auto box = detail::PixelBox::of_sphere(frame.intrinsics, center, bound);
  for (int r = box.row0; r <= box.row1; ++r) {
    for (int c = box.col0; c <= box.col1; ++c) {
      if (!frame.valid(r, c)) continue;
      if (labels.at(r, c) == segment_id) continue;
      const Vec3d d = frame.cloud.at(r, c) - center;
      if (std::abs(d.dot(axes.closing)) > half_a) continue;
      if (std::abs(d.dot(axes.finger)) > half_f) continue;
      const double n = d.dot(axes.normal);
      if (n <= surface_clearance || n > depth) continue;
      ++res.blocking_points;
    }
  }
  res.passed = res.blocking_points == 0;
  return res;
}

}  // namespace graspkit
