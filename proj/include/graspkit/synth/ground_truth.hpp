#pragma once

#include <vector>

#include "graspkit/core/config.hpp"
#include "graspkit/synth/render.hpp"
#include "graspkit/synth/scene.hpp"

namespace graspkit::synth {

/// One analytically graspable handle: center on the handle midline (midpoint
/// of the two parallel contact lines), closing axis, approach normal
/// (outward), and the object width across the closing axis.
struct GtHandle {
  int object_id = 0;  // 1-based, matches the render mask
  Vec3d center = Vec3d::Zero();
  Vec3d closing = Vec3d::Zero();
  Vec3d approach = Vec3d::Zero();
  double width = 0.0;
};

struct GroundTruth {
  Image<int> mask;
  std::vector<GtHandle> handles;
};

/// Geometry conventions shared with the detector's gap and occlusion checks.
struct GtParams {
  double clearance_depth = 0.06;   // sweep depth along the approach (gripper.l)
  double boundary_margin = 0.003;  // blind zone beyond the object rim
  double occlusion_margin = 0.005;
  double center_grid = 0.01;       // handle-center spacing along the contact lines
  double azimuth_grid = deg_to_rad(15.0);
  double sample_step = 0.002;      // occupancy sampling resolution

  static GtParams from(const GripperGeometry& gripper, const DetectorConfig& cfg) {
    GtParams p;
    p.clearance_depth = gripper.l;
    p.boundary_margin = cfg.boundary_margin_m;
    p.occlusion_margin = cfg.occlusion_margin_m;
    return p;
  }
};

namespace detail {

/// Clearance of one candidate grasp, by exhaustive primitive-volume
/// occupancy sampling of the same volumes the detector sweeps.
///
/// surface_center sits on the approach face; match_center is the handle
/// midline point reported in the ground truth. Returns true iff both side
/// gaps exceed the finger thickness and the approach corridor is free.
inline double bounding_radius(const Primitive& obj) {
  if (const auto* box = std::get_if<BoxSpec>(&obj.shape)) return box->extents.norm() / 2.0;
  if (const auto* cyl = std::get_if<CylinderSpec>(&obj.shape))
    return std::hypot(cyl->radius, cyl->height / 2.0);
  const auto& w = std::get<WedgeSpec>(obj.shape);
  return Vec3d(w.length, std::max(w.width_wide, w.width_narrow), w.height).norm() / 2.0;
}

inline bool grasp_is_clear(const SceneSpec& scene, const GripperGeometry& gripper,
                           const GtParams& params, const Vec3d& surface_center,
                           const Vec3d& closing, const Vec3d& approach, double width) {
  if (width / 2.0 > gripper.d / 2.0) return false;
  const Vec3d finger = approach.cross(closing);
  const double half_w = gripper.w / 2.0;
  const double rim = width / 2.0;
  const double step = params.sample_step;

  // primitives that can possibly reach the test volumes
  const double volume_bound = rim + gripper.d / 2.0 + gripper.l + 2.0 * params.occlusion_margin;
  std::vector<const Primitive*> near;
  for (const Primitive& obj : scene.objects)
    if ((obj.pose.translation - surface_center).norm() <= bounding_radius(obj) + volume_bound)
      near.push_back(&obj);
  auto occupied = [&](const Vec3d& p) {
    if (scene.table.present && p.z() <= scene.table.height) return true;
    for (const Primitive* obj : near)
      if (primitive_contains(*obj, p)) return true;
    return false;
  };

  // side gaps: volume beyond each rim along ±closing, finger band wide,
  // clearance_depth deep starting at the surface level
  for (const double side : {1.0, -1.0}) {
    double gap = gripper.d / 2.0;
    for (double a = rim + params.boundary_margin + step / 2; a <= rim + gripper.d / 2.0;
         a += step) {
      bool blocked = false;
      for (double f = -half_w + step / 2; f <= half_w && !blocked; f += step) {
        for (double n = 0.0; n <= params.clearance_depth && !blocked; n += step) {
          const Vec3d p = surface_center + side * a * closing + f * finger + n * approach;
          blocked = occupied(p);
        }
      }
      if (blocked) {
        gap = a - rim;
        break;
      }
    }
    if (gap <= gripper.t) return false;
  }

  // approach corridor between the contact lines must be free of anything
  // (the grasped object itself stops at the surface plane)
  const double half_a = rim + params.occlusion_margin;
  const double half_f = half_w + params.occlusion_margin;
  const double depth = gripper.l + params.occlusion_margin;
  for (double a = -half_a + step / 2; a <= half_a; a += step) {
    for (double f = -half_f + step / 2; f <= half_f; f += step) {
      for (double n = params.boundary_margin + step / 2; n <= depth; n += step) {
        const Vec3d p = surface_center + a * closing + f * finger + n * approach;
        if (occupied(p)) return false;
      }
    }
  }
  return true;
}

inline void grid_offsets(double half_range, double step, std::vector<double>& out) {
  out.clear();
  out.push_back(0.0);
  for (double o = step; o <= half_range; o += step) {
    out.push_back(o);
    out.push_back(-o);
  }
}

}  // namespace detail

/// Enumerates every grasp with two parallel straight contact lines over each
/// object's principal directions and keeps those whose clearance survives
/// exhaustive occupancy checks: g > t on both sides, width ≤ d, free corridor.
inline std::vector<GtHandle> enumerate_gt_handles(const SceneSpec& scene,
                                                  const GripperGeometry& gripper,
                                                  const GtParams& params = {}) {
  std::vector<GtHandle> handles;
  std::vector<double> offsets;

  for (std::size_t i = 0; i < scene.objects.size(); ++i) {
    const Primitive& obj = scene.objects[i];
    const int object_id = static_cast<int>(i) + 1;

    if (const auto* box = std::get_if<BoxSpec>(&obj.shape)) {
      // closing across axis ci, approaching along ±ck, sliding along cj
      for (int ci = 0; ci < 3; ++ci) {
        const double width = box->extents[ci];
        if (width > gripper.d) continue;
        for (int ck = 0; ck < 3; ++ck) {
          if (ck == ci) continue;
          const int cj = 3 - ci - ck;
          for (const double sign : {1.0, -1.0}) {
            Vec3d closing_l = Vec3d::Zero(), approach_l = Vec3d::Zero(), slide_l = Vec3d::Zero();
            closing_l[ci] = 1.0;
            approach_l[ck] = sign;
            slide_l[cj] = 1.0;
            const Vec3d closing = obj.pose.apply_dir(closing_l);
            const Vec3d approach = obj.pose.apply_dir(approach_l);
            const Vec3d slide = obj.pose.apply_dir(slide_l);
            const Vec3d face_center =
                obj.pose.apply(approach_l * (box->extents[ck] / 2.0));
            const double slide_half =
                std::max(0.0, (box->extents[cj] - gripper.w) / 2.0);
            detail::grid_offsets(slide_half, params.center_grid, offsets);
            for (const double off : offsets) {
              const Vec3d center = face_center + off * slide;
              if (detail::grasp_is_clear(scene, gripper, params, center, closing, approach,
                                         width))
                handles.push_back({object_id, center, closing, approach, width});
            }
          }
        }
      }
    } else if (const auto* cyl = std::get_if<CylinderSpec>(&obj.shape)) {
      const double width = 2.0 * cyl->radius;
      if (width > gripper.d) continue;
      // axial grasps: approach along ±axis onto a cap, closing across the
      // diameter at any azimuth; contact lines run down the barrel
      for (const double sign : {1.0, -1.0}) {
        const Vec3d approach = obj.pose.apply_dir(Vec3d(0, 0, sign));
        const Vec3d cap_center = obj.pose.apply(Vec3d(0, 0, sign * cyl->height / 2.0));
        for (double az = 0.0; az < kPi - 1e-9; az += params.azimuth_grid) {
          const Vec3d closing =
              obj.pose.apply_dir(Vec3d(std::cos(az), std::sin(az), 0.0));
          if (detail::grasp_is_clear(scene, gripper, params, cap_center, closing, approach,
                                     width))
            handles.push_back({object_id, cap_center, closing, approach, width});
        }
      }
      // radial grasps: approach along an outward radial, closing along the
      // tangent; contact lines are the two axis-parallel silhouette lines and
      // the handle midline is the cylinder axis
      const double slide_half = std::max(0.0, (cyl->height - gripper.w) / 2.0);
      detail::grid_offsets(slide_half, params.center_grid, offsets);
      for (double az = 0.0; az < 2.0 * kPi - 1e-9; az += params.azimuth_grid) {
        const Vec3d radial = obj.pose.apply_dir(Vec3d(std::cos(az), std::sin(az), 0.0));
        const Vec3d tangent = obj.pose.apply_dir(Vec3d(-std::sin(az), std::cos(az), 0.0));
        for (const double off : offsets) {
          const Vec3d axis_point = obj.pose.apply(Vec3d(0, 0, off));
          const Vec3d surface_center = axis_point + cyl->radius * radial;
          if (detail::grasp_is_clear(scene, gripper, params, surface_center, tangent, radial,
                                     width))
            handles.push_back({object_id, axis_point, tangent, radial, width});
        }
      }
    } else if (const auto* wedge = std::get_if<WedgeSpec>(&obj.shape)) {
      // only the two end faces (across local x) are parallel; the lateral
      // faces converge and never form a valid handle
      const double width = wedge->length;
      if (width > gripper.d) continue;
      for (const double sign : {1.0, -1.0}) {
        const Vec3d approach = obj.pose.apply_dir(Vec3d(0, 0, sign));
        const Vec3d closing = obj.pose.apply_dir(Vec3d(1, 0, 0));
        const Vec3d face_center = obj.pose.apply(Vec3d(0, 0, sign * wedge->height / 2.0));
        const double min_width = std::min(wedge->width_wide, wedge->width_narrow);
        const double slide_half = std::max(0.0, (min_width - gripper.w) / 2.0);
        detail::grid_offsets(slide_half, params.center_grid, offsets);
        const Vec3d slide = obj.pose.apply_dir(Vec3d(0, 1, 0));
        for (const double off : offsets) {
          const Vec3d center = face_center + off * slide;
          if (detail::grasp_is_clear(scene, gripper, params, center, closing, approach, width))
            handles.push_back({object_id, center, closing, approach, width});
        }
      }
    }
  }
  return handles;
}

struct RenderOutput {
  Frame frame;
  GroundTruth ground_truth;
  Image<Vec3d> gt_normals;
};

/// Renders the scene and computes its analytic ground truth.
inline RenderOutput render(const SceneSpec& scene, const GripperGeometry& gripper,
                           const GtParams& params = {}) {
  RenderedScene rendered = render_scene(scene);
  RenderOutput out;
  out.frame = std::move(rendered.frame);
  out.ground_truth.mask = std::move(rendered.mask);
  out.ground_truth.handles = enumerate_gt_handles(scene, gripper, params);
  out.gt_normals = std::move(rendered.gt_normals);
  return out;
}

}  // namespace graspkit::synth
