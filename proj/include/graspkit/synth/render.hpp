#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "graspkit/core/frame.hpp"
#include "graspkit/synth/scene.hpp"

namespace graspkit::synth {

/// splitmix64-based RNG with Box-Muller gaussians; self-contained so renders
/// are bit-reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in (0, 1].
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * kPi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

namespace detail {

struct HalfSpace {
  Vec3d normal;  // outward
  double offset;  // inside iff normal . p <= offset
};

/// Box and wedge as convex plane sets in their local frames.
inline std::vector<HalfSpace> local_planes(const Primitive& obj) {
  std::vector<HalfSpace> planes;
  if (const auto* box = std::get_if<BoxSpec>(&obj.shape)) {
    const Vec3d h = box->extents / 2.0;
    planes = {{{1, 0, 0}, h.x()},  {{-1, 0, 0}, h.x()}, {{0, 1, 0}, h.y()},
              {{0, -1, 0}, h.y()}, {{0, 0, 1}, h.z()},  {{0, 0, -1}, h.z()}};
  } else if (const auto* w = std::get_if<WedgeSpec>(&obj.shape)) {
    const double hl = w->length / 2.0;
    const double hh = w->height / 2.0;
    // lateral faces contain y = ±(s x + c0)
    const double s = (w->width_narrow - w->width_wide) / (2.0 * w->length);
    const double c0 = (w->width_wide + w->width_narrow) / 4.0;
    const double norm = std::sqrt(1.0 + s * s);
    planes = {{{1, 0, 0}, hl},
              {{-1, 0, 0}, hl},
              {{0, 0, 1}, hh},
              {{0, 0, -1}, hh},
              {Vec3d(-s, 1, 0) / norm, c0 / norm},
              {Vec3d(-s, -1, 0) / norm, c0 / norm}};
  }
  return planes;
}

struct RayHit {
  double t = std::numeric_limits<double>::infinity();
  Vec3d normal_world = Vec3d::Zero();  // outward at the hit
  bool hit = false;
};

inline RayHit intersect_planes(const std::vector<HalfSpace>& planes, const Pose& pose,
                               const Vec3d& origin_w, const Vec3d& dir_w) {
  const Vec3d o = pose.invert(origin_w);
  const Vec3d d = pose.invert_dir(dir_w);
  double t_enter = -std::numeric_limits<double>::infinity();
  double t_exit = std::numeric_limits<double>::infinity();
  int enter_plane = -1;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const double denom = planes[i].normal.dot(d);
    const double num = planes[i].offset - planes[i].normal.dot(o);
    if (std::abs(denom) < 1e-12) {
      if (num < 0.0) return {};  // parallel and outside
      continue;
    }
    const double t = num / denom;
    if (denom > 0.0) {
      t_exit = std::min(t_exit, t);
    } else if (t > t_enter) {
      t_enter = t;
      enter_plane = static_cast<int>(i);
    }
  }
  if (t_enter > t_exit || t_exit < 1e-9 || enter_plane < 0) return {};
  RayHit hit;
  hit.t = t_enter;
  hit.hit = t_enter > 1e-9;
  if (hit.hit) hit.normal_world = pose.apply_dir(planes[enter_plane].normal);
  return hit;
}

inline RayHit intersect_cylinder(const CylinderSpec& cyl, const Pose& pose,
                                 const Vec3d& origin_w, const Vec3d& dir_w) {
  const Vec3d o = pose.invert(origin_w);
  const Vec3d d = pose.invert_dir(dir_w);
  const double hh = cyl.height / 2.0;
  RayHit best;

  const double a = d.x() * d.x() + d.y() * d.y();
  if (a > 1e-14) {
    const double b = 2.0 * (o.x() * d.x() + o.y() * d.y());
    const double c = o.x() * o.x() + o.y() * o.y() - cyl.radius * cyl.radius;
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      for (const double t : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)}) {
        if (t <= 1e-9 || t >= best.t) continue;
        const Vec3d p = o + t * d;
        if (std::abs(p.z()) <= hh) {
          best.t = t;
          best.hit = true;
          best.normal_world = pose.apply_dir(Vec3d(p.x(), p.y(), 0.0) / cyl.radius);
        }
      }
    }
  }
  if (std::abs(d.z()) > 1e-14) {
    for (const double zcap : {hh, -hh}) {
      const double t = (zcap - o.z()) / d.z();
      if (t <= 1e-9 || t >= best.t) continue;
      const Vec3d p = o + t * d;
      if (p.x() * p.x() + p.y() * p.y() <= cyl.radius * cyl.radius) {
        best.t = t;
        best.hit = true;
        best.normal_world = pose.apply_dir(Vec3d(0, 0, zcap > 0 ? 1.0 : -1.0));
      }
    }
  }
  return best;
}

inline RayHit intersect_primitive(const Primitive& obj, const Vec3d& origin_w,
                                  const Vec3d& dir_w) {
  if (const auto* cyl = std::get_if<CylinderSpec>(&obj.shape))
    return intersect_cylinder(*cyl, obj.pose, origin_w, dir_w);
  return intersect_planes(local_planes(obj), obj.pose, origin_w, dir_w);
}

inline bool primitive_contains(const Primitive& obj, const Vec3d& p_world, double tol = 0.0) {
  const Vec3d p = obj.pose.invert(p_world);
  if (const auto* cyl = std::get_if<CylinderSpec>(&obj.shape)) {
    return std::abs(p.z()) <= cyl->height / 2.0 + tol &&
           p.x() * p.x() + p.y() * p.y() <= (cyl->radius + tol) * (cyl->radius + tol);
  }
  for (const HalfSpace& hs : local_planes(obj))
    if (hs.normal.dot(p) > hs.offset + tol) return false;
  return true;
}

/// Scene occupancy: any primitive, or the solid below the table surface.
inline bool scene_occupied(const SceneSpec& scene, const Vec3d& p_world, double tol = 0.0) {
  if (scene.table.present && p_world.z() <= scene.table.height + tol) return true;
  for (const Primitive& obj : scene.objects)
    if (primitive_contains(obj, p_world, tol)) return true;
  return false;
}

}  // namespace detail

/// Per-pixel class labels for the rendered scene.
inline constexpr int kMaskBackground = -1;
inline constexpr int kMaskTable = 0;  // objects are 1-based

struct RenderedScene {
  Frame frame;
  Image<int> mask;          // kMaskBackground / kMaskTable / object index + 1
  Image<Vec3d> gt_normals;  // analytic outward surface normals at hits
};

/// Ray-casts the scene through the camera's pinhole model: nearest primitive
/// or table hit per pixel, flat per-object color, camera-space depth with
/// seeded Gaussian noise, and the analytic object id mask.
inline RenderedScene render_scene(const SceneSpec& scene) {
  const Intrinsics& intr = scene.camera.intrinsics;
  intr.validate();
  const Pose cam = scene.camera.pose();

  for (const Primitive& obj : scene.objects)
    if (detail::primitive_contains(obj, scene.camera.position, 1e-9))
      throw std::invalid_argument("camera is inside object " + obj.name);
  if (scene.table.present && scene.camera.position.z() <= scene.table.height)
    throw std::invalid_argument("camera is below the table surface");

  RenderedScene out;
  out.frame = make_empty_frame(intr);
  out.mask = Image<int>(intr.width, intr.height, kMaskBackground);
  out.gt_normals = Image<Vec3d>(intr.width, intr.height, Vec3d::Zero());
  out.frame.color.fill(Rgb8{30, 30, 30});  // background

  Rng rng(scene.seed ^ 0xa5a5a5a5deadbeefull);

  for (int r = 0; r < intr.height; ++r) {
    for (int c = 0; c < intr.width; ++c) {
      const Vec3d dir_cam =
          Vec3d((c - intr.cx) / intr.fx, (r - intr.cy) / intr.fy, 1.0).normalized();
      const Vec3d dir_w = cam.apply_dir(dir_cam);
      const Vec3d origin_w = scene.camera.position;

      double best_t = std::numeric_limits<double>::infinity();
      int best_id = kMaskBackground;
      Vec3d best_normal = Vec3d::Zero();

      if (scene.table.present && std::abs(dir_w.z()) > 1e-12) {
        const double t = (scene.table.height - origin_w.z()) / dir_w.z();
        if (t > 1e-9 && t < best_t) {
          best_t = t;
          best_id = kMaskTable;
          best_normal = Vec3d(0, 0, 1);
        }
      }
      for (std::size_t i = 0; i < scene.objects.size(); ++i) {
        const auto hit = detail::intersect_primitive(scene.objects[i], origin_w, dir_w);
        if (hit.hit && hit.t < best_t) {
          best_t = hit.t;
          best_id = static_cast<int>(i) + 1;
          best_normal = hit.normal_world;
        }
      }

      if (best_id == kMaskBackground) continue;
      double depth = best_t * dir_cam.z();  // camera-space z
      if (scene.noise_sigma > 0.0) depth += scene.noise_sigma * rng.gaussian();
      depth = std::max(depth, 1e-3);
      out.frame.depth.at(r, c) = depth;
      out.frame.color.at(r, c) =
          best_id == kMaskTable ? scene.table.color : scene.objects[best_id - 1].color;
      out.mask.at(r, c) = best_id;
      out.gt_normals.at(r, c) = best_normal;
    }
  }
  deproject_cloud(out.frame);
  return out;
}

}  // namespace graspkit::synth
