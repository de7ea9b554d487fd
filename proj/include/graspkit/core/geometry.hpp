#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <cmath>
#include <numbers>

namespace graspkit {

using Vec2d = Eigen::Vector2d;
using Vec3d = Eigen::Vector3d;
using Mat3d = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Angle between two vectors in [0, pi]; robust near 0 and pi.
inline double angle_between(const Vec3d& a, const Vec3d& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

inline double angle_between_2d(const Vec2d& a, const Vec2d& b) {
  const double cross = a.x() * b.y() - a.y() * b.x();
  return std::atan2(std::abs(cross), a.dot(b));
}

/// Angle between two axes (sign-insensitive), in [0, pi/2].
inline double axis_angle_between(const Vec3d& a, const Vec3d& b) {
  const double ang = angle_between(a, b);
  return std::min(ang, kPi - ang);
}

/// Removes the component of v along unit vector n and normalizes the rest.
/// Returns a zero vector if v is (numerically) parallel to n.
inline Vec3d orthogonalized(const Vec3d& v, const Vec3d& n) {
  Vec3d w = v - v.dot(n) * n;
  const double len = w.norm();
  if (len < 1e-12) return Vec3d::Zero();
  return w / len;
}

/// Rigid transform, world_from_local.
struct Pose {
  Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
  Vec3d translation = Vec3d::Zero();

  Vec3d apply(const Vec3d& p) const { return rotation * p + translation; }
  Vec3d apply_dir(const Vec3d& d) const { return rotation * d; }
  Vec3d invert(const Vec3d& p) const {
    return rotation.conjugate() * (p - translation);
  }
  Vec3d invert_dir(const Vec3d& d) const { return rotation.conjugate() * d; }

  static Pose identity() { return {}; }

  static Pose from_axis_angle(const Vec3d& axis, double angle,
                              const Vec3d& translation) {
    Pose p;
    p.rotation = Eigen::Quaterniond(Eigen::AngleAxisd(angle, axis.normalized()));
    p.translation = translation;
    return p;
  }

  static Pose from_translation(const Vec3d& translation) {
    Pose p;
    p.translation = translation;
    return p;
  }
};

}  // namespace graspkit
