#pragma once

#include <Eigen/Eigenvalues>

#include <optional>
#include <span>
#include <vector>

#include "graspkit/core/geometry.hpp"

namespace graspkit {

/// Total-least-squares 2D line: p0 + t*u, p0 the centroid, u the dominant
/// scatter direction. Sign convention: u.y >= 0, and u.x >= 0 when u.y == 0.
struct BoundaryLine {
  Vec2d p0 = Vec2d::Zero();
  Vec2d u = Vec2d::Zero();
  int inlier_count = 0;
  double rms_residual = 0.0;  // px, orthogonal distances
  bool isotropic = false;     // scatter has no dominant direction
};

/// Orthogonal-distance line fit via the eigen-decomposition of the 2D scatter
/// matrix. Returns nullopt when all points coincide.
inline std::optional<BoundaryLine> fit_line(std::span<const Vec2d> points) {
  if (points.size() < 2) return std::nullopt;

  Vec2d sum = Vec2d::Zero();
  for (const Vec2d& p : points) sum += p;
  const Vec2d centroid = sum / static_cast<double>(points.size());

  Eigen::Matrix2d scatter = Eigen::Matrix2d::Zero();
  for (const Vec2d& p : points) {
    const Vec2d d = p - centroid;
    scatter += d * d.transpose();
  }
  scatter /= static_cast<double>(points.size());

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver;
  solver.computeDirect(scatter);
  const double l_small = std::max(solver.eigenvalues()[0], 0.0);
  const double l_big = solver.eigenvalues()[1];
  if (l_big < 1e-18) return std::nullopt;  // coincident points

  BoundaryLine line;
  line.p0 = centroid;
  line.u = solver.eigenvectors().col(1);
  if (line.u.y() < 0.0 || (line.u.y() == 0.0 && line.u.x() < 0.0)) line.u = -line.u;
  line.inlier_count = static_cast<int>(points.size());
  line.rms_residual = std::sqrt(l_small);
  line.isotropic = l_small > 0.99 * l_big;
  return line;
}

inline std::optional<BoundaryLine> fit_line(const std::vector<Vec2d>& points) {
  return fit_line(std::span<const Vec2d>(points.data(), points.size()));
}

/// 3D PCA line through a point set: centroid + dominant direction.
struct Line3d {
  Vec3d origin = Vec3d::Zero();
  Vec3d dir = Vec3d::Zero();
};

inline std::optional<Line3d> fit_line_3d(std::span<const Vec3d> points) {
  if (points.size() < 2) return std::nullopt;
  Vec3d sum = Vec3d::Zero();
  for (const Vec3d& p : points) sum += p;
  const Vec3d centroid = sum / static_cast<double>(points.size());
  Mat3d scatter = Mat3d::Zero();
  for (const Vec3d& p : points) {
    const Vec3d d = p - centroid;
    scatter += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Mat3d> solver;
  solver.computeDirect(scatter);
  if (solver.eigenvalues()[2] < 1e-18) return std::nullopt;
  Line3d line;
  line.origin = centroid;
  line.dir = solver.eigenvectors().col(2);
  return line;
}

/// Closest point on the line to q.
inline Vec3d closest_point_on_line(const Line3d& line, const Vec3d& q) {
  return line.origin + line.dir * line.dir.dot(q - line.origin);
}

}  // namespace graspkit
