#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "graspkit/core/frame.hpp"

namespace graspkit {

/// One smooth-surface region from region growing. `pixels[i]` was admitted by
/// the neighboring pixel `admitted_by[i]` (itself for the region's first seed),
/// and the admission test angle(normal(p), normal(admitted_by(p))) <= tau can
/// be re-checked from these records.
struct Segment {
  int id = -1;
  std::vector<Pixel> pixels;
  std::vector<Pixel> admitted_by;
  std::vector<Pixel> boundary;  // filled by segment_boundary
};

struct SegmentFeatures {
  Vec3d centroid = Vec3d::Zero();
  Vec3d mean_normal = Vec3d::Zero();
  Vec3d axis_major = Vec3d::Zero();
  Vec3d axis_minor = Vec3d::Zero();
  Vec3d eigenvalues = Vec3d::Zero();  // descending, m^2
  double extent_major = 0.0;
  double extent_minor = 0.0;
  bool noisy = false;
  int point_count = 0;
};

struct RoiRect {
  int col0 = -1, row0 = -1, col1 = -1, row1 = -1;  // inclusive; negative = full frame

  bool restricts() const { return col0 >= 0 && row0 >= 0 && col1 >= col0 && row1 >= row0; }
  bool contains(int row, int col) const {
    return !restricts() || (col >= col0 && col <= col1 && row >= row0 && row <= row1);
  }
};

/// Groups normal-valid pixels into smooth surfaces. A popped seed admits each
/// unassigned 4-neighbor whose normal is within tau of the seed's normal, and
/// every admitted pixel becomes a seed in turn. New regions start from the
/// lowest-local-normal-variance pixel still unassigned (raster order on ties),
/// so the result is deterministic.
inline std::vector<Segment> region_grow(const Frame& frame, double tau, int min_size,
                                        const RoiRect& roi = {}) {
  if (!(tau > 0.0) || tau >= kPi / 2)
    throw std::invalid_argument("region_grow: tau must be in (0, pi/2)");
  if (frame.normals.empty() || frame.normal_valid.empty())
    throw std::invalid_argument("region_grow: frame has no normals");

  const int w = frame.width(), h = frame.height();
  const double cos_tau = std::cos(tau);

  // local normal variance proxy: mean (1 - cos) against 8-neighbor normals
  std::vector<std::pair<double, int>> seed_order;
  seed_order.reserve(static_cast<std::size_t>(w) * h / 4);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!frame.has_normal(r, c) || !roi.contains(r, c)) continue;
      const Vec3d& n0 = frame.normals.at(r, c);
      double acc = 0.0;
      int cnt = 0;
      for (const auto& d : kNeigh8) {
        const int rr = r + d[0], cc = c + d[1];
        if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
        if (!frame.has_normal(rr, cc)) continue;
        acc += 1.0 - n0.dot(frame.normals.at(rr, cc));
        ++cnt;
      }
      const double proxy = cnt > 0 ? acc / cnt : 2.0;
      seed_order.emplace_back(proxy, r * w + c);
    }
  }
  std::sort(seed_order.begin(), seed_order.end());

  Image<int> label(w, h, -1);
  std::vector<Segment> segments;
  std::deque<Pixel> queue;

  for (const auto& [proxy, idx] : seed_order) {
    const Pixel start{idx / w, idx % w};
    if (label.at(start) != -1) continue;

    Segment seg;
    seg.id = static_cast<int>(segments.size());
    label.at(start) = seg.id;
    seg.pixels.push_back(start);
    seg.admitted_by.push_back(start);
    queue.clear();
    queue.push_back(start);

    while (!queue.empty()) {
      const Pixel s = queue.front();
      queue.pop_front();
      const Vec3d& ns = frame.normals.at(s);
      for (const auto& d : kNeigh4) {
        const Pixel p{s.row + d[0], s.col + d[1]};
        if (!label.in_bounds(p) || label.at(p) != -1) continue;
        if (!frame.has_normal(p) || !roi.contains(p.row, p.col)) continue;
        if (ns.dot(frame.normals.at(p)) < cos_tau) continue;
        label.at(p) = seg.id;
        seg.pixels.push_back(p);
        seg.admitted_by.push_back(s);
        queue.push_back(p);
      }
    }

    if (static_cast<int>(seg.pixels.size()) >= min_size) {
      segments.push_back(std::move(seg));
    } else {
      // regions are connected components of the pairwise angle graph, so a
      // rejected region would regrow identically from any of its pixels
      for (const Pixel& p : seg.pixels) label.at(p) = -2;
    }
  }
  return segments;
}

inline Image<int> build_label_map(const std::vector<Segment>& segments, int width, int height) {
  Image<int> label(width, height, -1);
  for (const Segment& seg : segments)
    for (const Pixel& p : seg.pixels) label.at(p) = seg.id;
  return label;
}

/// PCA features of a segment's 3D points. Returns nullopt for segments with
/// fewer than 3 points or (numerically) collinear geometry. Axes are
/// orthonormalized against the mean normal.
inline std::optional<SegmentFeatures> segment_features(const Frame& frame, const Segment& seg) {
  const int n = static_cast<int>(seg.pixels.size());
  if (n < 3) return std::nullopt;

  Vec3d sum = Vec3d::Zero();
  Mat3d sq = Mat3d::Zero();
  Vec3d normal_sum = Vec3d::Zero();
  for (const Pixel& px : seg.pixels) {
    const Vec3d& p = frame.cloud.at(px);
    sum += p;
    sq += p * p.transpose();
    if (frame.has_normal(px)) normal_sum += frame.normals.at(px);
  }
  const Vec3d centroid = sum / n;
  const Mat3d cov = sq / n - centroid * centroid.transpose();

  Eigen::SelfAdjointEigenSolver<Mat3d> solver;
  solver.computeDirect(cov);
  const Vec3d evals = solver.eigenvalues();  // ascending
  const double l1 = evals[2], l2 = evals[1], l3 = std::max(evals[0], 0.0);
  if (l1 < 1e-14 || l2 < 1e-9 * l1) return std::nullopt;  // rank < 2

  const double nlen = normal_sum.norm();
  if (nlen < 1e-12) return std::nullopt;
  SegmentFeatures f;
  f.point_count = n;
  f.centroid = centroid;
  f.mean_normal = normal_sum / nlen;
  f.eigenvalues = Vec3d(l1, l2, l3);
  f.noisy = axis_angle_between(f.mean_normal, solver.eigenvectors().col(0)) > deg_to_rad(30.0);

  const Vec3d major = orthogonalized(solver.eigenvectors().col(2), f.mean_normal);
  if (major.isZero()) return std::nullopt;
  Vec3d minor = solver.eigenvectors().col(1);
  minor -= minor.dot(f.mean_normal) * f.mean_normal;
  minor -= minor.dot(major) * major;
  const double mlen = minor.norm();
  if (mlen < 1e-12) return std::nullopt;
  minor /= mlen;
  f.axis_major = major;
  f.axis_minor = minor;

  double lo_maj = 0, hi_maj = 0, lo_min = 0, hi_min = 0;
  bool first = true;
  for (const Pixel& px : seg.pixels) {
    const Vec3d d = frame.cloud.at(px) - centroid;
    const double pm = d.dot(major), pn = d.dot(minor);
    if (first) {
      lo_maj = hi_maj = pm;
      lo_min = hi_min = pn;
      first = false;
    } else {
      lo_maj = std::min(lo_maj, pm);
      hi_maj = std::max(hi_maj, pm);
      lo_min = std::min(lo_min, pn);
      hi_min = std::max(hi_min, pn);
    }
  }
  f.extent_major = hi_maj - lo_maj;
  f.extent_minor = hi_min - lo_min;
  return f;
}

namespace detail {

/// Moore-neighbor walk around one boundary loop (Jacob's stopping criterion),
/// appending visited region pixels to `out` in walk order.
template <typename InsideFn>
inline void trace_loop(const Pixel& start, const Pixel& outside_start, InsideFn inside,
                       std::size_t step_cap, std::vector<Pixel>& out) {
  // clockwise Moore neighborhood: N, NE, E, SE, S, SW, W, NW
  static constexpr int moore[8][2] = {{-1, 0}, {-1, 1}, {0, 1},  {1, 1},
                                      {1, 0},  {1, -1}, {0, -1}, {-1, -1}};
  auto dir_of = [](const Pixel& from, const Pixel& to) {
    for (int i = 0; i < 8; ++i)
      if (from.row + moore[i][0] == to.row && from.col + moore[i][1] == to.col) return i;
    return -1;
  };

  Pixel cur = start;
  Pixel back = outside_start;
  const Pixel back0 = outside_start;
  out.push_back(cur);
  for (std::size_t step = 0; step < step_cap; ++step) {
    const int bd = dir_of(cur, back);
    if (bd < 0) return;
    Pixel next{-1, -1}, next_back = back;
    bool found = false;
    for (int i = 1; i <= 8; ++i) {
      const int d = (bd + i) % 8;
      const Pixel cand{cur.row + moore[d][0], cur.col + moore[d][1]};
      if (inside(cand)) {
        next = cand;
        next_back = Pixel{cur.row + moore[(d + 7) % 8][0], cur.col + moore[(d + 7) % 8][1]};
        found = true;
        break;
      }
    }
    if (!found) return;  // isolated pixel
    back = next_back;
    cur = next;
    if (cur == start && back == back0) return;
    out.push_back(cur);
  }
}

}  // namespace detail

/// All segment pixels that have a 4-neighbor outside the segment, ordered by
/// contour tracing (outer loop first, then inner loops in raster order).
inline std::vector<Pixel> segment_boundary(const Segment& seg) {
  if (seg.pixels.empty()) throw std::invalid_argument("segment_boundary: empty segment");

  int rmin = seg.pixels[0].row, rmax = rmin, cmin = seg.pixels[0].col, cmax = cmin;
  for (const Pixel& p : seg.pixels) {
    rmin = std::min(rmin, p.row);
    rmax = std::max(rmax, p.row);
    cmin = std::min(cmin, p.col);
    cmax = std::max(cmax, p.col);
  }
  const int bw = cmax - cmin + 3, bh = rmax - rmin + 3;  // 1-pixel outside rim
  Image<std::uint8_t> mask(bw, bh, 0);
  for (const Pixel& p : seg.pixels) mask.at(p.row - rmin + 1, p.col - cmin + 1) = 1;

  auto inside = [&](const Pixel& p) {
    return mask.in_bounds(p.row - rmin + 1, p.col - cmin + 1) &&
           mask.at(p.row - rmin + 1, p.col - cmin + 1) != 0;
  };

  // boundary = 4-exposed pixels, in raster order for start selection
  std::vector<Pixel> boundary_raster;
  for (int r = rmin; r <= rmax; ++r) {
    for (int c = cmin; c <= cmax; ++c) {
      if (!inside({r, c})) continue;
      for (const auto& d : kNeigh4) {
        if (!inside({r + d[0], c + d[1]})) {
          boundary_raster.push_back({r, c});
          break;
        }
      }
    }
  }

  Image<std::uint8_t> emitted(bw, bh, 0);
  auto was_emitted = [&](const Pixel& p) -> std::uint8_t& {
    return emitted.at(p.row - rmin + 1, p.col - cmin + 1);
  };

  std::vector<Pixel> ordered;
  ordered.reserve(boundary_raster.size());
  const std::size_t step_cap = 8 * seg.pixels.size() + 16;
  std::vector<Pixel> walk;
  for (const Pixel& start : boundary_raster) {
    if (was_emitted(start)) continue;
    // any 4-neighbor outside the region serves as the walk's backtrack anchor
    Pixel outside{-1, -1};
    for (const auto& d : kNeigh4) {
      const Pixel q{start.row + d[0], start.col + d[1]};
      if (!inside(q)) {
        outside = q;
        break;
      }
    }
    walk.clear();
    detail::trace_loop(start, outside, inside, step_cap, walk);
    for (const Pixel& p : walk) {
      if (was_emitted(p)) continue;
      // the walk can touch interior-exposed diagonals; keep 4-exposed only
      bool exposed = false;
      for (const auto& d : kNeigh4) {
        if (!inside({p.row + d[0], p.col + d[1]})) {
          exposed = true;
          break;
        }
      }
      if (!exposed) continue;
      was_emitted(p) = 1;
      ordered.push_back(p);
    }
  }
  return ordered;
}

}  // namespace graspkit
