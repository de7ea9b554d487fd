#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <vector>

#include "graspkit/core/frame.hpp"

namespace graspkit {

enum class EdgeKind { intensity, depth };

struct EdgeMap {
  EdgeKind kind = EdgeKind::intensity;
  int width = 0;
  int height = 0;
  Image<std::uint8_t> mask;  // 1 = edge
  std::vector<Pixel> pixels;

  void add(int row, int col) {
    mask.at(row, col) = 1;
    pixels.push_back({row, col});
  }
};

inline Image<double> luminance(const Image<Rgb8>& color) {
  Image<double> out(color.width(), color.height(), 0.0);
  for (int r = 0; r < color.height(); ++r) {
    for (int c = 0; c < color.width(); ++c) {
      const Rgb8 px = color.at(r, c);
      out.at(r, c) = 0.299 * px.r + 0.587 * px.g + 0.114 * px.b;
    }
  }
  return out;
}

namespace detail {

inline Image<double> gaussian_blur(const Image<double>& img, double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> kernel(2 * radius + 1);
  double ksum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
    ksum += kernel[i + radius];
  }
  for (double& k : kernel) k /= ksum;

  const int w = img.width(), h = img.height();
  Image<double> tmp(w, h, 0.0), out(w, h, 0.0);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i)
        acc += kernel[i + radius] * img.at(r, std::clamp(c + i, 0, w - 1));
      tmp.at(r, c) = acc;
    }
  }
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i)
        acc += kernel[i + radius] * tmp.at(std::clamp(r + i, 0, h - 1), c);
      out.at(r, c) = acc;
    }
  }
  return out;
}

}  // namespace detail

/// Canny edge detector on a 0-255 luminance raster: Gaussian blur, Sobel
/// gradients, non-maximum suppression along the gradient, hysteresis linking.
/// Magnitudes are normalized so an ideal full-contrast step peaks near 255,
/// putting `low`/`high` on a fixed 0-255 scale.
inline EdgeMap canny(const Image<double>& gray, double sigma, double low, double high) {
  if (!(sigma > 0.0)) throw std::invalid_argument("canny: sigma must be positive");
  if (!(low > 0.0) || !(low < high)) throw std::invalid_argument("canny: need 0 < low < high");

  const int w = gray.width(), h = gray.height();
  EdgeMap out;
  out.kind = EdgeKind::intensity;
  out.width = w;
  out.height = h;
  out.mask = Image<std::uint8_t>(w, h, 0);
  if (w < 3 || h < 3) return out;

  const Image<double> blurred = detail::gaussian_blur(gray, sigma);

  Image<double> mag(w, h, 0.0);
  Image<std::uint8_t> dir(w, h, 0);  // quantized gradient direction, 4 bins
  const double norm = 1.0 / (4.0 * std::numbers::sqrt2);
  for (int r = 1; r < h - 1; ++r) {
    for (int c = 1; c < w - 1; ++c) {
      const double gx = blurred.at(r - 1, c + 1) + 2.0 * blurred.at(r, c + 1) +
                        blurred.at(r + 1, c + 1) - blurred.at(r - 1, c - 1) -
                        2.0 * blurred.at(r, c - 1) - blurred.at(r + 1, c - 1);
      const double gy = blurred.at(r + 1, c - 1) + 2.0 * blurred.at(r + 1, c) +
                        blurred.at(r + 1, c + 1) - blurred.at(r - 1, c - 1) -
                        2.0 * blurred.at(r - 1, c) - blurred.at(r - 1, c + 1);
      mag.at(r, c) = std::hypot(gx, gy) * norm;
      double angle = std::atan2(gy, gx);
      if (angle < 0.0) angle += kPi;
      // bins: 0 = E-W gradient, 1 = NE-SW, 2 = N-S, 3 = NW-SE
      const int bin = static_cast<int>(std::floor((angle + kPi / 8) / (kPi / 4))) % 4;
      dir.at(r, c) = static_cast<std::uint8_t>(bin);
    }
  }

  // offsets along the gradient direction per bin
  static constexpr int along[4][2] = {{0, 1}, {-1, 1}, {-1, 0}, {-1, -1}};

  Image<std::uint8_t> state(w, h, 0);  // 0 none, 1 weak, 2 strong
  std::deque<Pixel> strong;
  for (int r = 1; r < h - 1; ++r) {
    for (int c = 1; c < w - 1; ++c) {
      const double m = mag.at(r, c);
      if (m < low) continue;
      const auto& o = along[dir.at(r, c)];
      const double m1 = mag.at(r + o[0], c + o[1]);
      const double m2 = mag.at(r - o[0], c - o[1]);
      if (m < m1 || m < m2) continue;
      if (m >= high) {
        state.at(r, c) = 2;
        strong.push_back({r, c});
      } else {
        state.at(r, c) = 1;
      }
    }
  }

  while (!strong.empty()) {
    const Pixel p = strong.front();
    strong.pop_front();
    if (!out.mask.at(p)) out.add(p.row, p.col);
    for (const auto& d : kNeigh8) {
      const Pixel q{p.row + d[0], p.col + d[1]};
      if (!state.in_bounds(q)) continue;
      if (state.at(q) == 1 && !out.mask.at(q)) {
        state.at(q) = 2;
        strong.push_back(q);
      }
    }
  }
  std::sort(out.pixels.begin(), out.pixels.end());
  return out;
}

/// 3D edges from the organized cloud: occlusion edges where the depth jumps
/// by more than depth_jump against an 8-neighbor (both sides flagged), crease
/// edges where adjacent normals differ by more than normal_jump, and the
/// valid rim next to invalid pixels.
inline EdgeMap depth_edges(const Frame& frame, double depth_jump, double normal_jump) {
  const int w = frame.width(), h = frame.height();
  EdgeMap out;
  out.kind = EdgeKind::depth;
  out.width = w;
  out.height = h;
  out.mask = Image<std::uint8_t>(w, h, 0);
  const double cos_jump = std::cos(normal_jump);

  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!frame.valid(r, c)) continue;
      const double z = frame.depth.at(r, c);
      bool edge = false;
      for (const auto& d : kNeigh8) {
        const int rr = r + d[0], cc = c + d[1];
        if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
        if (!frame.valid(rr, cc)) {
          edge = true;  // rim against missing data
          break;
        }
        if (std::abs(frame.depth.at(rr, cc) - z) > depth_jump) {
          edge = true;
          break;
        }
        if (frame.has_normal(r, c) && frame.has_normal(rr, cc) &&
            frame.normals.at(r, c).dot(frame.normals.at(rr, cc)) < cos_jump) {
          edge = true;
          break;
        }
      }
      if (edge) out.add(r, c);
    }
  }
  return out;
}

/// Precomputed Chebyshev-dilated union of edge maps, for fast level queries.
struct EdgeIndex {
  Image<std::uint8_t> near_edge;

  static EdgeIndex build(const EdgeMap& ec, const EdgeMap& ed, int radius) {
    if (radius < 0) throw std::invalid_argument("edge match radius must be >= 0");
    const int w = std::max(ec.width, ed.width);
    const int h = std::max(ec.height, ed.height);
    EdgeIndex idx;
    idx.near_edge = Image<std::uint8_t>(w, h, 0);
    auto stamp = [&](const EdgeMap& em) {
      for (const Pixel& p : em.pixels) {
        for (int dr = -radius; dr <= radius; ++dr) {
          const int rr = p.row + dr;
          if (rr < 0 || rr >= h) continue;
          for (int dc = -radius; dc <= radius; ++dc) {
            const int cc = p.col + dc;
            if (cc < 0 || cc >= w) continue;
            idx.near_edge.at(rr, cc) = 1;
          }
        }
      }
    };
    stamp(ec);
    stamp(ed);
    return idx;
  }
};

/// The level of each segment-boundary point: 1 iff an intensity or depth edge
/// pixel lies within Chebyshev distance `radius`.
inline std::vector<std::uint8_t> compute_levels(const std::vector<Pixel>& boundary,
                                                const EdgeIndex& index) {
  std::vector<std::uint8_t> levels(boundary.size(), 0);
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    const Pixel& p = boundary[i];
    if (index.near_edge.in_bounds(p) && index.near_edge.at(p)) levels[i] = 1;
  }
  return levels;
}

inline std::vector<std::uint8_t> compute_levels(const std::vector<Pixel>& boundary,
                                                const EdgeMap& ec, const EdgeMap& ed,
                                                int radius) {
  return compute_levels(boundary, EdgeIndex::build(ec, ed, radius));
}

/// Image-space split line for partitioning retained boundary points into the
/// two gripper sides: offset = (pixel - center) . axis_dir.
struct SplitAxis {
  Vec2d center = Vec2d::Zero();    // (col, row)
  Vec2d axis_dir = Vec2d::Zero();  // unit closing axis in image space
};

struct BoundaryPoint {
  Pixel pixel;
  Vec3d point = Vec3d::Zero();
};

struct ValidatedBoundary {
  std::vector<BoundaryPoint> plus_side;
  std::vector<BoundaryPoint> minus_side;
  std::vector<std::uint8_t> levels;  // parallel to the input boundary

  /// A usable boundary needs at least two retained points on each side.
  bool usable() const { return plus_side.size() >= 2 && minus_side.size() >= 2; }
};

/// Fuses segment-boundary points with intensity and depth edges: a boundary
/// point is retained iff some edge pixel confirms it within the match radius,
/// and retained points are split into gripper sides by their signed offset
/// along the closing axis. Points within 1 px of the split line are dropped
/// as side-ambiguous.
inline ValidatedBoundary merge_boundary(const Frame& frame, const std::vector<Pixel>& boundary,
                                        const EdgeIndex& index, const SplitAxis& split) {
  ValidatedBoundary vb;
  vb.levels = compute_levels(boundary, index);
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    if (!vb.levels[i]) continue;
    const Pixel& px = boundary[i];
    if (!frame.valid(px)) continue;
    const Vec2d offset(px.col - split.center.x(), px.row - split.center.y());
    const double along = offset.dot(split.axis_dir);
    if (std::abs(along) <= 1.0) continue;
    BoundaryPoint bp{px, frame.cloud.at(px)};
    if (along > 0.0)
      vb.plus_side.push_back(bp);
    else
      vb.minus_side.push_back(bp);
  }
  return vb;
}

inline ValidatedBoundary merge_boundary(const Frame& frame, const std::vector<Pixel>& boundary,
                                        const EdgeMap& ec, const EdgeMap& ed, int match_radius,
                                        const SplitAxis& split) {
  if (boundary.empty()) throw std::invalid_argument("merge_boundary: empty boundary");
  return merge_boundary(frame, boundary, EdgeIndex::build(ec, ed, match_radius), split);
}

}  // namespace graspkit
