#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "graspkit/core/frame.hpp"
#include "graspkit/grasp/detector.hpp"
#include "graspkit/ranking.hpp"

namespace graspkit {

namespace viz_detail {

inline void put(Image<Rgb8>& img, int row, int col, Rgb8 color) {
  if (img.in_bounds(row, col)) img.at(row, col) = color;
}

inline void stamp(Image<Rgb8>& img, int row, int col, Rgb8 color, int radius = 1) {
  for (int dr = -radius; dr <= radius; ++dr)
    for (int dc = -radius; dc <= radius; ++dc) put(img, row + dr, col + dc, color);
}

inline void draw_line(Image<Rgb8>& img, Vec2d from, Vec2d to, Rgb8 color) {
  int x0 = static_cast<int>(std::lround(from.x()));
  int y0 = static_cast<int>(std::lround(from.y()));
  const int x1 = static_cast<int>(std::lround(to.x()));
  const int y1 = static_cast<int>(std::lround(to.y()));
  const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
  const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    put(img, y0, x0, color);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

}  // namespace viz_detail

struct OverlayOptions {
  bool segment_boundaries = true;
  bool intensity_edges = false;
  bool depth_edges = false;
  bool boundary_support = true;  // retained E_v pixels per handle
  bool lines = true;
  bool frames = true;
};

/// Detection overlay in the style of the merged-edge debug figures:
/// segment boundaries gray, intensity edges green, depth edges blue, retained
/// boundary points red, fitted lines per handle, and the rank-1 closing axis.
inline Image<Rgb8> draw_overlay(const Frame& frame, const DetectionTrace& trace,
                                const std::vector<RankedHandle>& ranked,
                                const OverlayOptions& opt = {}) {
  using namespace viz_detail;
  Image<Rgb8> img = frame.color;

  if (opt.segment_boundaries)
    for (const Segment& seg : trace.segments)
      for (const Pixel& p : seg.boundary) put(img, p.row, p.col, Rgb8{190, 190, 190});
  if (opt.intensity_edges)
    for (const Pixel& p : trace.edges_intensity.pixels) put(img, p.row, p.col, Rgb8{0, 200, 0});
  if (opt.depth_edges)
    for (const Pixel& p : trace.edges_depth.pixels) put(img, p.row, p.col, Rgb8{60, 90, 255});

  for (const RankedHandle& rh : ranked) {
    const ValidatedHandle& h = rh.handle;
    if (opt.boundary_support) {
      for (const Pixel& p : h.support_plus) put(img, p.row, p.col, Rgb8{255, 40, 40});
      for (const Pixel& p : h.support_minus) put(img, p.row, p.col, Rgb8{255, 120, 40});
    }
    if (opt.lines) {
      const double half_len = 25.0;
      const Rgb8 col = rh.rank == 1 ? Rgb8{255, 0, 255} : Rgb8{0, 220, 220};
      draw_line(img, h.line_plus.p0 - half_len * h.line_plus.u,
                h.line_plus.p0 + half_len * h.line_plus.u, col);
      draw_line(img, h.line_minus.p0 - half_len * h.line_minus.u,
                h.line_minus.p0 + half_len * h.line_minus.u, col);
    }
    if (opt.frames && h.hyp.center.z() > 1e-6) {
      const Vec2d c = frame.intrinsics.project(h.hyp.center);
      const Vec3d tip3 = h.hyp.center + 0.03 * h.hyp.frame.closing;
      if (tip3.z() > 1e-6) {
        const Vec2d tip = frame.intrinsics.project(tip3);
        const Rgb8 col = rh.rank == 1 ? Rgb8{255, 255, 0} : Rgb8{160, 160, 0};
        draw_line(img, c, tip, col);
      }
      stamp(img, static_cast<int>(std::lround(c.y())), static_cast<int>(std::lround(c.x())),
            rh.rank == 1 ? Rgb8{255, 255, 255} : Rgb8{220, 220, 220}, rh.rank == 1 ? 2 : 1);
    }
  }
  return img;
}

/// Segmentation label map as a grayscale id image (for debug dumps).
inline Image<std::uint8_t> label_map_image(const std::vector<Segment>& segments, int width,
                                           int height) {
  Image<std::uint8_t> img(width, height, 0);
  for (const Segment& seg : segments) {
    const std::uint8_t shade = static_cast<std::uint8_t>(40 + (37 * (seg.id + 1)) % 215);
    for (const Pixel& p : seg.pixels) img.at(p) = shade;
  }
  return img;
}

}  // namespace graspkit
