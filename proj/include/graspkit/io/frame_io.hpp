#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "graspkit/core/frame.hpp"
#include "graspkit/io/keyvalue.hpp"
#include "graspkit/io/png_io.hpp"

namespace graspkit {

inline Intrinsics load_intrinsics(const std::string& path) {
  const KeyValueFile kv = KeyValueFile::load(path);
  Intrinsics intr;
  intr.fx = kv.get_double("fx");
  intr.fy = kv.get_double("fy");
  intr.cx = kv.get_double("cx");
  intr.cy = kv.get_double("cy");
  intr.width = kv.get_int("width");
  intr.height = kv.get_int("height");
  intr.depth_scale = kv.get_double("depth_scale", 0.001);
  intr.validate();
  return intr;
}

inline void save_intrinsics(const std::string& path, const Intrinsics& intr) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  out << "fx " << intr.fx << "\nfy " << intr.fy << "\ncx " << intr.cx << "\ncy " << intr.cy
      << "\nwidth " << intr.width << "\nheight " << intr.height << "\ndepth_scale "
      << intr.depth_scale << "\n";
}

/// Loads a registered color + 16-bit depth PNG pair into a deprojected Frame.
inline Frame load_frame(const std::string& color_path, const std::string& depth_path,
                        const Intrinsics& intrinsics) {
  intrinsics.validate();
  Image<Rgb8> color = read_png_rgb8(color_path);
  Image<std::uint16_t> raw_depth = read_png_gray16(depth_path);
  if (color.width() != raw_depth.width() || color.height() != raw_depth.height())
    throw std::runtime_error("color and depth dimensions differ");
  if (color.width() != intrinsics.width || color.height() != intrinsics.height)
    throw std::runtime_error("image dimensions do not match intrinsics");

  Frame frame = make_empty_frame(intrinsics);
  frame.color = std::move(color);
  for (int r = 0; r < frame.height(); ++r)
    for (int c = 0; c < frame.width(); ++c)
      frame.depth.at(r, c) = raw_depth.at(r, c) * intrinsics.depth_scale;
  deproject_cloud(frame);
  return frame;
}

/// Writes the frame's depth as 16-bit PNG using the frame's depth_scale.
inline void save_depth_png(const std::string& path, const Frame& frame) {
  Image<std::uint16_t> raw(frame.width(), frame.height(), 0);
  for (int r = 0; r < frame.height(); ++r) {
    for (int c = 0; c < frame.width(); ++c) {
      const double units = frame.depth.at(r, c) / frame.intrinsics.depth_scale;
      raw.at(r, c) = static_cast<std::uint16_t>(
          std::clamp(std::llround(units), 0ll, 65535ll));
    }
  }
  write_png_gray16(path, raw);
}

namespace detail {

/// Least-squares pinhole recovery from an organized cloud:
/// col = fx * (x/z) + cx per valid pixel, and likewise for rows.
inline void fit_axis(const std::vector<double>& ratio, const std::vector<double>& px,
                     double& focal, double& center) {
  const std::size_t n = ratio.size();
  double sr = 0, sp = 0, srr = 0, srp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sr += ratio[i];
    sp += px[i];
    srr += ratio[i] * ratio[i];
    srp += ratio[i] * px[i];
  }
  const double det = n * srr - sr * sr;
  if (std::abs(det) < 1e-9 * n)
    throw std::runtime_error("organized cloud is degenerate; cannot recover intrinsics");
  focal = (n * srp - sr * sp) / det;
  center = (sp * srr - sr * srp) / det;
}

}  // namespace detail

inline Intrinsics estimate_intrinsics_from_cloud(const Image<Vec3d>& cloud,
                                                 const Image<std::uint8_t>& valid) {
  std::vector<double> rx, px, ry, py;
  for (int r = 0; r < cloud.height(); ++r) {
    for (int c = 0; c < cloud.width(); ++c) {
      if (!valid.at(r, c)) continue;
      const Vec3d& p = cloud.at(r, c);
      if (p.z() <= 0) continue;
      rx.push_back(p.x() / p.z());
      px.push_back(static_cast<double>(c));
      ry.push_back(p.y() / p.z());
      py.push_back(static_cast<double>(r));
    }
  }
  if (rx.size() < 3)
    throw std::runtime_error("too few valid points to recover intrinsics");
  Intrinsics intr;
  intr.width = cloud.width();
  intr.height = cloud.height();
  detail::fit_axis(rx, px, intr.fx, intr.cx);
  detail::fit_axis(ry, py, intr.fy, intr.cy);
  intr.depth_scale = 0.001;
  intr.validate();
  return intr;
}

/// Loads an organized ASCII PCD v0.7 (fields x y z [rgb]) as a Frame.
/// Unorganized clouds (height == 1) are rejected; intrinsics are recovered
/// from the grid by least squares.
inline Frame load_pcd(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  int width = -1, height = -1, points = -1;
  int ix = -1, iy = -1, iz = -1, irgb = -1;
  int field_count = 0;
  bool ascii = false;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "#" || tag.empty()) continue;
    if (tag == "FIELDS") {
      std::string f;
      while (ls >> f) {
        if (f == "x") ix = field_count;
        else if (f == "y") iy = field_count;
        else if (f == "z") iz = field_count;
        else if (f == "rgb") irgb = field_count;
        ++field_count;
      }
    } else if (tag == "WIDTH") {
      ls >> width;
    } else if (tag == "HEIGHT") {
      ls >> height;
    } else if (tag == "POINTS") {
      ls >> points;
    } else if (tag == "DATA") {
      std::string kind;
      ls >> kind;
      ascii = (kind == "ascii");
      break;
    }
  }
  if (width <= 0 || height <= 0 || points != width * height)
    throw std::runtime_error("malformed PCD header in " + path);
  if (height == 1) throw std::runtime_error("unorganized PCD rejected (height = 1): " + path);
  if (ix < 0 || iy < 0 || iz < 0) throw std::runtime_error("PCD lacks x/y/z fields: " + path);
  if (!ascii) throw std::runtime_error("only ASCII PCD is supported: " + path);

  Image<Vec3d> cloud(width, height, Vec3d::Zero());
  Image<std::uint8_t> valid(width, height, 0);
  Image<Rgb8> color(width, height, Rgb8{128, 128, 128});
  std::vector<double> fields(field_count);
  for (int i = 0; i < points; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("truncated PCD data in " + path);
    std::istringstream ls(line);
    for (int f = 0; f < field_count; ++f) {
      std::string tok;
      if (!(ls >> tok)) throw std::runtime_error("short PCD row in " + path);
      fields[f] = (tok == "nan" || tok == "NaN" || tok == "-nan")
                      ? std::numeric_limits<double>::quiet_NaN()
                      : std::stod(tok);
    }
    const int r = i / width;
    const int c = i % width;
    const Vec3d p(fields[ix], fields[iy], fields[iz]);
    if (p.allFinite() && p.z() > 0) {
      cloud.at(r, c) = p;
      valid.at(r, c) = 1;
    }
    if (irgb >= 0 && std::isfinite(fields[irgb])) {
      const float packed_f = static_cast<float>(fields[irgb]);
      std::uint32_t packed;
      std::memcpy(&packed, &packed_f, sizeof packed);
      color.at(r, c) = Rgb8{static_cast<std::uint8_t>((packed >> 16) & 0xff),
                            static_cast<std::uint8_t>((packed >> 8) & 0xff),
                            static_cast<std::uint8_t>(packed & 0xff)};
    }
  }

  Frame frame = make_empty_frame(estimate_intrinsics_from_cloud(cloud, valid));
  frame.color = std::move(color);
  frame.cloud = std::move(cloud);
  frame.cloud_valid = std::move(valid);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c)
      if (frame.cloud_valid.at(r, c)) frame.depth.at(r, c) = frame.cloud.at(r, c).z();
  return frame;
}

/// Exports the frame's organized cloud as ASCII PCD v0.7 with packed rgb.
inline void save_pcd(const std::string& path, const Frame& frame) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(9);
  const int w = frame.width(), h = frame.height();
  out << "# .PCD v0.7 - Point Cloud Data file format\nVERSION 0.7\n"
      << "FIELDS x y z rgb\nSIZE 4 4 4 4\nTYPE F F F F\nCOUNT 1 1 1 1\n"
      << "WIDTH " << w << "\nHEIGHT " << h << "\nVIEWPOINT 0 0 0 1 0 0 0\n"
      << "POINTS " << w * h << "\nDATA ascii\n";
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const Rgb8 col = frame.color.at(r, c);
      const std::uint32_t packed = (std::uint32_t(col.r) << 16) |
                                   (std::uint32_t(col.g) << 8) | std::uint32_t(col.b);
      float packed_f;
      std::memcpy(&packed_f, &packed, sizeof packed_f);
      if (frame.valid(r, c)) {
        const Vec3d& p = frame.cloud.at(r, c);
        out << p.x() << " " << p.y() << " " << p.z() << " " << packed_f << "\n";
      } else {
        out << "nan nan nan " << packed_f << "\n";
      }
    }
  }
}

}  // namespace graspkit
