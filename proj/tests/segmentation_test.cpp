#include <gtest/gtest.h>

#include <map>
#include <set>

#include "graspkit/frame/normals.hpp"
#include "graspkit/segmentation.hpp"
#include "test_support.hpp"

using namespace graspkit;
using test_support::frame_from_depth;
using test_support::plane_frame;
using test_support::small_intrinsics;

namespace {

Frame with_normals(Frame frame, int window = 3) { return estimate_normals(frame, window); }

/// Two flat plates separated by an invalid gap.
Frame two_plates_frame() {
  const Intrinsics intr = small_intrinsics();
  return with_normals(frame_from_depth(intr, [&](int, int c) {
    if (c < 70) return 0.8;
    if (c >= 90) return 0.8;
    return -1.0;
  }));
}

}  // namespace

TEST(RegionGrow, DisconnectedCoplanarPlates) {
  const Frame frame = two_plates_frame();
  const auto segments = region_grow(frame, deg_to_rad(4.0), 200);
  EXPECT_EQ(segments.size(), 2u);
}

TEST(RegionGrow, CreaseSeparatesFaces) {
  const Intrinsics intr = small_intrinsics();
  // fronto-parallel half meets a 45-degree half along the center column
  Frame frame = frame_from_depth(intr, [&](int r, int c) {
    const double x_over_z = (c - intr.cx) / intr.fx;
    (void)r;
    if (c < intr.cx) return 1.0;
    return 1.0 / (1.0 + x_over_z);  // plane x + z = 1
  });
  frame = with_normals(frame);
  const auto segments = region_grow(frame, deg_to_rad(4.0), 300);
  ASSERT_GE(segments.size(), 2u);
  // the two largest segments must have near-orthogonal... distinct mean normals
  const auto f0 = segment_features(frame, segments[0]);
  const auto f1 = segment_features(frame, segments[1]);
  ASSERT_TRUE(f0 && f1);
  EXPECT_GT(angle_between(f0->mean_normal, f1->mean_normal), deg_to_rad(30.0));
}

TEST(RegionGrow, AdmissionAngleRecheck) {
  const Frame frame = two_plates_frame();
  const double tau = deg_to_rad(4.0);
  const auto segments = region_grow(frame, tau, 100);
  ASSERT_FALSE(segments.empty());
  for (const Segment& seg : segments) {
    ASSERT_EQ(seg.pixels.size(), seg.admitted_by.size());
    for (std::size_t i = 0; i < seg.pixels.size(); ++i) {
      const Pixel p = seg.pixels[i];
      const Pixel s = seg.admitted_by[i];
      ASSERT_TRUE(frame.has_normal(p));
      ASSERT_TRUE(frame.has_normal(s));
      EXPECT_LE(angle_between(frame.normals.at(p), frame.normals.at(s)), tau + 1e-12);
    }
  }
}

TEST(RegionGrow, DisjointAndConnected) {
  const Frame frame = two_plates_frame();
  const auto segments = region_grow(frame, deg_to_rad(4.0), 100);
  std::set<std::pair<int, int>> seen;
  for (const Segment& seg : segments) {
    // pairwise disjoint
    for (const Pixel& p : seg.pixels)
      ASSERT_TRUE(seen.insert({p.row, p.col}).second) << "pixel in two segments";
    // single 4-connected component
    std::set<std::pair<int, int>> members;
    for (const Pixel& p : seg.pixels) members.insert({p.row, p.col});
    std::vector<Pixel> stack{seg.pixels.front()};
    std::set<std::pair<int, int>> reached{{seg.pixels.front().row, seg.pixels.front().col}};
    while (!stack.empty()) {
      const Pixel p = stack.back();
      stack.pop_back();
      for (const auto& d : kNeigh4) {
        const Pixel q{p.row + d[0], p.col + d[1]};
        if (!members.count({q.row, q.col}) || reached.count({q.row, q.col})) continue;
        reached.insert({q.row, q.col});
        stack.push_back(q);
      }
    }
    EXPECT_EQ(reached.size(), seg.pixels.size());
  }
}

TEST(RegionGrow, Deterministic) {
  const Frame frame = two_plates_frame();
  const auto a = region_grow(frame, deg_to_rad(4.0), 100);
  const auto b = region_grow(frame, deg_to_rad(4.0), 100);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, b[i].id);
    EXPECT_EQ(a[i].pixels, b[i].pixels);
    EXPECT_EQ(a[i].admitted_by, b[i].admitted_by);
  }
}

TEST(RegionGrow, MinSizeFilters) {
  const Intrinsics intr = small_intrinsics();
  // a large plate plus an 8-pixel islet
  Frame frame = frame_from_depth(intr, [&](int r, int c) {
    if (r < 60) return 0.8;
    if (r >= 100 && r < 102 && c >= 10 && c < 14) return 0.8;
    return -1.0;
  });
  frame = with_normals(frame, 1);
  const auto segments = region_grow(frame, deg_to_rad(4.0), 50);
  EXPECT_EQ(segments.size(), 1u);
  EXPECT_THROW(region_grow(frame, 0.0, 50), std::invalid_argument);
  EXPECT_THROW(region_grow(frame, kPi, 50), std::invalid_argument);
}

TEST(SegmentFeatures, PlanarRectangle) {
  const Intrinsics intr = small_intrinsics();
  const double z = 0.8;
  const double pitch = z / intr.fx;  // meters per pixel on the plane
  const int cols = 36, rows = 18;    // ~0.20 m x ~0.097 m
  Frame frame = frame_from_depth(intr, [&](int r, int c) {
    return (r >= 40 && r < 40 + rows && c >= 50 && c < 50 + cols) ? z : -1.0;
  });
  frame = with_normals(frame);
  const auto segments = region_grow(frame, deg_to_rad(4.0), 100);
  ASSERT_EQ(segments.size(), 1u);
  const auto features = segment_features(frame, segments[0]);
  ASSERT_TRUE(features.has_value());

  const double expected_major = (cols - 1) * pitch;
  EXPECT_NEAR(features->extent_major, expected_major, 0.005);
  // major axis along image x -> camera x
  EXPECT_LT(axis_angle_between(features->axis_major, Vec3d(1, 0, 0)), deg_to_rad(3.0));
  EXPECT_LT(angle_between(features->mean_normal, Vec3d(0, 0, -1)), deg_to_rad(1.0));
  EXPECT_FALSE(features->noisy);
  EXPECT_GE(features->eigenvalues[0], features->eigenvalues[1]);
  EXPECT_GE(features->eigenvalues[1], features->eigenvalues[2]);
  EXPECT_GE(features->eigenvalues[2], -1e-15);
  // orthonormal triad
  EXPECT_LT(std::abs(features->axis_major.dot(features->axis_minor)), 1e-9);
  EXPECT_LT(std::abs(features->axis_major.dot(features->mean_normal)), 1e-9);
  EXPECT_LT(std::abs(features->axis_minor.dot(features->mean_normal)), 1e-9);
}

TEST(SegmentFeatures, SquarePlateIsotropic) {
  const Intrinsics intr = small_intrinsics();
  Frame frame = frame_from_depth(intr, [&](int r, int c) {
    return (r >= 40 && r < 70 && c >= 60 && c < 90) ? 0.8 : -1.0;
  });
  frame = with_normals(frame);
  const auto segments = region_grow(frame, deg_to_rad(4.0), 100);
  ASSERT_EQ(segments.size(), 1u);
  const auto features = segment_features(frame, segments[0]);
  ASSERT_TRUE(features.has_value());
  EXPECT_LT(features->eigenvalues[0] / features->eigenvalues[1], 1.2);
}

TEST(SegmentFeatures, RotationEquivariance) {
  const Intrinsics intr = small_intrinsics();
  Frame frame = frame_from_depth(intr, [&](int r, int c) {
    return (r >= 40 && r < 58 && c >= 50 && c < 86) ? 0.8 : -1.0;
  });
  frame = with_normals(frame);
  auto segments = region_grow(frame, deg_to_rad(4.0), 100);
  ASSERT_EQ(segments.size(), 1u);
  const auto base = segment_features(frame, segments[0]);
  ASSERT_TRUE(base.has_value());

  const Eigen::AngleAxisd rot(deg_to_rad(31.0), Vec3d(1, 2, 0.5).normalized());
  Frame rotated = frame;
  for (const Pixel& p : segments[0].pixels) {
    rotated.cloud.at(p) = rot * frame.cloud.at(p);
    rotated.normals.at(p) = rot * frame.normals.at(p);
  }
  const auto moved = segment_features(rotated, segments[0]);
  ASSERT_TRUE(moved.has_value());
  EXPECT_LT(axis_angle_between(moved->axis_major, rot * base->axis_major), deg_to_rad(1.0));
  EXPECT_LT(axis_angle_between(moved->axis_minor, rot * base->axis_minor), deg_to_rad(1.0));
  EXPECT_NEAR(moved->extent_major, base->extent_major, 1e-9);
}

TEST(SegmentFeatures, DegenerateSegments) {
  const Intrinsics intr = small_intrinsics();
  Frame frame = frame_from_depth(intr, [](int r, int c) {
    return (r == 40 && c >= 50 && c < 80) ? 0.8 : -1.0;  // one-pixel line
  });
  deproject_cloud(frame);
  Segment line;
  line.id = 0;
  for (int c = 50; c < 80; ++c) {
    line.pixels.push_back({40, c});
    line.admitted_by.push_back({40, 50});
  }
  frame.normals = Image<Vec3d>(intr.width, intr.height, Vec3d(0, 0, -1));
  frame.normal_valid = Image<std::uint8_t>(intr.width, intr.height, 1);
  EXPECT_FALSE(segment_features(frame, line).has_value());  // rank < 2

  Segment two;
  two.pixels = {{40, 50}, {40, 51}};
  EXPECT_FALSE(segment_features(frame, two).has_value());  // too few points
}

TEST(SegmentBoundary, SolidBlock) {
  Segment seg;
  for (int r = 10; r < 13; ++r)
    for (int c = 20; c < 23; ++c) seg.pixels.push_back({r, c});
  const auto boundary = segment_boundary(seg);
  EXPECT_EQ(boundary.size(), 8u);  // all but the center
  for (const Pixel& p : boundary) EXPECT_FALSE(p.row == 11 && p.col == 21);
  // traced ring: consecutive pixels are 8-adjacent
  for (std::size_t i = 1; i < boundary.size(); ++i) {
    EXPECT_LE(std::abs(boundary[i].row - boundary[i - 1].row), 1);
    EXPECT_LE(std::abs(boundary[i].col - boundary[i - 1].col), 1);
  }
}

TEST(SegmentBoundary, OnePixelLine) {
  Segment seg;
  for (int c = 5; c < 15; ++c) seg.pixels.push_back({7, c});
  const auto boundary = segment_boundary(seg);
  EXPECT_EQ(boundary.size(), seg.pixels.size());
}

TEST(SegmentBoundary, RingWithHole) {
  Segment seg;
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c)
      if (!(r == 2 && c == 2)) seg.pixels.push_back({r, c});
  const auto boundary = segment_boundary(seg);
  EXPECT_EQ(boundary.size(), 24u);  // outer ring and the ring around the hole
  EXPECT_THROW(segment_boundary(Segment{}), std::invalid_argument);
}
