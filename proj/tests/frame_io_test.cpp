#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "graspkit/frame/normals.hpp"
#include "graspkit/frame/smoothing.hpp"
#include "graspkit/io/frame_io.hpp"
#include "graspkit/io/png_io.hpp"
#include "graspkit/synth/render.hpp"  // Rng
#include "oracles.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace graspkit;
using test_support::frame_from_depth;
using test_support::plane_frame;
using test_support::small_intrinsics;

TEST(Intrinsics, DeprojectPrincipalRay) {
  Intrinsics intr{525.0, 525.0, 319.5, 239.5, 640, 480, 0.001};
  const Vec3d p = intr.deproject(intr.cx, intr.cy, 1.0);
  EXPECT_NEAR(p.x(), 0.0, 1e-12);
  EXPECT_NEAR(p.y(), 0.0, 1e-12);
  EXPECT_NEAR(p.z(), 1.0, 1e-12);
}

TEST(Intrinsics, DeprojectDiagonalRay) {
  Intrinsics intr{525.0, 525.0, 319.5, 239.5, 640, 480, 0.001};
  // one focal length right of the principal point: 45 degree ray
  const Vec3d p = intr.deproject(intr.cx + intr.fx, intr.cy, 2.0);
  EXPECT_NEAR(p.x(), 2.0, 1e-12);
  EXPECT_NEAR(p.y(), 0.0, 1e-12);
  EXPECT_NEAR(p.z(), 2.0, 1e-12);
}

TEST(Intrinsics, Validation) {
  Intrinsics bad{0.0, 525.0, 319.5, 239.5, 640, 480, 0.001};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = Intrinsics{525.0, 525.0, 700.0, 239.5, 640, 480, 0.001};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = Intrinsics{525.0, 525.0, 319.5, 239.5, 640, 480, 0.0};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(FrameIo, LoadFramePlaneRoundTrip) {
  const std::string dir = test_support::scratch_dir("load_frame");
  Intrinsics intr{570.0, 570.0, 319.5, 239.5, 640, 480, 0.001};

  Image<Rgb8> color(640, 480, Rgb8{10, 200, 30});
  Image<std::uint16_t> depth(640, 480, 800);  // 0.8 m at 1 mm scale
  write_png_rgb8(dir + "/color.png", color);
  write_png_gray16(dir + "/depth.png", depth);

  const Frame frame = load_frame(dir + "/color.png", dir + "/depth.png", intr);
  int valid = 0;
  for (int r = 0; r < frame.height(); ++r)
    for (int c = 0; c < frame.width(); ++c)
      if (frame.valid(r, c)) {
        ++valid;
        EXPECT_NEAR(frame.cloud.at(r, c).z(), 0.8, 1e-6);
      }
  EXPECT_EQ(valid, 640 * 480);
  EXPECT_EQ(frame.color.at(5, 7), (Rgb8{10, 200, 30}));
}

TEST(FrameIo, LoadFrameErrors) {
  const std::string dir = test_support::scratch_dir("load_frame_err");
  Intrinsics intr{570.0, 570.0, 159.5, 119.5, 320, 240, 0.001};
  write_png_rgb8(dir + "/color.png", Image<Rgb8>(320, 240));
  write_png_gray16(dir + "/depth_small.png", Image<std::uint16_t>(160, 120, 500));
  write_png_gray16(dir + "/depth.png", Image<std::uint16_t>(320, 240, 500));
  write_png_gray8(dir + "/depth8.png", Image<std::uint8_t>(320, 240, 100));

  EXPECT_THROW(load_frame(dir + "/color.png", dir + "/depth_small.png", intr),
               std::runtime_error);
  EXPECT_THROW(load_frame(dir + "/missing.png", dir + "/depth.png", intr), std::runtime_error);
  EXPECT_THROW(load_frame(dir + "/color.png", dir + "/depth8.png", intr), std::runtime_error);
  Intrinsics other = intr;
  other.width = 640;
  other.height = 480;
  other.cx = 319.5;
  other.cy = 239.5;
  EXPECT_THROW(load_frame(dir + "/color.png", dir + "/depth.png", other), std::runtime_error);
}

TEST(FrameIo, ZeroDepthIsMasked) {
  const std::string dir = test_support::scratch_dir("depth_mask");
  Intrinsics intr = small_intrinsics();
  Image<std::uint16_t> depth(intr.width, intr.height, 900);
  depth.at(4, 5) = 0;
  write_png_rgb8(dir + "/color.png", Image<Rgb8>(intr.width, intr.height));
  write_png_gray16(dir + "/depth.png", depth);
  const Frame frame = load_frame(dir + "/color.png", dir + "/depth.png", intr);
  EXPECT_FALSE(frame.valid(4, 5));
  EXPECT_TRUE(frame.valid(4, 6));
}

TEST(FrameIo, ProjectDeprojectRoundTrip) {
  const Intrinsics intr = small_intrinsics();
  const Frame frame = frame_from_depth(
      intr, [](int r, int c) { return 0.5 + 0.001 * r + 0.0005 * c; });
  for (int r = 0; r < frame.height(); r += 7) {
    for (int c = 0; c < frame.width(); c += 5) {
      ASSERT_TRUE(frame.valid(r, c));
      const Vec2d px = intr.project(frame.cloud.at(r, c));
      EXPECT_LT(std::abs(px.x() - c), 0.5);
      EXPECT_LT(std::abs(px.y() - r), 0.5);
    }
  }
}

TEST(Pcd, SmallOrganizedCloud) {
  const std::string dir = test_support::scratch_dir("pcd_small");
  const std::string path = dir + "/tiny.pcd";
  {
    std::ofstream out(path);
    out << "VERSION 0.7\nFIELDS x y z\nSIZE 4 4 4\nTYPE F F F\nCOUNT 1 1 1\n"
        << "WIDTH 2\nHEIGHT 2\nVIEWPOINT 0 0 0 1 0 0 0\nPOINTS 4\nDATA ascii\n"
        << "-0.1 -0.1 1.0\n0.1 -0.1 1.0\n-0.1 0.1 1.0\n0.1 0.1 1.0\n";
  }
  const Frame frame = load_pcd(path);
  int valid = 0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) valid += frame.valid(r, c) ? 1 : 0;
  EXPECT_EQ(valid, 4);
  EXPECT_NEAR(frame.cloud.at(0, 0).x(), -0.1, 1e-9);
  EXPECT_NEAR(frame.cloud.at(1, 1).z(), 1.0, 1e-9);
  // color defaults to mid-gray when the file has no rgb field
  EXPECT_EQ(frame.color.at(0, 0), (Rgb8{128, 128, 128}));
}

TEST(Pcd, NanRowInvalid) {
  const std::string dir = test_support::scratch_dir("pcd_nan");
  const std::string path = dir + "/nan.pcd";
  {
    std::ofstream out(path);
    out << "VERSION 0.7\nFIELDS x y z\nSIZE 4 4 4\nTYPE F F F\nCOUNT 1 1 1\n"
        << "WIDTH 2\nHEIGHT 2\nVIEWPOINT 0 0 0 1 0 0 0\nPOINTS 4\nDATA ascii\n"
        << "-0.1 -0.1 1.0\nnan nan nan\n-0.1 0.1 1.0\n0.1 0.1 1.0\n";
  }
  const Frame frame = load_pcd(path);
  EXPECT_TRUE(frame.valid(0, 0));
  EXPECT_FALSE(frame.valid(0, 1));
}

TEST(Pcd, RejectsUnorganizedAndMalformed) {
  const std::string dir = test_support::scratch_dir("pcd_bad");
  {
    std::ofstream out(dir + "/flat.pcd");
    out << "VERSION 0.7\nFIELDS x y z\nSIZE 4 4 4\nTYPE F F F\nCOUNT 1 1 1\n"
        << "WIDTH 4\nHEIGHT 1\nVIEWPOINT 0 0 0 1 0 0 0\nPOINTS 4\nDATA ascii\n"
        << "0 0 1\n0 0 1\n0 0 1\n0 0 1\n";
  }
  EXPECT_THROW(load_pcd(dir + "/flat.pcd"), std::runtime_error);
  {
    std::ofstream out(dir + "/broken.pcd");
    out << "VERSION 0.7\nFIELDS x y z\nWIDTH 2\nDATA ascii\n0 0 1\n";
  }
  EXPECT_THROW(load_pcd(dir + "/broken.pcd"), std::runtime_error);
}

TEST(Pcd, ExportRoundTrip) {
  const std::string dir = test_support::scratch_dir("pcd_round");
  const Intrinsics intr = small_intrinsics();
  Frame original = frame_from_depth(intr, [](int r, int c) {
    if (r < 3 && c < 3) return -1.0;  // an invalid patch must survive the trip
    return 0.6 + 0.002 * r - 0.001 * c;
  });
  original.color.fill(Rgb8{200, 40, 160});

  save_pcd(dir + "/frame.pcd", original);
  const Frame loaded = load_pcd(dir + "/frame.pcd");
  ASSERT_EQ(loaded.width(), original.width());
  ASSERT_EQ(loaded.height(), original.height());
  for (int r = 0; r < original.height(); ++r) {
    for (int c = 0; c < original.width(); ++c) {
      ASSERT_EQ(loaded.valid(r, c), original.valid(r, c)) << r << "," << c;
      if (original.valid(r, c))
        EXPECT_LT((loaded.cloud.at(r, c) - original.cloud.at(r, c)).norm(), 1e-5);
    }
  }
  EXPECT_EQ(loaded.color.at(10, 10), (Rgb8{200, 40, 160}));
  // recovered pinhole must reproject the grid within half a pixel
  for (int r = 0; r < loaded.height(); r += 11) {
    for (int c = 0; c < loaded.width(); c += 13) {
      if (!loaded.valid(r, c)) continue;
      const Vec2d px = loaded.intrinsics.project(loaded.cloud.at(r, c));
      EXPECT_LT(std::abs(px.x() - c), 0.5);
      EXPECT_LT(std::abs(px.y() - r), 0.5);
    }
  }
}

TEST(Smoothing, ConstantDepthUnchanged) {
  const Intrinsics intr = small_intrinsics(64, 48);
  const Frame frame = frame_from_depth(intr, [](int, int) { return 0.75; });
  const Frame smoothed = smooth_cloud(frame, 2.0, 0.01);
  for (int r = 0; r < frame.height(); ++r)
    for (int c = 0; c < frame.width(); ++c)
      EXPECT_NEAR(smoothed.depth.at(r, c), 0.75, 1e-9);
}

TEST(Smoothing, StepEdgePreserved) {
  const Intrinsics intr = small_intrinsics(32, 32, 60.0);
  const Frame frame =
      frame_from_depth(intr, [](int, int c) { return c < 16 ? 0.5 : 1.0; });
  const Frame smoothed = smooth_cloud(frame, 2.0, 0.01);

  const Image<double> expected = oracles::brute_bilateral(frame.depth, 2.0, 0.01);
  double max_change_far = 0.0;
  for (int r = 0; r < 32; ++r) {
    for (int c = 0; c < 32; ++c) {
      EXPECT_NEAR(smoothed.depth.at(r, c), expected.at(r, c), 1e-12);
      const int dist_from_step = c < 16 ? 15 - c : c - 16;
      if (dist_from_step >= 2)
        max_change_far =
            std::max(max_change_far, std::abs(smoothed.depth.at(r, c) - frame.depth.at(r, c)));
    }
  }
  EXPECT_LT(max_change_far, 1e-4);
}

TEST(Smoothing, NoiseReduction) {
  const Intrinsics intr = small_intrinsics(64, 64);
  synth::Rng rng(42);
  Frame frame = frame_from_depth(intr, [&](int, int) { return 0.8 + 0.003 * rng.gaussian(); });

  auto rms_vs_plane = [&](const Frame& f) {
    double ss = 0.0;
    int n = 0;
    for (int r = 4; r < 60; ++r)
      for (int c = 4; c < 60; ++c) {
        const double e = f.depth.at(r, c) - 0.8;
        ss += e * e;
        ++n;
      }
    return std::sqrt(ss / n);
  };
  const double before = rms_vs_plane(frame);
  const Frame smoothed = smooth_cloud(frame, 2.0, 0.01);
  const double after = rms_vs_plane(smoothed);
  EXPECT_GE(before / after, 2.0) << "before " << before << " after " << after;
}

TEST(Smoothing, ErrorsAndInvalidPreservation) {
  const Intrinsics intr = small_intrinsics(32, 32);
  Frame frame = frame_from_depth(intr, [](int r, int c) {
    if (r == 10 && c == 10) return -1.0;
    return 0.7;
  });
  EXPECT_THROW(smooth_cloud(frame, 0.0, 0.01), std::invalid_argument);
  EXPECT_THROW(smooth_cloud(frame, 2.0, -1.0), std::invalid_argument);
  const Frame smoothed = smooth_cloud(frame, 2.0, 0.01);
  EXPECT_FALSE(smoothed.valid(10, 10));  // smoothing never invents depth
}

TEST(Normals, FrontoparallelPlane) {
  const Intrinsics intr = small_intrinsics();
  Frame frame = plane_frame(intr, Vec3d(0, 0, 1), 1.0);
  frame = estimate_normals(frame, 5);
  int checked = 0;
  for (int r = 6; r < frame.height() - 6; r += 5) {
    for (int c = 6; c < frame.width() - 6; c += 5) {
      ASSERT_TRUE(frame.has_normal(r, c));
      const Vec3d n = frame.normals.at(r, c);
      EXPECT_LT(angle_between(n, Vec3d(0, 0, -1)), deg_to_rad(1.0));
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Normals, TiltedPlane) {
  const Intrinsics intr = small_intrinsics();
  // plane x + z = 2
  Frame frame = plane_frame(intr, Vec3d(1, 0, 1), 2.0);
  frame = estimate_normals(frame, 5);
  const Vec3d expected = Vec3d(-1, 0, -1).normalized();
  for (int r = 8; r < frame.height() - 8; r += 9) {
    for (int c = 8; c < frame.width() - 8; c += 9) {
      if (!frame.has_normal(r, c)) continue;
      EXPECT_LT(angle_between(frame.normals.at(r, c), expected), deg_to_rad(1.0));
    }
  }
}

TEST(Normals, RotatedPlanesMatchAnalytic) {
  const Intrinsics intr = small_intrinsics();
  synth::Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Vec3d n(rng.gaussian(), rng.gaussian(), rng.gaussian());
    if (n.norm() < 1e-3) continue;
    n.normalize();
    if (n.z() < 0.45) continue;  // keep the plane visible across the frame
    Frame frame = plane_frame(intr, n, 1.2);
    frame = estimate_normals(frame, 5);
    const Vec3d expected = (n.z() > 0 ? -n : n).eval();  // camera-facing
    int checked = 0;
    for (int r = 10; r < frame.height() - 10; r += 13) {
      for (int c = 10; c < frame.width() - 10; c += 13) {
        if (!frame.has_normal(r, c)) continue;
        EXPECT_LT(angle_between(frame.normals.at(r, c), expected), deg_to_rad(1.0));
        ++checked;
      }
    }
    EXPECT_GT(checked, 10);
  }
}

TEST(Normals, UnitLengthAndCameraFacing) {
  const Intrinsics intr = small_intrinsics();
  Frame frame = plane_frame(intr, Vec3d(0.3, -0.2, 1).normalized(), 1.0);
  frame = estimate_normals(frame, 3);
  for (int r = 0; r < frame.height(); ++r) {
    for (int c = 0; c < frame.width(); ++c) {
      if (!frame.has_normal(r, c)) continue;
      const Vec3d& n = frame.normals.at(r, c);
      EXPECT_LT(std::abs(n.norm() - 1.0), 1e-6);
      EXPECT_LE(n.dot(frame.cloud.at(r, c).normalized()), 1e-12);
    }
  }
}

TEST(Normals, DegenerateNeighborhoodsInvalid) {
  const Intrinsics intr = small_intrinsics(32, 32);
  // lone valid pixel: no neighbors to fit a plane through
  Frame frame = frame_from_depth(intr, [](int r, int c) {
    return (r == 16 && c == 16) ? 0.8 : -1.0;
  });
  frame = estimate_normals(frame, 5);
  EXPECT_FALSE(frame.has_normal(16, 16));
  EXPECT_THROW(estimate_normals(frame, 0), std::invalid_argument);
}

TEST(Intrinsics, TextRoundTrip) {
  const std::string dir = test_support::scratch_dir("intr");
  Intrinsics intr{521.5, 523.25, 310.0, 242.5, 640, 480, 0.00025};
  save_intrinsics(dir + "/intr.txt", intr);
  const Intrinsics back = load_intrinsics(dir + "/intr.txt");
  EXPECT_DOUBLE_EQ(back.fx, intr.fx);
  EXPECT_DOUBLE_EQ(back.fy, intr.fy);
  EXPECT_DOUBLE_EQ(back.cx, intr.cx);
  EXPECT_DOUBLE_EQ(back.cy, intr.cy);
  EXPECT_EQ(back.width, intr.width);
  EXPECT_EQ(back.height, intr.height);
  EXPECT_DOUBLE_EQ(back.depth_scale, intr.depth_scale);
}
