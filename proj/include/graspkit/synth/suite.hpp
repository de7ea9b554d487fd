#pragma once

#include <vector>

#include "graspkit/synth/scene.hpp"

namespace graspkit::synth {

/// Camera and intrinsics shared by the standard scenes: 640x480 Kinect-like
/// pinhole, ~0.78 m from the work area, pitched ~50 degrees down.
inline CameraSpec standard_camera() {
  CameraSpec cam;
  cam.position = Vec3d(0.0, -0.45, 0.60);
  cam.look_at = Vec3d(0.0, 0.05, 0.0);
  cam.up_hint = Vec3d(0, 0, 1);
  cam.intrinsics = Intrinsics{570.0, 570.0, 319.5, 239.5, 640, 480, 0.001};
  return cam;
}

namespace detail {

inline SceneSpec base_scene(const std::string& id, double noise_sigma, std::uint64_t seed) {
  SceneSpec s;
  s.id = id;
  s.table.present = true;
  s.table.height = 0.0;
  s.table.color = Rgb8{110, 110, 115};
  s.camera = standard_camera();
  s.noise_sigma = noise_sigma;
  s.seed = seed;
  return s;
}

inline Primitive make_box(const std::string& name, double ex, double ey, double ez, double x,
                          double y, double yaw_deg, Rgb8 color, double z_base = 0.0) {
  Primitive p;
  p.name = name;
  p.shape = BoxSpec{Vec3d(ex, ey, ez)};
  p.pose = Pose::from_axis_angle(Vec3d(0, 0, 1), deg_to_rad(yaw_deg),
                                 Vec3d(x, y, z_base + ez / 2.0));
  p.color = color;
  return p;
}

inline Primitive make_cylinder(const std::string& name, double radius, double height, double x,
                               double y, Rgb8 color) {
  Primitive p;
  p.name = name;
  p.shape = CylinderSpec{radius, height};
  p.pose = Pose::from_translation(Vec3d(x, y, height / 2.0));
  p.color = color;
  return p;
}

inline Primitive make_lying_cylinder(const std::string& name, double radius, double height,
                                     double x, double y, double yaw_deg, Rgb8 color) {
  Primitive p;
  p.name = name;
  p.shape = CylinderSpec{radius, height};
  // local z (the axis) rotated into the table plane, then yawed
  Pose tilt = Pose::from_axis_angle(Vec3d(0, 1, 0), kPi / 2.0, Vec3d(x, y, radius));
  const Pose yaw = Pose::from_axis_angle(Vec3d(0, 0, 1), deg_to_rad(yaw_deg), Vec3d::Zero());
  tilt.rotation = yaw.rotation * tilt.rotation;
  p.pose = tilt;
  p.color = color;
  return p;
}

inline Primitive make_wedge(const std::string& name, double length, double wide, double narrow,
                            double height, double x, double y, double yaw_deg, Rgb8 color) {
  Primitive p;
  p.name = name;
  p.shape = WedgeSpec{length, wide, narrow, height};
  p.pose = Pose::from_axis_angle(Vec3d(0, 0, 1), deg_to_rad(yaw_deg),
                                 Vec3d(x, y, height / 2.0));
  p.color = color;
  return p;
}

/// Floating slab (used by the occlusion scenes).
inline Primitive make_slab(const std::string& name, double ex, double ey, double ez, double x,
                           double y, double z_center, Rgb8 color) {
  Primitive p;
  p.name = name;
  p.shape = BoxSpec{Vec3d(ex, ey, ez)};
  p.pose = Pose::from_translation(Vec3d(x, y, z_center));
  p.color = color;
  return p;
}

}  // namespace detail

/// The fixed 17-scene catalogue: 10 single-object scenes (including the
/// converging-wedge and lying-cylinder failure cases), 5 clutter scenes, and
/// 2 occlusion scenes. Deterministic for a given noise level.
inline std::vector<SceneSpec> standard_suite(double noise_sigma = 0.0015) {
  using namespace detail;
  std::vector<SceneSpec> scenes;

  {  // 1: lone box, graspable across both horizontal axes
    SceneSpec s = base_scene("s01_box_single", noise_sigma, 101);
    s.objects.push_back(make_box("crate", 0.05, 0.08, 0.11, 0.0, 0.05, 0.0, {200, 60, 50}));
    scenes.push_back(s);
  }
  {  // 2: small box, yawed
    SceneSpec s = base_scene("s02_box_small", noise_sigma, 102);
    s.objects.push_back(make_box("bar", 0.03, 0.05, 0.05, 0.02, 0.07, 20.0, {60, 160, 220}));
    scenes.push_back(s);
  }
  {  // 3: tall box
    SceneSpec s = base_scene("s03_box_tall", noise_sigma, 103);
    s.objects.push_back(make_box("tower", 0.04, 0.06, 0.14, -0.02, 0.03, 10.0, {240, 200, 80}));
    scenes.push_back(s);
  }
  {  // 4: slab wider than the gripper opening in both directions
    SceneSpec s = base_scene("s04_box_wide", noise_sigma, 104);
    s.objects.push_back(make_box("plate", 0.14, 0.14, 0.05, 0.0, 0.05, 0.0, {90, 200, 120}));
    scenes.push_back(s);
  }
  {  // 5: standing cylinder
    SceneSpec s = base_scene("s05_cyl_standing", noise_sigma, 105);
    s.objects.push_back(make_cylinder("can", 0.04, 0.12, 0.0, 0.05, {220, 120, 40}));
    scenes.push_back(s);
  }
  {  // 6: slim cylinder
    SceneSpec s = base_scene("s06_cyl_small", noise_sigma, 106);
    s.objects.push_back(make_cylinder("tube", 0.025, 0.11, 0.02, 0.02, {160, 80, 200}));
    scenes.push_back(s);
  }
  {  // 7: wedge with lateral faces converging at ~20 degrees
    SceneSpec s = base_scene("s07_wedge", noise_sigma, 107);
    s.objects.push_back(
        make_wedge("wedge", 0.12, 0.09, 0.048, 0.06, 0.0, 0.05, 15.0, {230, 90, 140}));
    scenes.push_back(s);
  }
  {  // 8: lying cylinder; probes along its axis must be axis-rejected
    SceneSpec s = base_scene("s08_cyl_lying", noise_sigma, 108);
    s.objects.push_back(
        make_lying_cylinder("pipe", 0.04, 0.14, 0.0, 0.05, 5.0, {70, 130, 180}));
    scenes.push_back(s);
  }
  {  // 9: box colored exactly like the table; depth edges must carry it
    SceneSpec s = base_scene("s09_box_camouflage", noise_sigma, 109);
    s.objects.push_back(make_box("ghost", 0.05, 0.08, 0.06, 0.0, 0.05, 0.0, {110, 110, 115}));
    scenes.push_back(s);
  }
  {  // 10: two boxes 5 mm apart; the facing sides are ungraspable
    SceneSpec s = base_scene("s10_two_boxes_close", noise_sigma, 110);
    s.objects.push_back(make_box("left", 0.06, 0.06, 0.12, -0.0325, 0.05, 0.0, {210, 170, 60}));
    s.objects.push_back(make_box("right", 0.06, 0.06, 0.12, 0.0325, 0.05, 0.0, {60, 110, 210}));
    scenes.push_back(s);
  }

  {  // 11: clutter
    SceneSpec s = base_scene("s11_clutter_a", noise_sigma, 111);
    s.objects.push_back(make_box("crate", 0.05, 0.08, 0.11, -0.14, 0.00, 0.0, {200, 60, 50}));
    s.objects.push_back(make_cylinder("can", 0.04, 0.12, 0.12, 0.08, {220, 120, 40}));
    s.objects.push_back(make_box("bin", 0.14, 0.14, 0.12, 0.02, -0.12, 0.0, {90, 200, 120}));
    s.objects.push_back(
        make_wedge("wedge", 0.12, 0.09, 0.048, 0.06, 0.13, -0.10, -25.0, {230, 90, 140}));
    s.objects.push_back(make_box("bar", 0.04, 0.05, 0.05, -0.05, 0.16, 30.0, {60, 160, 220}));
    scenes.push_back(s);
  }
  {  // 12: clutter with a blocked pair
    SceneSpec s = base_scene("s12_clutter_b", noise_sigma, 112);
    s.objects.push_back(make_box("pair_l", 0.06, 0.10, 0.12, -0.1225, 0.06, 0.0, {210, 170, 60}));
    s.objects.push_back(make_box("pair_r", 0.06, 0.10, 0.12, -0.0575, 0.06, 0.0, {60, 110, 210}));
    s.objects.push_back(make_cylinder("tube", 0.03, 0.12, 0.10, 0.10, {160, 80, 200}));
    s.objects.push_back(make_box("tower", 0.04, 0.06, 0.14, 0.13, -0.06, -15.0, {240, 200, 80}));
    s.objects.push_back(make_box("bin", 0.15, 0.13, 0.12, -0.04, -0.13, 10.0, {120, 120, 60}));
    s.objects.push_back(
        make_lying_cylinder("pipe", 0.03, 0.12, 0.04, 0.17, -10.0, {70, 130, 180}));
    s.objects.push_back(make_box("cube", 0.05, 0.05, 0.05, 0.16, 0.16, 45.0, {140, 220, 200}));
    scenes.push_back(s);
  }
  {  // 13: clutter (the determinism reference scene)
    SceneSpec s = base_scene("s13_clutter_c", noise_sigma, 113);
    s.objects.push_back(make_cylinder("can", 0.04, 0.11, -0.13, 0.05, {220, 120, 40}));
    s.objects.push_back(make_box("crate", 0.05, 0.07, 0.12, 0.12, 0.02, 25.0, {200, 60, 50}));
    s.objects.push_back(
        make_wedge("wedge", 0.12, 0.09, 0.048, 0.06, 0.00, -0.13, 40.0, {230, 90, 140}));
    s.objects.push_back(make_box("bin", 0.14, 0.15, 0.12, -0.01, 0.16, -5.0, {90, 200, 120}));
    s.objects.push_back(make_cylinder("tube", 0.025, 0.10, 0.03, 0.05, {160, 80, 200}));
    s.objects.push_back(
        make_lying_cylinder("pipe", 0.035, 0.13, -0.14, -0.10, 60.0, {70, 130, 180}));
    scenes.push_back(s);
  }
  {  // 14: dense clutter
    SceneSpec s = base_scene("s14_clutter_d", noise_sigma, 114);
    s.objects.push_back(make_box("crate", 0.05, 0.08, 0.11, -0.15, -0.02, 15.0, {200, 60, 50}));
    s.objects.push_back(make_box("tower", 0.04, 0.06, 0.14, 0.15, 0.09, 0.0, {240, 200, 80}));
    s.objects.push_back(make_cylinder("can", 0.04, 0.12, 0.00, 0.06, {220, 120, 40}));
    s.objects.push_back(make_box("bin", 0.14, 0.14, 0.12, 0.13, -0.10, 0.0, {90, 200, 120}));
    s.objects.push_back(make_box("pair_l", 0.05, 0.09, 0.12, -0.0925, 0.14, 0.0, {210, 170, 60}));
    s.objects.push_back(make_box("pair_r", 0.05, 0.09, 0.12, -0.0375, 0.14, 0.0, {60, 110, 210}));
    s.objects.push_back(
        make_wedge("wedge", 0.12, 0.09, 0.048, 0.06, -0.03, -0.14, 70.0, {230, 90, 140}));
    s.objects.push_back(make_box("cube", 0.05, 0.05, 0.05, 0.17, -0.16, 20.0, {140, 220, 200}));
    scenes.push_back(s);
  }
  {  // 15: six objects, exactly two graspable by construction
    SceneSpec s = base_scene("s15_clutter_two_graspable", noise_sigma, 115);
    s.objects.push_back(make_box("crate", 0.05, 0.08, 0.11, -0.14, 0.02, 0.0, {200, 60, 50}));
    s.objects.push_back(make_cylinder("can", 0.04, 0.12, 0.13, 0.06, {220, 120, 40}));
    // a row of three tall boxes with 5 mm gaps: every closing is blocked or too wide
    s.objects.push_back(make_box("row_a", 0.06, 0.12, 0.12, -0.065, -0.12, 0.0, {210, 170, 60}));
    s.objects.push_back(make_box("row_b", 0.06, 0.12, 0.12, 0.000, -0.12, 0.0, {60, 110, 210}));
    s.objects.push_back(make_box("row_c", 0.06, 0.12, 0.12, 0.065, -0.12, 0.0, {120, 200, 160}));
    s.objects.push_back(make_box("bin", 0.14, 0.14, 0.12, 0.01, 0.17, 0.0, {90, 200, 120}));
    scenes.push_back(s);
  }

  {  // 16: slab floating inside the approach corridor above a box
    SceneSpec s = base_scene("s16_occlusion_blocked", noise_sigma, 116);
    s.objects.push_back(make_box("crate", 0.05, 0.08, 0.06, 0.0, 0.05, 0.0, {200, 60, 50}));
    s.objects.push_back(make_slab("slab", 0.06, 0.05, 0.01, 0.0, 0.05, 0.095, {250, 250, 90}));
    scenes.push_back(s);
  }
  {  // 17: the same slab displaced sideways: inside the workspace sphere but
     //     outside the corridor, so the top grasp survives
    SceneSpec s = base_scene("s17_occlusion_clear", noise_sigma, 117);
    s.objects.push_back(make_box("crate", 0.05, 0.08, 0.06, 0.0, 0.05, 0.0, {200, 60, 50}));
    s.objects.push_back(make_slab("slab", 0.06, 0.05, 0.01, 0.10, 0.05, 0.095, {250, 250, 90}));
    scenes.push_back(s);
  }

  return scenes;
}

}  // namespace graspkit::synth
