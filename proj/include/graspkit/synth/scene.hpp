#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "graspkit/core/geometry.hpp"
#include "graspkit/core/image.hpp"
#include "graspkit/core/intrinsics.hpp"

namespace graspkit::synth {

/// Axis-aligned box in its local frame; extents are full side lengths.
struct BoxSpec {
  Vec3d extents = Vec3d::Zero();
};

/// Cylinder in its local frame: axis = local z, centered on the origin.
struct CylinderSpec {
  double radius = 0.0;
  double height = 0.0;
};

/// Vertical prism with a trapezoidal plan: length along local x, width along
/// local y tapering linearly from width_wide (x = -L/2) to width_narrow
/// (x = +L/2), height along local z. Its lateral faces are vertical but
/// converge in plan view.
struct WedgeSpec {
  double length = 0.0;
  double width_wide = 0.0;
  double width_narrow = 0.0;
  double height = 0.0;
};

struct Primitive {
  std::string name;
  std::variant<BoxSpec, CylinderSpec, WedgeSpec> shape;
  Pose pose;  // world_from_local
  Rgb8 color;
};

struct TableSpec {
  bool present = false;
  double height = 0.0;  // world z of the surface; solid below
  Rgb8 color{150, 150, 150};
};

struct CameraSpec {
  Vec3d position = Vec3d::Zero();
  Vec3d look_at = Vec3d::Zero();
  Vec3d up_hint = Vec3d(0, 0, 1);
  Intrinsics intrinsics;

  /// world_from_camera; camera x right, y down, z forward.
  Pose pose() const {
    Vec3d forward = look_at - position;
    const double flen = forward.norm();
    if (flen < 1e-9) throw std::invalid_argument("camera look_at coincides with position");
    forward /= flen;
    Vec3d up = up_hint;
    if (forward.cross(up).norm() < 1e-6) up = Vec3d(0, 1, 0);
    const Vec3d right = forward.cross(up).normalized();
    const Vec3d down = forward.cross(right);  // = z × x, camera y
    Mat3d rot;
    rot.col(0) = right;
    rot.col(1) = down;
    rot.col(2) = forward;
    Pose p;
    p.rotation = Eigen::Quaterniond(rot);
    p.translation = position;
    return p;
  }
};

struct SceneSpec {
  std::string id;
  std::vector<Primitive> objects;
  TableSpec table;
  CameraSpec camera;
  double noise_sigma = 0.0;  // depth noise, meters
  std::uint64_t seed = 0;
};

namespace detail {

inline void write_pose(std::ostream& out, const Pose& pose) {
  out << pose.translation.x() << " " << pose.translation.y() << " " << pose.translation.z()
      << " " << pose.rotation.w() << " " << pose.rotation.x() << " " << pose.rotation.y()
      << " " << pose.rotation.z();
}

inline Pose read_pose(std::istream& in) {
  Pose p;
  double w, x, y, z;
  in >> p.translation.x() >> p.translation.y() >> p.translation.z() >> w >> x >> y >> z;
  p.rotation = Eigen::Quaterniond(w, x, y, z).normalized();
  return p;
}

inline Rgb8 read_color(std::istream& in) {
  int r, g, b;
  in >> r >> g >> b;
  return Rgb8{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
              static_cast<std::uint8_t>(b)};
}

}  // namespace detail

inline void serialize_scene(std::ostream& out, const SceneSpec& scene) {
  out.precision(17);
  out << "scene " << scene.id << "\n";
  if (scene.table.present)
    out << "table " << scene.table.height << " " << int(scene.table.color.r) << " "
        << int(scene.table.color.g) << " " << int(scene.table.color.b) << "\n";
  const CameraSpec& cam = scene.camera;
  out << "camera_pos " << cam.position.x() << " " << cam.position.y() << " "
      << cam.position.z() << "\n";
  out << "camera_lookat " << cam.look_at.x() << " " << cam.look_at.y() << " "
      << cam.look_at.z() << "\n";
  out << "camera_up " << cam.up_hint.x() << " " << cam.up_hint.y() << " " << cam.up_hint.z()
      << "\n";
  out << "intrinsics " << cam.intrinsics.fx << " " << cam.intrinsics.fy << " "
      << cam.intrinsics.cx << " " << cam.intrinsics.cy << " " << cam.intrinsics.width << " "
      << cam.intrinsics.height << " " << cam.intrinsics.depth_scale << "\n";
  out << "noise " << scene.noise_sigma << " " << scene.seed << "\n";
  for (const Primitive& obj : scene.objects) {
    if (const auto* box = std::get_if<BoxSpec>(&obj.shape)) {
      out << "box " << obj.name << " " << box->extents.x() << " " << box->extents.y() << " "
          << box->extents.z() << " ";
    } else if (const auto* cyl = std::get_if<CylinderSpec>(&obj.shape)) {
      out << "cylinder " << obj.name << " " << cyl->radius << " " << cyl->height << " ";
    } else if (const auto* wedge = std::get_if<WedgeSpec>(&obj.shape)) {
      out << "wedge " << obj.name << " " << wedge->length << " " << wedge->width_wide << " "
          << wedge->width_narrow << " " << wedge->height << " ";
    }
    detail::write_pose(out, obj.pose);
    out << " " << int(obj.color.r) << " " << int(obj.color.g) << " " << int(obj.color.b)
        << "\n";
  }
}

inline SceneSpec parse_scene(std::istream& in) {
  SceneSpec scene;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "scene") {
      ls >> scene.id;
    } else if (tag == "table") {
      scene.table.present = true;
      ls >> scene.table.height;
      scene.table.color = detail::read_color(ls);
    } else if (tag == "camera_pos") {
      ls >> scene.camera.position.x() >> scene.camera.position.y() >> scene.camera.position.z();
    } else if (tag == "camera_lookat") {
      ls >> scene.camera.look_at.x() >> scene.camera.look_at.y() >> scene.camera.look_at.z();
    } else if (tag == "camera_up") {
      ls >> scene.camera.up_hint.x() >> scene.camera.up_hint.y() >> scene.camera.up_hint.z();
    } else if (tag == "intrinsics") {
      Intrinsics& intr = scene.camera.intrinsics;
      ls >> intr.fx >> intr.fy >> intr.cx >> intr.cy >> intr.width >> intr.height >>
          intr.depth_scale;
    } else if (tag == "noise") {
      ls >> scene.noise_sigma >> scene.seed;
    } else if (tag == "box") {
      Primitive obj;
      BoxSpec box;
      ls >> obj.name >> box.extents.x() >> box.extents.y() >> box.extents.z();
      obj.pose = detail::read_pose(ls);
      obj.color = detail::read_color(ls);
      obj.shape = box;
      scene.objects.push_back(std::move(obj));
    } else if (tag == "cylinder") {
      Primitive obj;
      CylinderSpec cyl;
      ls >> obj.name >> cyl.radius >> cyl.height;
      obj.pose = detail::read_pose(ls);
      obj.color = detail::read_color(ls);
      obj.shape = cyl;
      scene.objects.push_back(std::move(obj));
    } else if (tag == "wedge") {
      Primitive obj;
      WedgeSpec wedge;
      ls >> obj.name >> wedge.length >> wedge.width_wide >> wedge.width_narrow >> wedge.height;
      obj.pose = detail::read_pose(ls);
      obj.color = detail::read_color(ls);
      obj.shape = wedge;
      scene.objects.push_back(std::move(obj));
    } else {
      throw std::runtime_error("unknown scene record: " + tag);
    }
    if (!ls && !ls.eof()) throw std::runtime_error("malformed scene record: " + line);
  }
  scene.camera.intrinsics.validate();
  return scene;
}

inline SceneSpec load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_scene(in);
}

inline void save_scene(const std::string& path, const SceneSpec& scene) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  serialize_scene(out, scene);
}

}  // namespace graspkit::synth
