#pragma once

#include <string>
#include <vector>

#include "graspkit/core/config.hpp"
#include "graspkit/core/image.hpp"
#include "graspkit/core/geometry.hpp"
#include "graspkit/grasp/line_fit.hpp"

namespace graspkit {

enum class AxisChoice { major = 0, minor = 1 };

inline const char* to_string(AxisChoice a) {
  return a == AxisChoice::major ? "major" : "minor";
}

/// Right-handed grasp frame: approach normal (camera-facing), closing axis,
/// and finger direction = normal x closing.
struct GraspFrame {
  Vec3d normal = Vec3d::Zero();   // n̂
  Vec3d closing = Vec3d::Zero();  // â
  Vec3d finger = Vec3d::Zero();   // f̂ = n̂ × â
};

/// Gap-validated grasp candidate, prior to boundary-line validation.
struct HandleHypothesis {
  Vec3d center = Vec3d::Zero();
  GraspFrame frame;
  double radius = 0.0;  // half object extent along the closing axis
  int segment_id = -1;
  AxisChoice axis_choice = AxisChoice::major;
  int center_index = 0;
  double gap_plus = 0.0;
  double gap_minus = 0.0;
};

/// Handle that survived every validation stage.
struct ValidatedHandle {
  HandleHypothesis hyp;
  BoundaryLine line_plus;
  BoundaryLine line_minus;
  double a_b_raw = 0.0;     // |u+ . u-|
  double a_axis_raw = 0.0;  // |â_img . u_avg|
  bool axis_view_degenerate = false;
  std::vector<Pixel> support_plus;   // retained boundary pixels, + side
  std::vector<Pixel> support_minus;  // retained boundary pixels, - side
};

}  // namespace graspkit
