#pragma once

#include <ostream>
#include <stdexcept>
#include <string>

#include "graspkit/core/geometry.hpp"
#include "graspkit/io/keyvalue.hpp"

namespace graspkit {

/// Two-finger parallel-jaw gripper: finger length, finger thickness,
/// finger width, maximum opening (meters).
struct GripperGeometry {
  double l = 0.06;
  double t = 0.01;
  double w = 0.025;
  double d = 0.10;

  void validate() const {
    if (l <= 0 || t <= 0 || w <= 0 || d <= 0)
      throw std::invalid_argument("gripper: all dimensions must be positive");
    if (d <= t) throw std::invalid_argument("gripper: opening d must exceed thickness t");
  }

  static GripperGeometry from_kv(const KeyValueFile& kv) {
    GripperGeometry g;
    g.l = kv.get_double("l", g.l);
    g.t = kv.get_double("t", g.t);
    g.w = kv.get_double("w", g.w);
    g.d = kv.get_double("d", g.d);
    g.validate();
    return g;
  }

  static GripperGeometry load(const std::string& path) {
    return from_kv(KeyValueFile::load(path));
  }

  void save(std::ostream& out) const {
    out << "l " << l << "\nt " << t << "\nw " << w << "\nd " << d << "\n";
  }
};

/// All pipeline parameters in one place; mirror of the config text file.
struct DetectorConfig {
  // preprocessing
  bool smooth = false;
  double spatial_sigma_px = 2.0;
  double range_sigma_m = 0.01;
  int normal_window_px = 5;
  double normal_depth_gate_m = 0.02;

  // segmentation
  double tau_rad = deg_to_rad(4.0);
  int min_segment_size = 300;
  // optional rectangular ROI; negative = full frame
  int roi_col0 = -1, roi_row0 = -1, roi_col1 = -1, roi_row1 = -1;

  // edges
  double canny_sigma_px = 1.4;
  double canny_low = 20.0;
  double canny_high = 60.0;
  double depth_jump_m = 0.02;
  double normal_jump_rad = deg_to_rad(35.0);
  int match_radius_px = 2;

  // hypothesis generation
  double center_stride_m = 0.02;
  int max_centers_per_axis = 25;
  double workspace_sphere_factor = 1.5;
  double boundary_margin_m = 0.003;  // blind zone beyond the measured rim

  // validation
  double theta_r_rad = deg_to_rad(10.0);
  double theta_axis_tol_rad = deg_to_rad(15.0);
  bool axis_hard_filter = true;
  double occlusion_margin_m = 0.005;

  // dedup + ranking
  double dedup_center_m = 0.01;
  double dedup_axis_rad = deg_to_rad(10.0);
  double w1 = 0.4;
  double w2 = 0.3;
  double w3 = 0.3;
  int top_k = 5;

  static DetectorConfig from_kv(const KeyValueFile& kv) {
    DetectorConfig c;
    c.smooth = kv.get_bool("smooth", c.smooth);
    c.spatial_sigma_px = kv.get_double("spatial_sigma_px", c.spatial_sigma_px);
    c.range_sigma_m = kv.get_double("range_sigma_m", c.range_sigma_m);
    c.normal_window_px = kv.get_int("normal_window_px", c.normal_window_px);
    c.normal_depth_gate_m = kv.get_double("normal_depth_gate_m", c.normal_depth_gate_m);
    c.tau_rad = deg_to_rad(kv.get_double("tau_deg", rad_to_deg(c.tau_rad)));
    c.min_segment_size = kv.get_int("min_segment_size", c.min_segment_size);
    c.roi_col0 = kv.get_int("roi_col0", c.roi_col0);
    c.roi_row0 = kv.get_int("roi_row0", c.roi_row0);
    c.roi_col1 = kv.get_int("roi_col1", c.roi_col1);
    c.roi_row1 = kv.get_int("roi_row1", c.roi_row1);
    c.canny_sigma_px = kv.get_double("canny_sigma_px", c.canny_sigma_px);
    c.canny_low = kv.get_double("canny_low", c.canny_low);
    c.canny_high = kv.get_double("canny_high", c.canny_high);
    c.depth_jump_m = kv.get_double("depth_jump_m", c.depth_jump_m);
    c.normal_jump_rad = deg_to_rad(kv.get_double("normal_jump_deg", rad_to_deg(c.normal_jump_rad)));
    c.match_radius_px = kv.get_int("match_radius_px", c.match_radius_px);
    c.center_stride_m = kv.get_double("center_stride_m", c.center_stride_m);
    c.max_centers_per_axis = kv.get_int("max_centers_per_axis", c.max_centers_per_axis);
    c.workspace_sphere_factor = kv.get_double("workspace_sphere_factor", c.workspace_sphere_factor);
    c.boundary_margin_m = kv.get_double("boundary_margin_m", c.boundary_margin_m);
    c.theta_r_rad = deg_to_rad(kv.get_double("theta_r_deg", rad_to_deg(c.theta_r_rad)));
    c.theta_axis_tol_rad =
        deg_to_rad(kv.get_double("theta_axis_tol_deg", rad_to_deg(c.theta_axis_tol_rad)));
    c.axis_hard_filter = kv.get_bool("axis_hard_filter", c.axis_hard_filter);
    c.occlusion_margin_m = kv.get_double("occlusion_margin_m", c.occlusion_margin_m);
    c.dedup_center_m = kv.get_double("dedup_center_m", c.dedup_center_m);
    c.dedup_axis_rad = deg_to_rad(kv.get_double("dedup_axis_deg", rad_to_deg(c.dedup_axis_rad)));
    c.w1 = kv.get_double("w1", c.w1);
    c.w2 = kv.get_double("w2", c.w2);
    c.w3 = kv.get_double("w3", c.w3);
    c.top_k = kv.get_int("top_k", c.top_k);
    return c;
  }

  static DetectorConfig load(const std::string& path) {
    return from_kv(KeyValueFile::load(path));
  }

  void save(std::ostream& out) const {
    out << "smooth " << (smooth ? "true" : "false") << "\n"
        << "spatial_sigma_px " << spatial_sigma_px << "\n"
        << "range_sigma_m " << range_sigma_m << "\n"
        << "normal_window_px " << normal_window_px << "\n"
        << "normal_depth_gate_m " << normal_depth_gate_m << "\n"
        << "tau_deg " << rad_to_deg(tau_rad) << "\n"
        << "min_segment_size " << min_segment_size << "\n"
        << "canny_sigma_px " << canny_sigma_px << "\n"
        << "canny_low " << canny_low << "\n"
        << "canny_high " << canny_high << "\n"
        << "depth_jump_m " << depth_jump_m << "\n"
        << "normal_jump_deg " << rad_to_deg(normal_jump_rad) << "\n"
        << "match_radius_px " << match_radius_px << "\n"
        << "center_stride_m " << center_stride_m << "\n"
        << "max_centers_per_axis " << max_centers_per_axis << "\n"
        << "workspace_sphere_factor " << workspace_sphere_factor << "\n"
        << "boundary_margin_m " << boundary_margin_m << "\n"
        << "theta_r_deg " << rad_to_deg(theta_r_rad) << "\n"
        << "theta_axis_tol_deg " << rad_to_deg(theta_axis_tol_rad) << "\n"
        << "axis_hard_filter " << (axis_hard_filter ? "true" : "false") << "\n"
        << "occlusion_margin_m " << occlusion_margin_m << "\n"
        << "dedup_center_m " << dedup_center_m << "\n"
        << "dedup_axis_deg " << rad_to_deg(dedup_axis_rad) << "\n"
        << "w1 " << w1 << "\nw2 " << w2 << "\nw3 " << w3 << "\n"
        << "top_k " << top_k << "\n";
  }
};

}  // namespace graspkit
