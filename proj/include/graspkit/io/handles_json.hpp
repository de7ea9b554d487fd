#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "graspkit/grasp/detector.hpp"
#include "graspkit/ranking.hpp"

namespace graspkit {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json vec3_json(const Vec3d& v) { return Json::array({v.x(), v.y(), v.z()}); }
inline Json vec2_json(const Vec2d& v) { return Json::array({v.x(), v.y()}); }

inline Vec3d vec3_from(const Json& j) { return Vec3d(j.at(0), j.at(1), j.at(2)); }
inline Vec2d vec2_from(const Json& j) { return Vec2d(j.at(0), j.at(1)); }

inline Json line_json(const BoundaryLine& line) {
  Json j;
  j["p0"] = vec2_json(line.p0);
  j["u"] = vec2_json(line.u);
  j["inliers"] = line.inlier_count;
  j["rms_px"] = line.rms_residual;
  return j;
}

}  // namespace detail

/// The handle artifact: frame id plus one entry per ranked handle with pose,
/// radius, gaps, boundary-line parameters, cost features and stage flags.
inline Json handles_to_json(const std::string& frame_id,
                            const std::vector<RankedHandle>& ranked) {
  Json root;
  root["frame_id"] = frame_id;
  Json arr = Json::array();
  for (const RankedHandle& rh : ranked) {
    const ValidatedHandle& h = rh.handle;
    Json j;
    j["center"] = detail::vec3_json(h.hyp.center);
    j["n"] = detail::vec3_json(h.hyp.frame.normal);
    j["a"] = detail::vec3_json(h.hyp.frame.closing);
    j["f"] = detail::vec3_json(h.hyp.frame.finger);
    j["r"] = h.hyp.radius;
    j["gaps"] = Json::array({h.hyp.gap_plus, h.hyp.gap_minus});
    j["lines"] = Json::array({detail::line_json(h.line_plus), detail::line_json(h.line_minus)});
    j["features"] = Json{{"a_b", rh.features.a_b},
                         {"a_axis", rh.features.a_axis},
                         {"c_z", rh.features.c_z}};
    j["raw_features"] = Json{{"a_b_raw", h.a_b_raw}, {"a_axis_raw", h.a_axis_raw}};
    j["f_c"] = rh.f_c;
    j["rank"] = rh.rank;
    j["segment_id"] = h.hyp.segment_id;
    j["axis_choice"] = to_string(h.hyp.axis_choice);
    j["stage_flags"] = Json{{"gap", true},
                            {"parallel", true},
                            {"axis", true},
                            {"occlusion", true},
                            {"axis_view_degenerate", h.axis_view_degenerate}};
    arr.push_back(std::move(j));
  }
  root["handles"] = std::move(arr);
  return root;
}

inline void save_handles_json(const std::string& path, const std::string& frame_id,
                              const std::vector<RankedHandle>& ranked) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << handles_to_json(frame_id, ranked).dump(2) << "\n";
}

/// Reads back the fields needed for visualization and re-matching.
inline std::vector<RankedHandle> load_handles_json(const std::string& path,
                                                   std::string* frame_id = nullptr) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json root = Json::parse(in);
  if (frame_id) *frame_id = root.value("frame_id", std::string());
  std::vector<RankedHandle> out;
  for (const Json& j : root.at("handles")) {
    RankedHandle rh;
    rh.handle.hyp.center = detail::vec3_from(j.at("center"));
    rh.handle.hyp.frame.normal = detail::vec3_from(j.at("n"));
    rh.handle.hyp.frame.closing = detail::vec3_from(j.at("a"));
    rh.handle.hyp.frame.finger = detail::vec3_from(j.at("f"));
    rh.handle.hyp.radius = j.at("r");
    rh.handle.hyp.gap_plus = j.at("gaps").at(0);
    rh.handle.hyp.gap_minus = j.at("gaps").at(1);
    rh.handle.line_plus.p0 = detail::vec2_from(j.at("lines").at(0).at("p0"));
    rh.handle.line_plus.u = detail::vec2_from(j.at("lines").at(0).at("u"));
    rh.handle.line_minus.p0 = detail::vec2_from(j.at("lines").at(1).at("p0"));
    rh.handle.line_minus.u = detail::vec2_from(j.at("lines").at(1).at("u"));
    rh.features.a_b = j.at("features").at("a_b");
    rh.features.a_axis = j.at("features").at("a_axis");
    rh.features.c_z = j.at("features").at("c_z");
    rh.handle.a_b_raw = j.at("raw_features").at("a_b_raw");
    rh.handle.a_axis_raw = j.at("raw_features").at("a_axis_raw");
    rh.f_c = j.at("f_c");
    rh.rank = j.at("rank");
    rh.handle.hyp.segment_id = j.value("segment_id", -1);
    out.push_back(std::move(rh));
  }
  return out;
}

}  // namespace graspkit
