#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "graspkit/synth/ground_truth.hpp"

namespace graspkit {

inline nlohmann::ordered_json gt_to_json(const synth::GroundTruth& gt) {
  nlohmann::ordered_json root;
  auto arr = nlohmann::ordered_json::array();
  for (const synth::GtHandle& h : gt.handles) {
    nlohmann::ordered_json j;
    j["object_id"] = h.object_id;
    j["center"] = {h.center.x(), h.center.y(), h.center.z()};
    j["closing"] = {h.closing.x(), h.closing.y(), h.closing.z()};
    j["approach"] = {h.approach.x(), h.approach.y(), h.approach.z()};
    j["width"] = h.width;
    arr.push_back(std::move(j));
  }
  root["handles"] = std::move(arr);
  return root;
}

inline void save_gt_json(const std::string& path, const synth::GroundTruth& gt) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << gt_to_json(gt).dump(2) << "\n";
}

inline std::vector<synth::GtHandle> load_gt_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  const auto root = nlohmann::ordered_json::parse(in);
  std::vector<synth::GtHandle> handles;
  for (const auto& j : root.at("handles")) {
    synth::GtHandle h;
    h.object_id = j.at("object_id");
    h.center = Vec3d(j.at("center").at(0), j.at("center").at(1), j.at("center").at(2));
    h.closing = Vec3d(j.at("closing").at(0), j.at("closing").at(1), j.at("closing").at(2));
    h.approach = Vec3d(j.at("approach").at(0), j.at("approach").at(1), j.at("approach").at(2));
    h.width = j.at("width");
    handles.push_back(h);
  }
  return handles;
}

}  // namespace graspkit
