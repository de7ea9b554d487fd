#pragma once

#include <vector>

#include "graspkit/core/geometry.hpp"
#include "graspkit/io/keyvalue.hpp"
#include "graspkit/synth/ground_truth.hpp"

namespace graspkit::eval {

/// Geometric match tolerances replacing the paper-style manual scoring.
struct MatchCriteria {
  double eps_center = 0.02;              // m
  double eps_axis = deg_to_rad(15.0);    // rad, closing axis, sign-insensitive
  double width_tol = 0.25;               // fraction of the ground-truth width

  void validate() const {
    if (eps_center <= 0 || eps_axis <= 0 || width_tol <= 0)
      throw std::invalid_argument("match criteria must be positive");
  }

  static MatchCriteria from_kv(const KeyValueFile& kv) {
    MatchCriteria c;
    c.eps_center = kv.get_double("eps_center_m", c.eps_center);
    c.eps_axis = deg_to_rad(kv.get_double("eps_axis_deg", rad_to_deg(c.eps_axis)));
    c.width_tol = kv.get_double("width_tol", c.width_tol);
    c.validate();
    return c;
  }

  static MatchCriteria load(const std::string& path) {
    return from_kv(KeyValueFile::load(path));
  }
};

/// Minimal geometric view of a predicted handle, in the ground truth's
/// coordinate frame.
struct PredictedHandle {
  Vec3d center = Vec3d::Zero();
  Vec3d closing = Vec3d::Zero();
  double radius = 0.0;
};

inline bool match(const PredictedHandle& pred, const std::vector<synth::GtHandle>& gt_handles,
                  const MatchCriteria& criteria) {
  for (const synth::GtHandle& gt : gt_handles) {
    if ((pred.center - gt.center).norm() > criteria.eps_center) continue;
    if (axis_angle_between(pred.closing, gt.closing) > criteria.eps_axis) continue;
    if (std::abs(2.0 * pred.radius - gt.width) > criteria.width_tol * gt.width) continue;
    return true;
  }
  return false;
}

struct PrecisionResult {
  int matched = 0;
  int total = 0;
  double value = 1.0;
  bool vacuous = false;  // no predictions: precision 1.0 by convention
};

inline PrecisionResult precision(const std::vector<PredictedHandle>& preds,
                                 const std::vector<synth::GtHandle>& gt_handles,
                                 const MatchCriteria& criteria) {
  PrecisionResult res;
  res.total = static_cast<int>(preds.size());
  if (preds.empty()) {
    res.vacuous = true;
    return res;
  }
  for (const PredictedHandle& p : preds)
    if (match(p, gt_handles, criteria)) ++res.matched;
  res.value = static_cast<double>(res.matched) / res.total;
  return res;
}

}  // namespace graspkit::eval
