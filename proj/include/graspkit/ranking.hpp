#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "graspkit/grasp/types.hpp"

namespace graspkit {

struct CostWeights {
  double w1 = 0.4;  // boundary-line parallelism
  double w2 = 0.3;  // axis perpendicularity
  double w3 = 0.3;  // camera distance

  void validate() const {
    if (w1 < 0 || w2 < 0 || w3 < 0 || w1 + w2 + w3 <= 0)
      throw std::invalid_argument("cost weights must be nonnegative with positive sum");
  }
};

struct RankFeatures {
  double a_b = 0.0;     // 1 - |u+ . u-|
  double a_axis = 0.0;  // |â_img . u_avg|
  double c_z = 0.0;     // min-max normalized center depth
};

struct RankedHandle {
  ValidatedHandle handle;
  RankFeatures features;
  double f_c = 0.0;
  int rank = 0;  // 1-based
};

/// Per-handle cost features; c_z is min-max normalized over this handle set
/// (all zero when the set shares one depth).
inline std::vector<RankFeatures> compute_features(const std::vector<ValidatedHandle>& handles) {
  std::vector<RankFeatures> out(handles.size());
  if (handles.empty()) return out;
  double zmin = handles[0].hyp.center.z(), zmax = zmin;
  for (const ValidatedHandle& h : handles) {
    zmin = std::min(zmin, h.hyp.center.z());
    zmax = std::max(zmax, h.hyp.center.z());
  }
  const double span = zmax - zmin;
  for (std::size_t i = 0; i < handles.size(); ++i) {
    out[i].a_b = std::clamp(1.0 - handles[i].a_b_raw, 0.0, 1.0);
    out[i].a_axis = std::clamp(handles[i].a_axis_raw, 0.0, 1.0);
    out[i].c_z = span > 0.0 ? (handles[i].hyp.center.z() - zmin) / span : 0.0;
  }
  return out;
}

inline double score(const RankFeatures& f, const CostWeights& w) {
  return w.w1 * f.a_b + w.w2 * f.a_axis + w.w3 * f.c_z;
}

/// Ascending-cost ordering of feature vectors; ties break toward the nearer
/// handle (smaller c_z), then the smaller input index.
inline std::vector<int> rank_order(const std::vector<RankFeatures>& features,
                                   const CostWeights& weights) {
  weights.validate();
  std::vector<int> order(features.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> cost(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) cost[i] = score(features[i], weights);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (cost[a] != cost[b]) return cost[a] < cost[b];
    if (features[a].c_z != features[b].c_z) return features[a].c_z < features[b].c_z;
    return a < b;
  });
  return order;
}

/// Scores and sorts handles by ascending cost, returning at most top_k.
inline std::vector<RankedHandle> rank(const std::vector<ValidatedHandle>& handles,
                                      const CostWeights& weights, int top_k = 5) {
  const std::vector<RankFeatures> features = compute_features(handles);
  const std::vector<int> order = rank_order(features, weights);
  std::vector<RankedHandle> out;
  const int n = top_k < 0 ? static_cast<int>(order.size())
                          : std::min<int>(top_k, static_cast<int>(order.size()));
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    RankedHandle rh;
    rh.handle = handles[order[i]];
    rh.features = features[order[i]];
    rh.f_c = score(rh.features, weights);
    rh.rank = i + 1;
    out.push_back(std::move(rh));
  }
  return out;
}

}  // namespace graspkit
