#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "graspkit/eval/matching.hpp"
#include "graspkit/grasp/detector.hpp"

namespace graspkit::eval {

struct StagePrecision {
  int matched = 0;
  int total = 0;
  double value = 1.0;
  bool vacuous = false;

  static StagePrecision from(const PrecisionResult& r) {
    return {r.matched, r.total, r.value, r.vacuous};
  }
};

struct SceneReport {
  std::string scene_id;
  int gt_handles = 0;
  StageCounts counts;
  StagePrecision stage1;          // gap-validated hypotheses
  StagePrecision after_parallel;  // + parallel-line criterion
  StagePrecision after_occlusion; // + axis and occlusion criteria
  StagePrecision final_set;       // deduplicated output
  double runtime_ms = 0.0;
};

struct EvalReport {
  std::vector<SceneReport> scenes;  // sorted by scene_id
  StagePrecision stage1;
  StagePrecision after_parallel;
  StagePrecision after_occlusion;
  StagePrecision overall;  // final deduplicated sets, pooled over scenes
  bool timing_enabled = false;

  void aggregate() {
    auto pool = [&](auto member) {
      StagePrecision agg;
      for (const SceneReport& s : scenes) {
        agg.matched += (s.*member).matched;
        agg.total += (s.*member).total;
      }
      agg.vacuous = agg.total == 0;
      agg.value = agg.total > 0 ? static_cast<double>(agg.matched) / agg.total : 1.0;
      return agg;
    };
    stage1 = pool(&SceneReport::stage1);
    after_parallel = pool(&SceneReport::after_parallel);
    after_occlusion = pool(&SceneReport::after_occlusion);
    overall = pool(&SceneReport::final_set);
  }
};

namespace detail {

inline nlohmann::ordered_json precision_json(const StagePrecision& p) {
  return {{"matched", p.matched}, {"total", p.total}, {"value", p.value},
          {"vacuous", p.vacuous}};
}

}  // namespace detail

inline nlohmann::ordered_json report_to_json(const EvalReport& report) {
  nlohmann::ordered_json root;
  auto scenes = nlohmann::ordered_json::array();
  for (const SceneReport& s : report.scenes) {
    nlohmann::ordered_json j;
    j["scene_id"] = s.scene_id;
    j["gt_handles"] = s.gt_handles;
    j["counts"] = {{"hypotheses", s.counts.hypotheses},
                   {"after_parallel", s.counts.after_parallel},
                   {"after_occlusion", s.counts.after_occlusion},
                   {"final", s.counts.final_count}};
    j["precision"] = {{"stage1", detail::precision_json(s.stage1)},
                      {"after_parallel", detail::precision_json(s.after_parallel)},
                      {"after_occlusion", detail::precision_json(s.after_occlusion)},
                      {"final", detail::precision_json(s.final_set)}};
    j["runtime_ms"] = report.timing_enabled ? s.runtime_ms : 0.0;
    scenes.push_back(std::move(j));
  }
  root["scenes"] = std::move(scenes);
  root["aggregate"] = {{"stage1", detail::precision_json(report.stage1)},
                       {"after_parallel", detail::precision_json(report.after_parallel)},
                       {"after_occlusion", detail::precision_json(report.after_occlusion)},
                       {"overall", detail::precision_json(report.overall)}};
  root["timing_enabled"] = report.timing_enabled;
  return root;
}

}  // namespace graspkit::eval
