#pragma once

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "graspkit/eval/matching.hpp"
#include "graspkit/eval/report.hpp"
#include "graspkit/grasp/detector.hpp"
#include "graspkit/io/frame_io.hpp"
#include "graspkit/io/gt_json.hpp"
#include "graspkit/io/handles_json.hpp"

namespace graspkit::eval {

inline std::vector<PredictedHandle> staged_predictions(const std::vector<StagedHandle>& staged) {
  std::vector<PredictedHandle> preds;
  preds.reserve(staged.size());
  for (const StagedHandle& s : staged) preds.push_back({s.center, s.closing, s.radius});
  return preds;
}

inline std::vector<PredictedHandle> final_predictions(
    const std::vector<ValidatedHandle>& handles) {
  std::vector<PredictedHandle> preds;
  preds.reserve(handles.size());
  for (const ValidatedHandle& h : handles)
    preds.push_back({h.hyp.center, h.hyp.frame.closing, h.hyp.radius});
  return preds;
}

/// Per-stage precision accounting for one already-detected frame.
inline SceneReport score_scene(const std::string& scene_id, const DetectionResult& det,
                               const std::vector<synth::GtHandle>& gts,
                               const MatchCriteria& criteria) {
  SceneReport sr;
  sr.scene_id = scene_id;
  sr.gt_handles = static_cast<int>(gts.size());
  sr.counts = det.trace.counts;
  sr.stage1 = StagePrecision::from(precision(staged_predictions(det.trace.stage1), gts, criteria));
  sr.after_parallel =
      StagePrecision::from(precision(staged_predictions(det.trace.stage2), gts, criteria));
  sr.after_occlusion =
      StagePrecision::from(precision(staged_predictions(det.trace.stage3), gts, criteria));
  sr.final_set =
      StagePrecision::from(precision(final_predictions(det.handles), gts, criteria));
  return sr;
}

struct EvalOptions {
  bool timing = false;
  bool dump_handles = false;
  std::string dump_dir;  // where per-scene handle JSONs go when dumping
};

/// Runs detection + scoring over every scene directory (containing color.png,
/// depth.png, intrinsics.txt, gt.json) under scenes_dir, sorted by name.
inline EvalReport run_eval(const std::string& scenes_dir, const GripperGeometry& gripper,
                           const DetectorConfig& cfg, const MatchCriteria& criteria,
                           const EvalOptions& options = {}) {
  namespace fs = std::filesystem;
  std::vector<fs::path> scene_dirs;
  if (!fs::is_directory(scenes_dir))
    throw std::runtime_error("not a directory: " + scenes_dir);
  for (const auto& entry : fs::directory_iterator(scenes_dir))
    if (entry.is_directory() && fs::exists(entry.path() / "gt.json"))
      scene_dirs.push_back(entry.path());
  if (scene_dirs.empty())
    throw std::runtime_error("no scene directories with gt.json under " + scenes_dir);
  std::sort(scene_dirs.begin(), scene_dirs.end());

  EvalReport report;
  report.timing_enabled = options.timing;
  for (const fs::path& dir : scene_dirs) {
    const Intrinsics intr = load_intrinsics((dir / "intrinsics.txt").string());
    const Frame frame =
        load_frame((dir / "color.png").string(), (dir / "depth.png").string(), intr);
    const auto gts = load_gt_json((dir / "gt.json").string());

    const auto t0 = std::chrono::steady_clock::now();
    const DetectionResult det = detect_handles(frame, gripper, cfg);
    const auto t1 = std::chrono::steady_clock::now();

    SceneReport sr = score_scene(dir.filename().string(), det, gts, criteria);
    sr.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    report.scenes.push_back(sr);

    if (options.dump_handles) {
      const CostWeights weights{cfg.w1, cfg.w2, cfg.w3};
      const auto ranked = rank(det.handles, weights, -1);
      const fs::path out_dir = options.dump_dir.empty() ? dir : fs::path(options.dump_dir);
      fs::create_directories(out_dir);
      save_handles_json((out_dir / (dir.filename().string() + "_handles.json")).string(),
                        dir.filename().string(), ranked);
    }
  }
  report.aggregate();
  return report;
}

}  // namespace graspkit::eval
