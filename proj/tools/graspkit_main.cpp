// graspkit command line: synthetic scene generation, handle detection,
// precision evaluation and overlay rendering for RGB-D grasp pose detection.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "graspkit/core/config.hpp"
#include "graspkit/eval/runner.hpp"
#include "graspkit/grasp/detector.hpp"
#include "graspkit/io/frame_io.hpp"
#include "graspkit/io/handles_json.hpp"
#include "graspkit/io/scene_export.hpp"
#include "graspkit/ranking.hpp"
#include "graspkit/synth/suite.hpp"
#include "graspkit/viz.hpp"

namespace fs = std::filesystem;
using namespace graspkit;

namespace {

DetectorConfig load_config_or_default(const std::string& path) {
  return path.empty() ? DetectorConfig{} : DetectorConfig::load(path);
}

GripperGeometry load_gripper_or_default(const std::string& path) {
  return path.empty() ? GripperGeometry{} : GripperGeometry::load(path);
}

Frame load_input_frame(const std::string& color, const std::string& depth,
                       const std::string& intrinsics, const std::string& pcd) {
  if (!pcd.empty()) return load_pcd(pcd);
  if (color.empty() || depth.empty() || intrinsics.empty())
    throw std::runtime_error("need --pcd or all of --color, --depth, --intrinsics");
  return load_frame(color, depth, load_intrinsics(intrinsics));
}

int run_detect(const std::string& color, const std::string& depth,
               const std::string& intrinsics, const std::string& pcd,
               const std::string& gripper_path, const std::string& config_path,
               const std::string& out_path, const std::string& overlay_path,
               const std::string& debug_dir, int top_k) {
  const GripperGeometry gripper = load_gripper_or_default(gripper_path);
  const DetectorConfig cfg = load_config_or_default(config_path);
  const Frame frame = load_input_frame(color, depth, intrinsics, pcd);

  const DetectionResult det = detect_handles(frame, gripper, cfg);
  const CostWeights weights{cfg.w1, cfg.w2, cfg.w3};
  const auto ranked = rank(det.handles, weights, top_k);

  const std::string frame_id =
      !pcd.empty() ? fs::path(pcd).stem().string() : fs::path(color).stem().string();
  save_handles_json(out_path, frame_id, ranked);
  std::cout << "segments: " << det.trace.segments.size()
            << "  hypotheses: " << det.trace.counts.hypotheses
            << "  after-parallel: " << det.trace.counts.after_parallel
            << "  after-occlusion: " << det.trace.counts.after_occlusion
            << "  final: " << det.trace.counts.final_count << "\n";
  std::cout << "wrote " << out_path << "\n";

  if (!overlay_path.empty()) {
    write_png_rgb8(overlay_path, draw_overlay(det.processed, det.trace, ranked));
    std::cout << "wrote " << overlay_path << "\n";
  }
  if (!debug_dir.empty()) {
    fs::create_directories(debug_dir);
    write_png_gray8((fs::path(debug_dir) / "labels.png").string(),
                    label_map_image(det.trace.segments, frame.width(), frame.height()));
    write_png_gray8((fs::path(debug_dir) / "edges_intensity.png").string(),
                    [&] {
                      Image<std::uint8_t> m(frame.width(), frame.height(), 0);
                      for (const Pixel& p : det.trace.edges_intensity.pixels)
                        m.at(p) = 255;
                      return m;
                    }());
    write_png_gray8((fs::path(debug_dir) / "edges_depth.png").string(),
                    [&] {
                      Image<std::uint8_t> m(frame.width(), frame.height(), 0);
                      for (const Pixel& p : det.trace.edges_depth.pixels) m.at(p) = 255;
                      return m;
                    }());
    OverlayOptions all;
    all.intensity_edges = true;
    all.depth_edges = true;
    write_png_rgb8((fs::path(debug_dir) / "merged.png").string(),
                   draw_overlay(det.processed, det.trace, ranked, all));
  }
  return 0;
}

int run_synth(bool suite, double sigma, const std::string& scene_path,
              const std::string& out_dir, const std::string& gripper_path) {
  const GripperGeometry gripper = load_gripper_or_default(gripper_path);
  fs::create_directories(out_dir);
  if (suite) {
    for (const synth::SceneSpec& scene : synth::standard_suite(sigma)) {
      synth::export_scene((fs::path(out_dir) / scene.id).string(), scene, gripper);
      std::cout << "scene " << scene.id << "\n";
    }
  } else {
    if (scene_path.empty()) throw std::runtime_error("need --suite or --scene <file>");
    const synth::SceneSpec scene = synth::load_scene(scene_path);
    synth::export_scene((fs::path(out_dir) / scene.id).string(), scene, gripper);
    std::cout << "scene " << scene.id << "\n";
  }
  // reference config files so every parameter default is materialized
  {
    std::ofstream cfg_out(fs::path(out_dir) / "config.txt");
    DetectorConfig{}.save(cfg_out);
    std::ofstream grip_out(fs::path(out_dir) / "gripper.txt");
    gripper.save(grip_out);
  }
  return 0;
}

int run_eval_cmd(const std::string& scenes_dir, const std::string& criteria_path,
                 const std::string& gripper_path, const std::string& config_path,
                 const std::string& report_path, bool timing, bool dump_handles) {
  const GripperGeometry gripper = load_gripper_or_default(gripper_path);
  const DetectorConfig cfg = load_config_or_default(config_path);
  const eval::MatchCriteria criteria =
      criteria_path.empty() ? eval::MatchCriteria{} : eval::MatchCriteria::load(criteria_path);

  eval::EvalOptions options;
  options.timing = timing;
  options.dump_handles = dump_handles;
  const eval::EvalReport report = eval::run_eval(scenes_dir, gripper, cfg, criteria, options);

  std::ofstream out(report_path);
  if (!out) throw std::runtime_error("cannot write " + report_path);
  out << eval::report_to_json(report).dump(2) << "\n";

  for (const eval::SceneReport& s : report.scenes)
    std::cout << s.scene_id << ": final " << s.final_set.matched << "/" << s.final_set.total
              << (s.final_set.vacuous ? " (no predictions)" : "") << "\n";
  std::cout << "overall precision: " << report.overall.value
            << (report.overall.vacuous ? " (vacuous)" : "") << "\n";
  std::cout << "wrote " << report_path << "\n";
  return 0;
}

int run_viz(const std::string& color, const std::string& depth, const std::string& intrinsics,
            const std::string& pcd, const std::string& handles_path,
            const std::string& out_path) {
  const Frame frame = load_input_frame(color, depth, intrinsics, pcd);
  const auto ranked = load_handles_json(handles_path);
  DetectionTrace empty_trace;
  OverlayOptions opt;
  opt.segment_boundaries = false;
  write_png_rgb8(out_path, draw_overlay(frame, empty_trace, ranked, opt));
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grasp pose detection toolkit"};
  app.require_subcommand(1);

  // detect
  auto* detect = app.add_subcommand("detect", "detect handles in an RGB-D frame");
  std::string color, depth, intrinsics, pcd, gripper_path, config_path;
  std::string out_path = "handles.json", overlay_path, debug_dir;
  int top_k = -1;
  detect->add_option("--color", color, "8-bit RGB PNG");
  detect->add_option("--depth", depth, "16-bit depth PNG");
  detect->add_option("--intrinsics", intrinsics, "intrinsics text file");
  detect->add_option("--pcd", pcd, "organized ASCII PCD (alternative input)");
  detect->add_option("--gripper", gripper_path, "gripper geometry file");
  detect->add_option("--config", config_path, "detector config file");
  detect->add_option("--out", out_path, "output handle JSON");
  detect->add_option("--overlay", overlay_path, "overlay PNG");
  detect->add_option("--debug-dir", debug_dir, "debug dump directory");
  detect->add_option("--top-k", top_k, "keep only the k best handles (-1 = all)");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "generate synthetic scenes");
  bool suite = false;
  double sigma = 0.0015;
  std::string scene_path, out_dir = "scenes";
  std::string synth_gripper;
  synth_cmd->add_flag("--suite", suite, "emit the 17-scene standard suite");
  synth_cmd->add_option("--sigma", sigma, "depth noise sigma in meters");
  synth_cmd->add_option("--scene", scene_path, "render a single scene spec file");
  synth_cmd->add_option("--out-dir", out_dir, "output directory");
  synth_cmd->add_option("--gripper", synth_gripper, "gripper for ground-truth clearance");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "precision evaluation against ground truth");
  std::string scenes_dir, criteria_path, eval_gripper, eval_config;
  std::string report_path = "report.json";
  bool timing = false, dump_handles = false;
  eval_cmd->add_option("--scenes-dir", scenes_dir, "directory of scene directories")->required();
  eval_cmd->add_option("--criteria", criteria_path, "match criteria file");
  eval_cmd->add_option("--gripper", eval_gripper, "gripper geometry file");
  eval_cmd->add_option("--config", eval_config, "detector config file");
  eval_cmd->add_option("--report", report_path, "output report JSON");
  eval_cmd->add_flag("--timing", timing, "include wall-clock runtimes in the report");
  eval_cmd->add_flag("--dump-handles", dump_handles, "write per-scene handle JSONs");

  // viz
  auto* viz_cmd = app.add_subcommand("viz", "render a handle overlay");
  std::string viz_color, viz_depth, viz_intr, viz_pcd, viz_handles, viz_out = "overlay.png";
  viz_cmd->add_option("--color", viz_color, "8-bit RGB PNG");
  viz_cmd->add_option("--depth", viz_depth, "16-bit depth PNG");
  viz_cmd->add_option("--intrinsics", viz_intr, "intrinsics text file");
  viz_cmd->add_option("--pcd", viz_pcd, "organized ASCII PCD");
  viz_cmd->add_option("--handles", viz_handles, "handle JSON from detect")->required();
  viz_cmd->add_option("--out", viz_out, "output PNG");

  CLI11_PARSE(app, argc, argv);

  try {
    if (detect->parsed())
      return run_detect(color, depth, intrinsics, pcd, gripper_path, config_path, out_path,
                        overlay_path, debug_dir, top_k);
    if (synth_cmd->parsed()) return run_synth(suite, sigma, scene_path, out_dir, synth_gripper);
    if (eval_cmd->parsed())
      return run_eval_cmd(scenes_dir, criteria_path, eval_gripper, eval_config, report_path,
                          timing, dump_handles);
    if (viz_cmd->parsed())
      return run_viz(viz_color, viz_depth, viz_intr, viz_pcd, viz_handles, viz_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
