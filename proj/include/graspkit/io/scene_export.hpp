#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "graspkit/io/frame_io.hpp"
#include "graspkit/io/gt_json.hpp"
#include "graspkit/io/png_io.hpp"
#include "graspkit/synth/ground_truth.hpp"
#include "graspkit/synth/scene.hpp"

namespace graspkit::synth {

/// Renders a scene and writes the frame_io-compatible file set:
/// color.png, depth.png (16-bit), intrinsics.txt, scene.txt, gt.json and the
/// object-id mask (gt_mask.png, id + 1 so background stays 0).
inline void export_scene(const std::string& dir, const SceneSpec& scene,
                         const GripperGeometry& gripper, const GtParams& params = {}) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const RenderOutput out = render(scene, gripper, params);

  write_png_rgb8((fs::path(dir) / "color.png").string(), out.frame.color);
  save_depth_png((fs::path(dir) / "depth.png").string(), out.frame);
  save_intrinsics((fs::path(dir) / "intrinsics.txt").string(), out.frame.intrinsics);
  save_scene((fs::path(dir) / "scene.txt").string(), scene);
  save_gt_json((fs::path(dir) / "gt.json").string(), out.ground_truth);

  Image<std::uint8_t> mask(out.ground_truth.mask.width(), out.ground_truth.mask.height(), 0);
  for (int r = 0; r < mask.height(); ++r)
    for (int c = 0; c < mask.width(); ++c)
      mask.at(r, c) = static_cast<std::uint8_t>(
          std::clamp(out.ground_truth.mask.at(r, c) + 1, 0, 255));
  write_png_gray8((fs::path(dir) / "gt_mask.png").string(), mask);
}

}  // namespace graspkit::synth
