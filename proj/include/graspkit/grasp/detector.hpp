#pragma once

#include <optional>
#include <vector>

#include "graspkit/core/config.hpp"
#include "graspkit/core/frame.hpp"
#include "graspkit/edges.hpp"
#include "graspkit/frame/normals.hpp"
#include "graspkit/frame/smoothing.hpp"
#include "graspkit/grasp/checks.hpp"
#include "graspkit/grasp/types.hpp"
#include "graspkit/ranking.hpp"
#include "graspkit/segmentation.hpp"

namespace graspkit {

/// Everything measured for one (segment, axis, center) hypothesis, kept for
/// per-stage precision accounting.
struct HypothesisRecord {
  int segment_id = -1;
  AxisChoice axis_choice = AxisChoice::major;
  int center_index = 0;
  Vec3d candidate_center = Vec3d::Zero();
  GraspFrame frame;

  bool gap_passed = false;
  GapResult gap;

  bool boundary_found = false;
  bool lines_found = false;
  bool parallel_passed = false;
  double a_b_raw = 0.0;

  bool axis_passed = false;
  double a_axis_raw = 0.0;
  bool axis_view_degenerate = false;

  bool occlusion_ran = false;
  bool occlusion_passed = false;
  int blocking_points = 0;

  Vec3d refined_center = Vec3d::Zero();
  double refined_radius = 0.0;

  bool deduplicated = false;
  int final_index = -1;
};

/// A per-stage snapshot of a surviving hypothesis (geometry only).
struct StagedHandle {
  Vec3d center = Vec3d::Zero();
  Vec3d closing = Vec3d::Zero();
  double radius = 0.0;
  int record_index = -1;
};

struct StageCounts {
  int hypotheses = 0;       // survived the gap stage
  int after_parallel = 0;   // survived the parallel-line stage
  int after_occlusion = 0;  // survived axis + occlusion (pre-dedup)
  int final_count = 0;      // after dedup
};

struct DetectionTrace {
  std::vector<HypothesisRecord> records;
  StageCounts counts;
  std::vector<StagedHandle> stage1;
  std::vector<StagedHandle> stage2;
  std::vector<StagedHandle> stage3;
  std::vector<Segment> segments;
  EdgeMap edges_intensity;
  EdgeMap edges_depth;
};

struct DetectionResult {
  std::vector<ValidatedHandle> handles;  // deduplicated survivors
  DetectionTrace trace;
  Frame processed;  // frame after smoothing and normal estimation
};

namespace detail {

/// Snaps a candidate onto the segment surface: nearest segment point within a
/// local pixel window, then the mean of segment points within 1 cm of it.
inline std::optional<Vec3d> snap_to_segment(const Frame& frame, const Image<int>& labels,
                                            int segment_id, const Vec3d& candidate) {
  if (candidate.z() <= 1e-6) return std::nullopt;
  const Vec2d px = frame.intrinsics.project(candidate);
  const int c0 = static_cast<int>(std::lround(px.x()));
  const int r0 = static_cast<int>(std::lround(px.y()));
  const int search = 12;

  double best_sq = 0.02 * 0.02;  // candidates further than 2 cm are off-surface
  Pixel best{-1, -1};
  for (int r = r0 - search; r <= r0 + search; ++r) {
    for (int c = c0 - search; c <= c0 + search; ++c) {
      if (!labels.in_bounds(r, c) || labels.at(r, c) != segment_id) continue;
      const double d2 = (frame.cloud.at(r, c) - candidate).squaredNorm();
      if (d2 < best_sq) {
        best_sq = d2;
        best = {r, c};
      }
    }
  }
  if (best.row < 0) return std::nullopt;

  const Vec3d anchor = frame.cloud.at(best);
  Vec3d sum = Vec3d::Zero();
  int n = 0;
  const int blend = 8;
  for (int r = best.row - blend; r <= best.row + blend; ++r) {
    for (int c = best.col - blend; c <= best.col + blend; ++c) {
      if (!labels.in_bounds(r, c) || labels.at(r, c) != segment_id) continue;
      const Vec3d& p = frame.cloud.at(r, c);
      if ((p - anchor).squaredNorm() <= 0.01 * 0.01) {
        sum += p;
        ++n;
      }
    }
  }
  if (n == 0) return anchor;
  return sum / n;
}

}  // namespace detail

/// End-to-end handle detection: optional smoothing, normals, region growing,
/// edge fusion, then per-hypothesis gap, boundary-line, parallelism, axis and
/// occlusion validation. Hypotheses are evaluated in (segment, axis, center)
/// order, so output is deterministic.
inline DetectionResult detect_handles(const Frame& input, const GripperGeometry& gripper,
                                      const DetectorConfig& cfg) {
  gripper.validate();
  DetectionResult result;

  Frame work = cfg.smooth ? smooth_cloud(input, cfg.spatial_sigma_px, cfg.range_sigma_m) : input;
  work = estimate_normals(work, cfg.normal_window_px, cfg.normal_depth_gate_m);

  const RoiRect roi{cfg.roi_col0, cfg.roi_row0, cfg.roi_col1, cfg.roi_row1};
  std::vector<Segment> segments = region_grow(work, cfg.tau_rad, cfg.min_segment_size, roi);
  const Image<int> labels = build_label_map(segments, work.width(), work.height());

  DetectionTrace& trace = result.trace;
  trace.edges_intensity = canny(luminance(work.color), cfg.canny_sigma_px, cfg.canny_low,
                                cfg.canny_high);
  trace.edges_depth = depth_edges(work, cfg.depth_jump_m, cfg.normal_jump_rad);
  const EdgeIndex edge_index =
      EdgeIndex::build(trace.edges_intensity, trace.edges_depth, cfg.match_radius_px);

  const double sphere_radius = cfg.workspace_sphere_factor * gripper.d;
  const double sphere_sq = sphere_radius * sphere_radius;
  std::vector<ValidatedHandle> survivors;

  for (Segment& seg : segments) {
    const auto features = segment_features(work, seg);
    if (!features) continue;
    // support surfaces larger than the gripper in every direction
    if (features->extent_major > 2.0 * gripper.d && features->extent_minor > 2.0 * gripper.d)
      continue;
    seg.boundary = segment_boundary(seg);

    for (AxisChoice axis : {AxisChoice::major, AxisChoice::minor}) {
      const auto gframe = darboux_frame(*features, axis);
      if (!gframe) continue;
      const double half_extent =
          (axis == AxisChoice::major ? features->extent_major : features->extent_minor) / 2.0;

      int center_index = 0;
      for (int step = 0; center_index < cfg.max_centers_per_axis; ++step) {
        // offsets 0, +s, -s, +2s, -2s, ... within the segment extent
        const int mag = (step + 1) / 2;
        const double offset = (step % 2 == 1 ? 1.0 : -1.0) * mag * cfg.center_stride_m;
        if (step > 0 && std::abs(offset) > half_extent) break;

        HypothesisRecord rec;
        rec.segment_id = seg.id;
        rec.axis_choice = axis;
        rec.center_index = center_index++;
        rec.frame = *gframe;

        const Vec3d c0 = features->centroid + offset * gframe->closing;
        const auto snapped = detail::snap_to_segment(work, labels, seg.id, c0);
        if (!snapped) continue;  // off the surface; not a hypothesis
        rec.candidate_center = *snapped;

        rec.gap = gap_check(work, seg, rec.candidate_center, *gframe, gripper, gripper.l,
                            sphere_radius, cfg.boundary_margin_m);
        rec.gap_passed = rec.gap.accepted;
        if (!rec.gap_passed) {
          trace.records.push_back(rec);
          continue;
        }
        trace.stage1.push_back({rec.candidate_center, gframe->closing,
                                rec.gap.radius_provisional,
                                static_cast<int>(trace.records.size())});

        // handle-local boundary: segment boundary within the workspace sphere
        std::vector<Pixel> local_boundary;
        for (const Pixel& bp : seg.boundary) {
          if (!work.valid(bp)) continue;
          if ((work.cloud.at(bp) - rec.candidate_center).squaredNorm() <= sphere_sq)
            local_boundary.push_back(bp);
        }

        SplitAxis split;
        split.center = work.intrinsics.project(rec.candidate_center);
        const Vec3d tip = rec.candidate_center + 0.01 * gframe->closing;
        bool split_ok = tip.z() > 1e-6;
        if (split_ok) {
          const Vec2d axis_img = work.intrinsics.project(tip) - split.center;
          split_ok = axis_img.norm() >= 0.25;
          if (split_ok) split.axis_dir = axis_img.normalized();
        }
        ValidatedBoundary vb;
        if (split_ok && !local_boundary.empty())
          vb = merge_boundary(work, local_boundary, edge_index, split);
        rec.boundary_found = vb.usable();
        if (!rec.boundary_found) {
          trace.records.push_back(rec);
          continue;
        }

        const auto lines = extract_boundary_lines(vb);
        rec.lines_found = lines.has_value();
        if (!rec.lines_found) {
          trace.records.push_back(rec);
          continue;
        }

        const auto par = parallelism_check(lines->first, lines->second, cfg.theta_r_rad);
        rec.a_b_raw = par.a_b_raw;
        rec.parallel_passed = par.passed;
        if (!par.passed) {
          trace.records.push_back(rec);
          continue;
        }

        // refine center and radius from the two boundary point sets
        rec.refined_center = rec.candidate_center;
        rec.refined_radius = rec.gap.radius_provisional;
        {
          std::vector<Vec3d> plus_pts, minus_pts;
          plus_pts.reserve(vb.plus_side.size());
          minus_pts.reserve(vb.minus_side.size());
          for (const BoundaryPoint& bp : vb.plus_side) plus_pts.push_back(bp.point);
          for (const BoundaryPoint& bp : vb.minus_side) minus_pts.push_back(bp.point);
          const auto l3p = fit_line_3d(plus_pts);
          const auto l3m = fit_line_3d(minus_pts);
          if (l3p && l3m) {
            const Vec3d p_plus = closest_point_on_line(*l3p, rec.candidate_center);
            const Vec3d p_minus = closest_point_on_line(*l3m, rec.candidate_center);
            rec.refined_center = 0.5 * (p_plus + p_minus);
            rec.refined_radius = 0.5 * (p_plus - p_minus).norm();
          }
        }
        if (rec.refined_radius > gripper.d / 2.0) {
          trace.records.push_back(rec);
          continue;
        }
        trace.stage2.push_back({rec.refined_center, gframe->closing, rec.refined_radius,
                                static_cast<int>(trace.records.size())});

        const auto axis_res =
            axis_perpendicularity_check(gframe->closing, lines->first, lines->second,
                                        rec.refined_center, work.intrinsics,
                                        cfg.theta_axis_tol_rad);
        rec.a_axis_raw = axis_res.a_axis_raw;
        rec.axis_view_degenerate = axis_res.view_degenerate;
        rec.axis_passed = axis_res.passed;
        if (cfg.axis_hard_filter && !axis_res.passed) {
          trace.records.push_back(rec);
          continue;
        }

        rec.occlusion_ran = true;
        const auto occ = occlusion_filter(work, labels, rec.refined_center, *gframe,
                                          rec.refined_radius, seg.id, gripper,
                                          cfg.occlusion_margin_m, cfg.boundary_margin_m);
        rec.blocking_points = occ.blocking_points;
        rec.occlusion_passed = occ.passed;
        if (!occ.passed) {
          trace.records.push_back(rec);
          continue;
        }
        trace.stage3.push_back({rec.refined_center, gframe->closing, rec.refined_radius,
                                static_cast<int>(trace.records.size())});

        ValidatedHandle vh;
        vh.hyp.center = rec.refined_center;
        vh.hyp.frame = *gframe;
        vh.hyp.radius = rec.refined_radius;
        vh.hyp.segment_id = seg.id;
        vh.hyp.axis_choice = axis;
        vh.hyp.center_index = rec.center_index;
        vh.hyp.gap_plus = rec.gap.gap_plus;
        vh.hyp.gap_minus = rec.gap.gap_minus;
        vh.line_plus = lines->first;
        vh.line_minus = lines->second;
        vh.a_b_raw = par.a_b_raw;
        vh.a_axis_raw = axis_res.a_axis_raw;
        vh.axis_view_degenerate = axis_res.view_degenerate;
        vh.support_plus.reserve(vb.plus_side.size());
        vh.support_minus.reserve(vb.minus_side.size());
        for (const BoundaryPoint& bp : vb.plus_side) vh.support_plus.push_back(bp.pixel);
        for (const BoundaryPoint& bp : vb.minus_side) vh.support_minus.push_back(bp.pixel);
        rec.final_index = static_cast<int>(survivors.size());
        survivors.push_back(std::move(vh));
        trace.records.push_back(rec);
      }
    }
  }

  trace.counts.hypotheses = static_cast<int>(trace.stage1.size());
  trace.counts.after_parallel = static_cast<int>(trace.stage2.size());
  trace.counts.after_occlusion = static_cast<int>(trace.stage3.size());

  // near-duplicates keep only the lowest-cost representative
  const CostWeights weights{cfg.w1, cfg.w2, cfg.w3};
  const std::vector<RankFeatures> features = compute_features(survivors);
  const std::vector<int> by_cost = rank_order(features, weights);
  std::vector<bool> keep(survivors.size(), false);
  for (int idx : by_cost) {
    bool dominated = false;
    for (std::size_t j = 0; j < survivors.size() && !dominated; ++j) {
      if (!keep[j]) continue;
      const double center_dist =
          (survivors[idx].hyp.center - survivors[j].hyp.center).norm();
      const double axis_angle = axis_angle_between(survivors[idx].hyp.frame.closing,
                                                   survivors[j].hyp.frame.closing);
      dominated = center_dist <= cfg.dedup_center_m && axis_angle <= cfg.dedup_axis_rad;
    }
    if (!dominated) keep[idx] = true;
  }
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    if (keep[i]) {
      result.handles.push_back(survivors[i]);
    } else {
      for (HypothesisRecord& rec : trace.records)
        if (rec.final_index == static_cast<int>(i)) rec.deduplicated = true;
    }
  }
  // final_index refers to the deduplicated list
  {
    std::vector<int> remap(survivors.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < survivors.size(); ++i)
      if (keep[i]) remap[i] = next++;
    for (HypothesisRecord& rec : trace.records)
      if (rec.final_index >= 0) rec.final_index = remap[rec.final_index];
  }
  trace.counts.final_count = static_cast<int>(result.handles.size());

  trace.segments = std::move(segments);
  result.processed = std::move(work);
  return result;
}

}  // namespace graspkit
