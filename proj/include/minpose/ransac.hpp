#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "minpose/geometry.hpp"

namespace minpose {

struct RansacConfig {
  std::size_t max_iters = 100000;
  std::size_t min_iters = 1000;
  double success_prob = 0.9999;
  double inlier_threshold_px = 1.0;
  std::uint64_t seed = 0;
  Problem solver = Problem::P2P1L;
};

struct RansacResult {
  Pose best_pose;
  std::vector<bool> inlier_mask;  // points first, then lines
  std::size_t iterations_run = 0;
  std::size_t score = 0;
};

struct ScoredModel {
  std::vector<bool> mask;
  std::size_t count = 0;
  double residual_sum = 0.0;  // summed residuals of the inliers only
};

// Marks correspondences with residual <= threshold_px / 1000 (radians for
// points, normalized plane distance for lines). Never throws; residuals
// that cannot be evaluated count as outliers.
ScoredModel score_model(const Pose& pose,
                        const std::vector<PointCorrespondence>& points,
                        const std::vector<LineCorrespondence>& lines,
                        double threshold_px);

// Plain adaptive RANSAC over the chosen minimal solver. Every solution of a
// minimal sample is scored; the best model maximizes the inlier count with
// ties broken by lower summed inlier residual, and is returned as-is (no
// local optimization). Deterministic given cfg.seed and input order. Throws
// InsufficientData when the minimal sample cannot be drawn and NoModel when
// no hypothesis ever produced a pose.
RansacResult run_ransac(const std::vector<PointCorrespondence>& points,
                        const std::vector<LineCorrespondence>& lines,
                        const RansacConfig& cfg);

}  // namespace minpose
