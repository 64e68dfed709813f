#pragma once

#include <cstddef>
#include <vector>

#include "minpose/geometry.hpp"
#include "minpose/rng.hpp"

namespace minpose {

// A generated benchmark scene: ground-truth pose, correspondences, and
// per-correspondence inlier labels (points first, then lines, matching the
// robust estimator's mask order).
struct SyntheticInstance {
  Pose ground_truth;
  std::vector<PointCorrespondence> points;
  std::vector<LineCorrespondence> lines;
  std::vector<bool> point_labels;
  std::vector<bool> line_labels;
  double noise_px = 0.0;

  std::vector<bool> labels() const {
    std::vector<bool> all(point_labels);
    all.insert(all.end(), line_labels.begin(), line_labels.end());
    return all;
  }
};

// Rotation from a uniform random axis and a standard-normal angle; camera
// center uniform on the unit sphere, T = -R * C.
Pose sample_pose(Rng& rng);

// Minimal instance for the chosen problem: world features drawn from
// N([0,0,5], I), image lines observed through two uniform samples on the
// world segment. With coplanar set, all world features are first flattened
// onto a random plane through their centroid. noise_px perturbs every image
// observation as angular noise of noise_px / 1000 radians total RMS
// deviation (virtual focal length 1000). Degenerate draws are resampled,
// bounded at 100 attempts.
SyntheticInstance sample_instance(Problem problem, bool coplanar,
                                  double noise_px, Rng& rng);

// Extends an instance to n_total correspondences: fresh inliers consistent
// with the ground truth (at the instance's stored noise level) plus
// round(outlier_ratio * n_total) outliers pairing fresh world features with
// projections of unrelated ones. Added features alternate points and lines.
SyntheticInstance inject_outliers(const SyntheticInstance& instance,
                                  std::size_t n_total, double outlier_ratio,
                                  Rng& rng);

}  // namespace minpose
