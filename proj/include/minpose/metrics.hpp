#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "minpose/geometry.hpp"

namespace minpose {

struct ErrorStats {
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

// Angle of R_est^T * R_gt, computed as arccos((trace - 1) / 2) with the
// argument clamped into [-1, 1].
double rotation_error(const Mat3& R_est, const Mat3& R_gt);

// ||T_est - T_gt|| / ||T_gt||. Throws ZeroBaseline when ||T_gt|| <= 1e-12.
double translation_error(const Vec3& T_est, const Vec3& T_gt);

// (rotation error, translation error) of the solution minimizing rotation
// error; an empty list yields the failure marker (pi, +infinity).
std::pair<double, double> best_solution_error(const std::vector<Pose>& solutions,
                                              const Pose& gt);

// Throws DegenerateInput on an empty batch.
ErrorStats compute_stats(const std::vector<double>& values);

}  // namespace minpose
