#include "minpose/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace minpose {

double rotation_error(const Mat3& R_est, const Mat3& R_gt) {
  const double trace = (R_est.transpose() * R_gt).trace();
  return std::acos(std::clamp((trace - 1.0) / 2.0, -1.0, 1.0));
}

double translation_error(const Vec3& T_est, const Vec3& T_gt) {
  const double base = T_gt.norm();
  if (base <= 1e-12) throw ZeroBaseline("ground-truth translation is zero");
  return (T_est - T_gt).norm() / base;
}

std::pair<double, double> best_solution_error(
    const std::vector<Pose>& solutions, const Pose& gt) {
  if (solutions.empty())
    return {M_PI, std::numeric_limits<double>::infinity()};
  const Pose* best = &solutions.front();
  double best_rot = rotation_error(best->R, gt.R);
  for (const Pose& s : solutions) {
    const double rot = rotation_error(s.R, gt.R);
    if (rot < best_rot) {
      best_rot = rot;
      best = &s;
    }
  }
  return {best_rot, translation_error(best->T, gt.T)};
}

ErrorStats compute_stats(const std::vector<double>& values) {
  if (values.empty()) throw DegenerateInput("empty batch");
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  ErrorStats stats;
  stats.count = sorted.size();
  stats.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
               static_cast<double>(sorted.size());
  const std::size_t mid = sorted.size() / 2;
  stats.median = sorted.size() % 2 == 1
                     ? sorted[mid]
                     : 0.5 * (sorted[mid - 1] + sorted[mid]);
  stats.min = sorted.front();
  stats.max = sorted.back();
  return stats;
}

}  // namespace minpose
