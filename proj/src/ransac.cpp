#include "minpose/ransac.hpp"

#include <cmath>
#include <random>

#include "minpose/p1p2l.hpp"
#include "minpose/p2p1l.hpp"

namespace minpose {

namespace {

// Standard adaptive bound: iterations needed to draw at least one all-inlier
// minimal sample (3 features) with the requested probability.
std::size_t adaptive_iterations(double inlier_ratio, double success_prob,
                                std::size_t max_iters) {
  if (inlier_ratio <= 0.0) return max_iters;
  if (inlier_ratio >= 1.0) return 0;
  const double w3 = inlier_ratio * inlier_ratio * inlier_ratio;
  const double denom = std::log1p(-w3);
  if (denom >= 0.0) return max_iters;
  const double needed = std::ceil(std::log1p(-success_prob) / denom);
  if (!(needed < static_cast<double>(max_iters))) return max_iters;
  return static_cast<std::size_t>(needed);
}

}  // namespace

ScoredModel score_model(const Pose& pose,
                        const std::vector<PointCorrespondence>& points,
                        const std::vector<LineCorrespondence>& lines,
                        double threshold_px) {
  const double threshold = threshold_px / 1000.0;
  ScoredModel out;
  out.mask.reserve(points.size() + lines.size());
  auto tally = [&](double residual, bool evaluated) {
    const bool inlier =
        evaluated && std::isfinite(residual) && residual <= threshold;
    out.mask.push_back(inlier);
    if (inlier) {
      ++out.count;
      out.residual_sum += residual;
    }
  };
  for (const PointCorrespondence& pc : points) {
    double r = 0.0;
    bool ok = true;
    try {
      r = point_residual(pose, pc);
    } catch (const Error&) {
      ok = false;
    }
    tally(r, ok);
  }
  for (const LineCorrespondence& lc : lines) {
    double r = 0.0;
    bool ok = true;
    try {
      r = line_residual(pose, lc);
    } catch (const Error&) {
      ok = false;
    }
    tally(r, ok);
  }
  return out;
}

RansacResult run_ransac(const std::vector<PointCorrespondence>& points,
                        const std::vector<LineCorrespondence>& lines,
                        const RansacConfig& cfg) {
  if (cfg.min_iters > cfg.max_iters)
    throw ContractViolation("min_iters exceeds max_iters");
  if (!(cfg.success_prob > 0.0 && cfg.success_prob < 1.0))
    throw ContractViolation("success_prob must be in (0, 1)");
  if (!(cfg.inlier_threshold_px > 0.0))
    throw ContractViolation("inlier threshold must be positive");
  const bool two_points = cfg.solver == Problem::P2P1L;
  const std::size_t need_points = two_points ? 2 : 1;
  const std::size_t need_lines = two_points ? 1 : 2;
  if (points.size() < need_points || lines.size() < need_lines)
    throw InsufficientData("fewer correspondences than the minimal sample");

  std::mt19937_64 eng(cfg.seed);
  auto pick = [&eng](std::size_t n) {
    return static_cast<std::size_t>(eng() % n);
  };
  const double n_corr = static_cast<double>(points.size() + lines.size());

  bool have_best = false;
  ScoredModel best;
  Pose best_pose;
  std::size_t needed = cfg.max_iters;
  std::size_t it = 0;
  for (; it < cfg.max_iters && (it < cfg.min_iters || it < needed); ++it) {
    std::vector<Pose> candidates;
    try {
      if (two_points) {
        const std::size_t i1 = pick(points.size());
        std::size_t i2 = i1;
        while (i2 == i1) i2 = pick(points.size());
        const std::size_t j = pick(lines.size());
        candidates = solve_p2p1l(points[i1], points[i2], lines[j]);
      } else {
        const std::size_t i = pick(points.size());
        const std::size_t j1 = pick(lines.size());
        std::size_t j2 = j1;
        while (j2 == j1) j2 = pick(lines.size());
        candidates = solve_p1p2l(points[i], lines[j1], lines[j2]);
      }
    } catch (const Error&) {
      continue;
    }
    for (const Pose& pose : candidates) {
      ScoredModel scored =
          score_model(pose, points, lines, cfg.inlier_threshold_px);
      const bool better =
          !have_best || scored.count > best.count ||
          (scored.count == best.count &&
           scored.residual_sum < best.residual_sum);
      if (!better) continue;
      have_best = true;
      best = std::move(scored);
      best_pose = pose;
      needed = adaptive_iterations(static_cast<double>(best.count) / n_corr,
                                   cfg.success_prob, cfg.max_iters);
    }
  }
  if (!have_best) throw NoModel("no hypothesis produced a valid pose");

  RansacResult result;
  result.best_pose = best_pose;
  result.inlier_mask = best.mask;
  result.iterations_run = it;
  result.score = best.count;
  return result;
}

}  // namespace minpose
