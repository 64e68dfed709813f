#include "minpose/synthetic.hpp"

#include <cmath>

#include <Eigen/Geometry>

namespace minpose {

namespace {

constexpr int kMaxAttempts = 100;
constexpr double kFocalEquiv = 1000.0;

Vec3 gaussian_point(Rng& rng) {
  return {rng.normal(), rng.normal(), 5.0 + rng.normal()};
}

void tangent_basis(const Vec3& d, Vec3& t1, Vec3& t2) {
  const Vec3 helper =
      std::abs(d.x()) < 0.9 ? Vec3(1.0, 0.0, 0.0) : Vec3(0.0, 1.0, 0.0);
  t1 = d.cross(helper).normalized();
  t2 = d.cross(t1);
}

// Gaussian angular perturbation split evenly over the two tangent axes so
// the total RMS angular deviation is sigma_total.
Vec3 perturb_direction(const Vec3& d, double sigma_total, Rng& rng) {
  const double sigma_axis = sigma_total / std::sqrt(2.0);
  Vec3 t1, t2;
  tangent_basis(d, t1, t2);
  return (d + sigma_axis * rng.normal() * t1 + sigma_axis * rng.normal() * t2)
      .normalized();
}

Mat3 rotation_between(const Vec3& a, const Vec3& b) {
  const Vec3 cr = a.cross(b);
  const double s = cr.norm();
  if (s < 1e-15) return Mat3::Identity();
  return rotation_from_axis_angle(cr / s, std::atan2(s, a.dot(b)));
}

// Observed bearing of a world point; fails on near-degenerate placements
// (point at the camera center or in its z = 0 plane).
bool observe_point(const Pose& gt, const Vec3& world, Vec3& bearing) {
  const Vec3 x = gt.R * world + gt.T;
  if (x.norm() < 1e-6 || std::abs(x.z()) < 1e-6) return false;
  bearing = x.normalized();
  return true;
}

// Image line from two uniform samples on the world segment. The image
// observation is noised as one rigid rotation of the interpretation plane,
// carrying both rays, so the line's angular perturbation follows the same
// convention as point bearings.
bool observe_line(const Pose& gt, const Vec3& world_a, const Vec3& world_b,
                  double noise_rad, Rng& rng, Vec3& ray_a, Vec3& ray_b) {
  const double t1 = rng.uniform();
  const double t2 = rng.uniform();
  const Vec3 q1 = world_a + t1 * (world_b - world_a);
  const Vec3 q2 = world_a + t2 * (world_b - world_a);
  if (!observe_point(gt, q1, ray_a) || !observe_point(gt, q2, ray_b))
    return false;
  if (ray_a.cross(ray_b).norm() < 1e-9) return false;
  if (noise_rad > 0.0) {
    const Vec3 n = ray_a.cross(ray_b).normalized();
    const Mat3 jitter = rotation_between(n, perturb_direction(n, noise_rad, rng));
    ray_a = jitter * ray_a;
    ray_b = jitter * ray_b;
  }
  return true;
}

void flatten_onto_random_plane(std::vector<Vec3>& pts, Rng& rng) {
  Vec3 centroid = Vec3::Zero();
  for (const Vec3& p : pts) centroid += p;
  centroid /= static_cast<double>(pts.size());
  const Vec3 normal = rng.unit_vec();
  for (Vec3& p : pts) p -= (p - centroid).dot(normal) * normal;
}

}  // namespace

Pose sample_pose(Rng& rng) {
  const Vec3 axis = rng.unit_vec();
  const double angle = rng.normal();
  const Mat3 R = rotation_from_axis_angle(axis, angle);
  const Vec3 center = rng.unit_vec();
  return {R, -(R * center)};
}

SyntheticInstance sample_instance(Problem problem, bool coplanar,
                                  double noise_px, Rng& rng) {
  if (noise_px < 0.0) throw ContractViolation("noise_px must be >= 0");
  const double noise_rad = noise_px / kFocalEquiv;
  const int n_world = problem == Problem::P2P1L ? 4 : 5;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    SyntheticInstance inst;
    inst.ground_truth = sample_pose(rng);
    inst.noise_px = noise_px;
    std::vector<Vec3> pts(n_world);
    for (Vec3& p : pts) p = gaussian_point(rng);
    if (coplanar) flatten_onto_random_plane(pts, rng);

    const int n_points = problem == Problem::P2P1L ? 2 : 1;
    bool ok = true;
    for (int i = 0; i < n_points && ok; ++i) {
      Vec3 bearing;
      ok = observe_point(inst.ground_truth, pts[i], bearing);
      if (ok && noise_rad > 0.0)
        bearing = perturb_direction(bearing, noise_rad, rng);
      if (ok) inst.points.push_back({pts[i], bearing});
    }
    const int n_lines = problem == Problem::P2P1L ? 1 : 2;
    for (int i = 0; i < n_lines && ok; ++i) {
      const Vec3& wa = pts[n_points + 2 * i];
      const Vec3& wb = pts[n_points + 2 * i + 1];
      ok = (wb - wa).norm() > 1e-6;
      Vec3 ra, rb;
      if (ok)
        ok = observe_line(inst.ground_truth, wa, wb, noise_rad, rng, ra, rb);
      if (ok) inst.lines.push_back({wa, wb, ra, rb});
    }
    if (!ok) continue;

    if (problem == Problem::P2P1L) {
      const Vec3 base = pts[1] - pts[0];
      if (base.norm() < 1e-6) continue;
      const Vec3 rel = pts[2] - pts[0];
      if (rel.cross(base).norm() / base.norm() < 1e-6) continue;
    } else {
      const Vec3 n1 = inst.lines[0].ray_a.cross(inst.lines[0].ray_b);
      const Vec3 n2 = inst.lines[1].ray_a.cross(inst.lines[1].ray_b);
      if (n1.normalized().cross(n2.normalized()).norm() < 1e-9) continue;
    }
    inst.point_labels.assign(inst.points.size(), true);
    inst.line_labels.assign(inst.lines.size(), true);
    return inst;
  }
  throw DegenerateInput("no valid instance after bounded resampling");
}

SyntheticInstance inject_outliers(const SyntheticInstance& instance,
                                  std::size_t n_total, double outlier_ratio,
                                  Rng& rng) {
  if (outlier_ratio < 0.0 || outlier_ratio >= 1.0)
    throw ContractViolation("outlier_ratio must be in [0, 1)");
  SyntheticInstance out = instance;
  const std::size_t existing = out.points.size() + out.lines.size();
  if (n_total < existing)
    throw ContractViolation("n_total below the current correspondence count");
  const std::size_t n_new = n_total - existing;
  std::size_t n_out =
      static_cast<std::size_t>(std::llround(outlier_ratio * n_total));
  if (n_out > n_new) n_out = n_new;
  const double noise_rad = out.noise_px / kFocalEquiv;
  const Pose& gt = out.ground_truth;

  auto sample_bearing = [&](bool with_noise) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      const Vec3 world = gaussian_point(rng);
      Vec3 bearing;
      if (!observe_point(gt, world, bearing)) continue;
      if (with_noise && noise_rad > 0.0)
        bearing = perturb_direction(bearing, noise_rad, rng);
      return PointCorrespondence{world, bearing};
    }
    throw DegenerateInput("no valid point after bounded resampling");
  };
  auto sample_line = [&](bool with_noise) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      const Vec3 wa = gaussian_point(rng);
      const Vec3 wb = gaussian_point(rng);
      if ((wb - wa).norm() < 1e-6) continue;
      Vec3 ra, rb;
      if (!observe_line(gt, wa, wb, with_noise ? noise_rad : 0.0, rng, ra, rb))
        continue;
      return LineCorrespondence{wa, wb, ra, rb};
    }
    throw DegenerateInput("no valid line after bounded resampling");
  };

  for (std::size_t i = 0; i < n_new; ++i) {
    const bool outlier = i < n_out;
    if (i % 2 == 0) {
      PointCorrespondence pc = sample_bearing(!outlier);
      if (outlier) pc.bearing = sample_bearing(false).bearing;
      out.points.push_back(pc);
      out.point_labels.push_back(!outlier);
    } else {
      LineCorrespondence lc = sample_line(!outlier);
      if (outlier) {
        const LineCorrespondence other = sample_line(false);
        lc.ray_a = other.ray_a;
        lc.ray_b = other.ray_b;
      }
      out.lines.push_back(lc);
      out.line_labels.push_back(!outlier);
    }
  }
  return out;
}

}  // namespace minpose
