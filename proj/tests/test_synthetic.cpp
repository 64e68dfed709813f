#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>
#include <Eigen/Eigenvalues>

#include "minpose/geometry.hpp"
#include "minpose/metrics.hpp"
#include "minpose/rng.hpp"
#include "minpose/synthetic.hpp"

#include "helpers.hpp"

using minpose::LineCorrespondence;
using minpose::Mat3;
using minpose::PointCorrespondence;
using minpose::Pose;
using minpose::Problem;
using minpose::Rng;
using minpose::SyntheticInstance;
using minpose::Vec3;

namespace {

// Smallest-to-total scatter ratio of the five world features; zero means
// they lie on a common plane.
double coplanarity_defect(const SyntheticInstance& inst) {
  std::vector<Vec3> pts;
  for (const PointCorrespondence& pc : inst.points)
    pts.push_back(pc.world_point);
  for (const LineCorrespondence& lc : inst.lines) {
    pts.push_back(lc.world_a);
    pts.push_back(lc.world_b);
  }
  Vec3 mean = Vec3::Zero();
  for (const Vec3& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  Mat3 scatter = Mat3::Zero();
  for (const Vec3& p : pts) scatter += (p - mean) * (p - mean).transpose();
  Eigen::SelfAdjointEigenSolver<Mat3> eig(scatter);
  return eig.eigenvalues()(0) / (scatter.trace() + 1e-300);
}

}  // namespace

TEST_CASE("sample_pose is deterministic and puts the camera on the sphere") {
  Rng a(601), b(601);
  const Pose pa = minpose::sample_pose(a);
  const Pose pb = minpose::sample_pose(b);
  CHECK((pa.R - pb.R).norm() == 0.0);
  CHECK((pa.T - pb.T).norm() == 0.0);

  Rng rng(602);
  for (int i = 0; i < 1000; ++i) {
    const Pose pose = minpose::sample_pose(rng);
    CHECK(minpose::is_rotation(pose.R));
    const Vec3 center = -(pose.R.transpose() * pose.T);
    CHECK(center.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sample_instance produces consistent noiseless observations") {
  Rng rng(603);
  for (int i = 0; i < 1000; ++i) {
    const Problem problem = (i % 2) == 0 ? Problem::P2P1L : Problem::P1P2L;
    const SyntheticInstance inst =
        minpose::sample_instance(problem, false, 0.0, rng);

    const std::size_t want_points = problem == Problem::P2P1L ? 2 : 1;
    const std::size_t want_lines = problem == Problem::P2P1L ? 1 : 2;
    REQUIRE(inst.points.size() == want_points);
    REQUIRE(inst.lines.size() == want_lines);
    CHECK(inst.point_labels == std::vector<bool>(want_points, true));
    CHECK(inst.line_labels == std::vector<bool>(want_lines, true));
    CHECK(inst.noise_px == 0.0);
    CHECK(minpose::is_rotation(inst.ground_truth.R));

    for (const PointCorrespondence& pc : inst.points) {
      CHECK(pc.bearing.norm() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(minpose::point_residual(inst.ground_truth, pc) < 1e-12);
    }
    for (const LineCorrespondence& lc : inst.lines) {
      CHECK(lc.ray_a.norm() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(lc.ray_b.norm() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(minpose::line_residual(inst.ground_truth, lc) < 1e-12);
    }
  }
}

TEST_CASE("sample_instance is deterministic in the seed") {
  Rng a(604), b(604);
  const SyntheticInstance ia =
      minpose::sample_instance(Problem::P1P2L, false, 0.5, a);
  const SyntheticInstance ib =
      minpose::sample_instance(Problem::P1P2L, false, 0.5, b);
  CHECK((ia.ground_truth.R - ib.ground_truth.R).norm() == 0.0);
  CHECK((ia.points[0].world_point - ib.points[0].world_point).norm() == 0.0);
  CHECK((ia.points[0].bearing - ib.points[0].bearing).norm() == 0.0);
  CHECK((ia.lines[1].ray_a - ib.lines[1].ray_a).norm() == 0.0);
}

TEST_CASE("sample_instance flattens coplanar scenes onto a single plane") {
  Rng rng(605);
  for (int i = 0; i < 1000; ++i) {
    const Problem problem = (i % 2) == 0 ? Problem::P2P1L : Problem::P1P2L;
    const SyntheticInstance flat =
        minpose::sample_instance(problem, true, 0.0, rng);
    CHECK(coplanarity_defect(flat) < 1e-12);
    for (const PointCorrespondence& pc : flat.points)
      CHECK(minpose::point_residual(flat.ground_truth, pc) < 1e-12);
    for (const LineCorrespondence& lc : flat.lines)
      CHECK(minpose::line_residual(flat.ground_truth, lc) < 1e-12);
  }

  const SyntheticInstance deep =
      minpose::sample_instance(Problem::P1P2L, false, 0.0, rng);
  CHECK(coplanarity_defect(deep) > 1e-3);
}

TEST_CASE("noise perturbs point bearings with the configured magnitude") {
  // Angular noise of s = noise_px / 1000 radians total RMS split over two
  // tangent axes makes the residual Rayleigh with median s * sqrt(ln 2).
  Rng rng(606);
  const double noise_px = 2.0;
  std::vector<double> residuals;
  for (int i = 0; i < 2000; ++i) {
    const SyntheticInstance inst =
        minpose::sample_instance(Problem::P2P1L, false, noise_px, rng);
    CHECK(inst.noise_px == noise_px);
    for (const PointCorrespondence& pc : inst.points) {
      CHECK(pc.bearing.norm() == doctest::Approx(1.0).epsilon(1e-12));
      residuals.push_back(minpose::point_residual(inst.ground_truth, pc));
    }
  }
  std::sort(residuals.begin(), residuals.end());
  const double med = residuals[residuals.size() / 2];
  const double expected = noise_px / 1000.0 * std::sqrt(std::log(2.0));
  CHECK(med > 0.75 * expected);
  CHECK(med < 1.25 * expected);
}

TEST_CASE("noise tilts line interpretation planes by the same scale") {
  Rng rng(607);
  const double noise_px = 2.0;
  std::vector<double> residuals;
  for (int i = 0; i < 2000; ++i) {
    const SyntheticInstance inst =
        minpose::sample_instance(Problem::P1P2L, false, noise_px, rng);
    for (const LineCorrespondence& lc : inst.lines) {
      CHECK(lc.ray_a.norm() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(lc.ray_b.norm() == doctest::Approx(1.0).epsilon(1e-12));
      residuals.push_back(minpose::line_residual(inst.ground_truth, lc));
    }
  }
  std::sort(residuals.begin(), residuals.end());
  const double med = residuals[residuals.size() / 2];
  const double s = noise_px / 1000.0;
  CHECK(med > 0.05 * s);
  CHECK(med < 2.0 * s);
}

TEST_CASE("inject_outliers keeps the originals and labels the additions") {
  Rng rng(608);
  const SyntheticInstance base =
      minpose::sample_instance(Problem::P2P1L, false, 0.0, rng);
  const std::size_t n_total = 100;
  const double ratio = 0.3;
  const SyntheticInstance ext =
      minpose::inject_outliers(base, n_total, ratio, rng);

  CHECK(ext.points.size() + ext.lines.size() == n_total);
  CHECK(ext.point_labels.size() == ext.points.size());
  CHECK(ext.line_labels.size() == ext.lines.size());

  for (std::size_t i = 0; i < base.points.size(); ++i) {
    CHECK((ext.points[i].world_point - base.points[i].world_point).norm() ==
          0.0);
    CHECK((ext.points[i].bearing - base.points[i].bearing).norm() == 0.0);
    CHECK(ext.point_labels[i]);
  }
  for (std::size_t i = 0; i < base.lines.size(); ++i) {
    CHECK((ext.lines[i].world_a - base.lines[i].world_a).norm() == 0.0);
    CHECK(ext.line_labels[i]);
  }

  std::size_t n_outliers = 0;
  for (std::size_t i = 0; i < ext.points.size(); ++i) {
    const bool inlier = ext.point_labels[i];
    const double r = minpose::point_residual(ext.ground_truth, ext.points[i]);
    if (inlier) {
      CHECK(r < 1e-9);
    } else {
      ++n_outliers;
      CHECK(r > 1e-3);
    }
  }
  for (std::size_t i = 0; i < ext.lines.size(); ++i) {
    const bool inlier = ext.line_labels[i];
    const double r = minpose::line_residual(ext.ground_truth, ext.lines[i]);
    if (inlier) {
      CHECK(r < 1e-9);
    } else {
      ++n_outliers;
      CHECK(r > 1e-4);
    }
  }
  CHECK(n_outliers ==
        static_cast<std::size_t>(std::llround(ratio * n_total)));
}

TEST_CASE("inject_outliers respects noisy inlier consistency at threshold") {
  Rng rng(609);
  SyntheticInstance base =
      minpose::sample_instance(Problem::P1P2L, false, 0.5, rng);
  const SyntheticInstance ext = minpose::inject_outliers(base, 60, 0.5, rng);
  CHECK(ext.points.size() + ext.lines.size() == 60);

  std::size_t n_out = 0;
  const std::vector<bool> labels = ext.labels();
  for (bool label : labels) n_out += label ? 0 : 1;
  CHECK(n_out == 30);

  // Inliers carry the stored noise level: residuals stay within a few
  // multiples of 0.5 px at the virtual focal length.
  for (std::size_t i = 0; i < ext.points.size(); ++i)
    if (ext.point_labels[i])
      CHECK(minpose::point_residual(ext.ground_truth, ext.points[i]) < 5e-3);
}

TEST_CASE("instances keep every feature well in front of the camera rays") {
  Rng rng(610);
  for (int i = 0; i < 1000; ++i) {
    const Problem problem = (i % 2) == 0 ? Problem::P2P1L : Problem::P1P2L;
    const SyntheticInstance inst =
        minpose::sample_instance(problem, false, 0.0, rng);
    for (const PointCorrespondence& pc : inst.points) {
      const Vec3 x = inst.ground_truth.R * pc.world_point +
                     inst.ground_truth.T;
      CHECK(x.norm() > 1e-6);
      CHECK(pc.bearing.dot(x) > 0.0);
    }
  }
}
