#include <cmath>

#include <doctest.h>
#include <Eigen/Geometry>

#include "minpose/geometry.hpp"
#include "minpose/rng.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

using minpose::ContractViolation;
using minpose::DegenerateGeometry;
using minpose::DegenerateInput;
using minpose::LineCorrespondence;
using minpose::Mat3;
using minpose::PlaneRotationDegenerate;
using minpose::PointCorrespondence;
using minpose::Pose;
using minpose::RigidTransform;
using minpose::Rng;
using minpose::Vec3;

TEST_CASE("rotation_from_axis_angle maps basis vectors for a quarter turn") {
  const Mat3 R = minpose::rotation_from_axis_angle(Vec3(0, 0, 1), M_PI / 2);
  CHECK((R * Vec3(1, 0, 0) - Vec3(0, 1, 0)).norm() < 1e-14);
  CHECK((R * Vec3(0, 1, 0) - Vec3(-1, 0, 0)).norm() < 1e-14);
  CHECK((R * Vec3(0, 0, 1) - Vec3(0, 0, 1)).norm() < 1e-14);
}

TEST_CASE("rotation_from_axis_angle with zero angle is the identity") {
  const Mat3 R = minpose::rotation_from_axis_angle(Vec3(1, 0, 0), 0.0);
  CHECK((R - Mat3::Identity()).norm() < 1e-15);
}

TEST_CASE("rotation_from_axis_angle rejects a non-unit axis") {
  CHECK_THROWS_AS(minpose::rotation_from_axis_angle(Vec3(1, 1, 0), 0.3),
                  ContractViolation);
  CHECK_THROWS_AS(minpose::rotation_from_axis_angle(Vec3(0, 0, 0), 0.3),
                  ContractViolation);
}

TEST_CASE("rotation_from_axis_angle matches the quaternion construction") {
  Rng rng(101);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 axis = rng.unit_vec();
    const double angle = 4.0 * (rng.uniform() - 0.5) * M_PI;
    const Mat3 R = minpose::rotation_from_axis_angle(axis, angle);
    const Mat3 Q = oracles::quaternion_rotation(axis, angle);
    CHECK((R - Q).norm() < 1e-13);
    CHECK(minpose::is_rotation(R));
  }
}

TEST_CASE("rotations about a common axis compose by adding angles") {
  Rng rng(102);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 axis = rng.unit_vec();
    const double a = rng.normal();
    const double b = rng.normal();
    const Mat3 lhs = minpose::rotation_from_axis_angle(axis, a) *
                     minpose::rotation_from_axis_angle(axis, b);
    const Mat3 rhs = minpose::rotation_from_axis_angle(axis, a + b);
    CHECK((lhs - rhs).norm() < 1e-13);
  }
}

TEST_CASE("is_rotation accepts rotations and rejects non-rotations") {
  CHECK(minpose::is_rotation(Mat3::Identity()));
  CHECK_FALSE(minpose::is_rotation(2.0 * Mat3::Identity()));

  Mat3 reflection = Mat3::Identity();
  reflection(2, 2) = -1.0;
  CHECK_FALSE(minpose::is_rotation(reflection));

  Rng rng(103);
  for (int i = 0; i < 1000; ++i) {
    Mat3 R = helpers::random_rotation(rng);
    CHECK(minpose::is_rotation(R));
    R(0, 1) += 1e-6;
    CHECK_FALSE(minpose::is_rotation(R, 1e-9));
  }
}

TEST_CASE("complete_rotation reconstructs the four missing entries") {
  Rng rng(104);
  int done = 0;
  while (done < 1000) {
    const Mat3 R = helpers::random_rotation(rng);
    if (R(1, 1) * R(1, 1) + R(1, 2) * R(1, 2) < 1e-6) continue;
    const Mat3 C = minpose::complete_rotation(R(0, 0), R(1, 0), R(2, 0),
                                              R(1, 1), R(1, 2));
    CHECK((C - R).norm() < 1e-9);
    ++done;
  }
}

TEST_CASE("complete_rotation rejects inconsistent known entries") {
  CHECK_THROWS_AS(minpose::complete_rotation(2.0, 0.0, 0.0, 1.0, 0.0),
                  ContractViolation);
  CHECK_THROWS_AS(minpose::complete_rotation(1.0, 0.0, 0.0, 0.7, 0.0),
                  ContractViolation);
}

TEST_CASE("complete_rotation reports the second-row degeneracy") {
  // Rotation with second row (1, 0, 0): swap x/y and flip z.
  CHECK_THROWS_AS(minpose::complete_rotation(0.0, 1.0, 0.0, 0.0, 0.0),
                  PlaneRotationDegenerate);
}

TEST_CASE("point_residual is zero for an exact observation") {
  Rng rng(105);
  for (int i = 0; i < 1000; ++i) {
    const Pose pose{helpers::random_rotation(rng),
                    Vec3(rng.normal(), rng.normal(), rng.normal())};
    const Vec3 p(rng.normal(), rng.normal(), rng.normal() + 5.0);
    const Vec3 x = pose.R * p + pose.T;
    if (x.norm() < 1e-3) continue;
    const PointCorrespondence pc{p, x.normalized()};
    CHECK(minpose::point_residual(pose, pc) < 1e-12);
  }
}

TEST_CASE("point_residual equals the injected bearing angle") {
  Rng rng(106);
  for (int i = 0; i < 1000; ++i) {
    const Pose pose{helpers::random_rotation(rng),
                    Vec3(rng.normal(), rng.normal(), rng.normal())};
    const Vec3 p(rng.normal(), rng.normal(), rng.normal() + 5.0);
    const Vec3 x = pose.R * p + pose.T;
    if (x.norm() < 1e-3) continue;
    const double angle = rng.uniform() * 3.0;
    const Vec3 steer = x.cross(Vec3(0.123, -0.456, 0.789));
    if (steer.norm() < 1e-6) continue;
    const Vec3 axis = steer.normalized();
    const Mat3 Q = minpose::rotation_from_axis_angle(axis, angle);
    const PointCorrespondence pc{p, (Q * x).normalized()};
    CHECK(minpose::point_residual(pose, pc) ==
          doctest::Approx(angle).epsilon(1e-9));
  }
}

TEST_CASE("point_residual covers the opposite and perpendicular bearings") {
  const Pose pose{Mat3::Identity(), Vec3(0, 0, 1)};
  const PointCorrespondence opposite{Vec3(0, 0, 1), Vec3(0, 0, -1)};
  CHECK(minpose::point_residual(pose, opposite) ==
        doctest::Approx(M_PI).epsilon(1e-12));
  const PointCorrespondence perp{Vec3(0, 0, 1), Vec3(1, 0, 0)};
  CHECK(minpose::point_residual(pose, perp) ==
        doctest::Approx(M_PI / 2).epsilon(1e-12));
}

TEST_CASE("point_residual rejects a point at the camera center") {
  const Pose pose{Mat3::Identity(), Vec3(0, 0, 1)};
  const PointCorrespondence pc{Vec3(0, 0, -1), Vec3(0, 0, 1)};
  CHECK_THROWS_AS(minpose::point_residual(pose, pc), DegenerateGeometry);
}

TEST_CASE("line_residual is zero when both endpoints stay on the plane") {
  Rng rng(107);
  for (int i = 0; i < 1000; ++i) {
    const Pose pose{helpers::random_rotation(rng),
                    Vec3(rng.normal(), rng.normal(), rng.normal())};
    const Vec3 a(rng.normal(), rng.normal(), rng.normal() + 5.0);
    const Vec3 b(rng.normal(), rng.normal(), rng.normal() + 5.0);
    const Vec3 xa = pose.R * a + pose.T;
    const Vec3 xb = pose.R * b + pose.T;
    if (xa.norm() < 1e-3 || xb.norm() < 1e-3) continue;
    if (xa.cross(xb).norm() < 1e-6) continue;
    const LineCorrespondence lc{a, b, xa.normalized(), xb.normalized()};
    CHECK(minpose::line_residual(pose, lc) < 1e-12);
  }
}

TEST_CASE("line_residual measures the normalized plane offset") {
  // Interpretation plane y = 0; endpoint at height h sits at distance
  // h / sqrt(1 + h^2) after normalization.
  const Pose pose{Mat3::Identity(), Vec3::Zero()};
  const double h = 0.25;
  const LineCorrespondence lc{Vec3(0, h, 1), Vec3(0, 0, 2), Vec3(0, 0, 1),
                              Vec3(1, 0, 1).normalized()};
  CHECK(minpose::line_residual(pose, lc) ==
        doctest::Approx(h / std::sqrt(1.0 + h * h)).epsilon(1e-12));
}

TEST_CASE("line_residual rejects parallel rays and a center endpoint") {
  const Pose pose{Mat3::Identity(), Vec3::Zero()};
  const LineCorrespondence parallel{Vec3(0, 0, 1), Vec3(1, 0, 1),
                                    Vec3(0, 0, 1), Vec3(0, 0, 1)};
  CHECK_THROWS_AS(minpose::line_residual(pose, parallel), DegenerateInput);

  const LineCorrespondence at_center{Vec3(0, 0, 0), Vec3(1, 0, 1),
                                     Vec3(0, 0, 1),
                                     Vec3(1, 0, 1).normalized()};
  CHECK_THROWS_AS(minpose::line_residual(pose, at_center), DegenerateGeometry);
}

TEST_CASE("rigid transforms compose and invert consistently") {
  Rng rng(108);
  for (int i = 0; i < 1000; ++i) {
    const RigidTransform a = helpers::random_rigid(rng);
    const RigidTransform b = helpers::random_rigid(rng);
    const Vec3 p(rng.normal(), rng.normal(), rng.normal());
    CHECK((minpose::compose(a, b).apply(p) - a.apply(b.apply(p))).norm() <
          1e-12);
    CHECK((a.inverse().apply(a.apply(p)) - p).norm() < 1e-12);
  }
}
