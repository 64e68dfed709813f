#pragma once

#include <Eigen/Core>

#include "minpose/errors.hpp"

namespace minpose {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

enum class Problem { P2P1L, P1P2L };

// Camera pose mapping world coordinates into the camera frame:
// X_cam = R * X_world + T. The camera center is at -R^T * T.
struct Pose {
  Mat3 R;
  Vec3 T;
};

// A 3D world point paired with its observed unit bearing in camera frame.
struct PointCorrespondence {
  Vec3 world_point;
  Vec3 bearing;
};

// A 3D line (two distinct spanning points) paired with an image line given
// as two distinct unit bearings lying on it. The interpretation plane of the
// image line has normal ray_a x ray_b.
struct LineCorrespondence {
  Vec3 world_a;
  Vec3 world_b;
  Vec3 ray_a;
  Vec3 ray_b;
};

// Rotation followed by translation: x -> R * x + t.
struct RigidTransform {
  Mat3 R;
  Vec3 t;

  Vec3 apply(const Vec3& p) const { return R * p + t; }

  RigidTransform inverse() const { return {R.transpose(), -(R.transpose() * t)}; }

  static RigidTransform identity() { return {Mat3::Identity(), Vec3::Zero()}; }
};

// (a * b)(x) = a(b(x)).
inline RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
  return {a.R * b.R, a.R * b.t + a.t};
}

bool is_rotation(const Mat3& R, double tol = 1e-9);

// Rodrigues formula. The axis must be unit length within 1e-9.
Mat3 rotation_from_axis_angle(const Vec3& axis, double angle);

// Completes a rotation matrix from its first column (R11, R21, R31) and the
// rest of its second row (R22, R23). The five entries must satisfy the unit
// column/row constraints within 1e-6. Throws PlaneRotationDegenerate when
// R22^2 + R23^2 < 1e-8.
Mat3 complete_rotation(double R11, double R21, double R31, double R22, double R23);

// Non-throwing variant without the unit-norm precondition checks; returns
// false instead of throwing on the plane-rotation degeneracy. Used on solver
// candidates whose entries are only approximately consistent.
bool try_complete_rotation(double R11, double R21, double R31, double R22,
                           double R23, Mat3& out);

// Snaps a nearly orthonormal matrix onto SO(3): the second row keeps its
// direction, the first row drops its component along it, and the third row
// is their cross product. A residual orthogonality defect of order 1e-10
// would otherwise inflate trace-based angle comparisons to its square root.
Mat3 orthonormalize_rows(const Mat3& R);

// Angle in [0, pi] between the observed bearing and the transformed point.
double point_residual(const Pose& pose, const PointCorrespondence& pc);

// Normalized distance of the transformed line endpoints from the image
// line's interpretation plane; max over the two endpoints.
double line_residual(const Pose& pose, const LineCorrespondence& lc);

}  // namespace minpose
