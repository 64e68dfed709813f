#include "minpose/geometry.hpp"

#include <cmath>

#include <Eigen/Geometry>

namespace minpose {

bool is_rotation(const Mat3& R, double tol) {
  const double ortho = (R.transpose() * R - Mat3::Identity()).norm();
  return ortho <= tol && std::abs(R.determinant() - 1.0) <= tol;
}

Mat3 rotation_from_axis_angle(const Vec3& axis, double angle) {
  if (std::abs(axis.norm() - 1.0) > 1e-9)
    throw ContractViolation("rotation axis must be unit length");
  Mat3 K;
  K << 0.0, -axis.z(), axis.y(),
      axis.z(), 0.0, -axis.x(),
      -axis.y(), axis.x(), 0.0;
  return Mat3::Identity() + std::sin(angle) * K + (1.0 - std::cos(angle)) * (K * K);
}

bool try_complete_rotation(double R11, double R21, double R31, double R22,
                           double R23, Mat3& out) {
  const double s = R22 * R22 + R23 * R23;
  if (s < 1e-8) return false;
  const double R12 = (-R11 * R21 * R22 + R23 * R31) / s;
  const double R13 = (-R11 * R21 * R23 - R22 * R31) / s;
  const double R32 = (-R21 * R22 * R31 - R11 * R23) / s;
  const double R33 = (-R21 * R23 * R31 + R11 * R22) / s;
  out << R11, R12, R13,
      R21, R22, R23,
      R31, R32, R33;
  return true;
}

Mat3 orthonormalize_rows(const Mat3& R) {
  Mat3 out = R;
  out.row(1).normalize();
  out.row(0) -= out.row(0).dot(out.row(1)) * out.row(1);
  out.row(0).normalize();
  out.row(2) = out.row(0).cross(out.row(1));
  return out;
}

Mat3 complete_rotation(double R11, double R21, double R31, double R22,
                       double R23) {
  const double col = R11 * R11 + R21 * R21 + R31 * R31;
  const double row = R21 * R21 + R22 * R22 + R23 * R23;
  if (std::abs(col - 1.0) > 1e-6 || std::abs(row - 1.0) > 1e-6)
    throw ContractViolation("first column and second row must be unit length");
  Mat3 R;
  if (!try_complete_rotation(R11, R21, R31, R22, R23, R))
    throw PlaneRotationDegenerate("second row nearly parallel to the x-axis");
  return R;
}

double point_residual(const Pose& pose, const PointCorrespondence& pc) {
  const Vec3 x = pose.R * pc.world_point + pose.T;
  if (x.norm() <= 1e-12)
    throw DegenerateGeometry("world point maps to the camera center");
  return std::atan2(pc.bearing.cross(x).norm(), pc.bearing.dot(x));
}

double line_residual(const Pose& pose, const LineCorrespondence& lc) {
  Vec3 n = lc.ray_a.cross(lc.ray_b);
  const double nn = n.norm();
  if (nn <= 1e-12) throw DegenerateInput("image line rays are parallel");
  n /= nn;
  double worst = 0.0;
  for (const Vec3& L : {lc.world_a, lc.world_b}) {
    const Vec3 x = pose.R * L + pose.T;
    const double xn = x.norm();
    if (xn <= 1e-12)
      throw DegenerateGeometry("line endpoint maps to the camera center");
    worst = std::max(worst, std::abs(n.dot(x)) / xn);
  }
  return worst;
}

}  // namespace minpose
