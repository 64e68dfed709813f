#include "minpose/frames.hpp"

#include <cmath>

#include <Eigen/Geometry>

namespace minpose {

namespace {

// Rotation of the camera frame sending primary to (0,0,1) and secondary into
// the xz-plane with positive x.
Mat3 cam_rotation_from_rays(const Vec3& primary, const Vec3& secondary) {
  const Vec3 ez = primary.normalized();
  const Vec3 m = secondary - secondary.dot(ez) * ez;
  if (m.norm() <= 1e-12) throw DegenerateInput("parallel image rays");
  // Normalizing a tiny residual amplifies rounding into an obliquity of
  // eps / |m|, so a second projection pass restores orthogonality.
  Vec3 ex = m.normalized();
  ex = (ex - ex.dot(ez) * ez).normalized();
  const Vec3 ey = ez.cross(ex);
  Mat3 Rc;
  Rc.row(0) = ex;
  Rc.row(1) = ey;
  Rc.row(2) = ez;
  return Rc;
}

// Intersection of the rotated ray with the canonical image plane z = 0,
// viewed from the center C = (0,0,-1): (a, b) = (x/z, y/z).
void project_to_image(const Vec3& rotated, double& a, double& b) {
  if (std::abs(rotated.z()) <= 1e-12)
    throw DegenerateImagePoints("bearing parallel to the image plane");
  a = rotated.x() / rotated.z();
  b = rotated.y() / rotated.z();
}

// Rotation aligning the given direction with the z-axis.
Mat3 align_with_z(const Vec3& dir) {
  const Vec3 d = dir.normalized();
  const Vec3 ez(0.0, 0.0, 1.0);
  const Vec3 cr = d.cross(ez);
  const double s = cr.norm();
  if (s < 1e-12) {
    if (d.z() > 0.0) return Mat3::Identity();
    return rotation_from_axis_angle(Vec3(1.0, 0.0, 0.0), M_PI);
  }
  return rotation_from_axis_angle(cr / s, std::atan2(s, d.dot(ez)));
}

}  // namespace

P2P1LFrame build_p2p1l_frame(const PointCorrespondence& pc1,
                             const PointCorrespondence& pc2,
                             const LineCorrespondence& lc) {
  const Vec3 base = pc2.world_point - pc1.world_point;
  const double X2 = base.norm();
  if (X2 <= 1e-9) throw DegenerateInput("coincident world points");
  const Vec3 ex = base / X2;
  const Vec3 rel = lc.world_a - pc1.world_point;
  const Vec3 w = rel - rel.dot(ex) * ex;
  const double Y3 = w.norm();
  if (Y3 <= 1e-9)
    throw CollinearConfiguration("line endpoint collinear with the points");
  const Vec3 ey = w / Y3;
  const Vec3 ez = ex.cross(ey);
  Mat3 Rw;
  Rw.row(0) = ex;
  Rw.row(1) = ey;
  Rw.row(2) = ez;

  P2P1LFrame frame;
  frame.world_xform = {Rw, -(Rw * pc1.world_point)};
  frame.X2 = X2;
  const Vec3 l3 = frame.world_xform.apply(lc.world_a);
  frame.X3 = l3.x();
  frame.Y3 = l3.y();
  const Vec3 l4 = frame.world_xform.apply(lc.world_b);
  frame.X4 = l4.x();
  frame.Y4 = l4.y();
  frame.Z4 = l4.z();

  // Aligning the line's interpretation plane with y = 0 leaves the camera
  // frame free to rotate about the y-axis. The pose reduction later divides
  // by the image-point determinant a1*b2 - a2*b1, which vanishes whenever the
  // plane of the two bearings contains the canonical z-axis, so when the
  // default orientation scores badly the best of a few such rotations is
  // taken instead.
  const Mat3 Rc0 = cam_rotation_from_rays(lc.ray_a, lc.ray_b);
  double best = -1.0;
  for (const double angle : {0.0, M_PI_2, M_PI_4, -M_PI_4}) {
    const Mat3 Rc =
        angle == 0.0
            ? Rc0
            : Mat3(rotation_from_axis_angle(Vec3(0.0, 1.0, 0.0), angle) * Rc0);
    const Vec3 r1 = Rc * pc1.bearing;
    const Vec3 r2 = Rc * pc2.bearing;
    if (std::abs(r1.z()) <= 1e-12 || std::abs(r2.z()) <= 1e-12) continue;
    const double a1 = r1.x() / r1.z();
    const double b1 = r1.y() / r1.z();
    const double a2 = r2.x() / r2.z();
    const double b2 = r2.y() / r2.z();
    const double score = std::abs(a1 * b2 - a2 * b1) /
                         ((1.0 + std::abs(a1) + std::abs(b1)) *
                          (1.0 + std::abs(a2) + std::abs(b2)));
    if (score > best) {
      best = score;
      frame.cam_rotation = Rc;
      frame.a1 = a1;
      frame.b1 = b1;
      frame.a2 = a2;
      frame.b2 = b2;
    }
    if (angle == 0.0 && best > 1e-3) break;
  }
  if (best < 0.0)
    throw DegenerateImagePoints("bearing parallel to the image plane");
  return frame;
}

P1P2LFrame build_p1p2l_frame(const PointCorrespondence& pc,
                             const LineCorrespondence& lc1,
                             const LineCorrespondence& lc2, bool stabilize) {
  const Vec3 cr1 = lc1.ray_a.cross(lc1.ray_b);
  if (cr1.norm() <= 1e-12) throw DegenerateInput("parallel rays on line 1");
  const Vec3 n1 = cr1.normalized();
  const Vec3 cr2 = lc2.ray_a.cross(lc2.ray_b);
  if (cr2.norm() <= 1e-12) throw DegenerateInput("parallel rays on line 2");
  const Vec3 n2 = cr2.normalized();

  const Vec3 cr = n1.cross(n2);
  if (cr.norm() <= 1e-12) throw DegenerateInput("parallel image lines");
  Vec3 d12 = cr.normalized();
  if (d12.dot(lc1.ray_a + lc1.ray_b) < 0.0) d12 = -d12;

  const Vec3 ey = n1;
  const Vec3 ez = d12;
  const Vec3 ex = ey.cross(ez);
  Mat3 Rc;
  Rc.row(0) = ex;
  Rc.row(1) = ey;
  Rc.row(2) = ez;

  P1P2LFrame frame;
  frame.cam_rotation = Rc;
  frame.stabilized = stabilize;
  const Mat3 Rw =
      stabilize ? align_with_z(lc1.world_a - lc1.world_b) : Mat3::Identity();
  frame.world_xform = {Rw, -(Rw * pc.world_point)};

  const Vec3 l1 = frame.world_xform.apply(lc1.world_a);
  const Vec3 l2 = frame.world_xform.apply(lc1.world_b);
  const Vec3 l3 = frame.world_xform.apply(lc2.world_a);
  const Vec3 l4 = frame.world_xform.apply(lc2.world_b);
  frame.X1 = l1.x();
  frame.Y1 = l1.y();
  frame.Z1 = l1.z();
  frame.X2 = l2.x();
  frame.Y2 = l2.y();
  frame.Z2 = l2.z();
  frame.X3 = l3.x();
  frame.Y3 = l3.y();
  frame.Z3 = l3.z();
  frame.X4 = l4.x();
  frame.Y4 = l4.y();
  frame.Z4 = l4.z();

  frame.rotated_bearing = Rc * pc.bearing;
  project_to_image(frame.rotated_bearing, frame.a1, frame.b1);

  // Line-1 rays land on the image x-axis; one of them may pass through the
  // center of projection (z = 0), but never both (they are not parallel).
  const Vec3 p1a = Rc * lc1.ray_a;
  const Vec3 p1b = Rc * lc1.ray_b;
  frame.a2 = std::abs(p1a.z()) > 1e-9 ? p1a.x() / p1a.z() : p1b.x() / p1b.z();

  const Vec3 p2a = Rc * lc2.ray_a;
  const Vec3 p2b = Rc * lc2.ray_b;
  frame.a4 = p2a.x() / p2a.z();
  frame.b4 = p2a.y() / p2a.z();
  frame.a5 = p2b.x() / p2b.z();
  frame.b5 = p2b.y() / p2b.z();

  const Vec3 g = Rc * n2;
  frame.gx = g.x();
  frame.gy = g.y();
  return frame;
}

Pose unframe_pose(const Pose& pose_in_frame, const RigidTransform& world_xform,
                  const Mat3& cam_rotation) {
  Pose out;
  out.R = cam_rotation.transpose() * pose_in_frame.R * world_xform.R;
  out.T = cam_rotation.transpose() *
          (pose_in_frame.R * world_xform.t + pose_in_frame.T);
  return out;
}

Pose frame_pose(const Pose& pose, const RigidTransform& world_xform,
                const Mat3& cam_rotation) {
  Pose out;
  out.R = cam_rotation * pose.R * world_xform.R.transpose();
  out.T = cam_rotation * pose.T - out.R * world_xform.t;
  return out;
}

}  // namespace minpose
