#pragma once

#include "minpose/geometry.hpp"

namespace minpose {

// Canonical frames used by both solvers. World data is moved by world_xform
// (W0 -> W1) and camera rays are rotated by cam_rotation (C0 -> C1). In the
// canonical camera the center sits at C = (0,0,-1) and the image plane is
// z = 0, so a rotated ray r meets the image plane at (r.x/r.z, r.y/r.z, 0).

// Frame for the 2-point 1-line problem. World side: P1 at the origin, P2 at
// (X2,0,0) with X2 > 0, the first line endpoint at (X3,Y3,0) with Y3 > 0,
// the second at (X4,Y4,Z4). Camera side: the line's interpretation plane
// becomes y = 0, by default with the first line ray at (0,0,1) and the
// second at positive x; the point bearings hit the image plane at (a_i,b_i).
// The construction may spend the remaining freedom, a rotation about the
// y-axis, to keep the image points well separated from proportionality.
struct P2P1LFrame {
  RigidTransform world_xform;
  Mat3 cam_rotation;
  double X2, X3, Y3, X4, Y4, Z4;
  double a1, b1, a2, b2;
};

// Frame for the 1-point 2-line problem. World side: the point at the origin,
// line endpoints at (X_i, Y_i, Z_i), i = 1..4. Camera side: the first image
// line's interpretation plane becomes y = 0, the intersection direction of
// the two interpretation planes becomes (0,0,1), so the second image line
// passes through the image origin with plane normal (gx, gy, 0). The point
// bearing hits the image plane at (a1, b1); a2 and (a4,b4), (a5,b5) are the
// image-plane hits of the first-line and second-line rays.
struct P1P2LFrame {
  RigidTransform world_xform;
  Mat3 cam_rotation;
  double X1, Y1, Z1;
  double X2, Y2, Z2;
  double X3, Y3, Z3;
  double X4, Y4, Z4;
  double a1, b1;
  double a2;
  double a4, b4, a5, b5;
  double gx, gy;
  Vec3 rotated_bearing;
  bool stabilized;
};

// Throws DegenerateInput for coincident world points or parallel image rays,
// CollinearConfiguration when P1, P2 and the first line endpoint are
// collinear, DegenerateImagePoints when a point bearing is parallel to the
// image plane of every admissible camera orientation.
P2P1LFrame build_p2p1l_frame(const PointCorrespondence& pc1,
                             const PointCorrespondence& pc2,
                             const LineCorrespondence& lc);

// With stabilize set, the world frame is additionally rotated so the first
// line's direction aligns with the z-axis, making |Z1 - Z2| equal to the
// line endpoints' distance. Throws DegenerateInput for parallel image lines.
P1P2LFrame build_p1p2l_frame(const PointCorrespondence& pc,
                             const LineCorrespondence& lc1,
                             const LineCorrespondence& lc2, bool stabilize);

// Maps a pose solved in the canonical frame back to the original frames.
// Both poses use the standard convention X_cam = R * X_world + T.
Pose unframe_pose(const Pose& pose_in_frame, const RigidTransform& world_xform,
                  const Mat3& cam_rotation);

// Inverse of unframe_pose: expresses an original-frame pose in the frame.
Pose frame_pose(const Pose& pose, const RigidTransform& world_xform,
                const Mat3& cam_rotation);

}  // namespace minpose
