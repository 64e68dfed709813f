#include "minpose/p1p2l.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>

#include "minpose/roots.hpp"

namespace minpose {

namespace {

// Max residual of an in-frame pose against the framed data: angular error of
// the point (framed to the origin, so its camera position is T itself) and
// normalized interpretation-plane distances of the four line endpoints. The
// first line's plane normal is (0,1,0) by construction of the camera frame,
// the second line's is (gx, gy, 0).
double in_frame_residual(const P1P2LFrame& f, const Pose& pose) {
  const double inf = std::numeric_limits<double>::infinity();
  const Vec3 x = pose.T;
  const double xn = x.norm();
  if (!(xn > 1e-12)) return inf;
  double worst = std::atan2(f.rotated_bearing.cross(x).norm(),
                            f.rotated_bearing.dot(x));
  Vec3 n2(f.gx, f.gy, 0.0);
  const double n2n = n2.norm();
  if (!(n2n > 1e-12)) return inf;
  n2 /= n2n;
  const Vec3 ends[4] = {Vec3(f.X1, f.Y1, f.Z1), Vec3(f.X2, f.Y2, f.Z2),
                        Vec3(f.X3, f.Y3, f.Z3), Vec3(f.X4, f.Y4, f.Z4)};
  for (int i = 0; i < 4; ++i) {
    const Vec3 e = pose.R * ends[i] + pose.T;
    const double en = e.norm();
    if (!(en > 1e-12)) return inf;
    const double dist =
        i < 2 ? std::abs(e.y()) / en : std::abs(n2.dot(e)) / en;
    worst = std::max(worst, dist);
  }
  return std::isfinite(worst) ? worst : inf;
}

// Least-squares plane fit of the five world features: coplanar when the
// smallest scatter eigenvalue's rms residual is far below the scene scale.
bool detect_coplanar(const PointCorrespondence& pc,
                     const LineCorrespondence& lc1,
                     const LineCorrespondence& lc2) {
  const Vec3 pts[5] = {pc.world_point, lc1.world_a, lc1.world_b, lc2.world_a,
                       lc2.world_b};
  Vec3 centroid = Vec3::Zero();
  for (const Vec3& p : pts) centroid += p;
  centroid /= 5.0;
  Mat3 scatter = Mat3::Zero();
  for (const Vec3& p : pts) {
    const Vec3 d = p - centroid;
    scatter += d * d.transpose();
  }
  const Eigen::SelfAdjointEigenSolver<Mat3> eig(scatter);
  const double rms = std::sqrt(std::max(eig.eigenvalues()(0), 0.0) / 5.0);
  const double scale = std::sqrt(scatter.trace() / 5.0);
  return rms < 1e-7 * scale;
}

}  // namespace

P1P2LCoefficients p1p2l_coefficients(const P1P2LFrame& frame) {
  const double dZ = frame.Z1 - frame.Z2;
  if (std::abs(dZ) <
      1e-14 * std::max({1.0, std::abs(frame.Z1), std::abs(frame.Z2)}))
    throw NearDegenerateFrame("first line at near-constant depth");
  if (std::abs(frame.b1) < 1e-14 * (1.0 + std::abs(frame.a1)))
    throw DegenerateImagePoints("point bearing in the first line's plane");
  if (std::abs(frame.gx) < 1e-14)
    throw DegenerateInput("parallel image lines");

  P1P2LCoefficients co;
  co.c1 = (frame.X2 - frame.X1) / dZ;
  co.c2 = (frame.Y2 - frame.Y1) / dZ;
  co.c3 = -(frame.X1 + frame.Z1 * co.c1);
  co.c4 = -(frame.Y1 + frame.Z1 * co.c2);
  const double ratio = frame.a1 / frame.b1;
  co.c5 = ratio * co.c3;
  co.c6 = ratio * co.c4;
  const double rho = frame.gy / frame.gx;
  // Right-hand sides of the second line's two plane constraints, as linear
  // forms in (R13, R21, R22).
  Vec3 rhs[2];
  const double xs[2] = {frame.X3, frame.X4};
  const double ys[2] = {frame.Y3, frame.Y4};
  const double zs[2] = {frame.Z3, frame.Z4};
  for (int i = 0; i < 2; ++i) {
    rhs[i] = Vec3(-zs[i],
                  -co.c5 - rho * (xs[i] + zs[i] * co.c1 + co.c3),
                  -co.c6 - rho * (ys[i] + zs[i] * co.c2 + co.c4));
  }
  const double det = frame.X3 * frame.Y4 - frame.X4 * frame.Y3;
  if (std::abs(det) <= 1e-12 * (std::abs(frame.X3 * frame.Y4) +
                                std::abs(frame.X4 * frame.Y3)))
    throw DegenerateGeometry(
        "second line endpoints project collinearly through the origin");
  const Vec3 r11 = (frame.Y4 * rhs[0] - frame.Y3 * rhs[1]) / det;
  const Vec3 r12 = (frame.X3 * rhs[1] - frame.X4 * rhs[0]) / det;
  co.c10 = r11(0);
  co.c11 = r11(1);
  co.c12 = r11(2);
  co.c7 = r12(0);
  co.c8 = r12(1);
  co.c9 = r12(2);

  co.d1 = co.c10 * co.c10 + co.c7 * co.c7 + 1.0;
  co.d2 = 2.0 * (co.c10 * co.c11 + co.c7 * co.c8);
  co.d3 = 2.0 * (co.c10 * co.c12 + co.c7 * co.c9);
  co.d4 = co.c11 * co.c11 + co.c8 * co.c8;
  co.d5 = 2.0 * (co.c11 * co.c12 + co.c8 * co.c9);
  co.d6 = co.c12 * co.c12 + co.c9 * co.c9;
  co.d7 = 1.0 + co.c1 * co.c1;
  co.d8 = 2.0 * co.c1 * co.c2;
  co.d9 = 1.0 + co.c2 * co.c2;
  co.d10 = co.c10 + co.c1;
  co.d11 = co.c7 + co.c2;
  co.d12 = co.c11;
  co.d13 = co.c12 + co.c8;
  co.d14 = co.c9;

  // Quartic in v = R21/R22 from eliminating R13:
  //   d1*n(v)^2 - (d2 v + d3)*n(v)*dn(v) + q(v)*dn(v)^2 = 0
  // with n = d12 v^2 + d13 v + d14, dn = d10 v + d11,
  // q = (d4-d7) v^2 + (d5-d8) v + (d6-d9).
  const double n2 = co.d12, n1 = co.d13, n0 = co.d14;
  const double m1 = co.d10, m0 = co.d11;
  const double q2 = co.d4 - co.d7, q1 = co.d5 - co.d8, q0 = co.d6 - co.d9;

  const double nn4 = n2 * n2;
  const double nn3 = 2.0 * n2 * n1;
  const double nn2 = n1 * n1 + 2.0 * n2 * n0;
  const double nn1 = 2.0 * n1 * n0;
  const double nn0 = n0 * n0;

  const double ln3 = co.d2 * n2;
  const double ln2 = co.d2 * n1 + co.d3 * n2;
  const double ln1 = co.d2 * n0 + co.d3 * n1;
  const double ln0 = co.d3 * n0;
  const double p4 = ln3 * m1;
  const double p3 = ln3 * m0 + ln2 * m1;
  const double p2 = ln2 * m0 + ln1 * m1;
  const double p1 = ln1 * m0 + ln0 * m1;
  const double p0 = ln0 * m0;

  const double mm2 = m1 * m1;
  const double mm1 = 2.0 * m1 * m0;
  const double mm0 = m0 * m0;
  const double s4 = q2 * mm2;
  const double s3 = q2 * mm1 + q1 * mm2;
  const double s2 = q2 * mm0 + q1 * mm1 + q0 * mm2;
  const double s1 = q1 * mm0 + q0 * mm1;
  const double s0 = q0 * mm0;

  co.alpha1 = co.d1 * nn4 - p4 + s4;
  co.alpha2 = co.d1 * nn3 - p3 + s3;
  co.alpha3 = co.d1 * nn2 - p2 + s2;
  co.alpha4 = co.d1 * nn1 - p1 + s1;
  co.alpha5 = co.d1 * nn0 - p0 + s0;
  return co;
}

std::vector<Pose> solve_p1p2l_core(const P1P2LFrame& frame,
                                   P1P2LDiagnostics* diag) {
  const P1P2LCoefficients co = p1p2l_coefficients(frame);
  const PolyRoots roots =
      solve_quartic(co.alpha1, co.alpha2, co.alpha3, co.alpha4, co.alpha5);
  const double ratio = frame.a1 / frame.b1;
  std::vector<Pose> out;
  for (const double v : roots) {
    const double w = co.d7 * v * v + co.d8 * v + co.d9;
    if (!std::isfinite(w) || w <= 1e-14) continue;
    for (const double sign : {1.0, -1.0}) {
      const double R22 = sign / std::sqrt(w);
      const double R21 = v * R22;
      const double dn = co.d10 * R21 + co.d11 * R22;
      if (std::abs(dn) <
          1e-10 * std::max(std::abs(co.d10), std::abs(co.d11)))
        continue;
      const double R13 = -(co.d12 * R21 * R21 + co.d13 * R21 * R22 +
                           co.d14 * R22 * R22) /
                         dn;
      const double R23 = co.c1 * R21 + co.c2 * R22;
      const double R12 = co.c7 * R13 + co.c8 * R21 + co.c9 * R22;
      const double R11 = co.c10 * R13 + co.c11 * R21 + co.c12 * R22;
      const double T2 = co.c3 * R21 + co.c4 * R22;
      const double T1 = ratio * T2;
      Mat3 R;
      R.row(0) = Vec3(R11, R12, R13);
      R.row(1) = Vec3(R21, R22, R23);
      R.row(2) = R.row(0).cross(R.row(1));
      if (!R.allFinite()) continue;
      const double defect = (R.transpose() * R - Mat3::Identity()).norm();
      if (defect > 1e-9 && diag != nullptr) ++diag->orthogonality_fixes;
      R = orthonormalize_rows(R);
      if (!R.allFinite()) continue;
      const Pose pose{R, Vec3(T1, T2, T2 / frame.b1)};
      if (!pose.T.allFinite()) continue;
      if (in_frame_residual(frame, pose) < 1e-4) out.push_back(pose);
    }
  }
  return out;
}

std::vector<Pose> solve_p1p2l(const PointCorrespondence& pc,
                              const LineCorrespondence& lc1,
                              const LineCorrespondence& lc2,
                              P1P2LDiagnostics* diag) {
  const bool coplanar = detect_coplanar(pc, lc1, lc2);
  const bool stabilize = !coplanar;
  if (diag != nullptr) {
    diag->coplanar = coplanar;
    diag->stabilized = stabilize;
  }
  P1P2LFrame frame = build_p1p2l_frame(pc, lc1, lc2, stabilize);
  // The reduction divides by b1, so a bearing close to the first
  // interpretation plane poisons every later coefficient. The problem is
  // symmetric in the two lines; re-anchoring on the second line restores an
  // O(1) divisor whenever only one plane nearly contains the bearing.
  if (std::abs(frame.b1) < 0.05) {
    try {
      P1P2LFrame swapped = build_p1p2l_frame(pc, lc2, lc1, stabilize);
      if (std::abs(swapped.b1) > std::abs(frame.b1)) frame = swapped;
    } catch (const Error&) {
    }
  }
  std::vector<Pose> out;
  for (const Pose& in_frame : solve_p1p2l_core(frame, diag)) {
    const Pose pose =
        unframe_pose(in_frame, frame.world_xform, frame.cam_rotation);
    if (pose.R.allFinite() && pose.T.allFinite()) out.push_back(pose);
  }
  return out;
}

}  // namespace minpose
