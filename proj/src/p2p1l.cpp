#include "minpose/p2p1l.hpp"

#include <cmath>

#include "minpose/roots.hpp"

namespace minpose {

namespace {

// Linear forms f0 * x0 + f1 * x1 in the unknown rotation pair x: (R11, R21)
// for the generic elimination, (R21, R23) for the coplanar one.
struct LinearForm {
  double f0, f1;

  double at(double x0, double x1) const { return f0 * x0 + f1 * x1; }
};

struct GenericForms {
  LinearForm B;    // common translation factor, T = (a1*B, b1*B, B)
  LinearForm R31;
  LinearForm R22;
  LinearForm R23;
};

struct CoplanarForms {
  LinearForm B;
  LinearForm R22;
  LinearForm R11;
  LinearForm R31;
};

GenericForms generic_forms(const P2P1LFrame& f) {
  const double den = f.b2 * f.a1 - f.b1 * f.a2;
  if (std::abs(den) < 1e-14)
    throw DegenerateImagePoints("proportional image observations");
  GenericForms out;
  out.B = {-f.X2 * f.b2 / den, f.X2 * f.a2 / den};
  out.R31 = {(f.b2 - f.b1) / den, (f.a1 - f.a2) / den};
  out.R22 = {-f.b1 * out.B.f0 / f.Y3, -(f.X3 + f.b1 * out.B.f1) / f.Y3};
  out.R23 = {-(f.Y4 * out.R22.f0 + f.b1 * out.B.f0) / f.Z4,
             -(f.X4 + f.Y4 * out.R22.f1 + f.b1 * out.B.f1) / f.Z4};
  return out;
}

CoplanarForms coplanar_forms(const P2P1LFrame& f) {
  const double den = f.b2 * f.a1 - f.b1 * f.a2;
  if (std::abs(den) < 1e-14)
    throw DegenerateImagePoints("proportional image observations");
  const double sden = f.Y3 - f.Y4;
  if (std::abs(sden) < 1e-12)
    throw DegenerateInput("line endpoints at equal height in the frame");
  if (std::abs(f.b1) < 1e-12 || std::abs(f.b2) < 1e-12)
    throw DegenerateImagePoints("image point on the line's axis");
  CoplanarForms out;
  const double s1 = (f.X4 - f.X3) / sden;
  const double s2 = f.Z4 / sden;
  out.R22 = {s1, s2};
  out.B = {-(f.X3 + f.Y3 * s1) / f.b1, -f.Y3 * s2 / f.b1};
  out.R11 = {(f.a2 - den * out.B.f0 / f.X2) / f.b2,
             -den * out.B.f1 / f.X2 / f.b2};
  out.R31 = {(f.X2 - (f.b2 - f.b1) * out.B.f0) / (f.b2 * f.X2),
             -(f.b2 - f.b1) * out.B.f1 / (f.b2 * f.X2)};
  return out;
}

bool max_residual_ok(const Pose& pose, const PointCorrespondence& pc1,
                     const PointCorrespondence& pc2,
                     const LineCorrespondence& lc) {
  try {
    const double r = std::max({point_residual(pose, pc1),
                               point_residual(pose, pc2),
                               line_residual(pose, lc)});
    return r < 1e-4;
  } catch (const Error&) {
    return false;
  }
}

// Shared root loop: both variants reduce to (c1 + c2 v + c3 v^2) u = 1 and
// (d1 + d2 v + d3 v^2) u = 1 with u the squared pivot entry and v the ratio
// of the unknown pair. Each admissible root yields two sign choices.
std::vector<Pose> solve_in_frame(const P2P1LFrame& frame, bool coplanar,
                                 const PointCorrespondence& pc1,
                                 const PointCorrespondence& pc2,
                                 const LineCorrespondence& lc) {
  const P2P1LCoefficients co = p2p1l_coefficients(frame, coplanar);
  GenericForms gen{};
  CoplanarForms cop{};
  if (coplanar)
    cop = coplanar_forms(frame);
  else
    gen = generic_forms(frame);

  const PolyRoots roots =
      solve_quadratic(co.c3 - co.d3, co.c2 - co.d2, co.c1 - co.d1);
  std::vector<Pose> out;
  for (const double v : roots) {
    const double qc = co.c1 + co.c2 * v + co.c3 * v * v;
    const double qd = co.d1 + co.d2 * v + co.d3 * v * v;
    const double q = std::abs(qc) >= std::abs(qd) ? qc : qd;
    const double u = 1.0 / q;
    if (!std::isfinite(u) || u <= 1e-14) continue;
    for (const double sign : {1.0, -1.0}) {
      const double x0 = sign * std::sqrt(u);
      const double x1 = v * x0;
      double R11, R21, R31, R22, R23, B;
      if (coplanar) {
        R21 = x0;
        R23 = x1;
        B = cop.B.at(x0, x1);
        R22 = cop.R22.at(x0, x1);
        R11 = cop.R11.at(x0, x1);
        R31 = cop.R31.at(x0, x1);
      } else {
        R11 = x0;
        R21 = x1;
        B = gen.B.at(x0, x1);
        R31 = gen.R31.at(x0, x1);
        R22 = gen.R22.at(x0, x1);
        R23 = gen.R23.at(x0, x1);
      }
      Mat3 R;
      if (!try_complete_rotation(R11, R21, R31, R22, R23, R)) continue;
      R = orthonormalize_rows(R);
      if (!R.allFinite()) continue;
      const Pose in_frame{R, Vec3(frame.a1 * B, frame.b1 * B, B)};
      const Pose pose =
          unframe_pose(in_frame, frame.world_xform, frame.cam_rotation);
      if (!pose.R.allFinite() || !pose.T.allFinite()) continue;
      if (max_residual_ok(pose, pc1, pc2, lc)) out.push_back(pose);
    }
  }
  return out;
}

bool detect_coplanar(const P2P1LFrame& frame) {
  return std::abs(frame.Z4) <
         1e-7 * std::max({std::abs(frame.X4), std::abs(frame.Y4), frame.X2,
                          1.0});
}

}  // namespace

P2P1LCoefficients p2p1l_coefficients(const P2P1LFrame& frame, bool coplanar) {
  P2P1LCoefficients co;
  if (coplanar) {
    const CoplanarForms f = coplanar_forms(frame);
    co.c1 = f.R11.f0 * f.R11.f0 + f.R31.f0 * f.R31.f0 + 1.0;
    co.c2 = 2.0 * (f.R11.f0 * f.R11.f1 + f.R31.f0 * f.R31.f1);
    co.c3 = f.R11.f1 * f.R11.f1 + f.R31.f1 * f.R31.f1;
    co.d1 = 1.0 + f.R22.f0 * f.R22.f0;
    co.d2 = 2.0 * f.R22.f0 * f.R22.f1;
    co.d3 = f.R22.f1 * f.R22.f1 + 1.0;
  } else {
    const GenericForms f = generic_forms(frame);
    co.c1 = 1.0 + f.R31.f0 * f.R31.f0;
    co.c2 = 2.0 * f.R31.f0 * f.R31.f1;
    co.c3 = 1.0 + f.R31.f1 * f.R31.f1;
    co.d1 = f.R22.f0 * f.R22.f0 + f.R23.f0 * f.R23.f0;
    co.d2 = 2.0 * (f.R22.f0 * f.R22.f1 + f.R23.f0 * f.R23.f1);
    co.d3 = 1.0 + f.R22.f1 * f.R22.f1 + f.R23.f1 * f.R23.f1;
  }
  return co;
}

std::vector<Pose> solve_p2p1l_generic(const PointCorrespondence& pc1,
                                      const PointCorrespondence& pc2,
                                      const LineCorrespondence& lc) {
  const P2P1LFrame frame = build_p2p1l_frame(pc1, pc2, lc);
  return solve_in_frame(frame, false, pc1, pc2, lc);
}

std::vector<Pose> solve_p2p1l_coplanar(const PointCorrespondence& pc1,
                                       const PointCorrespondence& pc2,
                                       const LineCorrespondence& lc) {
  const P2P1LFrame frame = build_p2p1l_frame(pc1, pc2, lc);
  return solve_in_frame(frame, true, pc1, pc2, lc);
}

std::vector<Pose> solve_p2p1l(const PointCorrespondence& pc1,
                              const PointCorrespondence& pc2,
                              const LineCorrespondence& lc,
                              P2P1LDiagnostics* diag) {
  const P2P1LFrame frame = build_p2p1l_frame(pc1, pc2, lc);
  const bool coplanar = detect_coplanar(frame);
  if (diag != nullptr) {
    diag->used_coplanar = coplanar;
    diag->z4 = frame.Z4;
  }
  return solve_in_frame(frame, coplanar, pc1, pc2, lc);
}

}  // namespace minpose
