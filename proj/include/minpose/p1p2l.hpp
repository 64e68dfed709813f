#pragma once

#include <vector>

#include "minpose/frames.hpp"
#include "minpose/geometry.hpp"

namespace minpose {

// Intermediate coefficients of the quartic elimination. The linear stage
// expresses the remaining unknowns through (R13, R21, R22):
//   R23 = c1*R21 + c2*R22            T2 = c3*R21 + c4*R22
//   T1  = c5*R21 + c6*R22            R12 = c7*R13 + c8*R21 + c9*R22
//   R11 = c10*R13 + c11*R21 + c12*R22
// The quadratic stage packs the orthonormality constraints into rows
// d1..d14, and eliminating R13 yields the quartic
//   alpha1*v^4 + alpha2*v^3 + alpha3*v^2 + alpha4*v + alpha5 = 0
// in v = R21 / R22.
struct P1P2LCoefficients {
  double c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12;
  double d1, d2, d3, d4, d5, d6, d7, d8, d9, d10, d11, d12, d13, d14;
  double alpha1, alpha2, alpha3, alpha4, alpha5;
};

struct P1P2LDiagnostics {
  bool coplanar = false;
  bool stabilized = false;
  // Candidates whose assembled rows had an orthogonality defect above 1e-9
  // before the final re-orthonormalization.
  int orthogonality_fixes = 0;
};

// Throws NearDegenerateFrame when the framed first line has near-constant
// depth (|Z1 - Z2| ~ 0), DegenerateImagePoints when the point bearing lies
// in the first interpretation plane (b1 ~ 0), DegenerateInput for parallel
// image lines, DegenerateGeometry when the framed second-line endpoints
// project collinearly through the origin.
P1P2LCoefficients p1p2l_coefficients(const P1P2LFrame& frame);

// Core solver in the canonical frame: up to 4 quartic roots times 2 signs of
// R22 gives up to 8 poses, each completed to SO(3) (third row as the cross
// product of the first two, then rows re-orthonormalized around the solved
// second row) and filtered by its residuals on the framed data.
std::vector<Pose> solve_p1p2l_core(const P1P2LFrame& frame,
                                   P1P2LDiagnostics* diag = nullptr);

// Full solver: detects whether the five world features are coplanar, frames
// with stabilization exactly when they are not, runs the core and maps the
// poses back to the input frames. When the point bearing lies close to the
// first line's interpretation plane the frame is rebuilt with the lines
// swapped, which the reduction permits because the problem is symmetric in
// the two lines.
std::vector<Pose> solve_p1p2l(const PointCorrespondence& pc,
                              const LineCorrespondence& lc1,
                              const LineCorrespondence& lc2,
                              P1P2LDiagnostics* diag = nullptr);

}  // namespace minpose
