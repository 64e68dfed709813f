#pragma once

#include <vector>

#include "minpose/frames.hpp"
#include "minpose/geometry.hpp"

namespace minpose {

// Coefficients of the two bivariate quadratic constraints on the pair of
// unknown rotation entries, c-row from the unit first column and d-row from
// the unit second row. Both reduce to (k1 + k2 v + k3 v^2) * u = 1 under the
// change of variables u = x1^2, v = x2 / x1.
struct P2P1LCoefficients {
  double c1, c2, c3;
  double d1, d2, d3;
};

struct P2P1LDiagnostics {
  bool used_coplanar = false;
  double z4 = 0.0;
};

// Coefficients for the generic (coplanar = false, unknowns R11, R21) or
// coplanar (unknowns R21, R23) elimination, computed from the frame scalars.
P2P1LCoefficients p2p1l_coefficients(const P2P1LFrame& frame, bool coplanar);

// Generic solver: up to 4 poses from the roots of a univariate quadratic,
// two sign choices each. Requires the second line endpoint off the plane of
// the other world features (|Z4| well above zero after framing).
std::vector<Pose> solve_p2p1l_generic(const PointCorrespondence& pc1,
                                      const PointCorrespondence& pc2,
                                      const LineCorrespondence& lc);

// Coplanar variant: same interface, reparameterized elimination that handles
// Z4 = 0 exactly.
std::vector<Pose> solve_p2p1l_coplanar(const PointCorrespondence& pc1,
                                       const PointCorrespondence& pc2,
                                       const LineCorrespondence& lc);

// Dispatching solver: routes to the coplanar variant when the framed scene
// has |Z4| below the coplanarity threshold, else to the generic variant.
std::vector<Pose> solve_p2p1l(const PointCorrespondence& pc1,
                              const PointCorrespondence& pc2,
                              const LineCorrespondence& lc,
                              P2P1LDiagnostics* diag = nullptr);

}  // namespace minpose
