#include "minpose/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace minpose {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Quadratic with an absolute discriminant tolerance on top of the relative
// clamp. The quartic pipeline passes the formation noise of its depressed
// coefficients here, so near-double roots that lost their discriminant to
// rounding are still recovered as doubles.
PolyRoots quadratic_with_tol(double a, double b, double c, double abs_tol) {
  PolyRoots out;
  if (std::abs(a) < 1e-12 * std::max(std::abs(b), std::abs(c))) {
    if (b == 0.0) return out;
    out.push(-c / b);
    return out;
  }
  double disc = b * b - 4.0 * a * c;
  const double scale = std::max(b * b, std::abs(4.0 * a * c));
  if (disc < -(1e-10 * scale + abs_tol)) return out;
  if (disc < 0.0) disc = 0.0;
  const double sd = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(sd, b));
  if (q == 0.0) {
    out.push(0.0);
    out.push(0.0);
    return out;
  }
  out.push(q / a);
  out.push(c / q);
  return out;
}

// Real square roots of the biquadratic y^4 + p*y^2 + r.
void biquadratic_roots(double p, double r, double abs_tol, double coeff_scale,
                       PolyRoots& ys) {
  for (const double z : quadratic_with_tol(1.0, p, r, abs_tol)) {
    if (z > 0.0) {
      ys.push(std::sqrt(z));
      ys.push(-std::sqrt(z));
    } else if (z > -1e-12 * coeff_scale) {
      ys.push(0.0);
    }
  }
}

}  // namespace

PolyRoots solve_quadratic(double a, double b, double c) {
  if (a == 0.0 && b == 0.0 && c == 0.0)
    throw DegenerateInput("all quadratic coefficients are zero");
  return quadratic_with_tol(a, b, c, 0.0);
}

PolyRoots solve_cubic(double a, double b, double c, double d) {
  if (std::abs(a) < 1e-12 * std::max({std::abs(b), std::abs(c), std::abs(d)}))
    return solve_quadratic(b, c, d);
  b /= a;
  c /= a;
  d /= a;
  const double Q = (b * b - 3.0 * c) / 9.0;
  const double R = (2.0 * b * b * b - 9.0 * b * c + 27.0 * d) / 54.0;
  PolyRoots raw;
  if (R * R < Q * Q * Q) {
    const double th =
        std::acos(std::clamp(R / std::sqrt(Q * Q * Q), -1.0, 1.0));
    const double m = -2.0 * std::sqrt(Q);
    raw.push(m * std::cos(th / 3.0) - b / 3.0);
    raw.push(m * std::cos((th + 2.0 * M_PI) / 3.0) - b / 3.0);
    raw.push(m * std::cos((th - 2.0 * M_PI) / 3.0) - b / 3.0);
  } else {
    const double mag =
        std::cbrt(std::abs(R) + std::sqrt(std::max(R * R - Q * Q * Q, 0.0)));
    const double A = R > 0.0 ? -mag : (R < 0.0 ? mag : 0.0);
    const double B = A != 0.0 ? Q / A : 0.0;
    raw.push(A + B - b / 3.0);
  }
  // One Newton step per root, kept only if it does not increase |p(x)|; at
  // near-multiple roots the derivative is noise-dominated and the raw step
  // can be arbitrarily wrong.
  PolyRoots out;
  for (double x : raw) {
    const double f = ((x + b) * x + c) * x + d;
    const double fp = (3.0 * x + 2.0 * b) * x + c;
    if (fp != 0.0) {
      const double x1 = x - f / fp;
      const double f1 = ((x1 + b) * x1 + c) * x1 + d;
      if (std::abs(f1) <= std::abs(f)) x = x1;
    }
    out.push(x);
  }
  return out;
}

namespace {

// Ferrari on a monic quartic. Callers orient the polynomial so the leading
// coefficient is the larger of the two ends; a small leading coefficient
// sends one root toward infinity and the depression shift by b/4 then
// collapses the remaining roots into a cluster the resolvent cannot split.
PolyRoots monic_quartic_roots(double b, double c, double d, double e) {
  // Depressed form x = y - b/4: y^4 + p*y^2 + q*y + r.
  const double p = c - 3.0 * b * b / 8.0;
  const double q = d - b * c / 2.0 + b * b * b / 8.0;
  const double r =
      e - b * d / 4.0 + b * b * c / 16.0 - 3.0 * b * b * b * b / 256.0;
  // Absolute formation noise of p, q, r from cancellation in the shift.
  double form = kEps * (std::abs(e) + std::abs(b * d) / 4.0 +
                        b * b * std::abs(c) / 16.0 +
                        3.0 * b * b * b * b / 256.0 + p * p + std::abs(r));
  // Rescale y = lam * w so the depressed coefficients are O(1); raw pose
  // quartics can reach 1e16, which would defeat the scale-relative guards
  // inside the resolvent cubic.
  const double lam =
      std::max({std::sqrt(std::abs(p)), std::cbrt(std::abs(q)),
                std::pow(std::abs(r), 0.25)});
  PolyRoots out;
  if (lam == 0.0) {
    const double x = -b / 4.0;
    for (int i = 0; i < 4; ++i) out.push(x);
    return out;
  }
  const double ps = p / (lam * lam);
  const double qs = q / (lam * lam * lam);
  const double rs = r / (lam * lam * lam * lam);
  form /= lam * lam * lam * lam;
  const double coeff_scale =
      std::max({1.0, std::abs(ps), std::abs(qs), std::abs(rs)});
  PolyRoots ys;
  if (std::abs(qs) < 1e-14 * coeff_scale) {
    biquadratic_roots(ps, rs, 32.0 * form, coeff_scale, ys);
  } else {
    // Resolvent cubic 8m^3 + 8p*m^2 + (2p^2 - 8r)*m - q^2 = 0; its largest
    // real root splits the quartic into two quadratics.
    const PolyRoots ms =
        solve_cubic(8.0, 8.0 * ps, 2.0 * ps * ps - 8.0 * rs, -qs * qs);
    const double m = *std::max_element(ms.begin(), ms.end());
    if (m > 0.0) {
      const double s = std::sqrt(2.0 * m);
      const double t = qs / (2.0 * s);
      for (const double y :
           quadratic_with_tol(1.0, -s, ps / 2.0 + m + t, 32.0 * form))
        ys.push(y);
      for (const double y :
           quadratic_with_tol(1.0, s, ps / 2.0 + m - t, 32.0 * form))
        ys.push(y);
    }
    // Near-quadruple cluster: q sits below its information floor; treat as
    // biquadratic and let the residual gate reject fakes.
    if (ys.count == 0) biquadratic_roots(ps, rs, 32.0 * form, coeff_scale, ys);
  }
  for (const double y : ys) {
    double x = lam * y - b / 4.0;
    const double f = (((x + b) * x + c) * x + d) * x + e;
    const double fp = ((4.0 * x + 3.0 * b) * x + 2.0 * c) * x + d;
    if (fp != 0.0) {
      const double x1 = x - f / fp;
      const double f1 = (((x1 + b) * x1 + c) * x1 + d) * x1 + e;
      if (std::abs(f1) <= std::abs(f)) x = x1;
    }
    const double fx = (((x + b) * x + c) * x + d) * x + e;
    const double ax = std::abs(x);
    const double gate = std::max(
        1.0, ax * ax * ax * ax + std::abs(b) * ax * ax * ax +
                 std::abs(c) * ax * ax + std::abs(d) * ax + std::abs(e));
    if (std::abs(fx) <= 1e-7 * gate) out.push(x);
  }
  return out;
}

}  // namespace

PolyRoots solve_quartic(double a, double b, double c, double d, double e) {
  if (std::abs(a) <
      1e-12 * std::max({std::abs(b), std::abs(c), std::abs(d), std::abs(e)}))
    return solve_cubic(b, c, d, e);
  // Roots of the reversed polynomial are the reciprocals of the originals, so
  // the better-scaled end can always serve as the leading coefficient. A root
  // driven to infinity by a tiny leading term becomes a root near zero; an
  // exact zero maps to the dropped point at infinity.
  if (std::abs(e) > std::abs(a)) {
    const PolyRoots rev = monic_quartic_roots(d / e, c / e, b / e, a / e);
    PolyRoots out;
    for (const double y : rev)
      if (y != 0.0) out.push(1.0 / y);
    return out;
  }
  return monic_quartic_roots(b / a, c / a, d / a, e / a);
}

}  // namespace minpose
