#pragma once

#include <array>
#include <cstddef>

#include "minpose/errors.hpp"

namespace minpose {

// Real roots of a univariate polynomial of degree <= 4, unordered and
// multiplicity-agnostic (near-multiple roots may appear as duplicates).
struct PolyRoots {
  std::array<double, 4> roots{};
  int count = 0;

  void push(double r) { roots[static_cast<std::size_t>(count++)] = r; }

  const double* begin() const { return roots.data(); }
  const double* end() const { return roots.data() + count; }
};

// Roots of a*x^2 + b*x + c. A leading coefficient below 1e-12 of the other
// coefficients' scale drops the degree; a complex pair yields no roots.
// Throws DegenerateInput if all three coefficients are zero.
PolyRoots solve_quadratic(double a, double b, double c);

// All real roots (1 or 3) of a*x^3 + b*x^2 + c*x + d, each polished by one
// guarded Newton step. Delegates to solve_quadratic when the leading
// coefficient vanishes relative to the others.
PolyRoots solve_cubic(double a, double b, double c, double d);

// All real roots (0, 2, or 4 as a set) of the quartic, via the resolvent
// cubic, each polished by one guarded Newton step on the input polynomial.
// Delegates to solve_cubic when the leading coefficient vanishes.
PolyRoots solve_quartic(double a, double b, double c, double d, double e);

}  // namespace minpose
