#pragma once

#include <stdexcept>
#include <string>

namespace minpose {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data violates a basic well-formedness requirement (coincident points,
// parallel image lines, all-zero polynomial, ...).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// The two world points and the first line endpoint lie on a common line.
class CollinearConfiguration : public Error {
 public:
  using Error::Error;
};

// A geometric quantity required by the computation is undefined for this
// data (world point at the camera center, collinear projections, ...).
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

// Image observations are placed so that the solver's elimination breaks down.
class DegenerateImagePoints : public Error {
 public:
  using Error::Error;
};

// The five known rotation entries leave the remaining four underdetermined
// (second row nearly parallel to the x-axis).
class PlaneRotationDegenerate : public Error {
 public:
  using Error::Error;
};

// The canonical frame puts the first line at near-constant depth, which the
// quartic elimination cannot handle.
class NearDegenerateFrame : public Error {
 public:
  using Error::Error;
};

// Relative translation error is undefined against a zero ground truth.
class ZeroBaseline : public Error {
 public:
  using Error::Error;
};

// Fewer correspondences than the minimal sample of the chosen solver.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

// No hypothesis drawn by the robust estimator ever produced a valid pose.
class NoModel : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation was violated by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Correspondence file rejected; carries the 1-based offending line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& detail)
      : Error("parse error at line " + std::to_string(line) + ": " + detail),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace minpose
