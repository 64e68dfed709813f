#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "minpose/geometry.hpp"

namespace minpose {

struct CorrespondenceSet {
  std::vector<PointCorrespondence> points;
  std::vector<LineCorrespondence> lines;
};

// Text format "minpose-corr v1": a header line, then one record per line,
//   P px py pz bx by bz
//   L ax ay az bx by bz r1x r1y r1z r2x r2y r2z
// with '#' starting a comment. Values are written with 17 significant
// digits so a write/read round trip is bit-exact. Bearings and rays must be
// unit length within 1e-9 on load; violations raise ParseError with the
// offending line number.
CorrespondenceSet read_correspondences(std::istream& in);
CorrespondenceSet load_correspondences(const std::string& path);

void write_correspondences(std::ostream& out, const CorrespondenceSet& set);
void save_correspondences(const std::string& path, const CorrespondenceSet& set);

}  // namespace minpose
