#include "minpose/corr_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace minpose {

namespace {

constexpr const char* kHeader = "minpose-corr v1";

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::string current;
  for (const char ch : line) {
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      if (!current.empty()) {
        tokens.push_back(current);
        current.clear();
      }
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) tokens.push_back(current);
  return tokens;
}

double parse_value(const std::string& token, int line_no) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError(line_no, "invalid number '" + token + "'");
  return value;
}

Vec3 parse_vec(const std::vector<std::string>& tokens, std::size_t offset,
               int line_no) {
  return {parse_value(tokens[offset], line_no),
          parse_value(tokens[offset + 1], line_no),
          parse_value(tokens[offset + 2], line_no)};
}

void check_unit(const Vec3& v, int line_no, const char* what) {
  if (std::abs(v.norm() - 1.0) > 1e-9)
    throw ParseError(line_no, std::string(what) + " not unit length");
}

std::string format_value(double value) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

}  // namespace

CorrespondenceSet read_correspondences(std::istream& in) {
  CorrespondenceSet set;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (!have_header) {
      if (tokens.size() == 2 && tokens[0] == "minpose-corr" &&
          tokens[1] == "v1") {
        have_header = true;
        continue;
      }
      throw ParseError(line_no, "missing header '" + std::string(kHeader) +
                                    "'");
    }
    if (tokens[0] == "P") {
      if (tokens.size() != 7)
        throw ParseError(line_no, "point record needs 6 values");
      PointCorrespondence pc;
      pc.world_point = parse_vec(tokens, 1, line_no);
      pc.bearing = parse_vec(tokens, 4, line_no);
      check_unit(pc.bearing, line_no, "bearing");
      set.points.push_back(pc);
    } else if (tokens[0] == "L") {
      if (tokens.size() != 13)
        throw ParseError(line_no, "line record needs 12 values");
      LineCorrespondence lc;
      lc.world_a = parse_vec(tokens, 1, line_no);
      lc.world_b = parse_vec(tokens, 4, line_no);
      lc.ray_a = parse_vec(tokens, 7, line_no);
      lc.ray_b = parse_vec(tokens, 10, line_no);
      check_unit(lc.ray_a, line_no, "ray");
      check_unit(lc.ray_b, line_no, "ray");
      set.lines.push_back(lc);
    } else {
      throw ParseError(line_no, "unknown record type '" + tokens[0] + "'");
    }
  }
  if (!have_header)
    throw ParseError(std::max(line_no, 1),
                     "missing header '" + std::string(kHeader) + "'");
  return set;
}

CorrespondenceSet load_correspondences(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open file '" + path + "'");
  return read_correspondences(in);
}

void write_correspondences(std::ostream& out, const CorrespondenceSet& set) {
  out << kHeader << '\n';
  auto put_vec = [&out](const Vec3& v) {
    out << ' ' << format_value(v.x()) << ' ' << format_value(v.y()) << ' '
        << format_value(v.z());
  };
  for (const PointCorrespondence& pc : set.points) {
    out << 'P';
    put_vec(pc.world_point);
    put_vec(pc.bearing);
    out << '\n';
  }
  for (const LineCorrespondence& lc : set.lines) {
    out << 'L';
    put_vec(lc.world_a);
    put_vec(lc.world_b);
    put_vec(lc.ray_a);
    put_vec(lc.ray_b);
    out << '\n';
  }
}

void save_correspondences(const std::string& path,
                          const CorrespondenceSet& set) {
  std::ofstream out(path);
  if (!out) throw ParseError(0, "cannot open file '" + path + "'");
  write_correspondences(out, set);
}

}  // namespace minpose
