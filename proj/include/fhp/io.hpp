#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fhp/core.hpp"

namespace fhp {

// Point-set text format:
//   fhp v1 n=<n> d=<d> scale=<s>
// followed by n lines of d space-separated floats, 17 significant digits.

inline void write_point_set(std::ostream& os, const PointSet& ps) {
  os << "fhp v1 n=" << ps.size() << " d=" << ps.dim()
     << " scale=" << fmt17(ps.scale()) << "\n";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    auto x = ps.point(i);
    for (std::size_t k = 0; k < ps.dim(); ++k) {
      if (k) os << ' ';
      os << fmt17(x[k]);
    }
    os << "\n";
  }
}

inline PointSet read_point_set(std::istream& is) {
  std::string header;
  if (!std::getline(is, header))
    throw input_error("point set: missing header line");
  std::size_t n = 0, d = 0;
  double scale = 0.0;
  if (std::sscanf(header.c_str(), "fhp v1 n=%zu d=%zu scale=%lf", &n, &d, &scale) != 3)
    throw input_error("point set: bad header: " + header);
  if (n < 1 || d < 1) throw input_error("point set: need n >= 1 and d >= 1");
  Vec flat;
  flat.reserve(n * d);
  std::string line;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(is, line))
      throw input_error("point set: expected " + std::to_string(n) + " rows, got " +
                        std::to_string(i));
    std::istringstream row(line);
    for (std::size_t k = 0; k < d; ++k) {
      double v;
      if (!(row >> v))
        throw input_error("point set: row " + std::to_string(i) + " is short");
      flat.push_back(v);
    }
    double extra;
    if (row >> extra)
      throw input_error("point set: row " + std::to_string(i) + " has extra fields");
  }
  return PointSet(n, d, std::move(flat), scale);
}

inline void save_point_set(const std::string& path, const PointSet& ps) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot open for writing: " + path);
  write_point_set(out, ps);
  if (!out) throw input_error("write failed: " + path);
}

inline PointSet load_point_set(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open: " + path);
  return read_point_set(in);
}

}  // namespace fhp
