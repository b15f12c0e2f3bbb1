#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "fhp/core.hpp"
#include "fhp/rng.hpp"

namespace fhp {

/// Isotropic random instance: every coordinate is an independent normal with
/// standard deviation 1/sqrt(d), so points land near the unit sphere. The
/// result is normalized into the unit ball with the scale recorded.
inline PointSet gen_gaussian(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw input_error("gen_gaussian: need n >= 1 and d >= 1");
  Rng rng = Rng::substream(seed, 0x6a55);
  const double sigma = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Vec> rows(n, Vec(d));
  for (Vec& row : rows)
    for (double& v : row) v = sigma * rng.normal();
  return normalize_instance(rows);
}

/// n equally spaced points on the unit circle, starting at (1, 0).
inline PointSet gen_circle(std::size_t n) {
  if (n < 2) throw input_error("gen_circle: need n >= 2");
  std::vector<Vec> rows(n, Vec(2));
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * 3.14159265358979323846 * static_cast<double>(k) /
                         static_cast<double>(n);
    rows[k][0] = std::cos(angle);
    rows[k][1] = std::sin(angle);
  }
  return PointSet::from_rows(rows, 1.0);
}

}  // namespace fhp
