#pragma once

#include <cmath>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fhp {

using Vec = std::vector<double>;

// Default tolerances. Every operation that consumes one takes it as an
// option with these values, so callers can tighten or relax per run.
inline constexpr double tol_norm = 1e-9;   // PointSet norm slack
inline constexpr double tol_unit = 1e-12;  // unit-vector slack
inline constexpr double tol_feas = 1e-9;   // feasible margin threshold
inline constexpr double tol_mnp = 1e-10;   // min-norm-point duality gap

/// Malformed or out-of-contract inputs (CLI exit code 2).
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative method hit its cap before reaching its tolerance
/// (CLI exit code 3). Carries the best bound pair known at abort time.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double lower, double upper)
      : std::runtime_error(what), lower_bound(lower), upper_bound(upper) {}
  double lower_bound;
  double upper_bound;
};

/// A stated invariant failed on data produced by this toolkit
/// (CLI exit code 4).
class invariant_error : public std::runtime_error {
 public:
  explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_sq(std::span<const double> a) { return dot(a, a); }

inline double norm(std::span<const double> a) { return std::sqrt(norm_sq(a)); }

inline void scale_in_place(Vec& a, double factor) {
  for (double& x : a) x *= factor;
}

/// a += factor * b
inline void axpy(Vec& a, double factor, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += factor * b[i];
}

inline Vec normalized(std::span<const double> a) {
  const double nrm = norm(a);
  if (nrm == 0.0) throw input_error("cannot normalize a zero vector");
  Vec out(a.begin(), a.end());
  scale_in_place(out, 1.0 / nrm);
  return out;
}

/// Render a double with 17 significant digits (round-trip exact).
inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline bool is_unit(std::span<const double> w, double tol = tol_unit) {
  return std::fabs(norm(w) - 1.0) <= tol;
}

}  // namespace fhp
