#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fhp/common.hpp"

namespace fhp {

/**
 * An instance of the furthest-hyperplane problem: n points in R^d with
 * Euclidean norms at most 1. `scale` records the factor the raw input was
 * divided by, so margins reported on this set map back to the original
 * coordinates as margin * scale.
 */
class PointSet {
 public:
  PointSet(std::size_t n, std::size_t d, Vec data, double scale = 1.0)
      : n_(n), d_(d), data_(std::move(data)), scale_(scale) {
    if (n_ < 1 || d_ < 1) throw input_error("PointSet: need n >= 1 and d >= 1");
    if (data_.size() != n_ * d_)
      throw input_error("PointSet: data size does not match n*d");
    if (!(scale_ > 0.0)) throw input_error("PointSet: scale must be positive");
    for (double v : data_)
      if (!std::isfinite(v)) throw input_error("PointSet: non-finite coordinate");
    for (std::size_t i = 0; i < n_; ++i)
      if (norm(point(i)) > 1.0 + tol_norm)
        throw input_error("PointSet: point " + std::to_string(i) +
                          " has norm > 1; normalize the instance first");
  }

  static PointSet from_rows(const std::vector<Vec>& rows, double scale = 1.0) {
    if (rows.empty()) throw input_error("PointSet: no points");
    const std::size_t d = rows.front().size();
    Vec flat;
    flat.reserve(rows.size() * d);
    for (const Vec& r : rows) {
      if (r.size() != d) throw input_error("PointSet: ragged rows");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return PointSet(rows.size(), d, std::move(flat), scale);
  }

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }
  double scale() const { return scale_; }
  const Vec& data() const { return data_; }

  std::span<const double> point(std::size_t i) const {
    return {data_.data() + i * d_, d_};
  }

  double min_point_norm() const {
    double m = norm(point(0));
    for (std::size_t i = 1; i < n_; ++i) m = std::min(m, norm(point(i)));
    return m;
  }

 private:
  std::size_t n_, d_;
  Vec data_;
  double scale_;
};

/// Scale raw points into the unit ball: every coordinate is divided by the
/// largest point norm and that norm is recorded as the scale factor.
inline PointSet normalize_instance(const std::vector<Vec>& raw) {
  if (raw.empty()) throw input_error("normalize_instance: no points");
  double max_norm = 0.0;
  for (const Vec& r : raw) max_norm = std::max(max_norm, norm(r));
  if (max_norm == 0.0)
    throw input_error("normalize_instance: all points are zero (degenerate instance)");
  std::vector<Vec> rows = raw;
  for (Vec& r : rows) scale_in_place(r, 1.0 / max_norm);
  return PointSet::from_rows(rows, max_norm);
}

/// A hyperplane through the origin, held as its unit normal together with
/// the margin it achieved on the point set it was evaluated against.
struct Hyperplane {
  Vec normal;
  double achieved_margin = 0.0;
};

/// A +/-1 label per point. `solved_margin` is the best hard-margin value of
/// this labeling (0 when infeasible) and `witness` the normal attaining it.
struct Labeling {
  std::vector<std::int8_t> labels;
  bool feasible = false;
  double solved_margin = 0.0;
  std::optional<Hyperplane> witness;
};

/// min_i |<w, x_i>| for a unit normal w.
inline double margin_of(std::span<const double> w, const PointSet& ps,
                        double unit_tol = tol_unit) {
  if (w.size() != ps.dim()) throw input_error("margin_of: dimension mismatch");
  if (!is_unit(w, unit_tol))
    throw input_error("margin_of: normal is not unit length (within tolerance " +
                      fmt17(unit_tol) + "); normalize it first");
  double m = std::fabs(dot(w, ps.point(0)));
  for (std::size_t i = 1; i < ps.size(); ++i)
    m = std::min(m, std::fabs(dot(w, ps.point(i))));
  return m;
}

/// Sign pattern induced by w, with <w,x> = 0 mapped to +1. This is the raw
/// pattern only; labeling_of solves it as well.
inline std::vector<std::int8_t> signs_of(std::span<const double> w, const PointSet& ps) {
  std::vector<std::int8_t> labels(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i)
    labels[i] = dot(w, ps.point(i)) < 0.0 ? -1 : +1;
  return labels;
}

struct MinNormOptions {
  double feas_tol = tol_feas;
  double gap_tol = tol_mnp;
  std::size_t iter_cap_factor = 100;  // iteration cap = factor * n * d
};

namespace detail {

/// Affine minimizer of ||Z lambda||^2 subject to sum(lambda) = 1 over the
/// active vertices, via the bordered KKT system solved by Gaussian
/// elimination with partial pivoting. Extended precision keeps the result
/// usable when the active Gram matrix is badly conditioned. Returns false on
/// (near-)singularity.
inline bool affine_min_norm_weights(const std::vector<Vec>& z,
                                    const std::vector<std::size_t>& active, Vec& out) {
  const std::size_t k = active.size();
  const std::size_t m = k + 1;
  std::vector<long double> a(m * m, 0.0L);
  std::vector<long double> rhs(m, 0.0L);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = r; c < k; ++c) {
      const std::size_t dim = z[active[r]].size();
      long double g = 0.0L;
      for (std::size_t q = 0; q < dim; ++q)
        g += static_cast<long double>(z[active[r]][q]) * z[active[c]][q];
      a[r * m + c] = g;
      a[c * m + r] = g;
    }
    a[r * m + k] = 1.0L;
    a[k * m + r] = 1.0L;
  }
  rhs[k] = 1.0L;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (fabsl(a[r * m + col]) > fabsl(a[pivot * m + col])) pivot = r;
    if (fabsl(a[pivot * m + col]) < 1e-15L) return false;
    if (pivot != col) {
      for (std::size_t c = 0; c < m; ++c) std::swap(a[pivot * m + c], a[col * m + c]);
      std::swap(rhs[pivot], rhs[col]);
    }
    for (std::size_t r = col + 1; r < m; ++r) {
      const long double f = a[r * m + col] / a[col * m + col];
      if (f == 0.0L) continue;
      for (std::size_t c = col; c < m; ++c) a[r * m + c] -= f * a[col * m + c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<long double> sol(m);
  for (std::size_t r = m; r-- > 0;) {
    long double v = rhs[r];
    for (std::size_t c = r + 1; c < m; ++c) v -= a[r * m + c] * sol[c];
    sol[r] = v / a[r * m + r];
  }
  out.resize(k);
  for (std::size_t r = 0; r < k; ++r) out[r] = static_cast<double>(sol[r]);
  return true;
}

}  // namespace detail

/**
 * Hard-margin separation through the origin for a fixed labeling: the best
 * margin equals the distance from the origin to conv{labels[i] * x_i}, and
 * the minimizing point (normalized) is the optimal normal. Solved by a
 * Frank-Wolfe iteration on the simplex weights: each major step adds the
 * most improving vertex, then a minor cycle moves to the affine minimizer
 * over the active set, walking away from (and dropping) vertices whose
 * weight would go negative. Stops when the duality gap falls below gap_tol.
 *
 * Labelings whose hull comes within feas_tol of the origin are reported
 * infeasible with margin 0.
 */
inline Labeling solve_labeled(std::vector<std::int8_t> labels, const PointSet& ps,
                              const MinNormOptions& opt = {}) {
  const std::size_t n = ps.size();
  const std::size_t d = ps.dim();
  if (labels.size() != n) throw input_error("solve_labeled: label count != n");
  for (std::int8_t s : labels)
    if (s != 1 && s != -1) throw input_error("solve_labeled: labels must be +1 or -1");

  // Signed points z_i = labels[i] * x_i. A zero point puts the origin in the
  // hull outright, so every labeling containing one is infeasible.
  std::vector<Vec> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto x = ps.point(i);
    z[i].assign(x.begin(), x.end());
    if (labels[i] < 0) scale_in_place(z[i], -1.0);
    if (norm_sq(z[i]) == 0.0)
      return Labeling{std::move(labels), false, 0.0, std::nullopt};
  }

  std::size_t start = 0;
  double z_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (norm_sq(z[i]) < norm_sq(z[start])) start = i;
    z_max = std::max(z_max, norm_sq(z[i]));
  }
  z_max = std::sqrt(z_max);

  std::vector<std::size_t> active{start};
  Vec weights{1.0};
  Vec p = z[start];  // current hull point, p = sum weights * z[active]

  auto rebuild_p = [&] {
    std::fill(p.begin(), p.end(), 0.0);
    for (std::size_t k = 0; k < active.size(); ++k) axpy(p, weights[k], z[active[k]]);
  };

  const std::size_t cap = opt.iter_cap_factor * n * d;
  double gap = 0.0;
  bool converged = false;
  double best_pp = std::numeric_limits<double>::infinity();
  std::size_t stalled_majors = 0;
  for (std::size_t iter = 0; iter <= cap; ++iter) {
    const double pp = norm_sq(p);
    if (pp <= opt.feas_tol * opt.feas_tol)
      return Labeling{std::move(labels), false, 0.0, std::nullopt};
    if (pp < best_pp * (1.0 - 1e-14)) {
      best_pp = pp;
      stalled_majors = 0;
    } else {
      ++stalled_majors;
    }

    std::size_t s = 0;
    double cs = dot(z[0], p);
    for (std::size_t i = 1; i < n; ++i) {
      const double ci = dot(z[i], p);
      if (ci < cs) {
        cs = ci;
        s = i;
      }
    }
    gap = 2.0 * (pp - cs);
    // The gap is compared at the scale of ||p||^2 so that hulls much closer
    // to the origin than sqrt(gap_tol) still resolve. The other two clauses
    // detect the floating-point floor: p is a combination of unit-scale
    // vectors, so the computed gap carries absolute noise of order
    // eps * z_max^2 no matter how small ||p|| gets; and an ill-conditioned
    // active Gram matrix can pin the gap slightly above that level, which
    // shows up as major iterations without any decrease.
    const double rounding_floor =
        64.0 * 2.220446049250313e-16 * z_max * (z_max + std::sqrt(pp));
    if (gap <= opt.gap_tol * std::max(pp, 1e-30) || gap <= rounding_floor ||
        (stalled_majors >= 12 && gap <= 1e-6 * pp)) {
      converged = true;
      break;
    }
    if (iter == cap || stalled_majors >= 12) break;

    bool already_active = false;
    for (std::size_t idx : active) already_active |= (idx == s);
    if (!already_active) {
      active.push_back(s);
      weights.push_back(0.0);
    }

    // Minor cycle: jump to the affine minimizer of the active hull; when it
    // leaves the simplex, back off to the boundary and drop the vertex.
    bool progressed = false;
    for (std::size_t guard = 0; guard <= active.size() + 2; ++guard) {
      Vec affine;
      if (!detail::affine_min_norm_weights(z, active, affine)) break;
      double lowest = affine[0];
      for (double w : affine) lowest = std::min(lowest, w);
      if (lowest >= -1e-12) {
        weights = affine;
        for (double& w : weights) w = std::max(w, 0.0);
        progressed = true;
        break;
      }
      double theta = 1.0;
      for (std::size_t k = 0; k < active.size(); ++k)
        if (affine[k] < 0.0 && weights[k] > 0.0)
          theta = std::min(theta, weights[k] / (weights[k] - affine[k]));
      for (std::size_t k = 0; k < active.size(); ++k)
        weights[k] += theta * (affine[k] - weights[k]);
      for (std::size_t k = active.size(); k-- > 0;) {
        if (weights[k] <= 1e-14) {
          active.erase(active.begin() + static_cast<std::ptrdiff_t>(k));
          weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(k));
        }
      }
      progressed = true;
    }
    if (progressed) {
      double total = 0.0;
      for (double w : weights) total += w;
      if (total > 0.0)
        for (double& w : weights) w /= total;
      rebuild_p();
    }
    if (!progressed || norm_sq(p) >= pp) {
      // Singular active system or a stalled minor cycle: fall back to an
      // exact-line-search step toward the new vertex, which strictly
      // decreases the norm while the gap is positive.
      bool have_s = false;
      for (std::size_t idx : active) have_s |= (idx == s);
      if (!have_s) {
        active.push_back(s);
        weights.push_back(0.0);
      }
      Vec dir(d);
      for (std::size_t k = 0; k < d; ++k) dir[k] = z[s][k] - p[k];
      const double dd = norm_sq(dir);
      if (dd <= 1e-32) {
        converged = true;
        break;
      }
      const double gamma = std::clamp(-dot(p, dir) / dd, 0.0, 1.0);
      for (double& w : weights) w *= (1.0 - gamma);
      for (std::size_t k = 0; k < active.size(); ++k)
        if (active[k] == s) weights[k] += gamma;
      rebuild_p();
    }
  }

  const double pn = norm(p);
  if (pn <= opt.feas_tol)
    return Labeling{std::move(labels), false, 0.0, std::nullopt};
  Vec w = p;
  scale_in_place(w, 1.0 / pn);
  double witness_margin = dot(z[0], w);
  for (std::size_t i = 1; i < n; ++i)
    witness_margin = std::min(witness_margin, dot(z[i], w));

  if (!converged)
    throw convergence_error(
        "solve_labeled: duality gap " + fmt17(gap) + " above tolerance " +
            fmt17(opt.gap_tol) + " after " + std::to_string(cap) + " iterations",
        std::max(witness_margin, 0.0), pn);

  if (witness_margin <= opt.feas_tol)
    return Labeling{std::move(labels), false, 0.0, std::nullopt};
  return Labeling{std::move(labels), true, witness_margin,
                  Hyperplane{std::move(w), witness_margin}};
}

/// The labeling induced by a unit normal (ties to +1), solved so that its
/// feasibility status, margin and witness are filled in.
inline Labeling labeling_of(std::span<const double> w, const PointSet& ps,
                            const MinNormOptions& opt = {}) {
  if (!is_unit(w, tol_unit))
    throw input_error("labeling_of: normal is not unit length");
  return solve_labeled(signs_of(w, ps), ps, opt);
}

/// Negation of a labeling; the through-origin problem is sign-symmetric, so
/// margin and feasibility carry over with the witness normal flipped.
inline Labeling negated(const Labeling& l) {
  Labeling out = l;
  for (std::int8_t& s : out.labels) s = static_cast<std::int8_t>(-s);
  if (out.witness) scale_in_place(out.witness->normal, -1.0);
  return out;
}

}  // namespace fhp
