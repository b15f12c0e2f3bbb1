#pragma once

// Test-only reference oracles. Everything here is deliberately independent
// of the solver paths it checks: margins come from dense sampling, angle
// sweeps, or exhaustive scans, never from the BFS/net/random machinery.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "fhp/cnf.hpp"
#include "fhp/core.hpp"
#include "fhp/rng.hpp"

namespace fhp::testing {

/// Signed margin of a labeling under normal w: min_i labels[i] * <w, x_i>.
inline double labeled_margin(std::span<const double> w, const PointSet& ps,
                             const std::vector<std::int8_t>& labels) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ps.size(); ++i)
    m = std::min(m, static_cast<double>(labels[i]) * dot(w, ps.point(i)));
  return m;
}

namespace detail {

/// Refinement of a sphere objective (larger is better) by resampling inside
/// shrinking caps around the incumbent; robust to the non-smooth maximin
/// landscape where coordinate descent stalls.
template <typename Objective>
Vec refine_on_sphere(Vec w, double& value, const PointSet& ps, Objective&& objective,
                     Rng& rng) {
  const std::size_t d = ps.dim();
  for (double radius = 0.3; radius > 2e-8; radius /= 2.5) {
    const std::size_t tries = 150 + 60 * d;
    for (std::size_t t = 0; t < tries; ++t) {
      Vec candidate = w;
      for (double& c : candidate) c += radius * rng.normal();
      const double nrm = norm(candidate);
      if (nrm < 1e-12) continue;
      scale_in_place(candidate, 1.0 / nrm);
      const double v = objective(candidate);
      if (v > value) {
        value = v;
        w = std::move(candidate);
      }
    }
  }
  return w;
}

template <typename Objective>
double sphere_maximum(const PointSet& ps, Objective&& objective, std::size_t samples,
                      std::uint64_t seed) {
  Rng rng = Rng::substream(seed, 0x0bac1e);
  Vec best_w = sample_unit_vector(rng, ps.dim());
  double best = objective(best_w);
  for (std::size_t s = 1; s < samples; ++s) {
    Vec w = sample_unit_vector(rng, ps.dim());
    const double v = objective(w);
    if (v > best) {
      best = v;
      best_w = std::move(w);
    }
  }
  refine_on_sphere(std::move(best_w), best, ps, objective, rng);
  return best;
}

}  // namespace detail

/// Brute-force FHP optimum: dense sphere sampling plus local search.
inline double oracle_fhp_margin(const PointSet& ps, std::size_t samples = 100'000,
                                std::uint64_t seed = 17) {
  return detail::sphere_maximum(
      ps,
      [&](const Vec& w) {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < ps.size(); ++i)
          m = std::min(m, std::fabs(dot(w, ps.point(i))));
        return m;
      },
      samples, seed);
}

/// Brute-force hard-margin value of one labeling (0 when infeasible).
inline double oracle_labeled_margin(const std::vector<std::int8_t>& labels,
                                    const PointSet& ps, std::size_t samples = 100'000,
                                    std::uint64_t seed = 17) {
  const double v = detail::sphere_maximum(
      ps, [&](const Vec& w) { return labeled_margin(w, ps, labels); }, samples, seed);
  return std::max(v, 0.0);
}

/// Exhaustive scan over all 2^n labelings through solve_labeled. Returns the
/// best margin and every feasible labeling's signature (negations included).
struct ExhaustiveScan {
  double best_margin = 0.0;
  std::set<std::uint64_t> feasible_signatures;
};

inline ExhaustiveScan exhaustive_labeling_scan(const PointSet& ps,
                                               const MinNormOptions& opt = {}) {
  const std::size_t n = ps.size();
  ExhaustiveScan out;
  for (std::uint64_t sig = 0; sig < (1ull << (n - 1)); ++sig) {
    std::vector<std::int8_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = (sig >> i) & 1 ? +1 : -1;
    labels[n - 1] = +1;  // negation symmetry halves the scan
    const std::uint64_t full = sig | (1ull << (n - 1));
    Labeling l = solve_labeled(labels, ps, opt);
    if (l.feasible) {
      out.best_margin = std::max(out.best_margin, l.solved_margin);
      out.feasible_signatures.insert(full);
      out.feasible_signatures.insert(~full & ((n == 64) ? ~0ull : (1ull << n) - 1));
    }
  }
  return out;
}

/// Exact d=2 oracle by sweeping the normal angle. Each point direction
/// splits the circle of normals at two angles; on every open arc the
/// labeling is constant and its margin is a concave function of the angle,
/// so ternary search is exact.
struct AngleSweep {
  double margin = 0.0;
  std::size_t feasible_count = 0;
  std::set<std::uint64_t> signatures;
};

inline AngleSweep angle_sweep(const PointSet& ps, double feas_tol = tol_feas) {
  if (ps.dim() != 2) throw input_error("angle_sweep: d must be 2");
  const std::size_t n = ps.size();
  std::vector<double> critical;
  for (std::size_t i = 0; i < n; ++i) {
    auto x = ps.point(i);
    if (norm(x) == 0.0) throw input_error("angle_sweep: zero point");
    const double a = std::atan2(x[1], x[0]);
    for (double shift : {M_PI_2, -M_PI_2}) {
      double c = std::fmod(a + shift, 2.0 * M_PI);
      if (c < 0) c += 2.0 * M_PI;
      critical.push_back(c);
    }
  }
  std::sort(critical.begin(), critical.end());
  critical.erase(std::unique(critical.begin(), critical.end(),
                             [](double a, double b) { return std::fabs(a - b) < 1e-12; }),
                 critical.end());
  if (std::fabs(critical.front() + 2.0 * M_PI - critical.back()) < 1e-12)
    critical.pop_back();

  auto w_at = [](double phi) { return Vec{std::cos(phi), std::sin(phi)}; };
  AngleSweep out;
  const std::size_t arcs = critical.size();
  for (std::size_t k = 0; k < arcs; ++k) {
    const double lo = critical[k];
    const double hi = (k + 1 < arcs) ? critical[k + 1] : critical[0] + 2.0 * M_PI;
    if (hi - lo < 1e-11) continue;
    const Vec mid = w_at((lo + hi) / 2.0);
    std::vector<std::int8_t> labels(n);
    std::uint64_t sig = 0;
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = dot(mid, ps.point(i)) < 0 ? -1 : +1;
      if (labels[i] > 0) sig |= (1ull << i);
    }
    double a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
      const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
      if (labeled_margin(w_at(m1), ps, labels) < labeled_margin(w_at(m2), ps, labels))
        a = m1;
      else
        b = m2;
    }
    const double arc_margin = labeled_margin(w_at((a + b) / 2.0), ps, labels);
    if (arc_margin > feas_tol) {
      out.signatures.insert(sig);
      out.margin = std::max(out.margin, arc_margin);
    }
  }
  out.feasible_count = out.signatures.size();
  return out;
}

/// Dense (angle, offset) sweep for maximum-margin clustering in d=2. For a
/// fixed normal angle the best offset centers the largest gap between
/// consecutive sorted projections.
inline double mmc_sweep(const PointSet& ps, std::size_t angle_steps = 400'000) {
  if (ps.dim() != 2) throw input_error("mmc_sweep: d must be 2");
  const std::size_t n = ps.size();
  double best = 0.0;
  std::vector<double> proj(n);
  for (std::size_t s = 0; s < angle_steps; ++s) {
    const double phi = M_PI * static_cast<double>(s) / static_cast<double>(angle_steps);
    const Vec w{std::cos(phi), std::sin(phi)};
    for (std::size_t i = 0; i < n; ++i) proj[i] = dot(w, ps.point(i));
    std::sort(proj.begin(), proj.end());
    for (std::size_t k = 0; k + 1 < n; ++k)
      best = std::max(best, (proj[k + 1] - proj[k]) / 2.0);
  }
  return best;
}

/// Instance with a planted labeling of margin at least theta_min: points sit
/// at signed distance m_i >= theta_min from a hidden hyperplane, padded
/// tangentially inside the unit ball.
inline PointSet planted_instance(std::size_t n, std::size_t d, double theta_min,
                                 std::uint64_t seed) {
  Rng rng = Rng::substream(seed, 0x91a47);
  const Vec hidden = sample_unit_vector(rng, d);
  std::vector<Vec> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = theta_min + (0.97 - theta_min) * rng.uniform01();
    const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    Vec x = hidden;
    scale_in_place(x, m);
    if (d > 1) {
      Vec t = rng.gaussian_vector(d);
      const double along = dot(t, hidden);
      axpy(t, -along, hidden);
      const double tn = norm(t);
      if (tn > 1e-12) {
        const double radius = rng.uniform01() * std::sqrt(std::max(0.0, 0.9409 - m * m));
        axpy(x, radius / tn, t);
      }
    }
    scale_in_place(x, sign);
    rows[i] = std::move(x);
  }
  return PointSet::from_rows(rows);
}

/// Random orthogonal matrix (rows) by Gram-Schmidt on Gaussian vectors.
inline std::vector<Vec> random_rotation(std::size_t d, Rng& rng) {
  std::vector<Vec> basis;
  while (basis.size() < d) {
    Vec v = rng.gaussian_vector(d);
    for (const Vec& b : basis) axpy(v, -dot(v, b), b);
    const double nrm = norm(v);
    if (nrm < 1e-8) continue;
    scale_in_place(v, 1.0 / nrm);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Vec apply_rotation(const std::vector<Vec>& rot, std::span<const double> x) {
  Vec out(rot.size());
  for (std::size_t r = 0; r < rot.size(); ++r) out[r] = dot(rot[r], x);
  return out;
}

/// Satisfiable 3SAT(13) formula with a known satisfying assignment: clauses
/// draw 3 distinct variables from the occurrence-budget pool and signs are
/// resampled until the planted assignment satisfies the clause.
inline CnfFormula planted_3sat13(int num_vars, int num_clauses, std::uint64_t seed,
                                 std::vector<bool>* assignment_out = nullptr) {
  Rng rng = Rng::substream(seed, 0x3537);
  std::vector<bool> assignment(num_vars);
  for (int v = 0; v < num_vars; ++v) assignment[v] = rng.uniform01() < 0.5;
  std::vector<int> occ(num_vars + 1, 0);
  CnfFormula f;
  f.num_vars = num_vars;
  for (int c = 0; c < num_clauses; ++c) {
    std::vector<int> pool;
    for (int v = 1; v <= num_vars; ++v)
      if (occ[v] < 13) pool.push_back(v);
    if (pool.size() < 3)
      throw input_error("planted_3sat13: occurrence budget exhausted; use more variables");
    std::vector<int> vars;
    while (vars.size() < 3) {
      const int v = pool[rng.below(pool.size())];
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    std::sort(vars.begin(), vars.end());
    std::vector<int> clause(3);
    do {
      for (int k = 0; k < 3; ++k)
        clause[k] = rng.uniform01() < 0.5 ? vars[k] : -vars[k];
    } while (!clause_satisfied(clause, assignment));
    for (int v : vars) ++occ[v];
    f.clauses.push_back(clause);
  }
  if (assignment_out) *assignment_out = assignment;
  return f;
}

/// One-sample Kolmogorov-Smirnov statistic against a uniform [lo, hi] law.
inline double ks_statistic_uniform(std::vector<double> samples, double lo, double hi) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double cdf = (samples[i] - lo) / (hi - lo);
    d = std::max(d, std::fabs(cdf - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(cdf - static_cast<double>(i + 1) / n));
  }
  return d;
}

}  // namespace fhp::testing
