#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "fhp/core.hpp"
#include "fhp/exact.hpp"
#include "fhp/parallel.hpp"

namespace fhp {

/// An affine separating hyperplane <normal, x> + offset = 0, found by
/// recentering at the midpoint of one point pair. Margin is evaluated on the
/// original (untranslated) points.
struct AffineSeparation {
  Vec normal;
  double offset = 0.0;
  double margin = 0.0;
  Vec center;
  std::size_t pair_i = 0, pair_j = 0;
};

using InnerSolver = std::function<SolveResult(const PointSet&, std::uint64_t seed)>;

struct MmcOptions {
  std::uint64_t seed = 0;
};

/**
 * Maximum-margin clustering by reduction: an optimal affine separation has
 * two equally distant points on opposite sides, so its hyperplane passes
 * through some pair midpoint. For every pair, translate the instance to that
 * midpoint, rescale into the unit ball, solve the through-origin problem,
 * and map the witness back. Candidates are scored by their margin on the
 * original points (recentered scales differ per pair, so the inner margins
 * are not comparable); candidates that leave a cluster empty are skipped.
 */
inline AffineSeparation solve_mmc(const PointSet& ps, const InnerSolver& inner,
                                  const MmcOptions& opt = {}) {
  const std::size_t n = ps.size();
  const std::size_t d = ps.dim();
  if (n < 2) throw input_error("solve_mmc: need at least 2 points");

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  std::vector<std::optional<AffineSeparation>> candidates(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    Vec center(d);
    for (std::size_t r = 0; r < d; ++r)
      center[r] = (ps.point(i)[r] + ps.point(j)[r]) / 2.0;
    std::vector<Vec> rows(n, Vec(d));
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t r = 0; r < d; ++r) rows[p][r] = ps.point(p)[r] - center[r];
    std::optional<PointSet> recentered;
    try {
      recentered = normalize_instance(rows);
    } catch (const input_error&) {
      return;  // all points coincided with the center
    }

    SolveResult sr = [&]() -> SolveResult {
      try {
        return inner(*recentered, derive_seed(opt.seed, k));
      } catch (const input_error&) {
        return SolveResult{};  // no feasible labeling (e.g. a point at the center)
      }
    }();
    if (!sr.best.witness) return;

    const Vec& w = sr.best.witness->normal;
    const double offset = -dot(w, center);
    double margin = std::numeric_limits<double>::infinity();
    std::size_t pos = 0, neg = 0;
    for (std::size_t p = 0; p < n; ++p) {
      const double v = dot(w, ps.point(p)) + offset;
      margin = std::min(margin, std::fabs(v));
      (v >= 0.0 ? pos : neg) += 1;
    }
    if (pos == 0 || neg == 0 || !(margin > 0.0)) return;
    candidates[k] = AffineSeparation{w, offset, margin, center, i, j};
  });

  // Deterministic merge: best margin, ties to the lexicographically first pair.
  std::optional<AffineSeparation> best;
  for (const auto& c : candidates)
    if (c && (!best || c->margin > best->margin)) best = c;
  if (!best)
    throw input_error("solve_mmc: no candidate separates the points into two nonempty "
                      "clusters (all points identical?)");
  return *best;
}

/// Convenience inner solver: exhaustive BFS enumeration. Perturbation is on
/// because every recentered instance has an antipodal pair by construction
/// (the two points defining the midpoint).
inline InnerSolver bfs_inner_solver(EnumerateOptions base = {}) {
  base.perturb = true;
  return [base](const PointSet& ps, std::uint64_t seed) {
    EnumerateOptions opt = base;
    opt.seed = seed;
    return solve_exact_bfs(ps, opt);
  };
}

}  // namespace fhp
