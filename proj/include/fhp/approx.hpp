#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "fhp/core.hpp"
#include "fhp/parallel.hpp"
#include "fhp/rng.hpp"

namespace fhp {

struct ApproxParams {
  double alpha = 0.1;                // discard fraction knob, in (0,1)
  std::uint64_t trials = 64;         // independent Gaussian combinations
  std::uint64_t seed = 0;
  double power_iter_tol = 1e-10;     // Rayleigh-quotient residual tolerance
  std::uint64_t power_iter_cap = 10'000;
};

/**
 * Record of the adaptive-reweighting loop. Row j (0-based) holds the state of
 * iteration j+1: `weights[j]` are the per-point weights the iteration ran
 * with, `margins[j][i] = |<x_i, w_j>|`, and `directions[j]` is the top
 * singular direction of the weighted point matrix. `weights` has one extra
 * row: the weights after the final update, which is what terminated the loop.
 */
struct ReweightTrace {
  std::size_t iterations = 0;
  std::vector<Vec> weights;     // iterations + 1 rows of length n
  std::vector<Vec> margins;     // iterations rows of length n
  std::vector<Vec> directions;  // iterations rows of length d
};

namespace detail {

/// Top eigenvector of a symmetric PSD matrix (row-major d x d) by power
/// iteration. Accepts either a small eigen-residual or a stalled Rayleigh
/// quotient; the latter covers (near-)tied top eigenvalues, where any vector
/// of the top eigenspace maximizes the quadratic form equally well.
inline Vec power_iteration_top(const std::vector<double>& gram, std::size_t d, double tol,
                               std::uint64_t cap, Rng& rng) {
  Vec v = rng.gaussian_vector(d);
  std::size_t peak = 0;
  for (std::size_t k = 1; k < d; ++k)
    if (gram[k * d + k] > gram[peak * d + peak]) peak = k;
  v[peak] += 1.0;
  scale_in_place(v, 1.0 / norm(v));

  Vec gv(d);
  double rho_prev = -1.0;
  std::size_t stalled = 0;
  double residual = 0.0;
  for (std::uint64_t it = 0; it < cap; ++it) {
    for (std::size_t r = 0; r < d; ++r) gv[r] = dot({gram.data() + r * d, d}, v);
    const double rho = dot(v, gv);
    double res_sq = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
      const double e = gv[r] - rho * v[r];
      res_sq += e * e;
    }
    residual = std::sqrt(res_sq);
    if (residual <= tol * std::max(rho, 1e-300)) break;
    if (rho - rho_prev <= tol * std::max(rho, 1e-300) && it >= 16) {
      if (++stalled >= 3) break;
    } else {
      stalled = 0;
    }
    rho_prev = rho;
    const double gn = norm(gv);
    if (gn == 0.0)
      throw convergence_error("power iteration: matrix annihilated the iterate", 0.0, 0.0);
    for (std::size_t r = 0; r < d; ++r) v[r] = gv[r] / gn;
    if (it + 1 == cap)
      throw convergence_error("power iteration: residual " + fmt17(residual) +
                                  " above tolerance after " + std::to_string(cap) +
                                  " iterations",
                              0.0, residual);
  }
  // Canonical sign: largest-magnitude coordinate positive.
  std::size_t big = 0;
  for (std::size_t k = 1; k < d; ++k)
    if (std::fabs(v[k]) > std::fabs(v[big])) big = k;
  if (v[big] < 0.0) scale_in_place(v, -1.0);
  return v;
}

}  // namespace detail

/**
 * The reweighting loop: while the total weight is at least 1/n, take the top
 * singular direction of the weighted point matrix, record each point's
 * unsigned margin against it, and decay each weight by (1 - margin^2 / 2).
 * The top direction is computed by power iteration on the d x d weighted
 * second-moment matrix sum_i weight_i x_i x_i^T.
 */
inline ReweightTrace reweight_directions(const PointSet& ps, const ApproxParams& params) {
  const std::size_t n = ps.size();
  const std::size_t d = ps.dim();
  const double min_sq = ps.min_point_norm() * ps.min_point_norm();
  if (min_sq == 0.0)
    throw input_error("reweight_directions: instance contains a zero point; its weight "
                      "can never decay");
  // Total weight decays by at least a factor (1 - min_sq/(2d)) per round, so
  // this cap is a guarantee, not a tunable.
  const double log2n = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  const std::size_t round_cap =
      static_cast<std::size_t>(std::ceil(6.0 * static_cast<double>(d) * log2n / min_sq)) + 16;

  ReweightTrace trace;
  Vec weight(n, 1.0);
  trace.weights.push_back(weight);
  std::vector<double> gram(d * d);

  double total = static_cast<double>(n);
  while (total >= 1.0 / static_cast<double>(n)) {
    if (trace.iterations >= round_cap)
      throw convergence_error("reweight_directions: round cap exceeded", 0.0, total);
    std::fill(gram.begin(), gram.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (weight[i] == 0.0) continue;
      auto x = ps.point(i);
      for (std::size_t r = 0; r < d; ++r) {
        const double wr = weight[i] * x[r];
        for (std::size_t c = r; c < d; ++c) gram[r * d + c] += wr * x[c];
      }
    }
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < r; ++c) gram[r * d + c] = gram[c * d + r];

    Rng rng = Rng::substream(params.seed, 0xb0000000ull + trace.iterations);
    Vec dir = detail::power_iteration_top(gram, d, params.power_iter_tol,
                                          params.power_iter_cap, rng);

    Vec sigma(n);
    for (std::size_t i = 0; i < n; ++i)
      sigma[i] = std::clamp(std::fabs(dot(dir, ps.point(i))), 0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) weight[i] *= (1.0 - sigma[i] * sigma[i] / 2.0);

    trace.directions.push_back(std::move(dir));
    trace.margins.push_back(std::move(sigma));
    trace.weights.push_back(weight);
    ++trace.iterations;
    total = 0.0;
    for (double w : weight) total += w;
  }
  return trace;
}

/// One random combination of the trace directions with its Gaussian
/// coefficients and the pre-normalization length.
struct GaussianCombination {
  Vec w;           // unit vector
  Vec coefficients;
  double w_prime_norm = 0.0;
};

inline GaussianCombination combine_gaussian(const ReweightTrace& trace, Rng& rng) {
  const std::size_t t = trace.iterations;
  if (t < 1) throw input_error("combine_gaussian: trace has no directions");
  const std::size_t d = trace.directions.front().size();
  for (int attempt = 0; attempt < 2; ++attempt) {
    Vec g(t);
    for (double& v : g) v = rng.normal();
    Vec combined(d, 0.0);
    for (std::size_t j = 0; j < t; ++j) axpy(combined, g[j], trace.directions[j]);
    const double nrm = norm(combined);
    if (nrm >= 1e-12) {
      scale_in_place(combined, 1.0 / nrm);
      return GaussianCombination{std::move(combined), std::move(g), nrm};
    }
  }
  throw convergence_error("combine_gaussian: combination vanished twice", 0.0, 0.0);
}

struct CoverageRow {
  std::uint64_t trial = 0;
  double w_prime_norm = 0.0;
  double level_at_m = 0.0;  // m-th largest |<w, x_i>|
};

struct ApproxResult {
  Hyperplane best;                // achieved_margin is over all points
  std::uint64_t best_trial = 0;
  std::size_t m = 0;              // coverage target count, ceil((1-5*alpha)*n)
  std::vector<CoverageRow> rows;
  ReweightTrace trace;
};

/// All |<w, x_i>| in descending order (the full coverage curve).
inline Vec sorted_abs_margins(std::span<const double> w, const PointSet& ps) {
  Vec mags(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) mags[i] = std::fabs(dot(w, ps.point(i)));
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  return mags;
}

/// Largest value v such that at least m points satisfy |<w, x_i>| >= v.
inline double coverage_level(std::span<const double> w, const PointSet& ps, std::size_t m) {
  const Vec mags = sorted_abs_margins(w, ps);
  m = std::clamp<std::size_t>(m, 1, mags.size());
  return mags[m - 1];
}

/**
 * Full approximation pass: one reweighting loop, then `trials` independent
 * Gaussian combinations scored by their coverage level at
 * m = ceil((1-5*alpha)*n). The per-draw guarantee needs no knowledge of the
 * optimal margin, so neither does the scoring.
 */
inline ApproxResult approx_solve(const PointSet& ps, const ApproxParams& params) {
  if (!(params.alpha > 0.0 && params.alpha < 1.0))
    throw input_error("approx_solve: alpha must be in (0,1)");
  if (params.trials < 1) throw input_error("approx_solve: need trials >= 1");
  const std::size_t n = ps.size();

  ApproxResult out;
  out.trace = reweight_directions(ps, params);
  out.m = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil((1.0 - 5.0 * params.alpha) * static_cast<double>(n))),
      1, n);

  out.rows.resize(params.trials);
  std::vector<Vec> candidates(params.trials);
  parallel_for(params.trials, [&](std::size_t k) {
    Rng rng = Rng::substream(params.seed, 0xc0000000ull + k);
    GaussianCombination comb = combine_gaussian(out.trace, rng);
    out.rows[k] = CoverageRow{k, comb.w_prime_norm, coverage_level(comb.w, ps, out.m)};
    candidates[k] = std::move(comb.w);
  });

  std::size_t best = 0;
  for (std::size_t k = 1; k < params.trials; ++k)
    if (out.rows[k].level_at_m > out.rows[best].level_at_m) best = k;
  out.best_trial = best;
  out.best.normal = std::move(candidates[best]);
  out.best.achieved_margin = margin_of(out.best.normal, ps);
  return out;
}

}  // namespace fhp
