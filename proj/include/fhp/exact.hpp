#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fhp/core.hpp"
#include "fhp/parallel.hpp"
#include "fhp/rng.hpp"

namespace fhp {

/// Outcome of an exact (or sampling) solve. `certified` is true when the
/// algorithm proves the returned margin optimal; the random-hyperplane
/// solver never certifies.
struct SolveResult {
  Labeling best;
  double margin = 0.0;
  std::uint64_t labelings_explored = 0;
  std::uint64_t samples_drawn = 0;
  bool certified = false;
  std::uint64_t seed = 0;
  std::string solver;
  double elapsed_seconds = 0.0;
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline std::uint64_t signature_mask(std::size_t n) {
  return n >= 64 ? ~0ull : ((1ull << n) - 1);
}

inline std::uint64_t pack_signature(const std::vector<std::int8_t>& labels) {
  std::uint64_t sig = 0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] > 0) sig |= (1ull << i);
  return sig;
}

inline std::vector<std::int8_t> unpack_signature(std::uint64_t sig, std::size_t n) {
  std::vector<std::int8_t> labels(n);
  for (std::size_t i = 0; i < n; ++i)
    labels[i] = (sig >> i) & 1 ? +1 : -1;
  return labels;
}

/// A labeling and its global negation have the same margin; cache them under
/// one key.
inline std::uint64_t canonical_signature(std::uint64_t sig, std::size_t n) {
  const std::uint64_t neg = ~sig & signature_mask(n);
  return std::min(sig, neg);
}

inline void require_signature_width(std::size_t n, const char* who) {
  if (n > 64)
    throw input_error(std::string(who) + ": supports n <= 64 points (desk-scale)");
}

}  // namespace detail

struct EnumerateOptions {
  std::uint64_t seed = 0;
  bool perturb = false;             // retry with perturbed points on degeneracy
  double perturb_magnitude = 1e-7;  // per-coordinate offset size; labelings
                                    // created by smaller offsets fall below
                                    // double-precision margin resolution
  std::size_t start_retries = 64;
  MinNormOptions mnp;
};

namespace detail {

/// The one-flip BFS walk is justified by rotating a normal continuously and
/// crossing one point boundary at a time; two parallel (or antipodal) points
/// share a boundary and break that argument.
inline bool has_parallel_pair(const PointSet& ps) {
  const std::size_t n = ps.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double ni = norm_sq(ps.point(i));
    if (ni == 0.0) continue;  // zero points are reported separately
    for (std::size_t j = i + 1; j < n; ++j) {
      const double nj = norm_sq(ps.point(j));
      if (nj == 0.0) continue;
      const double ip = dot(ps.point(i), ps.point(j));
      if (ip * ip >= ni * nj * (1.0 - 1e-12)) return true;
    }
  }
  return false;
}

inline std::vector<Labeling> enumerate_bfs(const PointSet& ps, const EnumerateOptions& opt,
                                           bool verify_general_position) {
  const std::size_t n = ps.size();
  require_signature_width(n, "enumerate_feasible_labelings");
  if (verify_general_position && ps.dim() > 1 && has_parallel_pair(ps))
    throw input_error(
        "enumerate_feasible_labelings: instance has parallel or antipodal points "
        "(not in general position) -- enable perturbation");

  std::vector<Labeling> found;
  std::unordered_map<std::uint64_t, bool> visited;  // signature -> feasible
  std::deque<std::uint64_t> frontier;

  auto record = [&](Labeling&& l) {
    const std::uint64_t sig = pack_signature(l.labels);
    const std::uint64_t neg = ~sig & signature_mask(n);
    if (l.feasible) {
      Labeling flipped = negated(l);
      visited[sig] = true;
      found.push_back(std::move(l));
      frontier.push_back(sig);
      if (visited.insert({neg, true}).second) {
        found.push_back(std::move(flipped));
        frontier.push_back(neg);
      }
    } else {
      visited[sig] = false;
      visited[neg] = false;
    }
  };

  Rng rng = Rng::substream(opt.seed, 0x5f3759df);
  bool started = false;
  for (std::size_t attempt = 0; attempt < opt.start_retries && !started; ++attempt) {
    Vec w = sample_unit_vector(rng, ps.dim());
    Labeling l = solve_labeled(signs_of(w, ps), ps, opt.mnp);
    if (l.feasible) {
      record(std::move(l));
      started = true;
    }
  }
  if (!started) {
    if (ps.min_point_norm() == 0.0)
      throw input_error(
          "enumerate_feasible_labelings: instance contains a zero point, so every "
          "labeling is infeasible");
    throw input_error(
        "enumerate_feasible_labelings: no feasible labeling found from " +
        std::to_string(opt.start_retries) + " random starts");
  }

  // Sauer bound on the feasible-labeling count; exceeding twice that value
  // means the instance is degenerate enough that the one-flip graph walk is
  // not trustworthy.
  const double sauer = std::pow(static_cast<double>(n), static_cast<double>(ps.dim() + 1));
  while (!frontier.empty()) {
    const std::uint64_t sig = frontier.front();
    frontier.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t next = sig ^ (1ull << i);
      if (visited.count(next)) continue;
      record(solve_labeled(unpack_signature(next, n), ps, opt.mnp));
      if (static_cast<double>(found.size()) > 2.0 * sauer)
        throw input_error(
            "enumerate_feasible_labelings: explored more than 2*n^(d+1) labelings; "
            "the instance looks degenerate -- enable perturbation");
    }
  }
  return found;
}

inline PointSet perturbed_copy(const PointSet& ps, std::uint64_t seed, double magnitude) {
  Rng rng = Rng::substream(seed, 0x7e57ab1e);
  std::vector<Vec> rows(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    auto x = ps.point(i);
    rows[i].assign(x.begin(), x.end());
    for (double& v : rows[i]) v += magnitude * (2.0 * rng.uniform01() - 1.0);
  }
  return normalize_instance(rows);
}

}  // namespace detail

/**
 * All feasible labelings of the instance, produced by BFS over the graph
 * whose nodes are feasible labelings and whose edges connect labelings
 * differing in one label. Requires general position; with opt.perturb the
 * walk is retried on a deterministically perturbed copy when degeneracy is
 * detected, and every found labeling is then re-solved on the original
 * points (labelings that were artifacts of the perturbation drop out).
 */
inline std::vector<Labeling> enumerate_feasible_labelings(const PointSet& ps,
                                                          const EnumerateOptions& opt = {}) {
  try {
    return detail::enumerate_bfs(ps, opt, /*verify_general_position=*/true);
  } catch (const input_error&) {
    if (!opt.perturb) throw;
  }
  const PointSet shaken = detail::perturbed_copy(ps, opt.seed, opt.perturb_magnitude);
  EnumerateOptions inner = opt;
  inner.perturb = false;
  // Labelings that exist only on the perturbed points have margins of the
  // order of the perturbation; the walk needs them feasible to stay
  // connected, so the feasibility cut is tightened well below the magnitude.
  // The general-position check is skipped: a perturbation this small cannot
  // move a cosine at double precision, but the walk only needs the flip
  // solves, which resolve margins far below the perturbation scale.
  inner.mnp.feas_tol = std::min(opt.mnp.feas_tol, opt.perturb_magnitude * 1e-4);
  std::vector<Labeling> candidates =
      detail::enumerate_bfs(shaken, inner, /*verify_general_position=*/false);
  std::vector<Labeling> kept;
  for (const Labeling& c : candidates) {
    Labeling l = solve_labeled(c.labels, ps, opt.mnp);
    if (l.feasible) kept.push_back(std::move(l));
  }
  if (kept.empty())
    throw input_error("enumerate_feasible_labelings: no labeling survives on the "
                      "unperturbed points");
  return kept;
}

/// Exhaustive solve by feasible-labeling enumeration; the returned margin is
/// the global optimum.
inline SolveResult solve_exact_bfs(const PointSet& ps, const EnumerateOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Labeling> all = enumerate_feasible_labelings(ps, opt);
  std::size_t best = 0;
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i].solved_margin > all[best].solved_margin) best = i;
  SolveResult r;
  r.best = all[best];
  r.margin = r.best.solved_margin;
  r.labelings_explored = all.size();
  r.certified = true;
  r.seed = opt.seed;
  r.solver = "bfs";
  r.elapsed_seconds = detail::seconds_since(t0);
  return r;
}

struct EpsNetOptions {
  std::uint64_t max_net_points = 4'000'000;  // per-guess budget
  double min_guess = 1.0 / 4096.0;
  MinNormOptions mnp;
};

/**
 * Guess-and-halve epsilon-net search: for guesses theta_g = 1, 1/2, 1/4, ...
 * build a net of mesh theta_g/2 on the sphere (axis-aligned grid on the
 * enclosing cube, normalized), solve every distinct induced labeling, and
 * stop as soon as the best margin reaches the current guess -- at that point
 * the result is certified optimal. If the net budget runs out first, the
 * best labeling seen so far is returned with certified = false.
 */
inline SolveResult solve_eps_net(const PointSet& ps, const EpsNetOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = ps.size();
  const std::size_t d = ps.dim();
  detail::require_signature_width(n, "solve_eps_net");

  std::optional<Labeling> best;
  std::uint64_t evaluated = 0, solved = 0;
  std::unordered_set<std::uint64_t> seen;
  bool certified = false;

  const std::size_t block = 1 << 14;
  for (double guess = 1.0; guess >= opt.min_guess; guess /= 2.0) {
    const double eps = guess / 2.0;
    const double mesh = eps / std::sqrt(static_cast<double>(d));
    const std::uint64_t per_axis = 2 * static_cast<std::uint64_t>(std::ceil(1.0 / mesh)) + 1;
    const double total = std::pow(static_cast<double>(per_axis), static_cast<double>(d));
    if (total > static_cast<double>(opt.max_net_points)) break;
    const std::uint64_t count = static_cast<std::uint64_t>(total);
    const std::int64_t half = static_cast<std::int64_t>(per_axis / 2);

    for (std::uint64_t base = 0; base < count; base += block) {
      const std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(block, count - base));
      // Signature evaluation is data-parallel; each slot is one net point.
      std::vector<std::uint64_t> sigs(len, ~0ull);
      parallel_for(len, [&](std::size_t j) {
        std::uint64_t idx = base + j;
        Vec v(d);
        bool zero = true;
        for (std::size_t k = 0; k < d; ++k) {
          const std::int64_t coord = static_cast<std::int64_t>(idx % per_axis) - half;
          idx /= per_axis;
          v[k] = mesh * static_cast<double>(coord);
          if (coord != 0) zero = false;
        }
        if (zero) return;  // origin has no direction
        scale_in_place(v, 1.0 / norm(v));
        sigs[j] = detail::canonical_signature(detail::pack_signature(signs_of(v, ps)), n);
      });
      for (std::size_t j = 0; j < len; ++j) {
        if (sigs[j] == ~0ull) continue;
        ++evaluated;
        if (!seen.insert(sigs[j]).second) continue;
        Labeling l = solve_labeled(detail::unpack_signature(sigs[j], n), ps, opt.mnp);
        ++solved;
        if (l.feasible && (!best || l.solved_margin > best->solved_margin))
          best = std::move(l);
      }
    }
    if (best && best->solved_margin >= guess) {
      certified = true;
      break;
    }
  }

  if (!best) {
    if (evaluated == 0)
      throw input_error(
          "solve_eps_net: net budget of " + std::to_string(opt.max_net_points) +
          " points cannot cover even the coarsest net at this dimension");
    throw input_error("solve_eps_net: no feasible labeling found within the net budget");
  }
  SolveResult r;
  r.best = *best;
  r.margin = best->solved_margin;
  r.labelings_explored = solved;
  r.samples_drawn = evaluated;
  r.certified = certified;
  r.solver = "net";
  r.elapsed_seconds = detail::seconds_since(t0);
  return r;
}

/// Sampling budget for the random-hyperplane solver. When built from a margin
/// lower bound, the sample count follows the n^(c/theta^2) law.
struct SampleBudget {
  std::uint64_t samples = 1;
  std::optional<double> theta_lower;
  std::uint64_t seed = 0;

  static SampleBudget fixed(std::uint64_t samples, std::uint64_t seed) {
    if (samples < 1) throw input_error("SampleBudget: need samples >= 1");
    return SampleBudget{samples, std::nullopt, seed};
  }

  static SampleBudget from_theta_lower(std::size_t n, double theta, std::uint64_t seed,
                                       double c_rh = 4.0,
                                       std::uint64_t max_samples = 500'000'000) {
    if (!(theta > 0.0 && theta <= 1.0))
      throw input_error("SampleBudget: theta_lower must be in (0,1]");
    const double required =
        std::ceil(std::pow(static_cast<double>(n), c_rh / (theta * theta)));
    if (!(required <= static_cast<double>(max_samples)))
      throw input_error("SampleBudget: n^(c/theta^2) = " + fmt17(required) +
                        " exceeds the sample cap; margin too small for this solver");
    return SampleBudget{static_cast<std::uint64_t>(std::max(1.0, required)), theta, seed};
  }
};

struct RandomHyperplaneOptions {
  std::size_t stable_rounds = 3;            // doubling mode stop rule
  std::uint64_t max_total_samples = 100'000'000;  // doubling mode cap
  MinNormOptions mnp;
};

/**
 * Random-hyperplane search: draw unit normals uniformly at random, solve each
 * distinct induced labeling once, keep the best. With theta_lower set the
 * budget is spent in one pass; otherwise the budget doubles until the best
 * labeling is unchanged for `stable_rounds` consecutive rounds (heuristic).
 */
inline SolveResult solve_random_hyperplane(const PointSet& ps, const SampleBudget& budget,
                                           const RandomHyperplaneOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = ps.size();
  const std::size_t d = ps.dim();
  detail::require_signature_width(n, "solve_random_hyperplane");

  std::optional<Labeling> best;
  std::uint64_t drawn = 0, solved = 0, next_block = 0;
  std::unordered_set<std::uint64_t> seen;

  constexpr std::uint64_t block = 1 << 14;
  auto run_samples = [&](std::uint64_t count) {
    while (count > 0) {
      const std::uint64_t window_blocks =
          std::min<std::uint64_t>((count + block - 1) / block, 64);
      std::vector<std::vector<std::uint64_t>> buf(window_blocks);
      std::vector<std::uint64_t> sizes(window_blocks);
      for (std::uint64_t b = 0; b < window_blocks; ++b) {
        sizes[b] = std::min<std::uint64_t>(block, count);
        count -= sizes[b];
      }
      // Each block consumes its own seed sub-stream, so results match the
      // sequential order no matter how many workers run.
      const std::uint64_t first = next_block;
      parallel_for(window_blocks, [&](std::size_t b) {
        Rng rng = Rng::substream(budget.seed, first + b);
        buf[b].resize(sizes[b]);
        for (std::uint64_t j = 0; j < sizes[b]; ++j) {
          Vec w = sample_unit_vector(rng, d);
          buf[b][j] = detail::canonical_signature(detail::pack_signature(signs_of(w, ps)), n);
        }
      });
      next_block += window_blocks;
      for (std::uint64_t b = 0; b < window_blocks; ++b) {
        drawn += sizes[b];
        for (std::uint64_t sig : buf[b]) {
          if (!seen.insert(sig).second) continue;
          Labeling l = solve_labeled(detail::unpack_signature(sig, n), ps, opt.mnp);
          ++solved;
          if (l.feasible && (!best || l.solved_margin > best->solved_margin))
            best = std::move(l);
        }
      }
    }
  };

  if (budget.theta_lower) {
    run_samples(budget.samples);
  } else {
    std::uint64_t round = std::max<std::uint64_t>(budget.samples, 1);
    std::size_t stable = 0;
    std::uint64_t last_best = ~0ull;
    while (stable < opt.stable_rounds && drawn < opt.max_total_samples) {
      run_samples(std::min(round, opt.max_total_samples - drawn));
      const std::uint64_t now_best =
          best ? detail::canonical_signature(detail::pack_signature(best->labels), n) : ~0ull;
      if (best && now_best == last_best)
        ++stable;
      else
        stable = 0;
      last_best = now_best;
      round *= 2;
    }
  }

  if (!best)
    throw input_error("solve_random_hyperplane: no feasible labeling among " +
                      std::to_string(drawn) + " samples");
  SolveResult r;
  r.best = *best;
  r.margin = best->solved_margin;
  r.labelings_explored = solved;
  r.samples_drawn = drawn;
  r.certified = false;
  r.seed = budget.seed;
  r.solver = "random";
  r.elapsed_seconds = detail::seconds_since(t0);
  return r;
}

}  // namespace fhp
