#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fhp/common.hpp"
#include "fhp/rng.hpp"

namespace fhp {

/// A d-regular graph together with a numerically certified bound on its
/// second-largest adjacency eigenvalue (in absolute value) and the edge
/// expansion it implies through the spectral bound h(G) >= (d - lambda)/2.
struct ExpanderGraph {
  std::size_t vertices = 0;
  int degree = 14;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted
  double lambda2 = 0.0;
  double expansion_lb = 0.0;
};

struct ExpanderOptions {
  int degree = 14;
  int max_attempts = 100;
  double min_expansion = 14.0 / 5.0;
};

namespace detail {

inline std::uint64_t edge_key(int u, int v, std::size_t m) {
  return static_cast<std::uint64_t>(std::min(u, v)) * m +
         static_cast<std::uint64_t>(std::max(u, v));
}

/// Random simple deg-regular graph by the pairing model: every vertex gets
/// deg stubs, stubs are matched at random, and a matching that would create
/// a loop or a repeated edge is rejected. Returns empty on a dead end.
inline std::vector<std::pair<int, int>> random_regular_pairing(std::size_t m, int deg,
                                                               Rng& rng) {
  std::vector<int> stubs;
  stubs.reserve(m * static_cast<std::size_t>(deg));
  for (std::size_t v = 0; v < m; ++v)
    for (int k = 0; k < deg; ++k) stubs.push_back(static_cast<int>(v));
  std::unordered_set<std::uint64_t> used;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(stubs.size() / 2);
  int consecutive_rejects = 0;
  while (stubs.size() >= 2) {
    const std::size_t a = static_cast<std::size_t>(rng.below(stubs.size()));
    std::size_t b = static_cast<std::size_t>(rng.below(stubs.size() - 1));
    if (b >= a) ++b;
    const int u = stubs[a], v = stubs[b];
    if (u == v || used.count(edge_key(u, v, m))) {
      if (++consecutive_rejects > 500) return {};
      continue;
    }
    consecutive_rejects = 0;
    used.insert(edge_key(u, v, m));
    edges.emplace_back(std::min(u, v), std::max(u, v));
    const std::size_t hi = std::max(a, b), lo = std::min(a, b);
    stubs[hi] = stubs.back();
    stubs.pop_back();
    stubs[lo] = stubs.back();
    stubs.pop_back();
  }
  return edges;
}

inline std::vector<std::pair<int, int>> complement_edges(
    std::size_t m, const std::vector<std::pair<int, int>>& edges) {
  std::unordered_set<std::uint64_t> used;
  for (auto [u, v] : edges) used.insert(edge_key(u, v, m));
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u + 1 < static_cast<int>(m); ++u)
    for (int v = u + 1; v < static_cast<int>(m); ++v)
      if (!used.count(edge_key(u, v, m))) out.emplace_back(u, v);
  return out;
}

}  // namespace detail

/// Second-largest absolute adjacency eigenvalue, by dense symmetric
/// eigendecomposition. For a connected regular graph the top eigenvalue is
/// the degree; disconnected graphs report lambda2 = degree and fail any
/// expansion certificate.
inline double adjacency_lambda2(std::size_t m, const std::vector<std::pair<int, int>>& edges) {
  if (m < 2) throw input_error("adjacency_lambda2: need at least 2 vertices");
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                              static_cast<Eigen::Index>(m));
  for (auto [u, v] : edges) {
    adj(u, v) = 1.0;
    adj(v, u) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adj, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw convergence_error("adjacency_lambda2: eigensolver failed", 0.0, 0.0);
  const auto& ev = solver.eigenvalues();  // ascending
  const Eigen::Index last = static_cast<Eigen::Index>(m) - 1;
  return std::max(std::fabs(ev(0)), std::fabs(ev(last - 1)));
}

/**
 * Random 14-regular graph accepted only when the certified spectral bound
 * gives edge expansion above degree/5. Generation uses the stub-pairing
 * model; for m < 2*degree + 1 the complement graph is generated instead
 * (same model, lower degree) and complemented. Each attempt consumes a
 * fresh seed sub-stream; failing max_attempts raises.
 */
inline ExpanderGraph build_expander(std::size_t m, std::uint64_t seed,
                                    const ExpanderOptions& opt = {}) {
  const int deg = opt.degree;
  if (m < static_cast<std::size_t>(deg) + 1)
    throw input_error("build_expander: need m >= degree + 1 = " + std::to_string(deg + 1));
  if ((m * static_cast<std::size_t>(deg)) % 2 != 0)
    throw input_error("build_expander: m * degree must be even");

  const bool via_complement = static_cast<std::size_t>(deg) > (m - 1) / 2;
  const int gen_deg = via_complement ? static_cast<int>(m) - 1 - deg : deg;

  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    Rng rng = Rng::substream(seed, 0xe0000000ull + static_cast<std::uint64_t>(attempt));
    std::vector<std::pair<int, int>> edges;
    if (gen_deg == 0) {
      edges = via_complement ? detail::complement_edges(m, {}) : std::vector<std::pair<int, int>>{};
    } else {
      auto raw = detail::random_regular_pairing(m, gen_deg, rng);
      if (raw.empty()) continue;  // pairing dead end; retry
      edges = via_complement ? detail::complement_edges(m, raw) : std::move(raw);
    }
    std::sort(edges.begin(), edges.end());
    const double lambda2 = adjacency_lambda2(m, edges);
    const double expansion = (static_cast<double>(deg) - lambda2) / 2.0;
    if (expansion > opt.min_expansion)
      return ExpanderGraph{m, deg, std::move(edges), lambda2, expansion};
  }
  throw convergence_error("build_expander: no certified graph in " +
                              std::to_string(opt.max_attempts) + " attempts",
                          0.0, 0.0);
}

}  // namespace fhp
