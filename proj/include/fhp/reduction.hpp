#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "fhp/core.hpp"
#include "fhp/sym.hpp"

namespace fhp {

inline constexpr double reduction_shrink = 3.4641016151377543864;  // sqrt(12)

/**
 * Geometric embedding of a symmetric formula: each 2-literal clause over
 * variables j1 < j2 with negation signs s becomes the point with s_{j1} at
 * j1 and -s_{j2} at j2; each 4-literal clause gets 3*s_{j1} at j1 and -s_{jr}
 * at the rest. The D unit vectors are appended, and everything is shrunk by
 * sqrt(12) (the largest raw norm) to land inside the unit ball; the shrink
 * factor is stored as the point-set scale.
 */
inline PointSet points_from_sym(const SymFormula& psi) {
  const std::size_t dims = static_cast<std::size_t>(psi.num_vars());
  if (dims == 0) throw input_error("points_from_sym: formula has no variables");
  std::vector<Vec> rows;
  rows.reserve(psi.clauses.size() + dims);
  for (const auto& clause : psi.clauses) {
    if (clause.size() != 2 && clause.size() != 4)
      throw input_error("points_from_sym: clause arity must be 2 or 4");
    std::vector<int> lits = clause;
    std::sort(lits.begin(), lits.end(),
              [](int a, int b) { return std::abs(a) < std::abs(b); });
    for (std::size_t k = 1; k < lits.size(); ++k)
      if (std::abs(lits[k]) == std::abs(lits[k - 1]))
        throw input_error("points_from_sym: clause repeats a variable");
    Vec row(dims, 0.0);
    const int lead = lits.front();
    const double lead_sign = lead > 0 ? 1.0 : -1.0;
    row[static_cast<std::size_t>(std::abs(lead)) - 1] =
        (clause.size() == 4 ? 3.0 : 1.0) * lead_sign;
    for (std::size_t k = 1; k < lits.size(); ++k) {
      const int lit = lits[k];
      row[static_cast<std::size_t>(std::abs(lit)) - 1] = lit > 0 ? -1.0 : 1.0;
    }
    rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < dims; ++j) {
    Vec row(dims, 0.0);
    row[j] = 1.0;
    rows.push_back(std::move(row));
  }
  for (Vec& row : rows) scale_in_place(row, 1.0 / reduction_shrink);
  return PointSet::from_rows(rows, reduction_shrink);
}

/// The hyperplane a truth assignment encodes: +1/sqrt(D) per true variable,
/// -1/sqrt(D) per false one. Unit norm by construction.
inline Vec hyperplane_from_assignment(const std::vector<bool>& assignment) {
  if (assignment.empty()) throw input_error("hyperplane_from_assignment: empty assignment");
  const double coord = 1.0 / std::sqrt(static_cast<double>(assignment.size()));
  Vec w(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) w[i] = assignment[i] ? coord : -coord;
  return w;
}

/// Coordinate-sign rounding of a hyperplane back to an assignment (w_i >= 0
/// reads as true).
inline std::vector<bool> assignment_from_hyperplane(std::span<const double> w) {
  std::vector<bool> a(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) a[i] = w[i] >= 0.0;
  return a;
}

/// Margin every satisfying assignment's hyperplane is guaranteed on the
/// embedded points: 1/sqrt(12 * D).
inline double completeness_margin(const SymFormula& psi) {
  return 1.0 / std::sqrt(12.0 * static_cast<double>(psi.num_vars()));
}

struct ReductionArtifacts {
  ExpanderGraph expander;
  SymFormula sym;
  PointSet points;
};

/// Full pipeline: certified expander on one vertex per clause, then the
/// symmetric formula, then its point embedding.
inline ReductionArtifacts reduce_3sat_to_fhp(const CnfFormula& phi, std::uint64_t seed,
                                             const ExpanderOptions& opt = {}) {
  ExpanderGraph g = build_expander(phi.num_clauses(), seed, opt);
  SymFormula psi = sym_from_3sat(phi, g);
  PointSet pts = points_from_sym(psi);
  return ReductionArtifacts{std::move(g), std::move(psi), std::move(pts)};
}

}  // namespace fhp
