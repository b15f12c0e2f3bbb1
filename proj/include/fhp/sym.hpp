#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fhp/cnf.hpp"
#include "fhp/expander.hpp"

namespace fhp {

/**
 * A symmetric CNF: every clause has 2 or 4 literals and clauses come in
 * fully negated pairs, so satisfaction counts are invariant under negating
 * an assignment. Variables 1..base_vars are the source formula's variables;
 * base_vars+1..base_vars+pair_vars are the per-clause pair variables.
 */
struct SymFormula {
  int base_vars = 0;
  int pair_vars = 0;
  std::vector<std::vector<int>> clauses;
  std::vector<std::pair<int, int>> clause_pairs;    // (A_i, A'_i) clause indices
  std::vector<std::pair<int, int>> expander_edges;  // 0-based pair-variable vertices

  int num_vars() const { return base_vars + pair_vars; }

  std::vector<int> occurrence_counts() const {
    std::vector<int> occ(num_vars() + 1, 0);
    for (const auto& clause : clauses) {
      std::set<int> vars;
      for (int lit : clause) vars.insert(std::abs(lit));
      for (int v : vars) ++occ[v];
    }
    return occ;
  }

  int max_occurrence() const {
    const auto occ = occurrence_counts();
    return occ.empty() ? 0 : *std::max_element(occ.begin() + 1, occ.end());
  }
};

namespace detail {

inline std::vector<int> negated_clause(const std::vector<int>& clause) {
  std::vector<int> out(clause.size());
  for (std::size_t i = 0; i < clause.size(); ++i) out[i] = -clause[i];
  return out;
}

}  // namespace detail

/// The clause pair a source clause maps to: (C v ~z) and (C' v z) with C'
/// the literal-wise negation of C.
inline std::pair<std::vector<int>, std::vector<int>> make_clause_pair(
    const std::vector<int>& clause, int z_var) {
  std::vector<int> a = clause;
  a.push_back(-z_var);
  std::vector<int> a_neg = detail::negated_clause(a);
  return {std::move(a), std::move(a_neg)};
}

/**
 * The 3SAT(13) -> SYM(30) transformation. Each source clause C_i becomes the
 * pair (C_i v ~z_i) /\ (C_i' v z_i) with a fresh pair variable z_i, and each
 * expander edge (i,j) contributes the equality pair (z_i v ~z_j) /\ (~z_i v z_j).
 * Input clauses must have 1 or 3 literals over distinct variables so the
 * output arities land on {2,4}; the expander must have one vertex per clause.
 */
inline SymFormula sym_from_3sat(const CnfFormula& phi, const ExpanderGraph& g) {
  const int violation = phi.first_3sat13_violation();
  if (violation < 0)
    throw input_error("sym_from_3sat: a clause has more than 3 literals");
  if (violation > 0)
    throw input_error("sym_from_3sat: variable " + std::to_string(violation) +
                      " occurs in more than 13 clauses");
  const std::size_t m = phi.num_clauses();
  if (m == 0) throw input_error("sym_from_3sat: formula has no clauses");
  if (g.vertices != m)
    throw input_error("sym_from_3sat: expander has " + std::to_string(g.vertices) +
                      " vertices but the formula has " + std::to_string(m) + " clauses");
  for (const auto& clause : phi.clauses) {
    if (clause.size() != 1 && clause.size() != 3)
      throw input_error(
          "sym_from_3sat: clauses must have exactly 1 or 3 literals (a 2-literal "
          "clause would map to an arity-3 symmetric clause, which has no point "
          "embedding)");
    std::set<int> vars;
    for (int lit : clause) vars.insert(std::abs(lit));
    if (vars.size() != clause.size())
      throw input_error("sym_from_3sat: clause repeats a variable");
  }

  SymFormula psi;
  psi.base_vars = phi.num_vars;
  psi.pair_vars = static_cast<int>(m);
  psi.expander_edges = g.edges;
  psi.clauses.reserve(2 * m + 2 * g.edges.size());
  for (std::size_t i = 0; i < m; ++i) {
    const int z = phi.num_vars + static_cast<int>(i) + 1;
    auto [a, a_neg] = make_clause_pair(phi.clauses[i], z);
    const int idx = static_cast<int>(psi.clauses.size());
    psi.clauses.push_back(std::move(a));
    psi.clauses.push_back(std::move(a_neg));
    psi.clause_pairs.emplace_back(idx, idx + 1);
  }
  for (auto [u, v] : g.edges) {
    const int zu = phi.num_vars + u + 1;
    const int zv = phi.num_vars + v + 1;
    const int idx = static_cast<int>(psi.clauses.size());
    psi.clauses.push_back({zu, -zv});
    psi.clauses.push_back({-zu, zv});
    psi.clause_pairs.emplace_back(idx, idx + 1);
  }
  return psi;
}

/// Extend a satisfying assignment of the source formula with all pair
/// variables true; satisfies every clause of the transformed formula.
inline std::vector<bool> extend_assignment(const std::vector<bool>& base_assignment,
                                           const SymFormula& psi) {
  if (static_cast<int>(base_assignment.size()) != psi.base_vars)
    throw input_error("extend_assignment: assignment length != base variable count");
  std::vector<bool> full = base_assignment;
  full.resize(static_cast<std::size_t>(psi.num_vars()), true);
  return full;
}

// Sidecar format tying the DIMACS clauses back to their structure:
//   sym v1 base=<n> pairs=<m> edges=<E>
//   p <a_idx> <a'_idx>      (one per clause pair, 0-based clause indices)
//   e <u> <v>               (one per expander edge, 0-based vertices)

inline void write_sym_sidecar(std::ostream& os, const SymFormula& psi) {
  os << "sym v1 base=" << psi.base_vars << " pairs=" << psi.pair_vars
     << " edges=" << psi.expander_edges.size() << "\n";
  for (auto [a, b] : psi.clause_pairs) os << "p " << a << ' ' << b << "\n";
  for (auto [u, v] : psi.expander_edges) os << "e " << u << ' ' << v << "\n";
}

inline SymFormula read_sym(std::istream& dimacs, std::istream& sidecar) {
  CnfFormula f = read_dimacs(dimacs);
  SymFormula psi;
  psi.clauses = std::move(f.clauses);

  std::string header;
  if (!std::getline(sidecar, header)) throw input_error("sym sidecar: missing header");
  int base = 0, pairs = 0;
  std::size_t edges = 0;
  if (std::sscanf(header.c_str(), "sym v1 base=%d pairs=%d edges=%zu", &base, &pairs,
                  &edges) != 3)
    throw input_error("sym sidecar: bad header: " + header);
  psi.base_vars = base;
  psi.pair_vars = pairs;
  if (psi.num_vars() != f.num_vars)
    throw input_error("sym sidecar: variable counts disagree with the DIMACS header");
  std::string line;
  while (std::getline(sidecar, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    char tag;
    int a, b;
    if (!(ss >> tag >> a >> b)) throw input_error("sym sidecar: bad line: " + line);
    if (tag == 'p')
      psi.clause_pairs.emplace_back(a, b);
    else if (tag == 'e')
      psi.expander_edges.emplace_back(a, b);
    else
      throw input_error("sym sidecar: unknown tag in line: " + line);
  }
  if (psi.expander_edges.size() != edges)
    throw input_error("sym sidecar: edge count mismatch");
  return psi;
}

/// Structural validity per the symmetric-formula definition; returns a
/// human-readable failure description or empty when everything holds.
inline std::string sym_structure_violation(const SymFormula& psi) {
  for (const auto& clause : psi.clauses)
    if (clause.size() != 2 && clause.size() != 4)
      return "clause arity outside {2,4}";
  std::vector<bool> covered(psi.clauses.size(), false);
  for (auto [a, b] : psi.clause_pairs) {
    if (a < 0 || b < 0 || a >= static_cast<int>(psi.clauses.size()) ||
        b >= static_cast<int>(psi.clauses.size()))
      return "clause pair index out of range";
    covered[a] = covered[b] = true;
    std::vector<int> lhs = psi.clauses[a];
    std::vector<int> rhs = detail::negated_clause(psi.clauses[b]);
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    if (lhs != rhs) return "paired clauses are not literal-wise negations";
  }
  // Expander-edge clauses are emitted after the pair clauses; every clause
  // must belong to some negation pair.
  std::size_t uncovered = 0;
  for (bool c : covered) uncovered += c ? 0 : 1;
  if (uncovered != 2 * psi.expander_edges.size() && uncovered != 0)
    return "clauses outside any negation pair";
  return {};
}

}  // namespace fhp
