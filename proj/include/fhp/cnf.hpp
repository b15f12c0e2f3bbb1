#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fhp/common.hpp"

namespace fhp {

/// A CNF formula as signed 1-based variable indices per clause.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  std::size_t num_clauses() const { return clauses.size(); }

  /// Number of clauses each variable appears in (a variable is counted once
  /// per clause even if it occurs twice). Index 0 unused.
  std::vector<int> occurrence_counts() const {
    std::vector<int> occ(num_vars + 1, 0);
    for (const auto& clause : clauses) {
      std::set<int> vars;
      for (int lit : clause) vars.insert(std::abs(lit));
      for (int v : vars) ++occ[v];
    }
    return occ;
  }

  /// First variable violating the 3SAT(13) bounds, or 0 if the formula is a
  /// valid instance (clauses of at most 3 literals, occurrences at most 13).
  int first_3sat13_violation() const {
    for (const auto& clause : clauses)
      if (clause.empty() || clause.size() > 3) return -1;
    const auto occ = occurrence_counts();
    for (int v = 1; v <= num_vars; ++v)
      if (occ[v] > 13) return v;
    return 0;
  }
};

inline bool clause_satisfied(const std::vector<int>& clause, const std::vector<bool>& a) {
  for (int lit : clause) {
    const int v = std::abs(lit);
    if ((lit > 0) == a[static_cast<std::size_t>(v - 1)]) return true;
  }
  return false;
}

inline std::size_t satisfied_clause_count(const std::vector<std::vector<int>>& clauses,
                                          const std::vector<bool>& assignment) {
  std::size_t count = 0;
  for (const auto& c : clauses) count += clause_satisfied(c, assignment) ? 1 : 0;
  return count;
}

inline CnfFormula read_dimacs(std::istream& is) {
  CnfFormula f;
  std::string line;
  long declared_clauses = -1;
  std::vector<int> current;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    if (line[0] == 'p') {
      char tag[8] = {0};
      long nv = 0, nc = 0;
      if (std::sscanf(line.c_str(), "p %7s %ld %ld", tag, &nv, &nc) != 3 ||
          std::string(tag) != "cnf" || nv < 1 || nc < 0)
        throw input_error("dimacs: bad problem line: " + line);
      f.num_vars = static_cast<int>(nv);
      declared_clauses = nc;
      continue;
    }
    if (declared_clauses < 0) throw input_error("dimacs: clause before problem line");
    std::istringstream ss(line);
    int lit;
    while (ss >> lit) {
      if (lit == 0) {
        if (current.empty()) throw input_error("dimacs: empty clause");
        f.clauses.push_back(current);
        current.clear();
      } else {
        if (std::abs(lit) > f.num_vars)
          throw input_error("dimacs: literal " + std::to_string(lit) + " out of range");
        current.push_back(lit);
      }
    }
  }
  if (!current.empty()) throw input_error("dimacs: last clause not 0-terminated");
  if (declared_clauses < 0) throw input_error("dimacs: missing problem line");
  if (static_cast<long>(f.clauses.size()) != declared_clauses)
    throw input_error("dimacs: declared " + std::to_string(declared_clauses) +
                      " clauses, found " + std::to_string(f.clauses.size()));
  return f;
}

inline void write_dimacs(std::ostream& os, const CnfFormula& f,
                         const std::string& comment = {}) {
  if (!comment.empty()) os << "c " << comment << "\n";
  os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << "\n";
  for (const auto& clause : f.clauses) {
    for (int lit : clause) os << lit << ' ';
    os << "0\n";
  }
}

inline CnfFormula load_dimacs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open: " + path);
  return read_dimacs(in);
}

inline void save_dimacs(const std::string& path, const CnfFormula& f,
                        const std::string& comment = {}) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot open for writing: " + path);
  write_dimacs(out, f, comment);
}

}  // namespace fhp
