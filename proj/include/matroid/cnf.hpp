#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "matroid/errors.hpp"
#include "matroid/es.hpp"
#include "matroid/subsets.hpp"

namespace matroid {

/// A CNF formula in DIMACS conventions: literals are signed 1-based variable
/// indices, clauses are non-empty.
struct CNFInstance {
  int variable_count = 0;
  std::vector<std::vector<int>> clauses;
};

/// True iff the assignment "variables in s true, all others false" satisfies
/// every clause.
inline bool satisfies(const CNFInstance& cnf, Subset s) {
  for (const auto& clause : cnf.clauses) {
    bool sat = false;
    for (int lit : clause) {
      int var = lit > 0 ? lit : -lit;
      if ((lit > 0) == subset_test(s, var - 1)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

/// DIMACS CNF parser: 'c' comment lines, a 'p cnf <vars> <clauses>' header,
/// then zero-terminated clauses (which may span lines).
inline CNFInstance parse_dimacs(std::istream& in) {
  CNFInstance cnf;
  std::string line;
  int declared_clauses = -1;
  bool header_seen = false;
  std::vector<int> current;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    if (line[0] == 'p') {
      std::istringstream hdr(line);
      std::string p, fmt;
      if (!(hdr >> p >> fmt >> cnf.variable_count >> declared_clauses) || fmt != "cnf")
        throw ParseError("bad DIMACS header: " + line);
      if (cnf.variable_count < 1 || cnf.variable_count > kMaxGroundSize)
        throw ParseError("variable count must be in [1,64]");
      header_seen = true;
      continue;
    }
    if (!header_seen) throw ParseError("clause before DIMACS header");
    std::istringstream row(line);
    int lit;
    while (row >> lit) {
      if (lit == 0) {
        if (current.empty()) throw ParseError("empty clause");
        cnf.clauses.push_back(current);
        current.clear();
        continue;
      }
      int var = lit > 0 ? lit : -lit;
      if (var > cnf.variable_count)
        throw ParseError("literal exceeds declared variable count");
      current.push_back(lit);
    }
    if (!row.eof()) throw ParseError("bad token in clause line: " + line);
  }
  if (!header_seen) throw ParseError("missing DIMACS header");
  if (!current.empty()) throw ParseError("unterminated clause");
  if (declared_clauses >= 0 &&
      declared_clauses != static_cast<int>(cnf.clauses.size()))
    throw ParseError("clause count does not match header");
  return cnf;
}

/// The Empty Set instance decoded from a formula: the family holds exactly
/// the k-subsets S whose induced assignment satisfies the formula.  Each
/// family evaluation costs one query regardless of formula size.
inline EmptySetInstance es_from_sat(const CNFInstance& cnf, int k) {
  if (k < 0 || k > cnf.variable_count)
    throw std::invalid_argument("need 0 <= k <= variable count");
  return EmptySetInstance(cnf.variable_count, k, "F(sat)",
                          [cnf](Subset s) { return satisfies(cnf, s); });
}

}  // namespace matroid
