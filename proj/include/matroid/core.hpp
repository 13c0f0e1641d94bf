#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matroid/errors.hpp"
#include "matroid/oracle.hpp"
#include "matroid/subsets.hpp"

namespace matroid {

/// Rank by greedy growth: scan elements in the given order and keep each one
/// whose addition stays independent.  The exchange property makes the result
/// order-independent.
inline int rank_with_order(const MatroidOracle& m, std::span<const int> order) {
  Subset s = 0;
  for (int e : order) {
    if (m.contains(subset_with(s, e))) s = subset_with(s, e);
  }
  return subset_size(s);
}

inline int rank(const MatroidOracle& m) {
  std::vector<int> order(m.ground_size());
  for (int i = 0; i < m.ground_size(); ++i) order[i] = i;
  return rank_with_order(m, order);
}

/// Greedily grown maximal independent set (ascending element order).
inline Subset greedy_basis(const MatroidOracle& m) {
  Subset s = 0;
  for (int e = 0; e < m.ground_size(); ++e) {
    if (m.contains(subset_with(s, e))) s = subset_with(s, e);
  }
  return s;
}

/// True iff s is independent and no element can be added.
inline bool is_basis(const MatroidOracle& m, Subset s) {
  if (!m.contains(s)) return false;
  for (int e = 0; e < m.ground_size(); ++e) {
    if (!subset_test(s, e) && m.contains(subset_with(s, e))) return false;
  }
  return true;
}

/// A restriction or contraction: an oracle over a re-indexed ground set
/// together with the map from new indices back to parent elements.
struct Minor {
  MatroidOracle oracle;
  std::vector<int> parent_of;  // parent_of[new index] = parent element

  Subset to_parent(Subset local) const {
    Subset s = 0;
    for (int e : subset_elements(local)) s = subset_with(s, parent_of[e]);
    return s;
  }

  Subset to_local(Subset parent) const {
    Subset s = 0;
    for (int i = 0; i < static_cast<int>(parent_of.size()); ++i) {
      if (subset_test(parent, parent_of[i])) s = subset_with(s, i);
    }
    return s;
  }
};

/// Restriction of m to `keep` (re-indexed 0..|keep|-1 ascending).  Each query
/// forwards exactly one query to the inner oracle.
inline Minor restrict_to(const MatroidOracle& m, Subset keep) {
  if ((keep & ~full_set(m.ground_size())) != 0)
    throw std::invalid_argument("restriction set outside the ground set");
  std::vector<int> parent_of = subset_elements(keep);
  MatroidOracle inner = m;
  auto map = parent_of;
  MatroidOracle oracle(
      static_cast<int>(parent_of.size()), m.label() + "|restricted",
      [inner, map](Subset local) {
        Subset parent = 0;
        for (int e : subset_elements(local)) parent = subset_with(parent, map[e]);
        return inner.contains(parent);
      });
  return Minor{std::move(oracle), std::move(parent_of)};
}

/// Contraction of m by x.  Validates that x is independent up front (one
/// query); queries then forward as membership(T | x).
inline Minor contract_by(const MatroidOracle& m, Subset x) {
  if ((x & ~full_set(m.ground_size())) != 0)
    throw std::invalid_argument("contraction set outside the ground set");
  if (!m.contains(x))
    throw std::invalid_argument("contraction set is not independent");
  std::vector<int> parent_of = subset_elements(full_set(m.ground_size()) & ~x);
  if (parent_of.empty())
    throw GuardError("contraction by the full ground set leaves no elements");
  MatroidOracle inner = m;
  auto map = parent_of;
  MatroidOracle oracle(
      static_cast<int>(parent_of.size()), m.label() + "|contracted",
      [inner, map, x](Subset local) {
        Subset parent = x;
        for (int e : subset_elements(local)) parent = subset_with(parent, map[e]);
        return inner.contains(parent);
      });
  return Minor{std::move(oracle), std::move(parent_of)};
}

/// Outcome of the exhaustive axiom check.
struct AxiomVerdict {
  enum class Kind { Pass, EmptySetDependent, Hereditary, Exchange };
  Kind kind = Kind::Pass;
  Subset a = 0;  // violating pair, meaning depends on kind
  Subset b = 0;

  bool ok() const { return kind == Kind::Pass; }

  std::string describe() const {
    switch (kind) {
      case Kind::Pass:
        return "pass";
      case Kind::EmptySetDependent:
        return "empty set is dependent";
      case Kind::Hereditary:
        return "hereditary violation: " + format_subset(a) +
               " independent but subset " + format_subset(b) + " is not";
      case Kind::Exchange:
        return "exchange violation between " + format_subset(a) + " and " +
               format_subset(b);
    }
    return "?";
  }
};

/// Exhaustively checks the matroid axioms on ground sets of size <= 16:
/// empty set independent, hereditary closure, and the exchange property over
/// every independent pair (A,B) with |A| > |B|.  Returns the first violation
/// in ascending bitmask order, hereditary sweep before exchange sweep.
inline AxiomVerdict verify_matroid_axioms(const MatroidOracle& m) {
  const int n = m.ground_size();
  if (n > 16) throw GuardError("axiom verifier is capped at 16 elements");
  const std::size_t count = std::size_t{1} << n;

  std::vector<char> indep(count);
  for (Subset s = 0; s < count; ++s) indep[s] = m.contains(s) ? 1 : 0;

  if (!indep[0]) return {AxiomVerdict::Kind::EmptySetDependent, 0, 0};

  for (Subset s = 1; s < count; ++s) {
    if (!indep[s]) continue;
    for (int e : subset_elements(s)) {
      if (!indep[subset_without(s, e)])
        return {AxiomVerdict::Kind::Hereditary, s, subset_without(s, e)};
    }
  }

  // ext[b] = elements whose addition to b stays independent.
  std::vector<Subset> ext(count, 0);
  for (Subset b = 0; b < count; ++b) {
    if (!indep[b]) continue;
    for (int e = 0; e < n; ++e) {
      if (!subset_test(b, e) && indep[subset_with(b, e)])
        ext[b] = subset_with(ext[b], e);
    }
  }
  for (Subset b = 0; b < count; ++b) {
    if (!indep[b]) continue;
    for (Subset a = 0; a < count; ++a) {
      if (!indep[a] || subset_size(a) <= subset_size(b)) continue;
      if ((a & ~b & ext[b]) == 0) return {AxiomVerdict::Kind::Exchange, a, b};
    }
  }
  return {};
}

}  // namespace matroid
