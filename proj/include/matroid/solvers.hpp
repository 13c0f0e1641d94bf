#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "matroid/core.hpp"
#include "matroid/errors.hpp"
#include "matroid/es.hpp"
#include "matroid/grid.hpp"
#include "matroid/instances.hpp"
#include "matroid/reductions.hpp"

namespace matroid {

/// A certified decision: a verdict, a witness when the answer is yes, and the
/// oracle queries spent producing it.
struct SolveOutcome {
  bool yes = false;
  std::optional<Subset> witness;
  QueryReport queries;
};

using LMISolver = std::function<SolveOutcome(const LMIInstance&)>;
using EMISolver = std::function<SolveOutcome(const EMIInstance&)>;
using ESSolver = std::function<SolveOutcome(const EmptySetInstance&)>;

/// An l-extension of X, or nothing (the bottom symbol).
using ExtensionResult = std::optional<Subset>;

namespace detail {

inline std::uint64_t binom_capped(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n-k+i) / i stays integral at every step
    if (r > cap * 2) return cap + 1;
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    if (r > cap) return cap + 1;
  }
  return r;
}

inline void check_ground(const LMIInstance& inst) {
  inst.validate();
  if (inst.ground_size > 24)
    throw GuardError("brute force is capped at 24 elements");
}

}  // namespace detail

inline bool is_common_basis(const LMIInstance& inst, Subset s) {
  for (const auto& m : inst.matroids)
    if (!is_basis(m, s)) return false;
  return true;
}

inline bool is_emi_witness(const EMIInstance& inst, Subset s) {
  if (subset_size(s & inst.red) != inst.k) return false;
  for (const auto& m : inst.matroids)
    if (!is_basis(m, s)) return false;
  return true;
}

/// Brute-force l-matroid intersection: all matroid ranks must agree (else no
/// common basis exists); k-subsets are scanned in ascending bitmask order and
/// the first common basis is returned.
inline SolveOutcome brute_force_lmi(const LMIInstance& inst) {
  detail::check_ground(inst);
  QueryCountScope scope;
  for (const auto& m : inst.matroids) scope.watch(m);

  SolveOutcome out;
  const int k = rank(inst.matroids[0]);
  for (std::size_t i = 1; i < inst.matroids.size(); ++i) {
    if (rank(inst.matroids[i]) != k) {
      out.queries = scope.report();
      return out;
    }
  }
  for_each_k_subset(inst.ground_size, k, [&](Subset s) {
    for (const auto& m : inst.matroids) {
      if (!m.contains(s)) return true;
    }
    out.yes = true;
    out.witness = s;
    return false;
  });
  out.queries = scope.report();
  return out;
}

/// Brute-force exact matroid intersection: scans rank-sized subsets with
/// exactly k red elements in ascending bitmask order.
inline SolveOutcome brute_force_emi(const EMIInstance& inst) {
  inst.validate();
  if (inst.ground_size > 24)
    throw GuardError("brute force is capped at 24 elements");
  QueryCountScope scope;
  for (const auto& m : inst.matroids) scope.watch(m);

  SolveOutcome out;
  if (inst.k > subset_size(inst.red)) {
    out.queries = scope.report();
    return out;
  }
  const int r0 = rank(inst.matroids[0]);
  if (rank(inst.matroids[1]) != r0) {
    out.queries = scope.report();
    return out;
  }
  for_each_k_subset(inst.ground_size, r0, [&](Subset s) {
    if (subset_size(s & inst.red) != inst.k) return true;
    for (const auto& m : inst.matroids) {
      if (!m.contains(s)) return true;
    }
    out.yes = true;
    out.witness = s;
    return false;
  });
  out.queries = scope.report();
  return out;
}

/// Maximum common independent set of two matroids by shortest augmenting
/// paths in the exchange graph.  Sources are elements addable to the current
/// set in the first matroid, sinks those addable in the second; breadth-first
/// search (ascending element order) picks a shortest path, which is then
/// symmetric-differenced into the current set.
inline Subset matroid_intersection_2(const MatroidOracle& m1, const MatroidOracle& m2) {
  if (m1.ground_size() != m2.ground_size())
    throw std::invalid_argument("matroids disagree on the ground set");
  const int n = m1.ground_size();
  Subset s = 0;
  while (true) {
    Subset sources = 0, sinks = 0;
    for (int e = 0; e < n; ++e) {
      if (subset_test(s, e)) continue;
      if (m1.contains(subset_with(s, e))) sources = subset_with(sources, e);
      if (m2.contains(subset_with(s, e))) sinks = subset_with(sinks, e);
    }
    if ((sources & sinks) != 0) {
      s = subset_with(s, std::countr_zero(sources & sinks));
      continue;
    }
    if (sources == 0 || sinks == 0) break;

    std::vector<Subset> out_arcs(n, 0);
    for (int y : subset_elements(s)) {
      for (int x = 0; x < n; ++x) {
        if (subset_test(s, x)) continue;
        Subset swapped = subset_with(subset_without(s, y), x);
        if (m1.contains(swapped)) out_arcs[y] = subset_with(out_arcs[y], x);
        if (m2.contains(swapped)) out_arcs[x] = subset_with(out_arcs[x], y);
      }
    }

    std::vector<int> parent(n, -1);
    std::vector<char> visited(n, 0);
    std::deque<int> queue;
    for (int e : subset_elements(sources)) {
      visited[e] = 1;
      queue.push_back(e);
    }
    int reached = -1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      if (subset_test(sinks, v)) {
        reached = v;
        break;
      }
      for (int w : subset_elements(out_arcs[v])) {
        if (!visited[w]) {
          visited[w] = 1;
          parent[w] = v;
          queue.push_back(w);
        }
      }
    }
    if (reached < 0) break;
    Subset path = 0;
    for (int v = reached; v >= 0; v = parent[v]) path = subset_with(path, v);
    s ^= path;
  }
  return s;
}

/// Extension step for l-matroid intersection (run a full solver on the
/// contracted instance):
///   1. compute the rank r of the first matroid;
///   2. if |X| + want != r, bottom (no inner call);
///   3. if X is dependent in any matroid, bottom;
///   4. run the inner solver on all matroids contracted by X;
///   5. forward its basis (mapped back) or bottom.
inline ExtensionResult extension_solve(const LMIInstance& inst, Subset x, int want,
                                       const LMISolver& inner) {
  inst.validate();
  if ((x & ~full_set(inst.ground_size)) != 0)
    throw std::invalid_argument("extension base outside the ground set");
  const int r = rank(inst.matroids[0]);
  if (subset_size(x) + want != r) return std::nullopt;
  for (const auto& m : inst.matroids) {
    if (!m.contains(x)) return std::nullopt;
  }
  if (x == full_set(inst.ground_size)) return Subset{0};

  LMIInstance contracted;
  contracted.ground_size = inst.ground_size - subset_size(x);
  std::vector<int> parent_of;
  for (const auto& m : inst.matroids) {
    Minor minor = contract_by(m, x);
    parent_of = minor.parent_of;
    contracted.matroids.push_back(minor.oracle);
  }
  SolveOutcome inner_out = inner(contracted);
  if (!inner_out.yes) return std::nullopt;
  Subset local = *inner_out.witness;
  Subset s = 0;
  for (int e : subset_elements(local)) s = subset_with(s, parent_of[e]);
  return s;
}

/// Stand-in for a parameterized l-matroid-intersection routine: same contract
/// as the brute force (deterministic, succeeds with probability 1) with a
/// nominal time exponent of l * log2 |E|.
inline SolveOutcome parameterized_lmi_stand_in(const LMIInstance& inst) {
  return brute_force_lmi(inst);
}

/// Exhaustive Empty Set enumeration in ascending bitmask order.
inline SolveOutcome solve_es_bruteforce(const EmptySetInstance& es) {
  const int n = es.universe_size();
  const int k = es.cardinality_target();
  if (detail::binom_capped(n, k, std::uint64_t{1} << 24) > (std::uint64_t{1} << 24))
    throw GuardError("enumeration is capped at C(n,k) <= 2^24");
  QueryCountScope scope;
  scope.watch(es.label(), [es] { return es.queries(); });
  SolveOutcome out;
  for_each_k_subset(n, k, [&](Subset s) {
    if (es.family_contains(s)) {
      out.yes = true;
      out.witness = s;
      return false;
    }
    return true;
  });
  out.queries = scope.report();
  return out;
}

/// Decides an Empty Set instance through the grid reduction: full-universe
/// and singleton targets are answered directly; otherwise every simple-
/// uniform matrix is tried and the instance is a yes iff some reduced
/// intersection instance is.  Requires n = N^(l-1) for an integer N >= 2.
inline SolveOutcome solve_es_via_lmi_reduction(const EmptySetInstance& es, int ell,
                                               const LMISolver& lmi) {
  const int n = es.universe_size();
  const int k = es.cardinality_target();
  if (ell < 3) throw std::invalid_argument("reduction needs l >= 3");
  const int d = ell - 1;
  int side = -1;
  for (int cand = 2; ; ++cand) {
    std::int64_t p = 1;
    for (int j = 0; j < d; ++j) p *= cand;
    if (p == n) {
      side = cand;
      break;
    }
    if (p > n) break;
  }
  if (side < 0)
    throw GuardError("universe size is not a d-th power of an integer side >= 2");

  QueryCountScope scope;
  scope.watch(es.label(), [es] { return es.queries(); });
  SolveOutcome out;
  if (k == n) {
    if (es.family_contains(full_set(n))) {
      out.yes = true;
      out.witness = full_set(n);
    }
    out.queries = scope.report();
    return out;
  }
  if (k <= 1) {
    for_each_k_subset(n, k, [&](Subset s) {
      if (es.family_contains(s)) {
        out.yes = true;
        out.witness = s;
        return false;
      }
      return true;
    });
    out.queries = scope.report();
    return out;
  }

  enumerate_su_matrices(side, d, [&](const SUMatrix& l) {
    LMIInstance reduced = reduce_es_to_lmi(es, l, ell);
    SolveOutcome sub = lmi(reduced);
    if (sub.yes) {
      out.yes = true;
      out.witness = sub.witness;  // grid and universe subsets share masks
      return false;
    }
    return true;
  });
  out.queries = scope.report();
  return out;
}

/// Decides an Empty Set instance with a single call to an exact-intersection
/// solver on the reduced instance.
inline SolveOutcome solve_es_via_emi_reduction(const EmptySetInstance& es,
                                               const EMISolver& emi) {
  QueryCountScope scope;
  scope.watch(es.label(), [es] { return es.queries(); });
  EmiReduction reduction = reduce_es_to_emi(es);
  SolveOutcome sub = emi(reduction.instance);
  SolveOutcome out;
  out.yes = sub.yes;
  if (sub.yes && sub.witness) out.witness = reduction.red_rows(*sub.witness);
  out.queries = scope.report();
  return out;
}

/// Exact matroid intersection by enumerating k-subsets of red elements and
/// completing with blue elements via the augmenting-path algorithm on the
/// doubly contracted and restricted matroids.
inline SolveOutcome emi_via_red_enumeration(const EMIInstance& inst) {
  inst.validate();
  if (inst.ground_size > 24)
    throw GuardError("red enumeration is capped at 24 elements");
  QueryCountScope scope;
  for (const auto& m : inst.matroids) scope.watch(m);

  SolveOutcome out;
  if (inst.k > subset_size(inst.red)) {
    out.queries = scope.report();
    return out;
  }
  const int r0 = rank(inst.matroids[0]);
  if (rank(inst.matroids[1]) != r0 || inst.k > r0) {
    out.queries = scope.report();
    return out;
  }
  const Subset blue = full_set(inst.ground_size) & ~inst.red;
  std::vector<int> red_elems = subset_elements(inst.red);
  const int red_count = static_cast<int>(red_elems.size());

  for_each_k_subset(red_count, inst.k, [&](Subset red_local) {
    Subset x = 0;
    for (int i : subset_elements(red_local)) x = subset_with(x, red_elems[i]);
    for (const auto& m : inst.matroids) {
      if (!m.contains(x)) return true;
    }
    if (inst.k == r0) {
      // No blue completion needed; x must already be a common basis.
      if (is_common_basis(LMIInstance{inst.ground_size, inst.matroids}, x)) {
        out.yes = true;
        out.witness = x;
        return false;
      }
      return true;
    }
    if (blue == 0) return true;  // no blue elements left to complete with
    std::vector<Minor> contractions;
    std::vector<Minor> blues;
    for (const auto& m : inst.matroids) {
      contractions.push_back(contract_by(m, x));
      const Minor& c = contractions.back();
      blues.push_back(restrict_to(c.oracle, c.to_local(blue)));
    }
    Subset local = matroid_intersection_2(blues[0].oracle, blues[1].oracle);
    if (subset_size(local) == r0 - inst.k) {
      Subset completion = contractions[0].to_parent(blues[0].to_parent(local));
      out.yes = true;
      out.witness = x | completion;
      return false;
    }
    return true;
  });
  out.queries = scope.report();
  return out;
}

}  // namespace matroid
