#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "matroid/audit.hpp"
#include "matroid/binom.hpp"
#include "matroid/cnf.hpp"
#include "matroid/core.hpp"
#include "matroid/encodings.hpp"
#include "matroid/es.hpp"
#include "matroid/grid.hpp"
#include "matroid/instances.hpp"
#include "matroid/mls.hpp"
#include "matroid/reductions.hpp"
#include "matroid/rng.hpp"
#include "matroid/samplers.hpp"
#include "matroid/solvers.hpp"
#include "matroid/subsets.hpp"
#include "matroid/zoo.hpp"

namespace matroid::checks {

constexpr std::uint64_t kSuiteSeed = 20250809;

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

using matroid::detail::UnionFind;

inline bool direct_hamiltonian_path(const Digraph& g) {
  std::vector<int> perm(g.vertex_count);
  std::iota(perm.begin(), perm.end(), 0);
  std::set<std::pair<int, int>> arcs(g.arcs.begin(), g.arcs.end());
  do {
    bool ok = true;
    for (int i = 0; ok && i + 1 < g.vertex_count; ++i)
      ok = arcs.count({perm[i], perm[i + 1]}) > 0;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline bool direct_3dm(const ThreeDMInstance& inst) {
  const int n = static_cast<int>(inst.triplets.size());
  if (inst.side > n) return false;
  bool found = false;
  for_each_k_subset(n, inst.side, [&](Subset s) {
    for (int coord = 0; coord < 3; ++coord) {
      std::set<int> seen;
      for (int t : subset_elements(s)) {
        if (!seen.insert(inst.triplets[t][coord]).second) return true;
      }
    }
    found = true;
    return false;
  });
  return found;
}

inline int brute_force_max_common_independent(const MatroidOracle& m1,
                                              const MatroidOracle& m2) {
  int best = 0;
  for_each_subset(m1.ground_size(), [&](Subset s) {
    if (subset_size(s) > best && m1.contains(s) && m2.contains(s))
      best = subset_size(s);
    return true;
  });
  return best;
}

inline bool paving_below_rank(const MatroidOracle& m, int rank_cap) {
  bool ok = true;
  for_each_subset(m.ground_size(), [&](Subset s) {
    if (subset_size(s) < rank_cap && !m.contains(s)) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

inline std::vector<Subset> coin_family_of_k_subsets(Rng& rng, int n, int k) {
  std::vector<Subset> members;
  for_each_k_subset(n, k, [&](Subset s) {
    if (rng.coin()) members.push_back(s);
    return true;
  });
  return members;
}

template <typename F>
CheckResult timed(const std::string& name, F&& body, double time_cap_seconds = 0.0) {
  CheckResult result;
  result.name = name;
  auto start = std::chrono::steady_clock::now();
  std::ostringstream detail;
  result.pass = body(detail);
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_cap_seconds > 0.0 && result.seconds >= time_cap_seconds) {
    result.pass = false;
    detail << "; exceeded " << time_cap_seconds << "s budget";
  }
  result.detail = detail.str();
  return result;
}

}  // namespace detail

/// Family-matroid axiom sweep: every family over 2-subsets of the 2x2 grid,
/// then seeded matrices and families on the 3x3 grid.  Each instance must
/// pass the exhaustive axiom check and be paving.
inline CheckResult check_g_matroid_axioms() {
  return detail::timed("g-matroid axiom and paving sweep", [](std::ostream& out) {
    int violations = 0;
    int instances = 0;

    SUMatrix ones = SUMatrix::filled(2, 2, 1);
    std::vector<Subset> two_subsets;
    for_each_k_subset(4, 2, [&](Subset s) {
      two_subsets.push_back(s);
      return true;
    });
    for (unsigned mask = 0; mask < 64; ++mask) {
      std::vector<Subset> members;
      for (int i = 0; i < 6; ++i)
        if ((mask >> i) & 1u) members.push_back(two_subsets[i]);
      MatroidOracle m = g_matroid(ones, explicit_set_family(ones.shape(), members));
      ++instances;
      if (!verify_matroid_axioms(m).ok() || !detail::paving_below_rank(m, ones.rank()))
        ++violations;
    }

    std::vector<SUMatrix> all = all_su_matrices(3, 2);
    Rng rng(derive_seed(kSuiteSeed, 1));
    for (int mi = 0; mi < 20; ++mi) {
      const SUMatrix& l = all[rng.below(all.size())];
      for (int fi = 0; fi < 10; ++fi) {
        std::vector<Subset> members =
            detail::coin_family_of_k_subsets(rng, l.shape().total(), l.rank());
        MatroidOracle m = g_matroid(l, explicit_set_family(l.shape(), members));
        ++instances;
        if (!verify_matroid_axioms(m).ok() || !detail::paving_below_rank(m, l.rank()))
          ++violations;
      }
    }
    out << instances << " instances, " << violations << " violations";
    return violations == 0;
  }, 30.0);
}

/// The 2x2 grid with an all-ones limit matrix and the single family member
/// {(1,1),(2,2)} has exactly five bases: that member plus the four
/// non-perfect pairs.
inline CheckResult check_2x2_basis_set() {
  return detail::timed("2x2 single-member family basis set", [](std::ostream& out) {
    SUMatrix ones = SUMatrix::filled(2, 2, 1);
    GridShape g = ones.shape();
    Subset diag = subset_of({g.flat_index({1, 1}), g.flat_index({2, 2})});
    MatroidOracle m = g_matroid(ones, explicit_set_family(g, {diag}));
    std::set<Subset> bases;
    for_each_subset(4, [&](Subset s) {
      if (is_basis(m, s)) bases.insert(s);
      return true;
    });
    std::set<Subset> expected = {
        diag,
        subset_of({g.flat_index({1, 1}), g.flat_index({1, 2})}),
        subset_of({g.flat_index({2, 1}), g.flat_index({2, 2})}),
        subset_of({g.flat_index({1, 1}), g.flat_index({2, 1})}),
        subset_of({g.flat_index({1, 2}), g.flat_index({2, 2})}),
    };
    out << bases.size() << " bases found";
    return bases == expected;
  });
}

/// Grid-reduction equivalence at n = 4, l = 3: for k in {2,3} and every
/// family of k-subsets, the family is non-empty iff some simple-uniform
/// matrix yields a reduced instance with a common basis.
inline CheckResult check_lmi_reduction_equivalence() {
  return detail::timed("grid reduction equivalence (n=4, all families)",
                       [](std::ostream& out) {
    int mismatches = 0;
    int cases = 0;
    for (int k : {2, 3}) {
      std::vector<Subset> k_subsets;
      for_each_k_subset(4, k, [&](Subset s) {
        k_subsets.push_back(s);
        return true;
      });
      const unsigned family_count = 1u << k_subsets.size();
      for (unsigned mask = 0; mask < family_count; ++mask) {
        std::vector<Subset> members;
        for (std::size_t i = 0; i < k_subsets.size(); ++i)
          if ((mask >> i) & 1u) members.push_back(k_subsets[i]);
        EmptySetInstance es = EmptySetInstance::explicit_family(4, k, members);
        bool expected = !members.empty();
        bool got = !enumerate_su_matrices(2, 2, [&](const SUMatrix& l) {
          LMIInstance reduced = reduce_es_to_lmi(es, l, 3);
          return !brute_force_lmi(reduced).yes;
        });
        ++cases;
        if (expected != got) ++mismatches;
      }
    }
    out << cases << " families, " << mismatches << " mismatches";
    return mismatches == 0;
  }, 60.0);
}

/// Two-column reduction: the worked n=6, k=3 instance with family {{1,3,6}}
/// answers yes with witness X({1,3,6}); exhaustively at n=4, singleton and
/// empty families reduce faithfully for every target.
inline CheckResult check_emi_reduction() {
  return detail::timed("two-column reduction (worked + exhaustive n=4)",
                       [](std::ostream& out) {
    Subset planted = subset_of({0, 2, 5});  // {1,3,6}, 1-based
    EmptySetInstance worked = EmptySetInstance::explicit_family(6, 3, {planted});
    EmiReduction red = reduce_es_to_emi(worked);
    SolveOutcome got = brute_force_emi(red.instance);
    bool worked_ok = got.yes && got.witness && *got.witness == red.x_of(planted);

    int mismatches = 0;
    int cases = 0;
    for (int k = 0; k <= 4; ++k) {
      std::vector<std::vector<Subset>> families;
      families.push_back({});
      for_each_k_subset(4, k, [&](Subset s) {
        families.push_back({s});
        return true;
      });
      for (const auto& members : families) {
        EmptySetInstance es = EmptySetInstance::explicit_family(4, k, members);
        bool expected = !members.empty();
        bool answer = brute_force_emi(reduce_es_to_emi(es).instance).yes;
        ++cases;
        if (expected != answer) ++mismatches;
      }
    }
    out << "worked instance " << (worked_ok ? "ok" : "WRONG") << "; " << cases
        << " exhaustive cases, " << mismatches << " mismatches";
    return worked_ok && mismatches == 0;
  });
}

/// Encoder equivalence: every digraph on up to 4 vertices against direct
/// Hamiltonian-path search, and seeded 3-dimensional-matching instances
/// against direct matching search.
inline CheckResult check_encoders() {
  return detail::timed("encoder equivalence (hampath exhaustive, 3dm seeded)",
                       [](std::ostream& out) {
    int mismatches = 0;
    int cases = 0;
    for (int nv = 2; nv <= 4; ++nv) {
      std::vector<std::pair<int, int>> all_arcs;
      for (int u = 0; u < nv; ++u)
        for (int v = 0; v < nv; ++v)
          if (u != v) all_arcs.emplace_back(u, v);
      const unsigned count = 1u << all_arcs.size();
      for (unsigned mask = 0; mask < count; ++mask) {
        Digraph g;
        g.vertex_count = nv;
        for (std::size_t i = 0; i < all_arcs.size(); ++i)
          if ((mask >> i) & 1u) g.arcs.push_back(all_arcs[i]);
        bool expected = detail::direct_hamiltonian_path(g);
        bool got = brute_force_lmi(encode_hampath(g)).yes;
        ++cases;
        if (expected != got) ++mismatches;
      }
    }
    int hampath_cases = cases;

    Rng rng(derive_seed(kSuiteSeed, 5));
    for (int trial = 0; trial < 200; ++trial) {
      ThreeDMInstance inst;
      inst.side = 1 + static_cast<int>(rng.below(3));
      int universe = inst.side * inst.side * inst.side;
      int want = 1 + static_cast<int>(rng.below(std::min(9, universe)));
      std::set<std::array<int, 3>> triplets;
      while (static_cast<int>(triplets.size()) < want) {
        triplets.insert({1 + static_cast<int>(rng.below(inst.side)),
                         1 + static_cast<int>(rng.below(inst.side)),
                         1 + static_cast<int>(rng.below(inst.side))});
      }
      inst.triplets.assign(triplets.begin(), triplets.end());
      bool expected = detail::direct_3dm(inst);
      bool got = brute_force_lmi(encode_3dm(inst)).yes;
      ++cases;
      if (expected != got) ++mismatches;
    }
    out << hampath_cases << " digraphs + 200 matchings, " << mismatches
        << " mismatches";
    return mismatches == 0;
  });
}

/// Augmenting-path two-matroid intersection equals the brute-force maximum.
inline CheckResult check_two_matroid_intersection() {
  return detail::timed("two-matroid intersection vs subset scan", [](std::ostream& out) {
    Rng rng(derive_seed(kSuiteSeed, 6));
    int mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
      int n = 3 + static_cast<int>(rng.below(8));
      MatroidOracle m1 = random_zoo_matroid(rng, n);
      MatroidOracle m2 = random_zoo_matroid(rng, n);
      int expected = detail::brute_force_max_common_independent(m1, m2);
      Subset got = matroid_intersection_2(m1, m2);
      if (subset_size(got) != expected || !m1.contains(got) || !m2.contains(got))
        ++mismatches;
    }
    out << "200 instances, " << mismatches << " mismatches";
    return mismatches == 0;
  });
}

/// The extension solver agrees with an enumeration oracle, including the
/// bottom cases from the size and independence pre-checks.
inline CheckResult check_extension_solver() {
  return detail::timed("extension solver vs enumeration oracle", [](std::ostream& out) {
    Rng rng(derive_seed(kSuiteSeed, 7));
    int mismatches = 0;
    for (int trial = 0; trial < 300; ++trial) {
      int n = 4 + static_cast<int>(rng.below(7));
      LMIInstance inst = random_lmi_instance(rng, n, 3);
      Subset x = rng.next() & full_set(n);
      int r = rank(inst.matroids[0]);
      int want;
      if (rng.coin() && r >= subset_size(x)) {
        want = r - subset_size(x);
      } else {
        want = static_cast<int>(rng.below(n - subset_size(x) + 1));
      }
      ExtensionResult got = extension_solve(inst, x, want, brute_force_lmi);

      bool exists = false;
      std::vector<int> rest = subset_elements(full_set(n) & ~x);
      for_each_k_subset(static_cast<int>(rest.size()), want, [&](Subset local) {
        Subset s = 0;
        for (int i : subset_elements(local)) s = subset_with(s, rest[i]);
        if (is_common_basis(inst, x | s)) {
          exists = true;
          return false;
        }
        return true;
      });

      bool ok;
      if (got.has_value()) {
        ok = exists && subset_size(*got) == want && (*got & x) == 0 &&
             is_common_basis(inst, x | *got);
      } else {
        ok = !exists;
      }
      if (!ok) ++mismatches;
    }
    out << "300 triples, " << mismatches << " mismatches";
    return mismatches == 0;
  });
}

/// Local search verdicts: always "no" on empty families; on planted
/// instances the yes-rate stays above the 1 - 1/e bound minus three binomial
/// standard deviations.
inline CheckResult check_mls_verdicts() {
  return detail::timed("local search verdicts (empty + planted)", [](std::ostream& out) {
    const int n = 12, k = 6, trials = 500;
    int false_positives = 0;
    for (int trial = 0; trial < trials; ++trial) {
      ImplicitSetProblem problem = ImplicitSetProblem::empty(n);
      ExtensionAlgorithm ext = brute_force_extension(problem, time_bound_poly(n));
      if (monotone_local_search(problem, ext, derive_seed(kSuiteSeed, 8, trial)).yes)
        ++false_positives;
    }

    int hits = 0;
    Rng rng(derive_seed(kSuiteSeed, 9));
    for (int trial = 0; trial < trials; ++trial) {
      Subset solution = random_k_subset(rng, n, k);
      ImplicitSetProblem problem = ImplicitSetProblem::planted(n, solution);
      ExtensionAlgorithm ext = brute_force_extension(problem, time_bound_poly(n));
      MlsResult r = monotone_local_search(problem, ext, derive_seed(kSuiteSeed, 10, trial));
      if (r.yes && r.witness == solution) ++hits;
    }
    const double bound = 1.0 - std::exp(-1.0);
    const double threshold = bound - 3.0 * std::sqrt(bound * (1 - bound) / trials);
    double rate = double(hits) / trials;
    out << false_positives << " false positives; planted yes-rate " << rate
        << " vs threshold " << threshold;
    return false_positives == 0 && rate >= threshold;
  }, 120.0);
}

/// Budget law: with no early exit the number of extension invocations equals
/// the plan total, and the plan total respects the Phi/Psi budget bound.
inline CheckResult check_budget_law() {
  return detail::timed("sampling budget law", [](std::ostream& out) {
    int violations = 0;
    int cases = 0;
    for (int n = 1; n <= 20; ++n) {
      std::vector<LogTimeFunction> family = {
          time_bound_one(), time_bound_exponential(), time_bound_klogk(1.0),
          time_bound_ksquare(1.0), time_bound_poly(n)};
      for (const auto& g : family) {
        ImplicitSetProblem problem = ImplicitSetProblem::empty(n);
        ExtensionAlgorithm ext = brute_force_extension(problem, g);
        MlsResult r = monotone_local_search(problem, ext, derive_seed(kSuiteSeed, 11, n));
        ++cases;
        if (!r.yes && r.ext_invocations != r.plan.total()) ++violations;
        double lhs = std::log2(double(r.plan.total()));
        double rhs = std::log2(double(n + 1)) + n - phi(g, n).value +
                     std::log2(double(n));
        if (lhs > rhs + kLogTieTolerance) ++violations;
        if (r.yes) ++violations;
      }
    }
    out << cases << " (n,g) pairs, " << violations << " violations";
    return violations == 0;
  });
}

/// Entropy sandwich for binomial coefficients, all n <= 60.
inline CheckResult check_entropy_sandwich() {
  return detail::timed("entropy sandwich for binomials", [](std::ostream& out) {
    int violations = 0;
    int cases = 0;
    for (int n = 1; n <= 60; ++n) {
      for (int k = 0; k <= n; ++k) {
        double exact = log2_big(binom_exact(n, k));
        double envelope = n * binary_entropy(double(k) / n);
        ++cases;
        if (exact > envelope + 1e-9) ++violations;
        if (envelope - std::log2(double(n + 1)) > exact + 1e-9) ++violations;
      }
    }
    out << cases << " coefficients, " << violations << " violations";
    return violations == 0;
  });
}

/// Phi stays below 0.15 n everywhere, and the growth ratios for the
/// k-log-k and k-squared time bounds hold their floors on a geometric grid.
inline CheckResult check_phi_bounds() {
  return detail::timed("phi cap and growth floors", [](std::ostream& out) {
    int violations = 0;
    for (int n = 1; n <= 200; ++n) {
      std::vector<LogTimeFunction> family = {
          time_bound_one(), time_bound_exponential(), time_bound_klogk(1.0),
          time_bound_ksquare(1.0), time_bound_poly(n)};
      for (const auto& g : family) {
        if (phi(g, n).value > 0.15 * n + kLogTieTolerance) ++violations;
      }
    }

    std::vector<std::int64_t> grid;
    for (int p = 10; p <= 18; ++p) grid.push_back(std::int64_t{1} << p);
    for (double alpha : {0.5, 1.0, 2.0}) {
      for (auto family : {PhiGrowthFamily::KLogK, PhiGrowthFamily::KSquare}) {
        PhiGrowthReport report = phi_growth_check(family, alpha, grid);
        if (!report.pass) ++violations;
        for (std::size_t i = 1; i < report.rows.size(); ++i) {
          if (report.rows[i].phi_value < report.rows[i - 1].phi_value) ++violations;
        }
        LogTimeFunction trivial = time_bound_one();
        for (const auto& row : report.rows) {
          if (phi(trivial, row.n).value + kLogTieTolerance < row.phi_value)
            ++violations;
        }
      }
    }
    out << (violations == 0 ? "all bounds hold" : "bound violations") << " ("
        << violations << ")";
    return violations == 0;
  }, 60.0);
}

/// Fooling audits: the full enumeration solver covers the whole space and
/// yields no certificate; any solver that stops early yields one, and the
/// certificate's planted instance indeed fools it.
inline CheckResult check_fooling_audit() {
  return detail::timed("fooling audit", [](std::ostream& out) {
    bool ok = true;
    AuditResult full = audited_es_run(
        [](const EmptySetInstance& es) { return solve_es_bruteforce(es); }, 6, 3);
    ok = ok && !full.certificate && full.distinct_queries == 20 && !full.outcome.yes;

    for (std::uint64_t budget : {5ULL, 10ULL, 19ULL}) {
      auto truncated = [budget](const EmptySetInstance& es) {
        SolveOutcome out;
        std::uint64_t used = 0;
        for_each_k_subset(es.universe_size(), es.cardinality_target(), [&](Subset s) {
          if (used == budget) return false;
          ++used;
          if (es.family_contains(s)) {
            out.yes = true;
            out.witness = s;
            return false;
          }
          return true;
        });
        return out;
      };
      AuditResult audit = audited_es_run(truncated, 6, 3);
      if (!audit.certificate || audit.certificate->transcript_length != budget) {
        ok = false;
        continue;
      }
      // The same solver on the planted family sees an identical transcript
      // and wrongly answers "no".
      EmptySetInstance planted =
          EmptySetInstance::planted(6, 3, audit.certificate->unqueried);
      if (truncated(planted).yes) ok = false;
    }
    out << (ok ? "enumeration covered, truncations fooled" : "audit failure");
    return ok;
  });
}

inline std::vector<CheckResult> run_all_checks(std::ostream& log) {
  std::vector<CheckResult> results;
  auto run = [&](CheckResult r) {
    log << (r.pass ? "[ PASS ] " : "[ FAIL ] ") << r.name << " — " << r.detail
        << " (" << r.seconds << "s)\n";
    log.flush();
    results.push_back(std::move(r));
  };
  run(check_g_matroid_axioms());
  run(check_2x2_basis_set());
  run(check_lmi_reduction_equivalence());
  run(check_emi_reduction());
  run(check_encoders());
  run(check_two_matroid_intersection());
  run(check_extension_solver());
  run(check_mls_verdicts());
  run(check_budget_law());
  run(check_entropy_sandwich());
  run(check_phi_bounds());
  run(check_fooling_audit());
  return results;
}

}  // namespace matroid::checks
