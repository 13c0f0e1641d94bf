#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "matroid/binom.hpp"
#include "matroid/core.hpp"
#include "matroid/errors.hpp"
#include "matroid/es.hpp"
#include "matroid/instances.hpp"
#include "matroid/oracle.hpp"
#include "matroid/rng.hpp"
#include "matroid/solvers.hpp"
#include "matroid/subsets.hpp"

namespace matroid {

/// A nominal time bound g, represented by an evaluator for log2 g(l).
/// Requires g(0) = 1, i.e. a zero log value at l = 0.  Keeping everything in
/// the log domain supports super-exponential bounds without big-number
/// arithmetic in the hot path.
struct LogTimeFunction {
  std::string name;
  std::function<double(int)> log2_g;

  double operator()(int ell) const {
    double v = log2_g(ell);
    if (!std::isfinite(v) || (ell == 0 && v != 0.0))
      throw std::invalid_argument("time bound must be finite with g(0)=1");
    return v;
  }
};

inline LogTimeFunction time_bound_one() {
  return {"one", [](int) { return 0.0; }};
}

inline LogTimeFunction time_bound_exponential(double alpha = 1.0) {
  return {"exp", [alpha](int ell) { return alpha * ell; }};
}

inline LogTimeFunction time_bound_klogk(double alpha = 1.0) {
  return {"klogk", [alpha](int ell) {
            return ell <= 1 ? 0.0 : alpha * ell * std::log2(double(ell));
          }};
}

inline LogTimeFunction time_bound_ksquare(double alpha = 1.0) {
  return {"ksquare", [alpha](int ell) { return alpha * double(ell) * ell; }};
}

/// g(l) = n^l for the ground set size n.
inline LogTimeFunction time_bound_poly(int n) {
  const double log2n = std::log2(double(n));
  return {"poly-n", [log2n](int ell) { return ell * log2n; }};
}

/// Tolerance for treating two log-domain costs as equal.  Exact ties (common
/// for small instances) must resolve by index, not by rounding noise.
constexpr double kLogTieTolerance = 1e-9;

struct OptimalT {
  int t = 0;
  double log2_cost = 0.0;
};

/// argmin over 0 <= t <= k of C(n,t)/C(k,t) * g(k-t), in the log domain, by
/// exhaustive scan; ties break toward smaller t.
inline OptimalT optimal_t(int n, int k, const LogTimeFunction& g) {
  if (k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n");
  OptimalT best;
  bool have = false;
  for (int t = 0; t <= k; ++t) {
    double cost = log2_binom(n, t) - log2_binom(k, t) + g(k - t);
    if (!have || cost < best.log2_cost - kLogTieTolerance) {
      best = {t, cost};
      have = true;
    }
  }
  return best;
}

/// Phi: the exponent gained over plain 2^n enumeration.  Maximum over
/// integer l in [0, n/4] of l*log2(n/(4l)) - log2 g(l), the l = 0 term being
/// 0; ties break toward smaller l.
struct PhiResult {
  double value = 0.0;
  int argmax_ell = 0;
};

inline PhiResult phi(const LogTimeFunction& g, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  PhiResult best{0.0, 0};  // l = 0
  for (std::int64_t ell = 1; 4 * ell <= n; ++ell) {
    double term =
        double(ell) * std::log2(double(n) / (4.0 * double(ell))) - g(int(ell));
    if (term > best.value + kLogTieTolerance) best = {term, int(ell)};
  }
  return best;
}

/// Psi in the log domain: max over k of min over t of C(n,t)/C(k,t)*g(k-t).
inline double log2_psi(const LogTimeFunction& g, int n) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  double best = 0.0;
  bool have = false;
  for (int k = 0; k <= n; ++k) {
    double inner = optimal_t(n, k, g).log2_cost;
    if (!have || inner > best) {
      best = inner;
      have = true;
    }
  }
  return best;
}

/// An implicit set problem: a ground set plus a counted membership decision
/// for the hidden family.  Copies share the counter.
class ImplicitSetProblem {
 public:
  ImplicitSetProblem(int ground_size, std::string label,
                     std::function<bool(Subset)> member)
      : n_(ground_size), state_(std::make_shared<State>()) {
    if (ground_size < 1 || ground_size > kMaxGroundSize)
      throw std::invalid_argument("ground set size must be in [1,64]");
    state_->label = std::move(label);
    state_->member = std::move(member);
  }

  int ground_size() const { return n_; }
  const std::string& label() const { return state_->label; }

  bool member(Subset s) const {
    ++state_->queries;
    return state_->member(s);
  }

  std::uint64_t queries() const { return state_->queries; }

  static ImplicitSetProblem empty(int n) {
    return ImplicitSetProblem(n, "empty", [](Subset) { return false; });
  }

  static ImplicitSetProblem planted(int n, Subset solution) {
    return ImplicitSetProblem(n, "planted",
                              [solution](Subset s) { return s == solution; });
  }

  static ImplicitSetProblem from_es(const EmptySetInstance& es) {
    return ImplicitSetProblem(es.universe_size(), "es",
                              [es](Subset s) { return es.family_contains(s); });
  }

 private:
  struct State {
    std::string label;
    std::function<bool(Subset)> member;
    std::uint64_t queries = 0;
  };
  int n_;
  std::shared_ptr<State> state_;
};

/// The family of an intersection instance: S is a member iff it is a basis
/// of every matroid.
inline ImplicitSetProblem lmi_as_implicit_problem(const LMIInstance& inst) {
  inst.validate();
  return ImplicitSetProblem(inst.ground_size, "lmi", [inst](Subset s) {
    for (const auto& m : inst.matroids) {
      if (!is_basis(m, s)) return false;
    }
    return true;
  });
}

/// An extension routine: given X and l, produce an l-extension of X (a set S
/// disjoint from X with X u S in the family and |S| = l) or bottom.  On
/// extendable inputs it must succeed with probability at least 1/2 per call;
/// the declared time bound feeds the optimizer.
struct ExtensionAlgorithm {
  std::function<ExtensionResult(Subset x, int ell, std::uint64_t seed)> run;
  LogTimeFunction log_time;
};

/// Deterministic extension by enumeration: first l-subset of the complement
/// (ascending bitmask order) whose union with X is a member.  Succeeds with
/// probability 1 whenever an extension exists.
inline ExtensionAlgorithm brute_force_extension(const ImplicitSetProblem& problem,
                                                LogTimeFunction declared) {
  return {[problem](Subset x, int ell, std::uint64_t) -> ExtensionResult {
            const int n = problem.ground_size();
            std::vector<int> rest = subset_elements(full_set(n) & ~x);
            ExtensionResult found;
            for_each_k_subset(static_cast<int>(rest.size()), ell, [&](Subset local) {
              Subset s = 0;
              for (int i : subset_elements(local)) s = subset_with(s, rest[i]);
              if (problem.member(x | s)) {
                found = s;
                return false;
              }
              return true;
            });
            return found;
          },
          std::move(declared)};
}

/// Extension algorithm for an intersection instance derived from a full
/// solver (contract by X and solve); declared time is l * log2 |E|.
inline ExtensionAlgorithm lmi_extension_algorithm(const LMIInstance& inst,
                                                  LMISolver inner) {
  return {[inst, inner](Subset x, int ell, std::uint64_t) {
            return extension_solve(inst, x, ell, inner);
          },
          time_bound_poly(inst.ground_size)};
}

/// One sampling round: draw a uniform t-subset X and ask the extension
/// routine for a (k-t)-extension.
inline ExtensionResult sample(const ImplicitSetProblem& problem, int k, int t,
                              const ExtensionAlgorithm& ext, std::uint64_t seed) {
  if (t < 0 || t > k || k > problem.ground_size())
    throw std::invalid_argument("need 0 <= t <= k <= n");
  Rng rng(seed);
  Subset x = random_k_subset(rng, problem.ground_size(), t);
  ExtensionResult s = ext.run(x, k - t, rng.next());
  if (!s) return std::nullopt;
  return x | *s;  // the full member, X plus its extension
}

/// The per-k sampling budget: the chosen t, the repetition count
/// ceil(2 * C(n,t) / C(k,t)), and its log.
struct BudgetPlan {
  struct Entry {
    int k = 0;
    int t = 0;
    double log2_repetitions = 0.0;
    std::uint64_t repetitions = 0;
  };
  std::vector<Entry> entries;

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& e : entries) t += e.repetitions;
    return t;
  }

  void write_csv(std::ostream& out) const {
    out << "k,t,log2_repetitions,repetitions\n";
    for (const auto& e : entries)
      out << e.k << ',' << e.t << ',' << e.log2_repetitions << ','
          << e.repetitions << "\n";
  }
};

inline BudgetPlan budget_plan(int n, const LogTimeFunction& g) {
  BudgetPlan plan;
  for (int k = 0; k <= n; ++k) {
    OptimalT opt = optimal_t(n, k, g);
    BigInt reps = ceil_div(2 * binom_exact(n, opt.t), binom_exact(k, opt.t));
    if (reps > BigInt(std::uint64_t{1} << 62))
      throw GuardError("sampling budget too large to execute");
    plan.entries.push_back({k, opt.t,
                            1.0 + log2_binom(n, opt.t) - log2_binom(k, opt.t),
                            reps.convert_to<std::uint64_t>()});
  }
  return plan;
}

struct MlsResult {
  bool yes = false;
  std::optional<Subset> witness;
  BudgetPlan plan;
  std::uint64_t ext_invocations = 0;
  std::vector<std::uint64_t> invocations_per_k;
};

/// Monotone local search: for every target size k, pick the cost-optimal
/// sampling size t and repeat Sample until the budget is exhausted, exiting
/// early on the first extension found.  An empty family always yields "no";
/// a non-empty one yields "yes" with probability at least 1 - 1/e.  Every
/// returned member is re-validated before being reported.
inline MlsResult monotone_local_search(const ImplicitSetProblem& problem,
                                       const ExtensionAlgorithm& ext,
                                       std::uint64_t seed) {
  const int n = problem.ground_size();
  MlsResult result;
  result.plan = budget_plan(n, ext.log_time);
  result.invocations_per_k.assign(n + 1, 0);
  for (const auto& entry : result.plan.entries) {
    for (std::uint64_t rep = 0; rep < entry.repetitions; ++rep) {
      ExtensionResult found =
          sample(problem, entry.k, entry.t, ext,
                 derive_seed(seed, static_cast<std::uint64_t>(entry.k), rep));
      ++result.ext_invocations;
      ++result.invocations_per_k[entry.k];
      if (found) {
        if (!problem.member(*found))
          throw std::logic_error("extension routine returned a non-member");
        result.yes = true;
        result.witness = *found;
        return result;
      }
    }
  }
  return result;
}

/// Tabulates Phi growth ratios over a geometric n grid and checks that the
/// ratio never falls below half its value at the smallest grid point.
struct PhiGrowthReport {
  struct Row {
    std::int64_t n = 0;
    double phi_value = 0.0;
    double ratio = 0.0;
  };
  std::vector<Row> rows;
  double floor = 0.0;
  double min_ratio = 0.0;
  bool pass = false;
};

enum class PhiGrowthFamily { KLogK, KSquare };

inline PhiGrowthReport phi_growth_check(PhiGrowthFamily family, double alpha,
                                        const std::vector<std::int64_t>& n_grid) {
  if (alpha <= 0) throw std::invalid_argument("need alpha > 0");
  LogTimeFunction g = family == PhiGrowthFamily::KLogK ? time_bound_klogk(alpha)
                                                       : time_bound_ksquare(alpha);
  PhiGrowthReport report;
  for (std::int64_t n : n_grid) {
    if (n < 2 || n > (std::int64_t{1} << 20))
      throw GuardError("growth check grid is capped at 2^20");
    double value = phi(g, n).value;
    double scale = family == PhiGrowthFamily::KLogK
                       ? std::pow(double(n), 1.0 / (1.0 + alpha))
                       : std::pow(std::log2(double(n)), 2.0);
    report.rows.push_back({n, value, value / scale});
  }
  report.floor = report.rows.front().ratio * 0.5;
  report.min_ratio = report.rows.front().ratio;
  for (const auto& row : report.rows)
    report.min_ratio = std::min(report.min_ratio, row.ratio);
  report.pass = report.min_ratio >= report.floor;
  return report;
}

}  // namespace matroid
