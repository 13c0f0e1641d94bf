#pragma once

#include <cstdint>
#include <optional>

#include "matroid/errors.hpp"
#include "matroid/es.hpp"
#include "matroid/solvers.hpp"
#include "matroid/subsets.hpp"

namespace matroid {

/// Witness that a solver answered "no" without inspecting the whole family
/// space: an unqueried k-subset.  Planting that subset as the sole family
/// member yields an instance the solver cannot distinguish from the empty
/// one, since its transcript never touches the difference.
struct FoolingCertificate {
  int universe_size = 0;
  int cardinality = 0;
  Subset unqueried = 0;
  std::uint64_t transcript_length = 0;  // distinct k-subsets queried
};

struct AuditResult {
  SolveOutcome outcome;
  std::uint64_t total_queries = 0;
  std::uint64_t distinct_queries = 0;
  std::uint64_t space_size = 0;  // C(n,k)
  std::optional<FoolingCertificate> certificate;
};

/// Runs a deterministic Empty Set solver against the empty family, recording
/// every distinct k-subset it queries.  If it answers "no" without touching
/// all of them, the first unqueried k-subset (in ascending bitmask order)
/// becomes a fooling certificate.
inline AuditResult audited_es_run(const ESSolver& solver, int n, int k) {
  if (n > 24) throw GuardError("fooling audit is capped at n <= 24");
  EmptySetInstance es = EmptySetInstance::empty_family(n, k);
  es.start_transcript();

  AuditResult result;
  result.outcome = solver(es);
  result.total_queries = es.queries();
  result.distinct_queries = es.transcript().size();
  result.space_size = detail::binom_capped(n, k, ~std::uint64_t{0} >> 1);

  if (!result.outcome.yes && result.distinct_queries < result.space_size) {
    for_each_k_subset(n, k, [&](Subset s) {
      if (!es.was_queried(s)) {
        result.certificate = FoolingCertificate{
            n, k, s, result.distinct_queries};
        return false;
      }
      return true;
    });
  }
  return result;
}

}  // namespace matroid
