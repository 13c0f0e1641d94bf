#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "matroid/binom.hpp"
#include "matroid/grid.hpp"
#include "matroid/instances.hpp"
#include "matroid/mls.hpp"
#include "matroid/rng.hpp"
#include "matroid/solvers.hpp"
#include "matroid/zoo.hpp"

using namespace matroid;

namespace {

BigInt pow_big(const BigInt& base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Exact integer values of the test family of time bounds.
BigInt exact_g(const std::string& name, int ell, int n) {
  if (name == "one") return 1;
  if (name == "exp") return pow_big(2, ell);
  if (name == "klogk") return ell <= 1 ? BigInt(1) : pow_big(ell, ell);
  if (name == "ksquare") return pow_big(2, ell * ell);
  if (name == "poly-n") return pow_big(n, ell);
  throw std::invalid_argument("unknown family");
}

LogTimeFunction family_by_name(const std::string& name, int n) {
  if (name == "one") return time_bound_one();
  if (name == "exp") return time_bound_exponential();
  if (name == "klogk") return time_bound_klogk(1.0);
  if (name == "ksquare") return time_bound_ksquare(1.0);
  return time_bound_poly(n);
}

// Exact-rational argmin with the same 1e-9 log-domain tie rule.
OptimalT exact_optimal_t(int n, int k, const std::string& name) {
  OptimalT best;
  bool have = false;
  for (int t = 0; t <= k; ++t) {
    BigRational cost = BigRational(binom_exact(n, t), binom_exact(k, t)) *
                       BigRational(exact_g(name, k - t, n));
    double log_cost = log2_rational(cost);
    if (!have || log_cost < best.log2_cost - kLogTieTolerance) {
      best = {t, log_cost};
      have = true;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("exact and log-domain binomials", "[mls]") {
  CHECK(binom_exact(6, 3) == 20);
  CHECK(binom_exact(10, 0) == 1);
  CHECK(binom_exact(10, 10) == 1);
  CHECK(binom_exact(52, 5) == 2598960);

  for (int n : {1, 7, 30, 100, 333, 1000}) {
    for (int k = 0; k <= n; k += std::max(1, n / 7)) {
      double exact = log2_big(binom_exact(n, k));
      CHECK(std::abs(log2_binom(n, k) - exact) < 1e-9);
    }
  }
  CHECK_THROWS_AS(binom_exact(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(log2_binom(3, -1), std::invalid_argument);
}

TEST_CASE("binary entropy", "[mls]") {
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.25) < 0.85);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    double x = double(rng.below(1000000)) / 1000000.0;
    CHECK(binary_entropy(x) == Catch::Approx(binary_entropy(1.0 - x)).margin(1e-12));
  }
  CHECK_THROWS_AS(binary_entropy(1.5), std::invalid_argument);
}

TEST_CASE("entropy sandwich", "[mls]") {
  for (int n = 1; n <= 60; ++n) {
    for (int k = 0; k <= n; ++k) {
      double exact = log2_big(binom_exact(n, k));
      double envelope = n * binary_entropy(double(k) / n);
      CHECK(exact <= envelope + 1e-9);
      CHECK(envelope - std::log2(double(n + 1)) <= exact + 1e-9);
    }
  }
}

TEST_CASE("sampling-size optimizer", "[mls]") {
  // Constant bound: t = 0 and zero cost for every k.
  for (int k = 0; k <= 6; ++k) {
    OptimalT opt = optimal_t(10, k, time_bound_one());
    CHECK(opt.t == 0);
    CHECK(opt.log2_cost == Catch::Approx(0.0).margin(1e-12));
  }

  // n=4, k=2, log2 g(l) = 2l: costs 4, 3, log2 6; the last wins.
  LogTimeFunction steep{"steep", [](int ell) { return 2.0 * ell; }};
  OptimalT opt = optimal_t(4, 2, steep);
  CHECK(opt.t == 2);
  CHECK(opt.log2_cost == Catch::Approx(std::log2(6.0)).margin(1e-9));

  OptimalT zero = optimal_t(9, 0, time_bound_poly(9));
  CHECK(zero.t == 0);
  CHECK(zero.log2_cost == Catch::Approx(0.0).margin(1e-12));

  CHECK_THROWS_AS(optimal_t(3, 4, time_bound_one()), std::invalid_argument);
}

TEST_CASE("optimizer agrees with the exact-rational scan", "[mls]") {
  for (const std::string& name : {"one", "exp", "klogk", "ksquare", "poly-n"}) {
    for (int n = 1; n <= 40; ++n) {
      LogTimeFunction g = family_by_name(name, n);
      for (int k = 0; k <= n; ++k) {
        OptimalT fast = optimal_t(n, k, g);
        OptimalT exact = exact_optimal_t(n, k, name);
        CHECK(fast.t == exact.t);
        CHECK(fast.log2_cost == Catch::Approx(exact.log2_cost).margin(1e-9));
      }
    }
  }
}

TEST_CASE("phi maximization", "[mls]") {
  PhiResult p = phi(time_bound_one(), 16);
  CHECK(p.value == Catch::Approx(2.0).margin(1e-12));
  CHECK(p.argmax_ell == 1);  // ties break toward the smaller index

  for (int n = 1; n <= 3; ++n) {
    CHECK(phi(time_bound_ksquare(1.0), n).value == 0.0);
    CHECK(phi(time_bound_ksquare(1.0), n).argmax_ell == 0);
  }

  for (int n = 1; n <= 200; n += 7) {
    for (const std::string& name : {"one", "exp", "klogk", "ksquare", "poly-n"}) {
      CHECK(phi(family_by_name(name, n), n).value <= 0.15 * n + 1e-9);
    }
  }
}

TEST_CASE("psi scan", "[mls]") {
  // Constant bound: the inner minimum is 1 for every k.
  CHECK(log2_psi(time_bound_one(), 12) == Catch::Approx(0.0).margin(1e-12));

  // Cross-check against the exact-rational double scan at n = 10.
  double expected = 0.0;
  for (int k = 0; k <= 10; ++k)
    expected = std::max(expected, exact_optimal_t(10, k, "ksquare").log2_cost);
  CHECK(log2_psi(time_bound_ksquare(1.0), 10) ==
        Catch::Approx(expected).margin(1e-9));

  // The budget bound holds for every tested pair.
  for (int n = 1; n <= 200; n += 11) {
    for (const std::string& name : {"one", "exp", "klogk", "ksquare", "poly-n"}) {
      LogTimeFunction g = family_by_name(name, n);
      CHECK(log2_psi(g, n) <=
            n - phi(g, n).value + std::log2(double(n)) + 1e-9);
    }
  }
}

TEST_CASE("phi growth report", "[mls]") {
  std::vector<std::int64_t> grid;
  for (int p = 10; p <= 18; ++p) grid.push_back(std::int64_t{1} << p);

  PhiGrowthReport klogk = phi_growth_check(PhiGrowthFamily::KLogK, 1.0, grid);
  CHECK(klogk.pass);
  for (std::size_t i = 1; i < klogk.rows.size(); ++i)
    CHECK(klogk.rows[i].phi_value >= klogk.rows[i - 1].phi_value);

  PhiGrowthReport ksquare = phi_growth_check(PhiGrowthFamily::KSquare, 1.0, grid);
  CHECK(ksquare.pass);

  // The constant bound dominates both families pointwise.
  for (const auto& row : klogk.rows)
    CHECK(phi(time_bound_one(), row.n).value >= row.phi_value - 1e-9);

  CHECK_THROWS_AS(phi_growth_check(PhiGrowthFamily::KLogK, -1.0, grid),
                  std::invalid_argument);
}

TEST_CASE("sampling round statistics", "[mls]") {
  const int n = 8, k = 4, t = 2;
  Subset solution = subset_of({1, 3, 4, 6});
  ImplicitSetProblem problem = ImplicitSetProblem::planted(n, solution);
  ExtensionAlgorithm ext = brute_force_extension(problem, time_bound_poly(n));

  int hits = 0;
  const int trials = 2000;
  for (int i = 0; i < trials; ++i) {
    ExtensionResult r = sample(problem, k, t, ext, derive_seed(99, i));
    if (r) {
      CHECK(*r == solution);
      ++hits;
    }
  }
  double rate = double(hits) / trials;
  double lower = 0.5 * 6.0 / 28.0;  // half of C(4,2)/C(8,2)
  CHECK(rate >= lower);

  // Empty family: every sampling round fails.
  ImplicitSetProblem empty = ImplicitSetProblem::empty(n);
  ExtensionAlgorithm empty_ext = brute_force_extension(empty, time_bound_poly(n));
  for (int i = 0; i < 50; ++i)
    CHECK_FALSE(sample(empty, k, t, empty_ext, derive_seed(7, i)).has_value());

  // t = k = 0 on a family containing the empty set.
  ImplicitSetProblem trivial = ImplicitSetProblem::planted(4, 0);
  ExtensionAlgorithm trivial_ext = brute_force_extension(trivial, time_bound_one());
  ExtensionResult r = sample(trivial, 0, 0, trivial_ext, 1);
  REQUIRE(r.has_value());
  CHECK(*r == 0);

  // Same seed, same draw.
  CHECK(sample(problem, k, t, ext, 123) == sample(problem, k, t, ext, 123));
}

TEST_CASE("local search decides planted and empty families", "[mls]") {
  const int n = 10, k = 5;
  for (int seed = 0; seed < 50; ++seed) {
    ImplicitSetProblem empty = ImplicitSetProblem::empty(n);
    ExtensionAlgorithm ext = brute_force_extension(empty, time_bound_poly(n));
    MlsResult r = monotone_local_search(empty, ext, derive_seed(1000, seed));
    CHECK_FALSE(r.yes);
    CHECK(r.ext_invocations == r.plan.total());
  }

  int hits = 0;
  const int trials = 200;
  Rng rng(77);
  for (int seed = 0; seed < trials; ++seed) {
    Subset solution = random_k_subset(rng, n, k);
    ImplicitSetProblem planted = ImplicitSetProblem::planted(n, solution);
    ExtensionAlgorithm ext = brute_force_extension(planted, time_bound_poly(n));
    MlsResult r = monotone_local_search(planted, ext, derive_seed(2000, seed));
    if (r.yes) {
      CHECK(r.witness == solution);
      ++hits;
    }
  }
  double bound = 1.0 - std::exp(-1.0);
  CHECK(double(hits) / trials >= bound - 3.0 * std::sqrt(bound * (1 - bound) / trials));
}

TEST_CASE("budget plan matches executed invocations", "[mls]") {
  for (int n : {1, 5, 9, 12}) {
    for (const std::string& name : {"one", "exp", "klogk", "ksquare", "poly-n"}) {
      LogTimeFunction g = family_by_name(name, n);
      BudgetPlan plan = budget_plan(n, g);
      REQUIRE(plan.entries.size() == static_cast<std::size_t>(n + 1));
      for (const auto& e : plan.entries) {
        BigInt expected =
            ceil_div(2 * binom_exact(n, e.t), binom_exact(e.k, e.t));
        CHECK(BigInt(e.repetitions) == expected);
      }
      ImplicitSetProblem empty = ImplicitSetProblem::empty(n);
      ExtensionAlgorithm ext = brute_force_extension(empty, g);
      MlsResult r = monotone_local_search(empty, ext, 5);
      CHECK(r.ext_invocations == plan.total());
      // The plan never exceeds the phi budget.
      CHECK(std::log2(double(plan.total())) <=
            std::log2(double(n + 1)) + n - phi(g, n).value +
                std::log2(double(n)) + 1e-9);
    }
  }
}

TEST_CASE("budget plan serialization", "[mls]") {
  BudgetPlan plan = budget_plan(4, time_bound_one());
  std::ostringstream out;
  plan.write_csv(out);
  std::string text = out.str();
  CHECK(text.rfind("k,t,log2_repetitions,repetitions\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);  // header + 5 rows
}

TEST_CASE("intersection instances as implicit problems", "[mls]") {
  SUMatrix ones = SUMatrix::filled(2, 2, 1);
  GridShape g = ones.shape();
  Subset diag = subset_of({g.flat_index({1, 1}), g.flat_index({2, 2})});
  LMIInstance inst{4,
                   {g_matroid(ones, explicit_set_family(g, {diag})),
                    grid_partition_matroid(ones, 1), grid_partition_matroid(ones, 2)}};
  ImplicitSetProblem problem = lmi_as_implicit_problem(inst);
  CHECK(problem.member(diag));
  CHECK_FALSE(problem.member(0));  // rank is positive

  ExtensionAlgorithm ext = lmi_extension_algorithm(inst, brute_force_lmi);
  MlsResult r = monotone_local_search(problem, ext, 42);
  CHECK(r.yes);
  CHECK(r.witness == diag);
}

TEST_CASE("time bounds validate their zero point", "[mls]") {
  LogTimeFunction bad{"bad", [](int) { return 1.0; }};
  CHECK_THROWS_AS(bad(0), std::invalid_argument);
  CHECK(time_bound_klogk(2.0)(1) == 0.0);
  CHECK(time_bound_poly(8)(2) == Catch::Approx(6.0));
}
