// matroidlab: command-line driver for the oracle-matroid toolkit.
//
// Subcommands: solve, audit, phi-table, mls-bench, verify.  All randomness is
// seeded; identical flags and seed give byte-identical CSV output.  Wall
// times go to stderr so the CSV stays deterministic.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "matroid/audit.hpp"
#include "matroid/binom.hpp"
#include "matroid/cnf.hpp"
#include "matroid/core.hpp"
#include "matroid/csv.hpp"
#include "matroid/encodings.hpp"
#include "matroid/errors.hpp"
#include "matroid/es.hpp"
#include "matroid/grid.hpp"
#include "matroid/instances.hpp"
#include "matroid/mls.hpp"
#include "matroid/reductions.hpp"
#include "matroid/rng.hpp"
#include "matroid/solvers.hpp"
#include "matroid/subsets.hpp"
#include "matroid/verify.hpp"
#include "matroid/zoo.hpp"

namespace {

using namespace matroid;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitGuard = 3;

struct CommonOptions {
  std::string problem;
  std::string input;
  int n = 0;
  int k = 0;
  int ell = 3;
  std::string family = "explicit";
  std::string g_name = "poly-n";
  double alpha = 1.0;
  std::uint64_t seed = 1;
  bool seed_given = false;
  int trials = 1;
  int budget = 0;
  std::string out_path;
};

std::uint64_t effective_seed(const CommonOptions& opt) {
  if (!opt.seed_given) {
    if (const char* env = std::getenv("MATROIDLAB_SEED")) {
      std::uint64_t s = std::strtoull(env, nullptr, 10);
      std::cerr << "seed taken from MATROIDLAB_SEED=" << s << "\n";
      return s;
    }
  }
  return opt.seed;
}

class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ParseError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

LogTimeFunction make_time_bound(const std::string& name, double alpha, int n) {
  if (name == "one") return time_bound_one();
  if (name == "exp") return time_bound_exponential(alpha);
  if (name == "klogk") return time_bound_klogk(alpha);
  if (name == "ksquare") return time_bound_ksquare(alpha);
  if (name == "poly-n") return time_bound_poly(n);
  throw ParseError("unknown time-bound family: " + name);
}

// Builds the trial's Empty Set instance from flags and the pre-read input
// text.  Construction is deterministic in (flags, seed, trial), so a fresh
// copy is always available for witness re-validation.
EmptySetInstance make_es_instance(const CommonOptions& opt, const std::string& text,
                                  std::uint64_t trial_seed) {
  if (opt.family == "empty") {
    if (opt.n < 1) throw ParseError("--n is required");
    return EmptySetInstance::empty_family(opt.n, opt.k);
  }
  if (opt.family == "planted") {
    if (opt.n < 1) throw ParseError("--n is required");
    Rng rng(derive_seed(trial_seed, 0x91a));
    return EmptySetInstance::planted(opt.n, opt.k,
                                     random_k_subset(rng, opt.n, opt.k));
  }
  if (opt.family == "explicit") {
    if (opt.n < 1) throw ParseError("--n is required");
    if (opt.input.empty()) throw ParseError("--input is required for --family explicit");
    std::istringstream in(text);
    return EmptySetInstance::explicit_family(opt.n, opt.k,
                                             parse_es_family(in, opt.n, opt.k));
  }
  if (opt.family == "sat") {
    if (opt.input.empty()) throw ParseError("--input is required for --family sat");
    std::istringstream in(text);
    CNFInstance cnf = parse_dimacs(in);
    if (opt.n != 0 && opt.n != cnf.variable_count)
      throw ParseError("--n disagrees with the formula's variable count");
    return es_from_sat(cnf, opt.k);
  }
  throw ParseError("unknown family: " + opt.family);
}

std::string es_instance_id(const CommonOptions& opt, int n) {
  return "es(n=" + std::to_string(n) + ",k=" + std::to_string(opt.k) + "," +
         opt.family + ")";
}

std::string witness_string(const std::optional<Subset>& w) {
  return w ? format_subset(*w) : "";
}

std::string per_oracle_string(const QueryReport& report) {
  std::string out;
  for (const auto& [name, count] : report.per_oracle) {
    if (!out.empty()) out += ';';
    out += name + "=" + std::to_string(count);
  }
  return out;
}

struct SolveRow {
  std::string instance_id;
  std::string solver_id;
  bool yes = false;
  std::optional<Subset> witness;
  QueryReport queries;
};

void write_solve_rows(std::ostream& out, const std::vector<SolveRow>& rows) {
  write_csv_row(out, {"instance_id", "solver_id", "verdict", "witness",
                      "queries_total", "queries_per_oracle"});
  for (const auto& row : rows) {
    write_csv_row(out, {row.instance_id, row.solver_id, row.yes ? "yes" : "no",
                        witness_string(row.witness),
                        std::to_string(row.queries.total()),
                        per_oracle_string(row.queries)});
  }
}

// One instance family that can be rebuilt per trial: solve runs the selected
// solver and re-validates any witness against a fresh instance.
int run_solve(const CommonOptions& opt) {
  std::uint64_t seed = effective_seed(opt);
  if (opt.trials < 1) throw ParseError("--trials must be >= 1");
  const std::string input_text =
      opt.input.empty() ? std::string() : read_text_file(opt.input);
  std::vector<SolveRow> rows;

  for (int trial = 0; trial < opt.trials; ++trial) {
    std::uint64_t trial_seed = derive_seed(seed, trial);
    auto start = std::chrono::steady_clock::now();
    SolveRow row;
    row.instance_id = "#" + std::to_string(trial);

    if (opt.problem == "3dm" || opt.problem == "hampath" || opt.problem == "lmi") {
      if (opt.input.empty()) throw ParseError("--input is required");
      const std::string& text = input_text;
      auto build = [&]() -> LMIInstance {
        std::istringstream in(text);
        if (opt.problem == "3dm") return encode_3dm(parse_3dm(in));
        if (opt.problem == "hampath") return encode_hampath(parse_digraph(in));
        try {
          std::istringstream tri(text);
          return encode_3dm(parse_3dm(tri));
        } catch (const ParseError&) {
          std::istringstream arcs(text);
          return encode_hampath(parse_digraph(arcs));
        }
      };
      LMIInstance inst = build();
      SolveOutcome result = brute_force_lmi(inst);
      if (result.yes && !is_common_basis(build(), *result.witness))
        throw std::logic_error("witness failed re-validation");
      row.instance_id = opt.problem + ":" + opt.input + row.instance_id;
      row.solver_id = "bf-lmi";
      row.yes = result.yes;
      row.witness = result.witness;
      row.queries = result.queries;
    } else if (opt.problem == "emi") {
      auto build = [&] { return reduce_es_to_emi(make_es_instance(opt, input_text, trial_seed)); };
      EmiReduction reduction = build();
      SolveOutcome result = brute_force_emi(reduction.instance);
      if (result.yes && !is_emi_witness(build().instance, *result.witness))
        throw std::logic_error("witness failed re-validation");
      row.instance_id = "emi:" + es_instance_id(opt, reduction.rows) + row.instance_id;
      row.solver_id = "bf-emi";
      row.yes = result.yes;
      row.witness = result.witness;
      row.queries = result.queries;
    } else if (opt.problem == "es-brute" || opt.problem == "es-via-lmi" ||
               opt.problem == "es-via-emi") {
      EmptySetInstance es = make_es_instance(opt, input_text, trial_seed);
      SolveOutcome result;
      if (opt.problem == "es-brute") {
        result = solve_es_bruteforce(es);
        row.solver_id = "es-brute";
      } else if (opt.problem == "es-via-lmi") {
        result = solve_es_via_lmi_reduction(es, opt.ell, brute_force_lmi);
        row.solver_id = "es-via-lmi(bf)";
      } else {
        result = solve_es_via_emi_reduction(es, brute_force_emi);
        row.solver_id = "es-via-emi(bf)";
      }
      if (result.yes) {
        EmptySetInstance fresh = make_es_instance(opt, input_text, trial_seed);
        if (!fresh.family_contains(*result.witness))
          throw std::logic_error("witness failed re-validation");
      }
      row.instance_id = es_instance_id(opt, es.universe_size()) + row.instance_id;
      row.yes = result.yes;
      row.witness = result.witness;
      row.queries = result.queries;
    } else if (opt.problem == "mls") {
      EmptySetInstance es = make_es_instance(opt, input_text, trial_seed);
      ImplicitSetProblem problem = ImplicitSetProblem::from_es(es);
      LogTimeFunction g = make_time_bound(opt.g_name, opt.alpha, es.universe_size());
      ExtensionAlgorithm ext = brute_force_extension(problem, g);
      MlsResult result = monotone_local_search(problem, ext, trial_seed);
      if (result.yes) {
        EmptySetInstance fresh = make_es_instance(opt, input_text, trial_seed);
        if (!fresh.family_contains(*result.witness))
          throw std::logic_error("witness failed re-validation");
      }
      row.instance_id = "mls:" + es_instance_id(opt, es.universe_size()) + row.instance_id;
      row.solver_id = "mls(bf-ext," + g.name + ")";
      row.yes = result.yes;
      row.witness = result.witness;
      row.queries.add("F", es.queries());
      row.queries.add("ext-invocations", result.ext_invocations);
    } else {
      throw ParseError("unknown problem: " + opt.problem);
    }

    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    std::cerr << row.instance_id << ": " << ms << " ms\n";
    rows.push_back(std::move(row));
  }

  OutputSink sink(opt.out_path);
  write_solve_rows(sink.stream(), rows);
  return kExitOk;
}

int run_audit(const CommonOptions& opt) {
  if (opt.n < 1) throw ParseError("--n is required");
  ESSolver solver;
  std::string solver_id = opt.problem;
  if (opt.problem == "es-brute") {
    solver = [](const EmptySetInstance& es) { return solve_es_bruteforce(es); };
  } else if (opt.problem == "es-via-lmi") {
    int ell = opt.ell;
    solver = [ell](const EmptySetInstance& es) {
      return solve_es_via_lmi_reduction(es, ell, brute_force_lmi);
    };
  } else if (opt.problem == "es-via-emi") {
    solver = [](const EmptySetInstance& es) {
      return solve_es_via_emi_reduction(es, brute_force_emi);
    };
  } else if (opt.problem == "truncated") {
    if (opt.budget < 1) throw ParseError("--budget is required for the truncated solver");
    std::uint64_t budget = static_cast<std::uint64_t>(opt.budget);
    solver = [budget](const EmptySetInstance& es) {
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
    solver_id += "(" + std::to_string(opt.budget) + ")";
  } else {
    throw ParseError("unknown audit solver: " + opt.problem);
  }

  AuditResult result = audited_es_run(solver, opt.n, opt.k);
  OutputSink sink(opt.out_path);
  std::ostream& out = sink.stream();
  out << "solver: " << solver_id << "\n";
  out << "verdict on empty family: " << (result.outcome.yes ? "yes" : "no") << "\n";
  out << "queries: " << result.total_queries << " total, "
      << result.distinct_queries << " distinct of " << result.space_size << "\n";
  if (result.certificate) {
    out << "fooling certificate: unqueried " << format_subset(result.certificate->unqueried)
        << " after a transcript of " << result.certificate->transcript_length
        << " distinct queries\n";
  } else {
    out << "no certificate (full coverage)\n";
  }
  return kExitOk;
}

int run_phi_table(const CommonOptions& opt) {
  if (opt.n < 1) throw ParseError("--n is required");
  OutputSink sink(opt.out_path);
  std::ostream& out = sink.stream();
  write_csv_row(out, {"n", "g", "alpha", "phi", "argmax_ell", "log2_psi",
                      "budget_exponent", "psi_ok", "phi_cap_ok"});
  for (int n = 1; n <= opt.n; ++n) {
    LogTimeFunction g = make_time_bound(opt.g_name, opt.alpha, n);
    PhiResult p = phi(g, n);
    double psi = log2_psi(g, n);
    double budget = n - p.value + std::log2(double(n));
    bool psi_ok = psi <= budget + kLogTieTolerance;
    bool cap_ok = p.value <= 0.15 * n + kLogTieTolerance;
    std::ostringstream phi_s, psi_s, budget_s, alpha_s;
    phi_s << p.value;
    psi_s << psi;
    budget_s << budget;
    alpha_s << opt.alpha;
    write_csv_row(out, {std::to_string(n), opt.g_name, alpha_s.str(), phi_s.str(),
                        std::to_string(p.argmax_ell), psi_s.str(), budget_s.str(),
                        psi_ok ? "1" : "0", cap_ok ? "1" : "0"});
  }
  return kExitOk;
}

int run_mls_bench(const CommonOptions& opt) {
  if (opt.n < 4) throw ParseError("--n must be >= 4");
  if (opt.trials < 1) throw ParseError("--trials must be >= 1");
  std::uint64_t seed = effective_seed(opt);
  OutputSink sink(opt.out_path);
  std::ostream& out = sink.stream();
  write_csv_row(out, {"n", "k", "g", "trials", "plan_total", "no_invocations",
                      "plan_match", "yes_rate"});
  for (int n = 4; n <= opt.n; ++n) {
    int k = opt.k > 0 ? std::min(opt.k, n) : n / 2;
    LogTimeFunction g = make_time_bound(opt.g_name, opt.alpha, n);

    ImplicitSetProblem empty = ImplicitSetProblem::empty(n);
    ExtensionAlgorithm empty_ext = brute_force_extension(empty, g);
    MlsResult no_run = monotone_local_search(empty, empty_ext, derive_seed(seed, n));
    bool match = !no_run.yes && no_run.ext_invocations == no_run.plan.total();

    int hits = 0;
    Rng rng(derive_seed(seed, n, 1));
    for (int trial = 0; trial < opt.trials; ++trial) {
      ImplicitSetProblem planted =
          ImplicitSetProblem::planted(n, random_k_subset(rng, n, k));
      ExtensionAlgorithm ext = brute_force_extension(planted, g);
      if (monotone_local_search(planted, ext, derive_seed(seed, n, 100 + trial)).yes)
        ++hits;
    }
    std::ostringstream rate;
    rate << double(hits) / opt.trials;
    write_csv_row(out, {std::to_string(n), std::to_string(k), g.name,
                        std::to_string(opt.trials), std::to_string(no_run.plan.total()),
                        std::to_string(no_run.ext_invocations), match ? "1" : "0",
                        rate.str()});
  }
  return kExitOk;
}

int run_verify(const CommonOptions& opt) {
  OutputSink sink(opt.out_path);
  auto results = matroid::checks::run_all_checks(sink.stream());
  for (const auto& r : results)
    if (!r.pass) return kExitFailure;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oracle-matroid toolkit: intersection reductions, local search, audits"};
  app.require_subcommand(1);
  CommonOptions opt;

  auto add_common = [&opt](CLI::App* cmd) {
    cmd->add_option("--input", opt.input, "instance file");
    cmd->add_option("--n", opt.n, "universe or grid-size parameter");
    cmd->add_option("--k", opt.k, "cardinality target");
    cmd->add_option("--ell", opt.ell, "number of matroids for the grid reduction");
    cmd->add_option("--family", opt.family, "explicit | sat | empty | planted");
    cmd->add_option("--alpha", opt.alpha, "time-bound parameter");
    cmd->add_option("--g", opt.g_name, "time bound: one | exp | klogk | ksquare | poly-n");
    cmd->add_option("--seed", opt.seed, "RNG seed")->each([&opt](const std::string&) {
      opt.seed_given = true;
    });
    cmd->add_option("--trials", opt.trials, "number of seeded trials");
    cmd->add_option("--budget", opt.budget, "query budget for the truncated solver");
    cmd->add_option("--out", opt.out_path, "output file (default stdout)");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve an instance and emit CSV rows");
  solve->add_option("--problem", opt.problem,
                    "3dm | hampath | lmi | emi | es-brute | es-via-lmi | es-via-emi | mls")
      ->required();
  add_common(solve);

  CLI::App* audit = app.add_subcommand("audit", "fooling audit of a deterministic solver");
  audit->add_option("--problem", opt.problem,
                    "es-brute | es-via-lmi | es-via-emi | truncated")
      ->required();
  add_common(audit);

  CLI::App* phi_table = app.add_subcommand("phi-table", "tabulate the budget exponents");
  add_common(phi_table);

  CLI::App* mls_bench =
      app.add_subcommand("mls-bench", "local-search budget and success benchmark");
  add_common(mls_bench);

  CLI::App* verify = app.add_subcommand("verify", "run the full property suite");
  add_common(verify);

  try {
    app.parse(argc, argv);
    if (solve->parsed()) return run_solve(opt);
    if (audit->parsed()) return run_audit(opt);
    if (phi_table->parsed()) return run_phi_table(opt);
    if (mls_bench->parsed()) return run_mls_bench(opt);
    if (verify->parsed()) return run_verify(opt);
    return kExitParse;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitParse;
  } catch (const matroid::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const matroid::GuardError& e) {
    std::cerr << "guard violation: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "guard violation: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
