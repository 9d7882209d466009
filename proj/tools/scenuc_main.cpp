// scenuc: scenario-approach unit commitment with posterior risk certificates.
//
// Exit codes: 0 success, 1 oracle-check failure, 2 parse/usage error,
// 3 infeasible, 4 solver limit, 5 experiment finished with failed trials.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <string>

#include "scenuc/cases.hpp"
#include "scenuc/io.hpp"
#include "scenuc/suites.hpp"
#include "scenuc/theory.hpp"

namespace fs = std::filesystem;
using namespace scenuc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitSolverLimit = 4;
constexpr int kExitPartialFailure = 5;

std::string default_out_dir() {
  if (const char* env = std::getenv("SCENUC_OUT_DIR")) return env;
  return ".";
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
}

struct SolveArgs {
  std::string case_path;
  std::string scenarios = "0";  // count, "table", or a scenario-set file
  uint64_t seed = 1;
  double beta = 0.01;
  double tol_eq = 1e-6;
  std::string out_dir = default_out_dir();
  bool dump_model = false;
};

int cmd_solve(const SolveArgs& args) {
  CaseFile cf = load_case_file(args.case_path);
  const DistributionSpec spec = cf.distribution_or_default();

  ScenarioSet scenarios;
  const bool numeric = !args.scenarios.empty() &&
                       std::all_of(args.scenarios.begin(), args.scenarios.end(),
                                   [](unsigned char c) { return std::isdigit(c); });
  if (args.scenarios == "table") {
    if (!cf.distribution || cf.distribution->wind.kind != ErrorKind::Empirical ||
        cf.distribution->load.kind != ErrorKind::Empirical)
      throw ParseError("--scenarios table requires an empirical distribution in the case file");
    const int n = static_cast<int>(cf.distribution->wind.values.size());
    scenarios = sample_scenarios(spec, cf.grid, n, args.seed);
  } else if (numeric) {
    const int n = std::stoi(args.scenarios);
    scenarios = sample_scenarios(spec, cf.grid, n, args.seed);
  } else if (fs::exists(args.scenarios)) {
    try {
      scenarios = scenario_set_from_json(nlohmann::json::parse(read_text_file(args.scenarios)));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(args.scenarios + ": " + e.what());
    }
  } else {
    throw ParseError("--scenarios must be a count, 'table', or a scenario-set file");
  }

  ObjectiveEquality eq{args.tol_eq};
  ScucScenarioProblem problem(cf.grid, scenarios, MilpOptions{}, eq);
  const int n = problem.scenario_count();

  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  OracleSolveResult full = problem.solve_subset(all, nullptr);
  if (full.status == MilpStatus::Infeasible) {
    std::fprintf(stderr, "infeasible: the scenario problem has no feasible schedule\n");
    return kExitInfeasible;
  }

  ensure_dir(args.out_dir);
  const UcSolution sol = problem.extract(full);
  write_text_file(args.out_dir + "/solution.json", solution_to_json(sol).dump(2) + "\n");
  if (args.dump_model)
    write_text_file(args.out_dir + "/model.txt", model_row_listing(problem.model().full_model()));

  if (n > 0) {
    ReductionResult red = two_stage_essential(problem);
    write_text_file(args.out_dir + "/reduction.json", reduction_to_json(red).dump(2) + "\n");
    EpsilonCertificate cert = certify(n, static_cast<int>(red.indices.size()), args.beta);
    write_text_file(args.out_dir + "/certificate.json",
                    certificate_to_json(cert).dump(2) + "\n");
    std::printf("objective %.6f, %s set size %zu, degenerate: %s, epsilon(%d,%zu,%g) = %.6f\n",
                full.objective,
                red.kind == ReductionKind::Essential ? "essential" : "irreducible",
                red.indices.size(),
                red.degenerate == Degeneracy::Degenerate      ? "yes"
                : red.degenerate == Degeneracy::NonDegenerate ? "no"
                                                              : "unknown",
                n, red.indices.size(), args.beta, cert.epsilon);
  } else {
    std::printf("objective %.6f (deterministic problem, no certificate)\n", full.objective);
  }

  RunManifest manifest =
      make_manifest("solve " + args.case_path + " --scenarios " + args.scenarios,
                    read_text_file(args.case_path), args.seed);
  write_text_file(args.out_dir + "/manifest.json", manifest_to_json(manifest).dump(2) + "\n");
  return full.status == MilpStatus::NodeLimit ? kExitSolverLimit : kExitOk;
}

int cmd_prior(double epsilon, double beta, int helly) {
  const int n = prior_sample_size(epsilon, beta, helly);
  std::printf("%d\n", n);
  return kExitOk;
}

int cmd_experiment(const std::string& config_path, std::string out_dir, int threads_override) {
  const std::string config_text = read_text_file(config_path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(config_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(config_path + ": " + e.what());
  }

  ExperimentConfig cfg;
  try {
    const std::string case_rel = j.at("case").get<std::string>();
    const fs::path case_path = fs::path(config_path).parent_path() / case_rel;
    CaseFile cf = load_case_file(case_path.string());
    cfg.grid = cf.grid;
    cfg.case_name = cf.grid.name.empty() ? case_rel : cf.grid.name;
    cfg.spec = j.contains("distribution") ? distribution_from_json(j.at("distribution"))
                                          : cf.distribution_or_default();
    ExperimentDefaults defaults = cf.experiment ? *cf.experiment : ExperimentDefaults{};
    cfg.n_grid = j.value("n_grid", defaults.n_grid);
    cfg.trials = j.value("trials", defaults.trials);
    cfg.beta = j.value("beta", defaults.beta);
    cfg.m_oos = j.value("m_oos", defaults.m_oos);
    cfg.master_seed = j.value("master_seed", defaults.master_seed);
    cfg.threads = j.value("threads", 1);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(config_path + ": " + e.what());
  }
  if (threads_override > 0) cfg.threads = threads_override;

  ExperimentReport rep = run_experiment(cfg);

  ensure_dir(out_dir);
  write_text_file(out_dir + "/experiment.csv", experiment_csv(rep));
  write_text_file(out_dir + "/summary.json", experiment_summary_json(rep).dump(2) + "\n");
  RunManifest manifest = make_manifest("experiment " + config_path, config_text, cfg.master_seed);
  write_text_file(out_dir + "/manifest.json", manifest_to_json(manifest).dump(2) + "\n");

  long failed = 0;
  for (const TrialRow& r : rep.rows)
    if (!r.ok) ++failed;
  std::printf("%zu trials, %ld failed; wrote %s/experiment.csv\n", rep.rows.size(), failed,
              out_dir.c_str());
  return failed > 0 ? kExitPartialFailure : kExitOk;
}

int cmd_oracle_check(const std::string& suite) {
  SuiteReport rep = run_suite(suite);
  for (const std::string& line : rep.lines) std::printf("[%s] %s\n", rep.name.c_str(), line.c_str());
  if (!rep.pass) {
    std::fprintf(stderr, "first diverging instance:\n%s\n", rep.failure_detail.c_str());
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_ptdf(const std::string& case_path) {
  CaseFile cf = load_case_file(case_path);
  PtdfTables t = build_ptdf(cf.grid);
  std::printf("line");
  for (int b = 0; b < cf.grid.n_bus(); ++b) std::printf(",bus%d", cf.grid.buses[b]);
  std::printf("\n");
  for (int l = 0; l < cf.grid.n_line(); ++l) {
    std::printf("%d-%d", cf.grid.lines[l].from, cf.grid.lines[l].to);
    for (int b = 0; b < cf.grid.n_bus(); ++b) std::printf(",%.6f", t.bus_ptdf(l, b));
    std::printf("\n");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scenario-approach unit commitment with posterior risk certificates"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "solve a scenario unit-commitment case");
  solve->add_option("case", solve_args.case_path, "case file (JSON)")->required();
  solve->add_option("--scenarios", solve_args.scenarios,
                    "scenario count, 'table' (the case's empirical list), or a set file");
  solve->add_option("--seed", solve_args.seed, "sampling seed");
  solve->add_option("--beta", solve_args.beta, "certificate confidence parameter");
  solve->add_option("--tol-eq", solve_args.tol_eq, "objective-equality tolerance");
  solve->add_option("--out-dir", solve_args.out_dir, "output directory");
  solve->add_flag("--dump-model", solve_args.dump_model, "write the built model row listing");

  double prior_eps = 0.05, prior_beta = 0.01;
  int prior_h = 1;
  CLI::App* prior = app.add_subcommand("prior", "smallest N meeting an epsilon level in advance");
  prior->add_option("--epsilon", prior_eps, "target violation level")->required();
  prior->add_option("--beta", prior_beta, "confidence parameter")->required();
  prior->add_option("--helly", prior_h, "invariant-set cardinality bound")->required();

  std::string exp_config, exp_out = default_out_dir();
  int exp_threads = 0;
  CLI::App* experiment = app.add_subcommand("experiment", "Monte-Carlo sweep over an N grid");
  experiment->add_option("config", exp_config, "experiment config (JSON)")->required();
  experiment->add_option("--out-dir", exp_out, "output directory");
  experiment->add_option("--threads", exp_threads, "worker threads (overrides config)");

  std::string suite;
  CLI::App* check = app.add_subcommand("oracle-check", "run a cross-validation suite");
  check->add_option("suite", suite, "lp | milp | sets | theory")->required();

  std::string ptdf_case;
  CLI::App* ptdf = app.add_subcommand("ptdf", "dump the shift-factor table");
  ptdf->add_option("case", ptdf_case, "case file (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*solve) return cmd_solve(solve_args);
    if (*prior) return cmd_prior(prior_eps, prior_beta, prior_h);
    if (*experiment) return cmd_experiment(exp_config, exp_out, exp_threads);
    if (*check) return cmd_oracle_check(suite);
    if (*ptdf) return cmd_ptdf(ptdf_case);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitParse;
  } catch (const InfeasibleBase& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kExitInfeasible;
  } catch (const FirstStageInfeasible& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kExitInfeasible;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kExitParse;
  } catch (const NumericalFailure& e) {
    std::fprintf(stderr, "solver limit: %s\n", e.what());
    return kExitSolverLimit;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  }
  return kExitOk;
}
