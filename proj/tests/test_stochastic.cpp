#include <doctest.h>

#include <cmath>

#include "scenuc/cases.hpp"
#include "scenuc/io.hpp"
#include "scenuc/stochastic.hpp"
#include "support/test_helpers.hpp"

using namespace scenuc;
using namespace scenuc::testing;

TEST_CASE("empirical ordered sampling reproduces the listed table") {
  CaseFile c3 = builtin_case3();
  ScenarioSet set = sample_scenarios(*c3.distribution, c3.grid, 3, 42);
  REQUIRE(set.size() == 3);
  const double wind[] = {6.0, -15.0, -25.0};
  const double load[] = {11.0, -30.0, -35.0};
  for (int i = 0; i < 3; ++i) {
    CHECK(set.draws[i].wind_err(0, 0) == wind[i]);
    CHECK(set.draws[i].load_err(0, 0) == load[i]);
  }
  // wrap-around beyond the list length
  ScenarioSet five = sample_scenarios(*c3.distribution, c3.grid, 5, 42);
  CHECK(five.draws[3].wind_err(0, 0) == wind[0]);
  CHECK(five.draws[4].load_err(0, 0) == load[1]);
}

TEST_CASE("zero-sigma gaussians give all-zero errors") {
  CaseFile c3 = builtin_case3();
  DistributionSpec spec = default_distribution();
  spec.wind.sigma_frac = 0.0;
  spec.load.sigma_frac = 0.0;
  ScenarioSet set = sample_scenarios(spec, c3.grid, 10, 7);
  for (const ScenarioRealization& d : set.draws) {
    CHECK(d.wind_err(0, 0) == 0.0);
    CHECK(d.load_err(0, 0) == 0.0);
  }
}

TEST_CASE("same seed gives bit-identical scenario sets; draws are prefix-stable") {
  CaseFile c6 = builtin_case6();
  const DistributionSpec spec = *c6.distribution;
  ScenarioSet a = sample_scenarios(spec, c6.grid, 8, 99);
  ScenarioSet b = sample_scenarios(spec, c6.grid, 8, 99);
  REQUIRE(a.size() == b.size());
  for (int i = 0; i < a.size(); ++i)
    for (int w = 0; w < c6.grid.n_wind(); ++w)
      for (int t = 0; t < c6.grid.n_t(); ++t)
        CHECK(a.draws[i].wind_err(w, t) == b.draws[i].wind_err(w, t));

  ScenarioSet longer = sample_scenarios(spec, c6.grid, 16, 99);
  for (int i = 0; i < 8; ++i)
    CHECK(longer.draws[i].load_err(0, 0) == a.draws[i].load_err(0, 0));
  CHECK(a.spec_hash == longer.spec_hash);
}

TEST_CASE("gaussian truncation bounds are respected") {
  CaseFile c3 = builtin_case3();
  DistributionSpec spec = default_distribution();
  spec.wind.trunc_lo_sigmas = -1.0;
  spec.wind.trunc_hi_sigmas = 1.0;
  spec.load.trunc_lo_sigmas = -2.0;
  spec.load.trunc_hi_sigmas = 0.5;
  ScenarioSet set = sample_scenarios(spec, c3.grid, 500, 13);
  const double sw = 0.10 * 30.0, sl = 0.10 * 110.0;
  double w_min = 0, w_max = 0;
  for (const ScenarioRealization& d : set.draws) {
    CHECK(d.wind_err(0, 0) >= -sw - 1e-9);
    CHECK(d.wind_err(0, 0) <= sw + 1e-9);
    CHECK(d.load_err(0, 0) >= -2 * sl - 1e-9);
    CHECK(d.load_err(0, 0) <= 0.5 * sl + 1e-9);
    w_min = std::min(w_min, d.wind_err(0, 0));
    w_max = std::max(w_max, d.wind_err(0, 0));
  }
  // the truncated range is actually exercised
  CHECK(w_min < -0.8 * sw);
  CHECK(w_max > 0.8 * sw);
}

TEST_CASE("shared-factor correlation couples wind and load errors") {
  CaseFile c3 = builtin_case3();
  DistributionSpec spec = default_distribution();
  spec.shared_factor = 1.0;
  ScenarioSet set = sample_scenarios(spec, c3.grid, 50, 5);
  const double sw = 0.10 * 30.0, sl = 0.10 * 110.0;
  for (const ScenarioRealization& d : set.draws)
    CHECK(d.wind_err(0, 0) / sw == doctest::Approx(d.load_err(0, 0) / sl).epsilon(1e-12));

  spec.shared_factor = 2.0;
  CHECK_THROWS_AS(sample_scenarios(spec, c3.grid, 1, 1), InvalidSpec);
  spec.shared_factor = 0.5;
  spec.wind.kind = ErrorKind::Uniform;
  CHECK_THROWS_AS(sample_scenarios(spec, c3.grid, 1, 1), InvalidSpec);
}

TEST_CASE("out-of-sample estimate matches the analytic violation probability") {
  // SP({1}) solution of the 3-bus table: z = (1,0), g1 = 85. Under
  // independent uniform errors wind ~ U[-25,10], load ~ U[-35,15] the
  // violation region is {wind_err < -5} union {load_err - wind_err > 5},
  // whose probability integrates to 4/7 + 112.5/1750 = 0.6357142857.
  CaseFile c3 = builtin_case3();
  ScenarioSet table = sample_scenarios(*c3.distribution, c3.grid, 3, 1);
  ScucScenarioProblem p(c3.grid, table);
  UcSolution sol = p.extract(p.solve_subset(std::vector<int>{0}, nullptr));
  REQUIRE(sol.g[0][0][0] == doctest::Approx(85.0));

  DistributionSpec uni;
  uni.wind.kind = ErrorKind::Uniform;
  uni.wind.uniform_lo_mw = -25.0;
  uni.wind.uniform_hi_mw = 10.0;
  uni.load.kind = ErrorKind::Uniform;
  uni.load.uniform_lo_mw = -35.0;
  uni.load.uniform_hi_mw = 15.0;

  OutOfSampleReport rep = estimate_violation(c3.grid, sol, uni, 200000, 31, 2);
  const double analytic = 4.0 / 7.0 + 112.5 / 1750.0;
  CHECK(std::fabs(rep.epsilon_hat - analytic) < 0.005);
  CHECK(rep.balance_violations > 0);
  CHECK(rep.line_violations > 0);
  CHECK(rep.violation_count <= rep.balance_violations + rep.line_violations);
  CHECK(rep.violation_count >= std::max(rep.balance_violations, rep.line_violations));

  // Different seeds agree within sampling error.
  for (uint64_t seed : {77ull, 78ull, 79ull}) {
    OutOfSampleReport r = estimate_violation(c3.grid, sol, uni, 10000, seed, 1);
    const double se = std::sqrt(analytic * (1 - analytic) / 10000.0);
    CHECK(std::fabs(r.epsilon_hat - analytic) < 4 * se);
  }

  // Thread count does not change the counts.
  OutOfSampleReport r1 = estimate_violation(c3.grid, sol, uni, 20000, 5, 1);
  OutOfSampleReport r4 = estimate_violation(c3.grid, sol, uni, 20000, 5, 4);
  CHECK(r1.violation_count == r4.violation_count);
  CHECK(r1.balance_violations == r4.balance_violations);
}

TEST_CASE("a solution feasible for the whole error support never violates") {
  CaseFile c3 = builtin_case3();
  // Bounded support: the three table scenarios drawn i.i.d.; the full
  // solution is feasible for each of them.
  DistributionSpec spec = *c3.distribution;
  spec.empirical_mode = EmpiricalMode::Iid;
  ScenarioSet table = sample_scenarios(*c3.distribution, c3.grid, 3, 1);
  ScucScenarioProblem p(c3.grid, table);
  UcSolution sol = p.extract(p.solve_subset(iota_vec(3), nullptr));
  OutOfSampleReport rep = estimate_violation(c3.grid, sol, spec, 5000, 3, 1);
  CHECK(rep.epsilon_hat == 0.0);
}

TEST_CASE("experiment sweep: row counts, determinism, N = 0 guard") {
  CaseFile c3 = builtin_case3();
  ExperimentConfig cfg;
  cfg.case_name = "case3";
  cfg.grid = c3.grid;
  cfg.spec = default_distribution();
  cfg.n_grid = {0, 4, 8};
  cfg.trials = 3;
  cfg.beta = 0.05;
  cfg.m_oos = 2000;
  cfg.master_seed = 20240601;
  cfg.threads = 2;

  ExperimentReport rep = run_experiment(cfg);
  REQUIRE(rep.rows.size() == 9);
  for (const TrialRow& r : rep.rows) {
    if (r.n == 0) {
      CHECK_FALSE(r.ok);  // no certificate exists for N = 0
    } else {
      REQUIRE(r.ok);
      CHECK(r.oos.m_samples == 2000);
      CHECK(r.epsilon_posterior > 0.0);
      CHECK(r.set_size <= r.n);
    }
  }

  ExperimentReport again = run_experiment(cfg);
  CHECK(experiment_csv(rep) == experiment_csv(again));

  cfg.threads = 1;
  ExperimentReport serial = run_experiment(cfg);
  CHECK(experiment_csv(serial) == experiment_csv(rep));
}

TEST_CASE("certificate bound holds across repeated trials") {
  // Fixed (N, beta): the fraction of trials whose out-of-sample estimate
  // exceeds the posterior epsilon stays within beta plus sampling slack.
  CaseFile c3 = builtin_case3();
  ExperimentConfig cfg;
  cfg.case_name = "case3";
  cfg.grid = c3.grid;
  cfg.spec = default_distribution();
  cfg.n_grid = {15};
  cfg.trials = 60;
  cfg.beta = 0.05;
  cfg.m_oos = 5000;
  cfg.master_seed = 5150;
  cfg.threads = 2;
  ExperimentReport rep = run_experiment(cfg);
  int bad = 0, ok = 0;
  for (const TrialRow& r : rep.rows) {
    if (!r.ok) continue;
    ++ok;
    if (r.oos.epsilon_hat > r.epsilon_posterior) ++bad;
  }
  REQUIRE(ok >= 55);
  CHECK(static_cast<double>(bad) / ok <= cfg.beta + 3.0 * std::sqrt(cfg.beta / ok));
}
