#include <algorithm>
#include <cmath>
#include <utility>

#include "scenuc/scuc.hpp"

namespace scenuc {

namespace {

std::string tk(const char* name, int t, int k) {
  return std::string(name) + "(" + std::to_string(t) + "," + std::to_string(k) + ")";
}

std::string tkl(const char* name, int t, int k, int l) {
  return std::string(name) + "(" + std::to_string(t) + "," + std::to_string(k) + "," +
         std::to_string(l) + ")";
}

double sum_forecast_load(const GridCase& grid, int t) {
  double s = 0.0;
  for (const LoadPoint& d : grid.loads) s += d.forecast[t - 1];
  return s;
}

double sum_forecast_wind(const GridCase& grid, int t) {
  double s = 0.0;
  for (const WindFarm& w : grid.wind_farms) s += w.forecast[t - 1];
  return s;
}

// Line-flow shift of the non-dispatch injections at step t: (H_w w - H_d d)
// for forecast plus an optional scenario's errors.
double line_shift(const GridCase& grid, const PtdfTables& ptdf, int line, int t,
                  const ScenarioRealization* err) {
  double s = 0.0;
  for (int w = 0; w < grid.n_wind(); ++w) {
    double val = grid.wind_farms[w].forecast[t - 1];
    if (err) val += err->wind_err(w, t - 1);
    s += ptdf.h_wind(line, w) * val;
  }
  for (int d = 0; d < grid.n_load(); ++d) {
    double val = grid.loads[d].forecast[t - 1];
    if (err) val += err->load_err(d, t - 1);
    s -= ptdf.h_load(line, d) * val;
  }
  return s;
}

// Net demand rhs of a balance row at step t: sum(d) - sum(w), forecast plus
// an optional scenario's errors.
double balance_rhs(const GridCase& grid, int t, const ScenarioRealization* err) {
  double rhs = sum_forecast_load(grid, t) - sum_forecast_wind(grid, t);
  if (err) {
    for (int d = 0; d < grid.n_load(); ++d) rhs += err->load_err(d, t - 1);
    for (int w = 0; w < grid.n_wind(); ++w) rhs -= err->wind_err(w, t - 1);
  }
  return rhs;
}

// Balance and line rows for one (t, k) at forecast-plus-error injections.
// Shared by the deterministic block (err == nullptr) and scenario blocks.
void add_supply_rows(LinearProgram& lp, const GridCase& grid, const PtdfTables& ptdf,
                     const UcLayout& lay, int t, int k, const ScenarioRealization* err,
                     const std::string& prefix, std::vector<int>& row_scenario, int scenario) {
  const int ng = grid.n_gen();
  std::vector<int> gidx(ng);
  std::vector<double> ones(ng, 1.0);
  for (int i = 0; i < ng; ++i) gidx[i] = lay.g(t, k, i);

  lp.add_row(gidx, ones, RowSense::GE, balance_rhs(grid, t, err), prefix + tk("balance", t, k));
  row_scenario.push_back(scenario);

  for (int l = 0; l < grid.n_line(); ++l) {
    std::vector<int> idx;
    std::vector<double> coef;
    for (int i = 0; i < ng; ++i) {
      const double h = ptdf.h_gen(l, i);
      if (h == 0.0) continue;
      idx.push_back(gidx[i]);
      coef.push_back(h);
    }
    const double shift = line_shift(grid, ptdf, l, t, err);
    const Line& line = grid.lines[l];
    lp.add_row(idx, coef, RowSense::LE, line.capacity - shift, prefix + tkl("line", t, k, l));
    row_scenario.push_back(scenario);
    lp.add_row(idx, coef, RowSense::GE, line.flow_lo() - shift, prefix + tkl("line", t, k, l));
    row_scenario.push_back(scenario);
  }
}

struct BuiltModel {
  MixedIntegerProgram mip;
  std::vector<int> row_scenario;
};

BuiltModel build_model(const GridCase& grid, const ScenarioSet* scenarios) {
  grid.validate();
  const PtdfTables ptdf = build_ptdf(grid);
  const UcLayout lay = UcLayout::of(grid);
  const int ng = grid.n_gen(), nt = grid.n_t(), nk = grid.n_contingency();

  BuiltModel out;
  LinearProgram& lp = out.mip.relaxation;
  lp.objective.assign(lay.num_vars(), 0.0);
  lp.lower.assign(lay.num_vars(), 0.0);
  lp.upper.assign(lay.num_vars(), 0.0);

  for (int t = 1; t <= nt; ++t) {
    for (int i = 0; i < ng; ++i) {
      const Generator& gen = grid.generators[i];
      lp.lower[lay.z(t, i)] = 0.0;
      lp.upper[lay.z(t, i)] = 1.0;
      lp.objective[lay.z(t, i)] = gen.cost_no_load;
      if (lay.logic) {
        lp.upper[lay.u(t, i)] = 1.0;
        lp.objective[lay.u(t, i)] = gen.cost_startup;
        lp.upper[lay.v(t, i)] = 1.0;
        lp.objective[lay.v(t, i)] = gen.cost_shutdown;
      }
      for (int k = 0; k <= nk; ++k) {
        lp.upper[lay.g(t, k, i)] = gen.g_max;
        lp.objective[lay.g(t, k, i)] = grid.contingency_weight(k) * gen.cost_energy;
      }
      if (lay.reserve) {
        lp.upper[lay.r(t, i)] = gen.g_max;
        lp.objective[lay.r(t, i)] = gen.cost_reserve;
      }
    }
  }
  out.mip.binary_mask = lay.binary_mask();

  for (int t = 1; t <= nt; ++t) {
    for (int k = 0; k <= nk; ++k) {
      add_supply_rows(lp, grid, ptdf, lay, t, k, nullptr, "", out.row_scenario, -1);

      // Ramp limits for available units; an infinite limit produces no row.
      // Unavailable units are pinned to zero by the contingency link, and a
      // masked ramp row at t = 1 would contradict a positive initial output.
      for (int i = 0; i < ng; ++i) {
        const Generator& gen = grid.generators[i];
        if (grid.availability(k, i) == 0) continue;
        const double hi = gen.ramp_hi;
        const double lo = gen.ramp_lo;
        const double prev_const = t == 1 ? gen.initial_output : 0.0;
        std::vector<int> idx{lay.g(t, k, i)};
        std::vector<double> coef{1.0};
        if (t > 1) {
          idx.push_back(lay.g(t - 1, k, i));
          coef.push_back(-1.0);
        }
        if (is_finite_bound(hi)) {
          lp.add_row(idx, coef, RowSense::LE, hi + prev_const, tk("ramp", t, k));
          out.row_scenario.push_back(-1);
        }
        if (is_finite_bound(lo)) {
          lp.add_row(idx, coef, RowSense::GE, lo + prev_const, tk("ramp", t, k));
          out.row_scenario.push_back(-1);
        }
      }

      // Contingency-dispatch link; at k = 0 it reduces to the sign of r,
      // which the variable bounds already carry.
      if (k >= 1) {
        for (int i = 0; i < ng; ++i) {
          const double a = grid.availability(k, i);
          if (lay.reserve) {
            lp.add_row({lay.g(t, k, i), lay.g(t, 0, i), lay.r(t, i)}, {1.0, -a, a}, RowSense::GE,
                       0.0, tk("contingency-link", t, k));
            out.row_scenario.push_back(-1);
            lp.add_row({lay.g(t, k, i), lay.g(t, 0, i), lay.r(t, i)}, {1.0, -a, -a}, RowSense::LE,
                       0.0, tk("contingency-link", t, k));
            out.row_scenario.push_back(-1);
          } else {
            lp.add_row({lay.g(t, k, i), lay.g(t, 0, i)}, {1.0, -a}, RowSense::EQ, 0.0,
                       tk("contingency-link", t, k));
            out.row_scenario.push_back(-1);
          }
        }
      }
    }

    for (int i = 0; i < ng; ++i) {
      const Generator& gen = grid.generators[i];
      lp.add_row({lay.g(t, 0, i), lay.z(t, i)}, {1.0, -gen.g_max}, RowSense::LE, 0.0,
                 "gencap(" + std::to_string(t) + ")");
      out.row_scenario.push_back(-1);
      lp.add_row({lay.g(t, 0, i), lay.z(t, i)}, {1.0, -gen.g_min}, RowSense::GE, 0.0,
                 "gencap(" + std::to_string(t) + ")");
      out.row_scenario.push_back(-1);
      if (lay.reserve) {
        lp.add_row({lay.g(t, 0, i), lay.r(t, i), lay.z(t, i)}, {1.0, -1.0, -gen.g_min},
                   RowSense::GE, 0.0, "resgencap(" + std::to_string(t) + ")");
        out.row_scenario.push_back(-1);
        lp.add_row({lay.g(t, 0, i), lay.r(t, i), lay.z(t, i)}, {1.0, 1.0, -gen.g_max},
                   RowSense::LE, 0.0, "resgencap(" + std::to_string(t) + ")");
        out.row_scenario.push_back(-1);
      }
    }

    if (lay.logic) {
      for (int i = 0; i < ng; ++i) {
        const Generator& gen = grid.generators[i];
        if (t == 1) {
          lp.add_row({lay.z(1, i), lay.u(1, i)}, {-1.0, 1.0}, RowSense::GE,
                     -static_cast<double>(gen.initial_on), "startup(1)");
          out.row_scenario.push_back(-1);
          lp.add_row({lay.z(1, i), lay.v(1, i)}, {1.0, 1.0}, RowSense::GE,
                     static_cast<double>(gen.initial_on), "shutdown(1)");
          out.row_scenario.push_back(-1);
        } else {
          lp.add_row({lay.z(t - 1, i), lay.z(t, i), lay.u(t, i)}, {1.0, -1.0, 1.0}, RowSense::GE,
                     0.0, "startup(" + std::to_string(t) + ")");
          out.row_scenario.push_back(-1);
          lp.add_row({lay.z(t, i), lay.z(t - 1, i), lay.v(t, i)}, {1.0, -1.0, 1.0}, RowSense::GE,
                     0.0, "shutdown(" + std::to_string(t) + ")");
          out.row_scenario.push_back(-1);
        }
      }
    }
  }

  if (lay.logic) {
    // Minimum on/off propagation, defined from the second step on.
    for (int i = 0; i < ng; ++i) {
      const Generator& gen = grid.generators[i];
      for (int t = 2; t <= nt; ++t) {
        const int on_end = std::min(t + gen.min_on - 1, nt);
        for (int io = t + 1; io <= on_end; ++io) {
          lp.add_row({lay.z(t, i), lay.z(t - 1, i), lay.z(io, i)}, {1.0, -1.0, -1.0}, RowSense::LE,
                     0.0,
                     "minon(" + std::to_string(i) + "," + std::to_string(t) + "," +
                         std::to_string(io) + ")");
          out.row_scenario.push_back(-1);
        }
        const int off_end = std::min(t + gen.min_off - 1, nt);
        for (int io = t + 1; io <= off_end; ++io) {
          lp.add_row({lay.z(t - 1, i), lay.z(t, i), lay.z(io, i)}, {1.0, -1.0, 1.0}, RowSense::LE,
                     1.0,
                     "minoff(" + std::to_string(i) + "," + std::to_string(t) + "," +
                         std::to_string(io) + ")");
          out.row_scenario.push_back(-1);
        }
      }
    }
  }

  if (scenarios) {
    for (int s = 0; s < scenarios->size(); ++s) {
      const ScenarioRealization& err = scenarios->draws[s];
      if (err.wind_err.rows() != grid.n_wind() || err.wind_err.cols() != nt ||
          err.load_err.rows() != grid.n_load() || err.load_err.cols() != nt)
        throw DimensionMismatch("scenario realization shape does not match case");
      const std::string prefix = "scen" + std::to_string(s + 1) + ":";
      for (int t = 1; t <= nt; ++t)
        for (int k = 0; k <= nk; ++k)
          add_supply_rows(lp, grid, ptdf, lay, t, k, &err, prefix, out.row_scenario, s);
    }
  }
  return out;
}

}  // namespace

UcLayout UcLayout::of(const GridCase& grid) {
  UcLayout lay;
  lay.n_g = grid.n_gen();
  lay.n_k = grid.n_contingency();
  lay.n_t = grid.n_t();
  lay.reserve = grid.reserve_enabled;
  lay.logic = grid.commitment_logic_enabled;
  return lay;
}

std::vector<int> UcLayout::binary_mask() const {
  std::vector<int> mask;
  const int commit_vars = n_t * n_g * (logic ? 3 : 1);
  mask.reserve(commit_vars);
  for (int j = 0; j < commit_vars; ++j) mask.push_back(j);
  return mask;
}

MixedIntegerProgram build_dscuc(const GridCase& grid) {
  return build_model(grid, nullptr).mip;
}

ScucScenarioProblem::ScucScenarioProblem(GridCase grid, ScenarioSet scenarios,
                                         MilpOptions options, ObjectiveEquality eq)
    : grid_(std::move(grid)), scenarios_(std::move(scenarios)), layout_(UcLayout::of(grid_)) {
  BuiltModel built = build_model(grid_, &scenarios_);
  inner_ = std::make_unique<MilpScenarioOracle>(std::move(built.mip), std::move(built.row_scenario),
                                                scenarios_.size(), std::move(options), eq);
}

ScucScenarioProblem build_sscuc(GridCase grid, ScenarioSet scenarios, MilpOptions options,
                                ObjectiveEquality eq) {
  return ScucScenarioProblem(std::move(grid), std::move(scenarios), std::move(options), eq);
}

UcSolution ScucScenarioProblem::extract(const OracleSolveResult& res) const {
  UcSolution sol;
  sol.status = res.status;
  sol.node_count = res.node_count;
  if (res.status == MilpStatus::Infeasible) return sol;
  if (static_cast<int>(res.primal.size()) != layout_.num_vars())
    throw DimensionMismatch("solution vector does not match layout");
  sol.objective = res.objective;
  sol.primal = res.primal;
  const UcLayout& L = layout_;
  sol.z.assign(L.n_t, std::vector<int>(L.n_g, 0));
  if (L.logic) {
    sol.u.assign(L.n_t, std::vector<int>(L.n_g, 0));
    sol.v.assign(L.n_t, std::vector<int>(L.n_g, 0));
  }
  sol.g.assign(L.n_t, std::vector<std::vector<double>>(L.n_k + 1, std::vector<double>(L.n_g)));
  if (L.reserve) sol.r.assign(L.n_t, std::vector<double>(L.n_g, 0.0));
  for (int t = 1; t <= L.n_t; ++t)
    for (int i = 0; i < L.n_g; ++i) {
      sol.z[t - 1][i] = static_cast<int>(std::lround(res.primal[L.z(t, i)]));
      if (L.logic) {
        sol.u[t - 1][i] = static_cast<int>(std::lround(res.primal[L.u(t, i)]));
        sol.v[t - 1][i] = static_cast<int>(std::lround(res.primal[L.v(t, i)]));
      }
      for (int k = 0; k <= L.n_k; ++k) sol.g[t - 1][k][i] = res.primal[L.g(t, k, i)];
      if (L.reserve) sol.r[t - 1][i] = res.primal[L.r(t, i)];
    }
  return sol;
}

ScenarioLp fix_first_stage(const GridCase& grid, const ScenarioSet& scenarios,
                           const std::vector<std::vector<int>>& z,
                           const std::vector<std::vector<int>>& u,
                           const std::vector<std::vector<int>>& v) {
  grid.validate();
  const UcLayout lay = UcLayout::of(grid);
  const int nt = lay.n_t, ng = lay.n_g;
  auto shape_ok = [&](const std::vector<std::vector<int>>& m) {
    if (static_cast<int>(m.size()) != nt) return false;
    for (const auto& row : m)
      if (static_cast<int>(row.size()) != ng) return false;
    return true;
  };
  if (!shape_ok(z)) throw DimensionMismatch("z schedule shape mismatch");
  if (lay.logic && (!shape_ok(u) || !shape_ok(v)))
    throw DimensionMismatch("u/v schedule shape mismatch");
  auto binary = [](int b) { return b == 0 || b == 1; };
  for (int t = 0; t < nt; ++t)
    for (int i = 0; i < ng; ++i) {
      if (!binary(z[t][i]) || (lay.logic && (!binary(u[t][i]) || !binary(v[t][i]))))
        throw FirstStageInfeasible("schedule entries must be binary");
    }
  if (lay.logic) {
    for (int i = 0; i < ng; ++i) {
      const Generator& gen = grid.generators[i];
      for (int t = 1; t <= nt; ++t) {
        const int zp = t == 1 ? gen.initial_on : z[t - 2][i];
        if (zp - z[t - 1][i] + u[t - 1][i] < 0)
          throw FirstStageInfeasible("startup logic violated");
        if (z[t - 1][i] - zp + v[t - 1][i] < 0)
          throw FirstStageInfeasible("shutdown logic violated");
      }
      for (int t = 2; t <= nt; ++t) {
        for (int io = t + 1; io <= std::min(t + gen.min_on - 1, nt); ++io)
          if (z[t - 1][i] - z[t - 2][i] > z[io - 1][i])
            throw FirstStageInfeasible("minimum-on time violated");
        for (int io = t + 1; io <= std::min(t + gen.min_off - 1, nt); ++io)
          if (z[t - 2][i] - z[t - 1][i] > 1 - z[io - 1][i])
            throw FirstStageInfeasible("minimum-off time violated");
      }
    }
  }

  BuiltModel built = build_model(grid, &scenarios);
  ScenarioLp family;
  family.lp = std::move(built.mip.relaxation);
  family.row_scenario = std::move(built.row_scenario);
  family.n_scenarios = scenarios.size();
  for (int t = 1; t <= nt; ++t)
    for (int i = 0; i < ng; ++i) {
      family.lp.lower[lay.z(t, i)] = family.lp.upper[lay.z(t, i)] = z[t - 1][i];
      if (lay.logic) {
        family.lp.lower[lay.u(t, i)] = family.lp.upper[lay.u(t, i)] = u[t - 1][i];
        family.lp.lower[lay.v(t, i)] = family.lp.upper[lay.v(t, i)] = v[t - 1][i];
      }
    }
  return family;
}

ViolationEvaluator::ViolationEvaluator(const GridCase& grid, const UcSolution& solution,
                                       double tol_mw)
    : grid_(grid), ptdf_(build_ptdf(grid)), tol_(tol_mw) {
  n_t_ = grid.n_t();
  n_k_ = grid.n_contingency();
  n_l_ = grid.n_line();
  const int ng = grid.n_gen();
  if (static_cast<int>(solution.g.size()) != n_t_)
    throw DimensionMismatch("solution horizon does not match case");
  balance_base_.assign(n_t_ * (n_k_ + 1), 0.0);
  flow_base_.assign(n_t_ * (n_k_ + 1), std::vector<double>(n_l_, 0.0));
  for (int t = 1; t <= n_t_; ++t) {
    const auto& gk = solution.g[t - 1];
    if (static_cast<int>(gk.size()) != n_k_ + 1 ||
        (n_k_ + 1 > 0 && static_cast<int>(gk[0].size()) != ng))
      throw DimensionMismatch("solution dispatch shape does not match case");
    for (int k = 0; k <= n_k_; ++k) {
      const int cell = (t - 1) * (n_k_ + 1) + k;
      double total = 0.0;
      for (int i = 0; i < ng; ++i) total += gk[k][i];
      balance_base_[cell] = total + sum_forecast_wind(grid, t) - sum_forecast_load(grid, t);
      for (int l = 0; l < n_l_; ++l) {
        double f = line_shift(grid, ptdf_, l, t, nullptr);
        for (int i = 0; i < ng; ++i) f += ptdf_.h_gen(l, i) * gk[k][i];
        flow_base_[cell][l] = f;
      }
    }
  }
  flow_hi_.resize(n_l_);
  flow_lo_.resize(n_l_);
  for (int l = 0; l < n_l_; ++l) {
    flow_hi_[l] = grid.lines[l].capacity;
    flow_lo_[l] = grid.lines[l].flow_lo();
  }
}

ViolationReport ViolationEvaluator::check(const ScenarioRealization& realization) const {
  const int nw = grid_.n_wind(), nd = grid_.n_load();
  if (realization.wind_err.rows() != nw || realization.wind_err.cols() != n_t_ ||
      realization.load_err.rows() != nd || realization.load_err.cols() != n_t_)
    throw DimensionMismatch("realization shape does not match case");
  ViolationReport rep;
  for (int t = 1; t <= n_t_; ++t) {
    double err_net = 0.0;  // added wind minus added load
    for (int w = 0; w < nw; ++w) err_net += realization.wind_err(w, t - 1);
    for (int d = 0; d < nd; ++d) err_net -= realization.load_err(d, t - 1);
    for (int k = 0; k <= n_k_; ++k) {
      const int cell = (t - 1) * (n_k_ + 1) + k;
      const double bal = balance_base_[cell] + err_net;
      if (bal < -tol_) {
        rep.balance_violated = true;
        rep.worst_balance = std::max(rep.worst_balance, -bal);
      }
      for (int l = 0; l < n_l_; ++l) {
        double f = flow_base_[cell][l];
        for (int w = 0; w < nw; ++w) f += ptdf_.h_wind(l, w) * realization.wind_err(w, t - 1);
        for (int d = 0; d < nd; ++d) f -= ptdf_.h_load(l, d) * realization.load_err(d, t - 1);
        const double over = std::max(f - flow_hi_[l], flow_lo_[l] - f);
        if (over > tol_) {
          rep.line_violated = true;
          rep.worst_line = std::max(rep.worst_line, over);
        }
      }
    }
  }
  rep.violated = rep.balance_violated || rep.line_violated;
  return rep;
}

ViolationReport check_solution_feasible(const GridCase& grid, const UcSolution& solution,
                                        const ScenarioRealization& realization, double tol_mw) {
  return ViolationEvaluator(grid, solution, tol_mw).check(realization);
}

}  // namespace scenuc
