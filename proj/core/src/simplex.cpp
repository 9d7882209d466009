#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "scenuc/dense.hpp"
#include "scenuc/lp.hpp"

namespace scenuc {

double Constraint::norm2() const {
  double s = 0.0;
  for (double v : coef) s += v * v;
  return std::sqrt(s);
}

int LinearProgram::add_variable(double lo, double up, double cost) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(up);
  return num_vars() - 1;
}

int LinearProgram::add_row(Constraint c) {
  rows.push_back(std::move(c));
  return num_rows() - 1;
}

int LinearProgram::add_row(std::vector<int> idx, std::vector<double> coef, RowSense sense,
                           double rhs, std::string group) {
  Constraint c;
  c.idx = std::move(idx);
  c.coef = std::move(coef);
  c.sense = sense;
  c.rhs = rhs;
  c.group = std::move(group);
  return add_row(std::move(c));
}

double LinearProgram::row_activity(int r, const std::vector<double>& x) const {
  const Constraint& c = rows[r];
  double a = 0.0;
  for (int k = 0; k < c.nnz(); ++k) a += c.coef[k] * x[c.idx[k]];
  return a;
}

double LinearProgram::objective_value(const std::vector<double>& x) const {
  double v = 0.0;
  for (int j = 0; j < num_vars(); ++j) v += objective[j] * x[j];
  return v;
}

double LinearProgram::row_violation(int r, const std::vector<double>& x) const {
  const double a = row_activity(r, x);
  switch (rows[r].sense) {
    case RowSense::LE:
      return a - rows[r].rhs;
    case RowSense::GE:
      return rows[r].rhs - a;
    case RowSense::EQ:
      return std::fabs(a - rows[r].rhs);
  }
  return 0.0;
}

double LinearProgram::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (int r = 0; r < num_rows(); ++r) worst = std::max(worst, row_violation(r, x));
  for (int j = 0; j < num_vars(); ++j) {
    worst = std::max(worst, lower[j] - x[j]);
    worst = std::max(worst, x[j] - upper[j]);
  }
  return worst;
}

void LinearProgram::validate() const {
  const size_t n = objective.size();
  if (lower.size() != n || upper.size() != n)
    throw MalformedProblem("bound vectors do not match variable count");
  for (size_t j = 0; j < n; ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || std::isnan(objective[j]))
      throw MalformedProblem("NaN in variable data");
    if (lower[j] > upper[j]) throw MalformedProblem("lower bound above upper bound");
  }
  for (const Constraint& c : rows) {
    if (c.idx.size() != c.coef.size()) throw MalformedProblem("row index/coef size mismatch");
    for (int k = 0; k < c.nnz(); ++k) {
      if (c.idx[k] < 0 || c.idx[k] >= static_cast<int>(n))
        throw MalformedProblem("row references undeclared variable");
      if (std::isnan(c.coef[k])) throw MalformedProblem("NaN row coefficient");
    }
    if (std::isnan(c.rhs)) throw MalformedProblem("NaN rhs");
  }
}

double LpSolution::dual_objective(const LinearProgram& lp) const {
  double v = 0.0;
  for (int r = 0; r < lp.num_rows(); ++r) v += duals[r] * lp.rows[r].rhs;
  for (int j = 0; j < lp.num_vars(); ++j) v += reduced_costs[j] * primal[j];
  return v;
}

namespace {

enum VarStat : signed char { kBasic = 0, kAtLower = 1, kAtUpper = 2, kFree = 3 };

enum class StepOutcome { Pivot, BoundFlip, Unbounded, Stuck };

struct RatioResult {
  StepOutcome outcome = StepOutcome::Stuck;
  double step = 0.0;
  int leave_row = -1;
  signed char leave_stat = kAtLower;  // bound the leaving variable lands on
};

// Bounded-variable primal simplex working state. Variables 0..n-1 are the
// structural columns, n..n+m-1 the row slacks (one per declared row, so each
// row reports exactly one dual multiplier).
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const ToleranceConfig& tol) : lp_(lp), tol_(tol) {
    n_ = lp.num_vars();
    m_ = lp.num_rows();
    total_ = n_ + m_;
    lo_.assign(total_, 0.0);
    up_.assign(total_, 0.0);
    cost_.assign(total_, 0.0);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lp.lower[j];
      up_[j] = lp.upper[j];
      cost_[j] = lp.objective[j];
    }
    rhs_.resize(m_);
    col_.assign(n_, {});
    for (int r = 0; r < m_; ++r) {
      const Constraint& c = lp.rows[r];
      rhs_[r] = c.rhs;
      for (int k = 0; k < c.nnz(); ++k) col_[c.idx[k]].push_back({r, c.coef[k]});
      const int s = n_ + r;
      switch (c.sense) {
        case RowSense::LE:
          lo_[s] = 0.0;
          up_[s] = kInf;
          break;
        case RowSense::GE:
          lo_[s] = -kInf;
          up_[s] = 0.0;
          break;
        case RowSense::EQ:
          lo_[s] = 0.0;
          up_[s] = 0.0;
          break;
      }
    }
  }

  LpSolution run(bool bland_from_start) {
    reset(bland_from_start);
    LpSolution out;
    bool phase_one = true;
    while (true) {
      if (++iterations_ > tol_.max_iterations) throw NumericalFailure("iteration limit");
      if (phase_one && !has_violations()) {
        phase_one = false;
        stall_ = 0;
        best_metric_ = kInf;
      }
      price(phase_one);
      const int q = select_entering();
      if (q < 0) {
        if (phase_one) {
          out = finish_infeasible();
        } else {
          out = finish_optimal();
        }
        return out;
      }
      const signed char dir = entering_dir_;
      ftran(q);
      RatioResult rr = phase_one ? ratio_phase1(q, dir) : ratio_phase2(q, dir);
      if (rr.outcome == StepOutcome::Unbounded) {
        out = finish_unbounded(q, dir);
        return out;
      }
      if (rr.outcome == StepOutcome::Stuck) throw NumericalFailure("no admissible pivot");
      apply_step(q, dir, rr);
      track_progress(phase_one);
      if (pivots_since_refactor_ > 256) refactor();
    }
  }

 private:
  void reset(bool bland) {
    bland_ = bland;
    iterations_ = 0;
    pivots_since_refactor_ = 0;
    stall_ = 0;
    best_metric_ = kInf;
    stat_.assign(total_, kAtLower);
    val_.assign(total_, 0.0);
    basic_.resize(m_);
    for (int j = 0; j < n_; ++j) {
      if (is_finite_bound(lo_[j])) {
        stat_[j] = kAtLower;
        val_[j] = lo_[j];
      } else if (is_finite_bound(up_[j])) {
        stat_[j] = kAtUpper;
        val_[j] = up_[j];
      } else {
        stat_[j] = kFree;
        val_[j] = 0.0;
      }
    }
    for (int r = 0; r < m_; ++r) {
      basic_[r] = n_ + r;
      stat_[n_ + r] = kBasic;
    }
    binv_t_ = DenseMatrix::identity(m_);
    recompute_basics();
  }

  // binv_t_(a, b) stores Binv(b, a): row a of binv_t_ is column a of Binv.

  void recompute_basics() {
    std::vector<double> r = rhs_;
    for (int j = 0; j < total_; ++j) {
      if (stat_[j] == kBasic || val_[j] == 0.0) continue;
      if (j < n_) {
        for (const auto& [row, a] : col_[j]) r[row] -= a * val_[j];
      } else {
        r[j - n_] -= val_[j];
      }
    }
    std::vector<double> xb(m_, 0.0);
    for (int j = 0; j < m_; ++j) {
      const double rj = r[j];
      if (rj == 0.0) continue;
      const double* mr = binv_t_.row_ptr(j);
      for (int i = 0; i < m_; ++i) xb[i] += mr[i] * rj;
    }
    for (int i = 0; i < m_; ++i) val_[basic_[i]] = xb[i];
  }

  bool has_violations() const {
    const double ft = tol_.feasibility;
    for (int i = 0; i < m_; ++i) {
      const double v = val_[basic_[i]];
      if (v < lo_[basic_[i]] - ft || v > up_[basic_[i]] + ft) return true;
    }
    return false;
  }

  double infeasibility_sum() const {
    const double ft = tol_.feasibility;
    double f = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double v = val_[basic_[i]];
      const double l = lo_[basic_[i]], u = up_[basic_[i]];
      if (v < l - ft) f += l - v;
      if (v > u + ft) f += v - u;
    }
    return f;
  }

  // y = cB' Binv for the active phase costs; then reduced costs of nonbasics.
  void price(bool phase_one) {
    const double ft = tol_.feasibility;
    y_.assign(m_, 0.0);
    cb_rows_.clear();
    for (int i = 0; i < m_; ++i) {
      double cb;
      if (phase_one) {
        const double v = val_[basic_[i]];
        const double l = lo_[basic_[i]], u = up_[basic_[i]];
        cb = (v < l - ft) ? -1.0 : (v > u + ft) ? 1.0 : 0.0;
      } else {
        cb = cost_[basic_[i]];
      }
      if (cb != 0.0) cb_rows_.push_back({i, cb});
    }
    if (!cb_rows_.empty()) {
      for (int j = 0; j < m_; ++j) {
        const double* mr = binv_t_.row_ptr(j);
        double s = 0.0;
        for (const auto& [i, cb] : cb_rows_) s += cb * mr[i];
        y_[j] = s;
      }
    }
    dj_.assign(total_, 0.0);
    for (int j = 0; j < total_; ++j) {
      if (stat_[j] == kBasic) continue;
      const double cj = phase_one ? 0.0 : cost_[j];
      if (j < n_) {
        double s = 0.0;
        for (const auto& [row, a] : col_[j]) s += y_[row] * a;
        dj_[j] = cj - s;
      } else {
        dj_[j] = cj - y_[j - n_];
      }
    }
  }

  // Entering variable: Dantzig (largest usable reduced cost) with lowest
  // index as tie-break; pure Bland when in anti-cycling mode. Fixed
  // variables never enter.
  int select_entering() {
    const double ot = tol_.optimality;
    int best = -1;
    double best_score = ot;
    signed char best_dir = 1;
    for (int j = 0; j < total_; ++j) {
      const signed char st = stat_[j];
      if (st == kBasic) continue;
      if (lo_[j] == up_[j]) continue;
      double score = 0.0;
      signed char dir = 0;
      if (st == kAtLower && dj_[j] < -ot) {
        score = -dj_[j];
        dir = 1;
      } else if (st == kAtUpper && dj_[j] > ot) {
        score = dj_[j];
        dir = -1;
      } else if (st == kFree && std::fabs(dj_[j]) > ot) {
        score = std::fabs(dj_[j]);
        dir = dj_[j] < 0 ? 1 : -1;
      } else {
        continue;
      }
      if (bland_) {
        entering_dir_ = dir;
        return j;
      }
      if (score > best_score) {
        best_score = score;
        best = j;
        best_dir = dir;
      }
    }
    entering_dir_ = best_dir;
    return best;
  }

  void ftran(int q) {
    w_.assign(m_, 0.0);
    if (q < n_) {
      for (const auto& [row, a] : col_[q]) {
        const double* mr = binv_t_.row_ptr(row);
        for (int i = 0; i < m_; ++i) w_[i] += a * mr[i];
      }
    } else {
      const double* mr = binv_t_.row_ptr(q - n_);
      std::copy(mr, mr + m_, w_.begin());
    }
  }

  // Hard blocks keep every in-bounds basic inside its bounds; the entering
  // variable's own opposite bound yields a bound flip.
  struct HardBlock {
    double t = kInf;
    int row = -1;  // -1: entering's own bound
    double rate = 0.0;
    signed char land = kAtLower;
  };

  // Quasi-Harris: inside a small tie window prefer the larger |rate| pivot,
  // then the lower variable index, for stability and determinism.
  void consider_hard(HardBlock& hb, double t, int row, double rate, signed char land) const {
    t = std::max(t, 0.0);
    const bool strictly_better = t < hb.t - 1e-12;
    const bool tie = !strictly_better && t <= hb.t + 1e-12;
    const bool tie_preferred =
        tie && (std::fabs(rate) > std::fabs(hb.rate) ||
                (std::fabs(rate) == std::fabs(hb.rate) && row >= 0 && hb.row >= 0 &&
                 basic_[row] < basic_[hb.row]));
    if (strictly_better || tie_preferred) {
      hb.t = std::min(t, hb.t);
      hb.row = row;
      hb.rate = rate;
      hb.land = land;
    }
  }

  RatioResult ratio_phase2(int q, signed char dir) {
    static constexpr double kRateDrop = 1e-10;
    HardBlock hb;
    if (is_finite_bound(lo_[q]) && is_finite_bound(up_[q]))
      consider_hard(hb, up_[q] - lo_[q], -1, 1.0, dir > 0 ? kAtUpper : kAtLower);
    for (int i = 0; i < m_; ++i) {
      const double rate = -static_cast<double>(dir) * w_[i];
      if (std::fabs(rate) <= kRateDrop) continue;
      const int b = basic_[i];
      if (rate < 0 && is_finite_bound(lo_[b]))
        consider_hard(hb, (val_[b] - lo_[b]) / (-rate), i, rate, kAtLower);
      if (rate > 0 && is_finite_bound(up_[b]))
        consider_hard(hb, (up_[b] - val_[b]) / rate, i, rate, kAtUpper);
    }
    RatioResult rr;
    if (hb.t >= kInf) {
      rr.outcome = StepOutcome::Unbounded;
      return rr;
    }
    rr.step = hb.t;
    if (hb.row < 0) {
      rr.outcome = StepOutcome::BoundFlip;
    } else {
      rr.outcome = StepOutcome::Pivot;
      rr.leave_row = hb.row;
      rr.leave_stat = hb.land;
    }
    return rr;
  }

  // Phase-1 long step: out-of-bounds basics moving toward their violated
  // bound are soft breakpoints (the descent continues while the directional
  // slope stays negative); all other blocks are hard.
  RatioResult ratio_phase1(int q, signed char dir) {
    static constexpr double kRateDrop = 1e-10;
    const double ft = tol_.feasibility;
    HardBlock hb;
    if (is_finite_bound(lo_[q]) && is_finite_bound(up_[q]))
      consider_hard(hb, up_[q] - lo_[q], -1, 1.0, dir > 0 ? kAtUpper : kAtLower);

    soft_.clear();
    for (int i = 0; i < m_; ++i) {
      const double rate = -static_cast<double>(dir) * w_[i];
      if (std::fabs(rate) <= kRateDrop) continue;
      const int b = basic_[i];
      const double v = val_[b], l = lo_[b], u = up_[b];
      if (v < l - ft) {
        if (rate > 0) {
          const double tcross = (l - v) / rate;
          const double tfar = is_finite_bound(u) ? (u - v) / rate : kInf;
          soft_.push_back({tcross, rate, i, tfar, kAtLower});
        }
      } else if (v > u + ft) {
        if (rate < 0) {
          const double tcross = (v - u) / (-rate);
          const double tfar = is_finite_bound(l) ? (v - l) / (-rate) : kInf;
          soft_.push_back({tcross, -rate, i, tfar, kAtUpper});
        }
      } else {
        if (rate < 0 && is_finite_bound(l)) consider_hard(hb, (v - l) / (-rate), i, rate, kAtLower);
        if (rate > 0 && is_finite_bound(u)) consider_hard(hb, (u - v) / rate, i, rate, kAtUpper);
      }
    }
    std::sort(soft_.begin(), soft_.end(), [](const Soft& a, const Soft& b) {
      if (a.t != b.t) return a.t < b.t;
      return a.row < b.row;
    });

    double slope = dj_[q] * static_cast<double>(dir);  // negative on entry
    RatioResult rr;
    for (const Soft& s : soft_) {
      if (s.t >= hb.t) break;
      slope += s.rate_abs;
      if (slope >= -tol_.optimality) {
        rr.outcome = StepOutcome::Pivot;
        rr.step = s.t;
        rr.leave_row = s.row;
        rr.leave_stat = s.land;
        return rr;
      }
      // Past its violated bound the row is in-bounds and its far bound
      // becomes a hard block.
      if (s.far_t < hb.t) {
        hb.t = s.far_t;
        hb.row = s.row;
        hb.rate = s.rate_abs;
        hb.land = s.land == kAtLower ? kAtUpper : kAtLower;
      }
    }
    if (hb.t >= kInf) {
      // A negative slope with no block cannot happen for a bounded-below
      // infeasibility sum; treat as numerical breakdown.
      rr.outcome = StepOutcome::Stuck;
      return rr;
    }
    rr.step = hb.t;
    if (hb.row < 0) {
      rr.outcome = StepOutcome::BoundFlip;
    } else {
      rr.outcome = StepOutcome::Pivot;
      rr.leave_row = hb.row;
      rr.leave_stat = hb.land;
    }
    return rr;
  }

  void apply_step(int q, signed char dir, const RatioResult& rr) {
    const double t = rr.step;
    if (t != 0.0) {
      for (int i = 0; i < m_; ++i) {
        const double rate = -static_cast<double>(dir) * w_[i];
        if (rate != 0.0) val_[basic_[i]] += rate * t;
      }
      val_[q] += static_cast<double>(dir) * t;
    }
    if (rr.outcome == StepOutcome::BoundFlip) {
      stat_[q] = dir > 0 ? kAtUpper : kAtLower;
      val_[q] = dir > 0 ? up_[q] : lo_[q];
      return;
    }
    const int r = rr.leave_row;
    const int leave = basic_[r];
    const double alpha = w_[r];
    if (std::fabs(alpha) < tol_.pivot) throw NumericalFailure("pivot element too small");
    val_[leave] = rr.leave_stat == kAtLower ? lo_[leave] : up_[leave];
    stat_[leave] = rr.leave_stat;
    basic_[r] = q;
    stat_[q] = kBasic;
    // Binv <- E^{-1} Binv, operating on the transpose storage.
    const double inv_alpha = 1.0 / alpha;
    for (int j = 0; j < m_; ++j) {
      double* mr = binv_t_.row_ptr(j);
      const double piv = mr[r];
      if (piv == 0.0) continue;
      const double scaled = piv * inv_alpha;
      for (int i = 0; i < m_; ++i) mr[i] -= scaled * w_[i];
      mr[r] = scaled;
    }
    ++pivots_since_refactor_;
  }

  void track_progress(bool phase_one) {
    const double metric = phase_one ? infeasibility_sum() : current_objective();
    if (metric < best_metric_ - 1e-12 * (1.0 + std::fabs(best_metric_))) {
      best_metric_ = metric;
      stall_ = 0;
    } else if (++stall_ > 2 * (m_ + n_) + 20) {
      bland_ = true;
    }
  }

  double current_objective() const {
    double v = 0.0;
    for (int j = 0; j < n_; ++j) v += cost_[j] * val_[j];
    return v;
  }

  void refactor() {
    DenseMatrix b(m_, m_);
    for (int i = 0; i < m_; ++i) {
      const int j = basic_[i];
      if (j < n_) {
        for (const auto& [row, a] : col_[j]) b(row, i) = a;
      } else {
        b(j - n_, i) = 1.0;
      }
    }
    DenseMatrix inv;
    if (!dense_invert(std::move(b), inv)) throw NumericalFailure("singular basis at refactor");
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) binv_t_(j, i) = inv(i, j);
    pivots_since_refactor_ = 0;
    recompute_basics();
  }

  LpSolution finish_optimal() {
    // Verify the claimed optimum against the original row data. Drift beyond
    // the feasibility tolerance forces a refactorization; after that a small
    // slack is tolerated before declaring numerical failure.
    for (int attempt = 0;; ++attempt) {
      std::vector<double> x(val_.begin(), val_.begin() + n_);
      const double worst = lp_.max_violation(x);
      if (worst <= (attempt == 0 ? 1.0 : 10.0) * tol_.feasibility) break;
      if (attempt >= 2) throw NumericalFailure("optimal basis fails feasibility check");
      refactor();
    }
    price(false);
    LpSolution sol;
    sol.status = SolveStatus::Optimal;
    sol.primal.assign(val_.begin(), val_.begin() + n_);
    sol.duals = y_;
    sol.reduced_costs.assign(dj_.begin(), dj_.begin() + n_);
    for (int j = 0; j < n_; ++j)
      if (stat_[j] == kBasic) sol.reduced_costs[j] = 0.0;
    sol.objective = lp_.objective_value(sol.primal);
    sol.iterations = iterations_;
    return sol;
  }

  LpSolution finish_infeasible() {
    LpSolution sol;
    if (infeasibility_sum() <= tol_.feasibility) {
      // Violations are inside tolerance after all; report the point.
      return finish_optimal();
    }
    sol.status = SolveStatus::Infeasible;
    sol.primal.assign(val_.begin(), val_.begin() + n_);
    sol.ray = y_;  // phase-1 multipliers: y'b exceeds the box maximum of y'A x
    sol.objective = kInf;
    sol.iterations = iterations_;
    sol.duals.assign(m_, 0.0);
    sol.reduced_costs.assign(n_, 0.0);
    return sol;
  }

  LpSolution finish_unbounded(int q, signed char dir) {
    LpSolution sol;
    sol.status = SolveStatus::Unbounded;
    sol.primal.assign(val_.begin(), val_.begin() + n_);
    sol.ray.assign(n_, 0.0);
    if (q < n_) sol.ray[q] = static_cast<double>(dir);
    for (int i = 0; i < m_; ++i) {
      const int b = basic_[i];
      if (b < n_) sol.ray[b] = -static_cast<double>(dir) * w_[i];
    }
    sol.objective = -kInf;
    sol.iterations = iterations_;
    sol.duals.assign(m_, 0.0);
    sol.reduced_costs.assign(n_, 0.0);
    return sol;
  }

  const LinearProgram& lp_;
  ToleranceConfig tol_;
  int n_ = 0, m_ = 0, total_ = 0;
  std::vector<double> lo_, up_, cost_, rhs_;
  std::vector<std::vector<std::pair<int, double>>> col_;

  std::vector<int> basic_;
  std::vector<signed char> stat_;
  std::vector<double> val_;
  DenseMatrix binv_t_;
  std::vector<double> y_, dj_, w_;
  std::vector<std::pair<int, double>> cb_rows_;

  struct Soft {
    double t;
    double rate_abs;
    int row;
    double far_t;  // where the row would hit its other bound (kInf if none)
    signed char land;
  };
  std::vector<Soft> soft_;

  signed char entering_dir_ = 1;
  bool bland_ = false;
  long iterations_ = 0;
  int pivots_since_refactor_ = 0;
  long stall_ = 0;
  double best_metric_ = kInf;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const ToleranceConfig& tol) {
  lp.validate();
  if (lp.num_vars() == 0) {
    LpSolution sol;
    bool feasible = true;
    for (int r = 0; r < lp.num_rows(); ++r) {
      const double rv = lp.row_violation(r, {});
      if (rv > tol.feasibility) feasible = false;
    }
    sol.status = feasible ? SolveStatus::Optimal : SolveStatus::Infeasible;
    sol.objective = feasible ? 0.0 : kInf;
    sol.duals.assign(lp.num_rows(), 0.0);
    return sol;
  }
  for (int attempt = 0; attempt <= tol.restarts; ++attempt) {
    try {
      Simplex s(lp, tol);
      return s.run(/*bland_from_start=*/attempt > 0);
    } catch (const NumericalFailure&) {
      if (attempt == tol.restarts) throw;
    }
  }
  throw NumericalFailure("unreachable");
}

LpSolution solve_lp_lazy(const LinearProgram& lp, const ToleranceConfig& tol) {
  lp.validate();
  const int m = lp.num_rows();
  LinearProgram work;
  work.objective = lp.objective;
  work.lower = lp.lower;
  work.upper = lp.upper;
  std::vector<int> picked;          // original row index per working row
  std::vector<char> in_work(m, 0);
  long iterations = 0;

  while (true) {
    LpSolution sub = solve_lp(work, tol);
    iterations += sub.iterations;
    if (sub.status == SolveStatus::Infeasible) {
      // A violated subset certifies the full problem infeasible.
      LpSolution out = std::move(sub);
      out.iterations = iterations;
      out.duals.assign(m, 0.0);
      return out;
    }
    std::vector<int> add;
    if (sub.status == SolveStatus::Unbounded) {
      // Add rows that block the improving ray; if none do, the full
      // problem is unbounded along it.
      for (int r = 0; r < m; ++r) {
        if (in_work[r]) continue;
        const Constraint& c = lp.rows[r];
        double along = 0.0;
        for (int k = 0; k < c.nnz(); ++k) along += c.coef[k] * sub.ray[c.idx[k]];
        const bool cuts = (c.sense == RowSense::LE && along > 1e-9) ||
                          (c.sense == RowSense::GE && along < -1e-9) ||
                          (c.sense == RowSense::EQ && std::fabs(along) > 1e-9);
        if (cuts) add.push_back(r);
      }
      if (add.empty()) {
        LpSolution out = std::move(sub);
        out.iterations = iterations;
        out.duals.assign(m, 0.0);
        return out;
      }
    } else {
      for (int r = 0; r < m; ++r)
        if (!in_work[r] && lp.row_violation(r, sub.primal) > tol.feasibility) add.push_back(r);
      if (add.empty()) {
        std::vector<double> work_duals = std::move(sub.duals);
        LpSolution out = std::move(sub);
        out.iterations = iterations;
        out.duals.assign(m, 0.0);
        for (size_t w = 0; w < picked.size(); ++w) out.duals[picked[w]] = work_duals[w];
        return out;
      }
    }
    for (int r : add) {
      work.rows.push_back(lp.rows[r]);
      picked.push_back(r);
      in_work[r] = 1;
    }
  }
}

double strict_feasibility_margin(const LinearProgram& lp, const ToleranceConfig& tol) {
  LinearProgram aug = lp;
  const int t = aug.add_variable(-kInf, 1.0, -1.0);  // maximize margin
  for (double& c : aug.objective) c = 0.0;
  aug.objective[t] = -1.0;
  bool any_inequality = false;
  for (Constraint& c : aug.rows) {
    if (c.sense == RowSense::EQ) continue;
    const double scale = std::max(1.0, c.norm2());
    c.idx.push_back(t);
    c.coef.push_back(c.sense == RowSense::LE ? scale : -scale);
    any_inequality = true;
  }
  if (!any_inequality) return 1.0;
  LpSolution sol = solve_lp_lazy(aug, tol);
  if (sol.status != SolveStatus::Optimal) return -kInf;
  return -sol.objective;
}

}  // namespace scenuc
