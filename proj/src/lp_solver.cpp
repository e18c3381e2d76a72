#include "vecpack/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vecpack/core.hpp"

namespace vecpack {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
    case LpStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kRatioTieTol = 1e-12;
constexpr double kZeroTol = 1e-13;
// Degenerate pivots tolerated under Dantzig's rule before switching to Bland.
constexpr int kDegenerateRun = 50;

void check_well_formed(const LinearProgram& lp) {
  const std::size_t nv = lp.num_vars();
  for (double c : lp.objective) {
    if (!std::isfinite(c)) throw InputError("non-finite objective coefficient");
  }
  auto check_rows = [nv](const std::vector<LinearConstraint>& rows, const char* kind) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].row.size() != nv) {
        std::ostringstream msg;
        msg << kind << " row " << r << " has " << rows[r].row.size()
            << " coefficients, objective has " << nv;
        throw InputError(msg.str());
      }
      if (!std::isfinite(rows[r].rhs)) throw InputError("non-finite right-hand side");
      for (double a : rows[r].row) {
        if (!std::isfinite(a)) throw InputError("non-finite constraint coefficient");
      }
    }
  };
  check_rows(lp.eq_constraints, "equality");
  check_rows(lp.le_constraints, "inequality");
}

bool is_zero_row(const std::vector<double>& row) {
  return std::all_of(row.begin(), row.end(), [](double a) { return a == 0.0; });
}

enum class RowKind { Le, Ge, Eq };

// Dense tableau. Columns: structural vars, one slack/surplus per inequality
// row, one artificial per Eq/Ge row, then the right-hand side.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, PivotRule rule) : nv_(lp.num_vars()), rule_(rule) {
    struct Row {
      const std::vector<double>* coeffs;
      double sign;
      double rhs;
      RowKind kind;
    };
    std::vector<Row> rows;
    for (const auto& c : lp.eq_constraints) {
      if (is_zero_row(c.row)) {
        if (std::abs(c.rhs) > kEpsNum) trivially_infeasible_ = true;
        continue;
      }
      const double sign = c.rhs < 0 ? -1.0 : 1.0;
      rows.push_back({&c.row, sign, sign * c.rhs, RowKind::Eq});
    }
    for (const auto& c : lp.le_constraints) {
      if (is_zero_row(c.row)) {
        if (c.rhs < -kEpsNum) trivially_infeasible_ = true;
        continue;
      }
      if (c.rhs < 0) {
        rows.push_back({&c.row, -1.0, -c.rhs, RowKind::Ge});
      } else {
        rows.push_back({&c.row, 1.0, c.rhs, RowKind::Le});
      }
    }
    rows_ = rows.size();
    std::size_t slacks = 0;
    std::size_t artificials = 0;
    for (const auto& r : rows) {
      if (r.kind != RowKind::Eq) ++slacks;
      if (r.kind != RowKind::Le) ++artificials;
    }
    ns_ = slacks;
    na_ = artificials;
    cols_ = nv_ + ns_ + na_;
    stride_ = cols_ + 1;
    t_.assign(rows_ * stride_, 0.0);
    basis_.assign(rows_, 0);
    active_.assign(rows_, true);

    std::size_t slack = nv_;
    std::size_t art = nv_ + ns_;
    for (std::size_t i = 0; i < rows_; ++i) {
      double* tr = row(i);
      const auto& src = *rows[i].coeffs;
      for (std::size_t j = 0; j < nv_; ++j) tr[j] = rows[i].sign * src[j];
      tr[cols_] = rows[i].rhs;
      switch (rows[i].kind) {
        case RowKind::Le:
          tr[slack] = 1.0;
          basis_[i] = slack++;
          break;
        case RowKind::Ge:
          tr[slack++] = -1.0;
          tr[art] = 1.0;
          basis_[i] = art++;
          break;
        case RowKind::Eq:
          tr[art] = 1.0;
          basis_[i] = art++;
          break;
      }
    }
    cost_row_.assign(stride_, 0.0);
  }

  bool trivially_infeasible() const { return trivially_infeasible_; }

  // Phase one: minimize the sum of artificials. Returns the status of the
  // phase-one run; Optimal means the artificial objective was minimized.
  LpStatus phase_one(long& iterations, long cap) {
    std::fill(cost_row_.begin(), cost_row_.end(), 0.0);
    for (std::size_t j = nv_ + ns_; j < cols_; ++j) cost_row_[j] = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      const double* tr = row(i);
      for (std::size_t j = 0; j <= cols_; ++j) cost_row_[j] -= tr[j];
    }
    return iterate(cols_, iterations, cap);
  }

  double artificial_sum() const {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (active_[i] && is_artificial(basis_[i])) s += row(i)[cols_];
    }
    return s;
  }

  // Pivot remaining (zero-valued) artificials out of the basis; rows where
  // that is impossible are redundant and get deactivated.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!active_[i] || !is_artificial(basis_[i])) continue;
      const double* tr = row(i);
      std::size_t best = cols_;
      double best_abs = kPivotTol;
      for (std::size_t j = 0; j < nv_ + ns_; ++j) {
        if (std::abs(tr[j]) > best_abs) {
          best_abs = std::abs(tr[j]);
          best = j;
        }
      }
      if (best == cols_) {
        active_[i] = false;
      } else {
        pivot(i, best);
      }
    }
  }

  LpStatus phase_two(const std::vector<double>& objective, long& iterations, long cap) {
    std::fill(cost_row_.begin(), cost_row_.end(), 0.0);
    for (std::size_t j = 0; j < nv_; ++j) cost_row_[j] = objective[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!active_[i]) continue;
      const std::size_t b = basis_[i];
      const double cb = b < nv_ ? objective[b] : 0.0;
      if (cb == 0.0) continue;
      const double* tr = row(i);
      for (std::size_t j = 0; j <= cols_; ++j) cost_row_[j] -= cb * tr[j];
    }
    for (std::size_t j = nv_ + ns_; j < cols_; ++j) cost_row_[j] = 0.0;
    return iterate(nv_ + ns_, iterations, cap);
  }

  std::vector<double> primal() const {
    std::vector<double> x(nv_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (active_[i] && basis_[i] < nv_) x[basis_[i]] = std::max(0.0, row(i)[cols_]);
    }
    return x;
  }

 private:
  bool is_artificial(std::size_t col) const { return col >= nv_ + ns_; }
  double* row(std::size_t i) { return t_.data() + i * stride_; }
  const double* row(std::size_t i) const { return t_.data() + i * stride_; }

  std::size_t entering(std::size_t allowed, bool bland) const {
    std::size_t enter = allowed;
    double most_negative = -kCostTol;
    for (std::size_t j = 0; j < allowed; ++j) {
      if (cost_row_[j] >= -kCostTol) continue;
      if (bland) return j;
      if (cost_row_[j] < most_negative) {
        most_negative = cost_row_[j];
        enter = j;
      }
    }
    return enter;
  }

  // Ratio test; ties go to the lowest basic variable index.
  std::size_t leaving(std::size_t enter) const {
    std::size_t leave = rows_;
    double best = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!active_[i]) continue;
      const double* tr = row(i);
      const double a = tr[enter];
      if (a <= kPivotTol) continue;
      const double ratio = tr[cols_] / a;
      if (leave == rows_ || ratio < best - kRatioTieTol) {
        best = ratio;
        leave = i;
      } else if (ratio <= best + kRatioTieTol && basis_[i] < basis_[leave]) {
        leave = i;
      }
    }
    return leave;
  }

  // Simplex iterations over columns [0, allowed).
  LpStatus iterate(std::size_t allowed, long& iterations, long cap) {
    int degenerate_run = 0;
    while (true) {
      const bool bland = rule_ == PivotRule::Bland || degenerate_run >= kDegenerateRun;
      const std::size_t enter = entering(allowed, bland);
      if (enter == allowed) return LpStatus::Optimal;
      if (iterations >= cap) return LpStatus::IterationLimit;
      const std::size_t leave = leaving(enter);
      if (leave == rows_) return LpStatus::Unbounded;
      const bool degenerate = row(leave)[cols_] <= kRatioTieTol;
      pivot(leave, enter);
      ++iterations;
      degenerate_run = degenerate ? degenerate_run + 1 : 0;
    }
  }

  void pivot(std::size_t r, std::size_t s) {
    double* pr = row(r);
    const double inv = 1.0 / pr[s];
    nz_.clear();
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (pr[j] == 0.0) continue;
      pr[j] *= inv;
      if (std::abs(pr[j]) < kZeroTol) {
        pr[j] = 0.0;
      } else {
        nz_.push_back(j);
      }
    }
    pr[s] = 1.0;
    auto eliminate = [&](double* target) {
      const double f = target[s];
      if (f == 0.0) return;
      for (std::size_t j : nz_) {
        double v = target[j] - f * pr[j];
        if (std::abs(v) < kZeroTol) v = 0.0;
        target[j] = v;
      }
      target[s] = 0.0;
    };
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i != r && active_[i]) eliminate(row(i));
    }
    eliminate(cost_row_.data());
    basis_[r] = s;
  }

  std::size_t nv_ = 0;
  PivotRule rule_;
  std::size_t ns_ = 0;
  std::size_t na_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  bool trivially_infeasible_ = false;
  std::vector<double> t_;
  std::vector<double> cost_row_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
  std::vector<std::size_t> nz_;
};

long iteration_cap(const LinearProgram& lp) {
  return 50L * static_cast<long>(lp.num_vars() + lp.num_constraints());
}

}  // namespace

double max_violation(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (double v : x) worst = std::max(worst, -v);
  auto dot = [&x](const std::vector<double>& row) {
    double s = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * x[j];
    return s;
  };
  for (const auto& c : lp.eq_constraints) worst = std::max(worst, std::abs(dot(c.row) - c.rhs));
  for (const auto& c : lp.le_constraints) worst = std::max(worst, dot(c.row) - c.rhs);
  return worst;
}

LpOutcome solve_lp(const LinearProgram& lp, const LpOptions& options) {
  check_well_formed(lp);
  LpOutcome out;
  Tableau tab(lp, options.pivot_rule);
  if (tab.trivially_infeasible()) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  const long cap = iteration_cap(lp);
  LpStatus st = tab.phase_one(out.iterations, cap);
  if (st != LpStatus::Optimal) {
    out.status = st == LpStatus::Unbounded ? LpStatus::NumericalFailure : st;
    return out;
  }
  if (tab.artificial_sum() > kEpsNum) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  tab.drive_out_artificials();
  st = tab.phase_two(lp.objective, out.iterations, cap);
  if (st != LpStatus::Optimal) {
    out.status = st;
    return out;
  }
  out.solution = tab.primal();
  double rhs_scale = 1.0;
  for (const auto& c : lp.eq_constraints) rhs_scale = std::max(rhs_scale, std::abs(c.rhs));
  for (const auto& c : lp.le_constraints) rhs_scale = std::max(rhs_scale, std::abs(c.rhs));
  if (max_violation(lp, out.solution) > kEpsNum * rhs_scale) {
    out.status = LpStatus::NumericalFailure;
    out.solution.clear();
    return out;
  }
  out.status = LpStatus::Optimal;
  out.objective_value = 0.0;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    out.objective_value += lp.objective[j] * out.solution[j];
  }
  return out;
}

bool check_feasible(const LinearProgram& lp, const LpOptions& options) {
  check_well_formed(lp);
  Tableau tab(lp, options.pivot_rule);
  if (tab.trivially_infeasible()) return false;
  long iterations = 0;
  const LpStatus st = tab.phase_one(iterations, iteration_cap(lp));
  if (st != LpStatus::Optimal) {
    throw LpFailure(st == LpStatus::Unbounded ? LpStatus::NumericalFailure : st,
                    std::string("phase one did not finish: ") + to_string(st));
  }
  return tab.artificial_sum() <= kEpsNum;
}

}  // namespace vecpack
