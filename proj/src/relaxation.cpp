#include "vecpack/relaxation.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "vecpack/heuristics.hpp"

namespace vecpack {

RelaxedModel build_relaxed_model(const Instance& inst, int m) {
  if (m <= 0) throw InputError("bin count must be positive, got " + std::to_string(m));
  RelaxedModel model;
  model.instance = &inst;
  model.m = m;
  const std::size_t n = inst.size();
  const std::size_t bins = static_cast<std::size_t>(m);
  const std::size_t d = inst.dimension();
  const std::size_t nvars = n * bins + bins;
  LinearProgram& lp = model.lp;

  lp.objective.assign(nvars, 0.0);
  for (std::size_t j = 0; j < bins; ++j) lp.objective[model.y_col(j)] = 1.0;

  lp.eq_constraints.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    LinearConstraint c{std::vector<double>(nvars, 0.0), 1.0};
    for (std::size_t j = 0; j < bins; ++j) c.row[model.x_col(i, j)] = 1.0;
    lp.eq_constraints.push_back(std::move(c));
  }

  lp.le_constraints.reserve(bins * d + n * bins + bins);
  for (std::size_t j = 0; j < bins; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      LinearConstraint c{std::vector<double>(nvars, 0.0), 1.0};
      for (std::size_t i = 0; i < n; ++i) c.row[model.x_col(i, j)] = inst.item(i)[k];
      lp.le_constraints.push_back(std::move(c));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < bins; ++j) {
      LinearConstraint c{std::vector<double>(nvars, 0.0), 0.0};
      c.row[model.x_col(i, j)] = 1.0;
      c.row[model.y_col(j)] = -1.0;
      lp.le_constraints.push_back(std::move(c));
    }
  }
  for (std::size_t j = 0; j < bins; ++j) {
    LinearConstraint c{std::vector<double>(nvars, 0.0), 1.0};
    c.row[model.y_col(j)] = 1.0;
    lp.le_constraints.push_back(std::move(c));
  }
  return model;
}

FractionalAssignment extract_assignment(const RelaxedModel& model,
                                        const std::vector<double>& solution) {
  const std::size_t n = model.items();
  const std::size_t bins = static_cast<std::size_t>(model.m);
  FractionalAssignment fa{Matrix(n, bins)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < bins; ++j) {
      fa.x(i, j) = std::max(0.0, solution[model.x_col(i, j)]);
    }
  }
  return fa;
}

RelaxationResult solve_relaxation(const Instance& inst) {
  RelaxationResult result;
  if (inst.empty()) return result;

  const int lower = dimension_lower_bound(inst);
  const int upper = std::max(lower, first_fit_decreasing(inst).bin_count);
  result.window = {lower, upper};

  // Feasibility is monotone in m; track both sides to catch a violation.
  int lowest_feasible = upper;
  int highest_infeasible = std::numeric_limits<int>::min();
  int lo = lower;
  int hi = upper;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    const RelaxedModel model = build_relaxed_model(inst, mid);
    bool feasible = false;
    try {
      feasible = check_feasible(model.lp);
    } catch (const LpFailure& e) {
      throw RelaxationError(mid, e.status(),
                            "relaxation probe at m=" + std::to_string(mid) + ": " + e.what());
    }
    ++result.probes;
    if (feasible) {
      lowest_feasible = std::min(lowest_feasible, mid);
      hi = mid;
    } else {
      highest_infeasible = std::max(highest_infeasible, mid);
      lo = mid + 1;
    }
    if (highest_infeasible >= lowest_feasible) {
      throw RelaxationError(mid, LpStatus::NumericalFailure,
                            "relaxation feasibility is not monotone around m=" +
                                std::to_string(mid));
    }
  }

  const RelaxedModel model = build_relaxed_model(inst, lo);
  const LpOutcome outcome = solve_lp(model.lp);
  if (outcome.status != LpStatus::Optimal) {
    throw RelaxationError(lo, outcome.status,
                          "relaxation solve at m=" + std::to_string(lo) + ": " +
                              to_string(outcome.status));
  }
  result.m_prime = lo;
  result.x = extract_assignment(model, outcome.solution);
  result.lp_objective = outcome.objective_value;
  return result;
}

}  // namespace vecpack
