#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace vecpack {

struct LinearConstraint {
  std::vector<double> row;
  double rhs = 0.0;
};

// minimize objective . x  s.t.  eq rows = rhs, le rows <= rhs, x >= 0.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LinearConstraint> eq_constraints;
  std::vector<LinearConstraint> le_constraints;

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_constraints() const {
    return eq_constraints.size() + le_constraints.size();
  }
};

enum class PivotRule {
  // Lowest-index improving column; never cycles.
  Bland,
  // Most negative reduced cost, falling back to Bland after a run of
  // degenerate pivots until the objective moves again.
  DantzigWithBlandFallback,
};

struct LpOptions {
  PivotRule pivot_rule = PivotRule::Bland;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit, NumericalFailure };

const char* to_string(LpStatus status);

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> solution;  // filled when Optimal
  double objective_value = 0.0;
  long iterations = 0;
};

class LpFailure : public std::runtime_error {
 public:
  LpFailure(LpStatus status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  LpStatus status() const { return status_; }

 private:
  LpStatus status_;
};

// Two-phase dense simplex with Bland's rule. Throws InputError on malformed
// or non-finite data. Optimal solutions are re-checked against the raw rows;
// a failed re-check is reported as NumericalFailure.
LpOutcome solve_lp(const LinearProgram& lp, const LpOptions& options = {});

// Phase one only. Throws LpFailure when the phase-one run cannot finish.
bool check_feasible(const LinearProgram& lp, const LpOptions& options = {});

// Largest violation of lp's constraints (including x >= 0) at x.
double max_violation(const LinearProgram& lp, const std::vector<double>& x);

}  // namespace vecpack
