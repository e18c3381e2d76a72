#pragma once

#include <cstddef>
#include <stdexcept>

#include "vecpack/core.hpp"
#include "vecpack/lp_solver.hpp"

namespace vecpack {

// The bin-assignment LP for a fixed bin count m:
//   minimize sum_j y_j
//   sum_j x_ij = 1                    (one row per item)
//   sum_i p_i^k x_ij <= 1             (one row per bin and dimension)
//   x_ij - y_j <= 0                   (one row per item and bin)
//   y_j <= 1,  x, y >= 0
// Columns: x_ij at i*m + j, then y_j at n*m + j.
struct RelaxedModel {
  const Instance* instance = nullptr;
  int m = 0;
  LinearProgram lp;

  std::size_t items() const { return instance->size(); }
  std::size_t x_col(std::size_t i, std::size_t j) const {
    return i * static_cast<std::size_t>(m) + j;
  }
  std::size_t y_col(std::size_t j) const {
    return items() * static_cast<std::size_t>(m) + j;
  }
  std::size_t num_vars() const { return lp.num_vars(); }
  std::size_t assignment_rows() const { return items(); }
  std::size_t capacity_rows() const {
    return static_cast<std::size_t>(m) * instance->dimension();
  }
  std::size_t coupling_rows() const { return items() * static_cast<std::size_t>(m); }
  std::size_t usage_bound_rows() const { return static_cast<std::size_t>(m); }
};

RelaxedModel build_relaxed_model(const Instance& inst, int m);

// Reads the x block of an LP solution; tiny negatives are clamped to zero.
FractionalAssignment extract_assignment(const RelaxedModel& model,
                                        const std::vector<double>& solution);

struct RelaxationResult {
  int m_prime = 0;
  FractionalAssignment x;
  double lp_objective = 0.0;
  Bounds window;
  int probes = 0;
};

class RelaxationError : public std::runtime_error {
 public:
  RelaxationError(int m, LpStatus status, const std::string& what)
      : std::runtime_error(what), m_(m), status_(status) {}
  int probed_m() const { return m_; }
  LpStatus status() const { return status_; }

 private:
  int m_;
  LpStatus status_;
};

// Least m in [dimension_lower_bound, FFD bins] with a feasible relaxation,
// found by binary search, and the optimal X at that m. Throws
// RelaxationError when an LP probe fails.
RelaxationResult solve_relaxation(const Instance& inst);

}  // namespace vecpack
