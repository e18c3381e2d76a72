#pragma once

#include <cstdint>
#include <vector>

#include "vecpack/core.hpp"
#include "vecpack/lp_solver.hpp"

namespace vecpack {

inline constexpr double kEpsInt = 1e-6;
inline constexpr int kDefaultRestarts = 16;

// sum_ij x_ij^2 and its gradient.
double nlp_objective(const Matrix& x);
Matrix nlp_gradient(const Matrix& x);

// Polytope {sum_j x_ij = 1, sum_i p_i^k x_ij <= 1, x >= 0}, with x_ij at
// column i*m + j.
LinearProgram assignment_polytope(const Instance& inst, int m);

// Nearest point of the polytope to `target` in the L1 norm. Throws LpFailure
// when the LP does not solve.
Matrix repair_to_polytope(const Instance& inst, int m, const Matrix& target);

bool is_integral(const Matrix& x, double eps = kEpsInt);

struct QpResult {
  FractionalAssignment x;
  double objective = 0.0;
  bool integral = false;
  int restarts_used = 0;
  int restarts_discarded = 0;
  // sum_ij x_ij z_ij with z_ij = x_ij / sum_i x_ij, logged next to objective.
  double dual_objective = 0.0;
  // Objective after every accepted step, one path per completed restart.
  std::vector<std::vector<double>> ascent_paths;
};

struct QpOptions {
  int restarts = kDefaultRestarts;
  std::uint64_t seed = 0;
  int max_iterations = 200;
};

// Multi-start ascent on sum x_ij^2 over the assignment polytope at m bins.
// Start 0 is the relaxation's optimal X; the others are random rows
// repaired into the polytope. Each step moves toward the polytope vertex
// maximizing the linearized objective, with halving backtracking from a
// full step and an Armijo test. Throws InputError when m is infeasible.
QpResult solve_nlp_prime(const Instance& inst, int m, const QpOptions& options = {});
QpResult solve_nlp_prime(const Instance& inst, int m, int restarts, std::uint64_t seed);

// Integral packing from a QP solution; always valid.
Packing extract_packing(const QpResult& q, const Instance& inst);

}  // namespace vecpack
