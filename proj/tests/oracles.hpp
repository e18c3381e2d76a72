#pragma once

// Brute-force reference implementations used by the tests. None of them
// call into the library's solvers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "vecpack/core.hpp"
#include "vecpack/lp_solver.hpp"
#include "vecpack/random.hpp"

namespace oracle {

// Solves the square system a x = b by Gaussian elimination with partial
// pivoting. Empty result when a is (numerically) singular.
inline std::vector<double> solve_square(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-9) return {};
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

struct Row {
  std::vector<double> a;
  double b;
  bool equality;
};

// Every basic feasible point of {rows, x >= 0}: n linearly independent
// tight constraints chosen among the rows and the bounds, with all
// equalities always tight.
inline std::vector<std::vector<double>> vertices(const std::vector<Row>& rows, std::size_t n,
                                                 double tol = 1e-9) {
  std::vector<Row> all = rows;
  for (std::size_t j = 0; j < n; ++j) {
    Row r{std::vector<double>(n, 0.0), 0.0, false};
    r.a[j] = -1.0;
    all.push_back(r);
  }
  std::vector<std::size_t> eq;
  std::vector<std::size_t> ineq;
  for (std::size_t k = 0; k < all.size(); ++k) (all[k].equality ? eq : ineq).push_back(k);
  std::vector<std::vector<double>> out;
  if (eq.size() > n) {
    // Some equalities must be redundant; try every n-subset that keeps all
    // of them satisfied by checking feasibility afterwards.
    ineq.insert(ineq.begin(), eq.begin(), eq.end());
    eq.clear();
  }
  const std::size_t need = n - eq.size();
  if (need > ineq.size()) return out;
  std::vector<bool> pick(ineq.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(need), true);
  do {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (std::size_t k : eq) {
      a.push_back(all[k].a);
      b.push_back(all[k].b);
    }
    for (std::size_t t = 0; t < ineq.size(); ++t) {
      if (!pick[t]) continue;
      a.push_back(all[ineq[t]].a);
      b.push_back(all[ineq[t]].b);
    }
    std::vector<double> x = solve_square(a, b);
    if (x.empty()) continue;
    bool ok = true;
    for (const Row& r : all) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < n; ++j) lhs += r.a[j] * x[j];
      const double scale = std::max(1.0, std::abs(r.b));
      if (r.equality ? std::abs(lhs - r.b) > tol * scale : lhs > r.b + tol * scale) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(std::move(x));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

enum class Verdict { Optimal, Infeasible, Unbounded };

struct LpAnswer {
  Verdict verdict;
  double value = 0.0;
};

// min c.x over {eq, le, x >= 0}. Feasible iff a vertex exists (the region
// is pointed). Unbounded iff some extreme ray r of {A_eq r = 0, A_le r <= 0,
// r >= 0, sum r = 1} has c.r < 0; otherwise the best vertex is optimal.
inline LpAnswer solve_by_enumeration(const vecpack::LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  std::vector<Row> rows;
  for (const auto& c : lp.eq_constraints) rows.push_back({c.row, c.rhs, true});
  for (const auto& c : lp.le_constraints) rows.push_back({c.row, c.rhs, false});
  const auto pts = vertices(rows, n);
  if (pts.empty()) return {Verdict::Infeasible};

  std::vector<Row> cone;
  for (const auto& c : lp.eq_constraints) cone.push_back({c.row, 0.0, true});
  for (const auto& c : lp.le_constraints) cone.push_back({c.row, 0.0, false});
  cone.push_back({std::vector<double>(n, 1.0), 1.0, true});
  for (const auto& r : vertices(cone, n)) {
    double cr = 0.0;
    for (std::size_t j = 0; j < n; ++j) cr += lp.objective[j] * r[j];
    if (cr < -1e-9) return {Verdict::Unbounded};
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& x : pts) {
    double v = 0.0;
    for (std::size_t j = 0; j < n; ++j) v += lp.objective[j] * x[j];
    best = std::min(best, v);
  }
  return {Verdict::Optimal, best};
}

// Minimum number of bins by dynamic programming over item subsets.
inline int subset_dp_opt(const vecpack::Instance& inst) {
  const std::size_t n = inst.size();
  if (n == 0) return 0;
  const std::uint32_t full = (1u << n) - 1;
  std::vector<char> fits(full + 1, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    bool ok = true;
    for (std::size_t k = 0; k < inst.dimension() && ok; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1u) s += inst.item(i)[k];
      }
      ok = s <= 1.0 + vecpack::kEpsCap;
    }
    fits[mask] = ok;
  }
  std::vector<int> dp(full + 1, 1 << 20);
  dp[0] = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const std::uint32_t low = mask & (~mask + 1);
    for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask) {
      if ((sub & low) && fits[sub]) dp[mask] = std::min(dp[mask], dp[mask ^ sub] + 1);
    }
  }
  return dp[full];
}

// Largest sum of squares over integral assignments of n items to m bins
// that respect capacity, or nullopt if none exists.
inline std::optional<double> best_integral_objective(const vecpack::Instance& inst, int m) {
  const std::size_t n = inst.size();
  const std::size_t d = inst.dimension();
  std::vector<int> assign(n, 0);
  while (true) {
    std::vector<double> load(static_cast<std::size_t>(m) * d, 0.0);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        double& l = load[static_cast<std::size_t>(assign[i]) * d + k];
        l += inst.item(i)[k];
        if (l > 1.0 + vecpack::kEpsCap) ok = false;
      }
    }
    if (ok) return static_cast<double>(n);  // each row contributes exactly 1
    std::size_t pos = 0;
    while (pos < n && ++assign[pos] == m) assign[pos++] = 0;
    if (pos == n) return std::nullopt;
  }
}

}  // namespace oracle

namespace testgen {

// Random LP with 1..8 variables and 1..8 rows, coefficients and right-hand
// sides uniform on [-1, 1]. Every third LP gets a row sum x <= 1 on top so
// bounded optima show up often enough.
inline vecpack::LinearProgram random_lp(std::uint64_t seed) {
  const vecpack::CounterRng rng(seed);
  std::uint64_t c = 0;
  auto u = [&] { return 2.0 * rng.uniform(c++) - 1.0; };
  const std::size_t n = 1 + rng.bits(c++) % 8;
  std::size_t rows = 1 + rng.bits(c++) % 8;
  const bool box = seed % 3 == 0;
  if (box && rows == 8) rows = 7;
  vecpack::LinearProgram lp;
  for (std::size_t j = 0; j < n; ++j) lp.objective.push_back(u());
  for (std::size_t r = 0; r < rows; ++r) {
    vecpack::LinearConstraint row{{}, 0.0};
    for (std::size_t j = 0; j < n; ++j) row.row.push_back(u());
    row.rhs = u();
    if (rng.uniform(c++) < 0.25) {
      lp.eq_constraints.push_back(std::move(row));
    } else {
      lp.le_constraints.push_back(std::move(row));
    }
  }
  if (box) lp.le_constraints.push_back({std::vector<double>(n, 1.0), 1.0});
  return lp;
}

}  // namespace testgen
