#include "vecpack/qp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vecpack/random.hpp"
#include "vecpack/relaxation.hpp"
#include "vecpack/rounding.hpp"

namespace vecpack {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 30;

Matrix from_columns(const std::vector<double>& v, std::size_t n, std::size_t m) {
  Matrix x(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) x(i, j) = std::max(0.0, v[i * m + j]);
  }
  return x;
}

double inner(const Matrix& a, const Matrix& b) {
  double s = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) s += da[k] * db[k];
  return s;
}

struct AscentOutcome {
  Matrix x;
  double objective = 0.0;
  std::vector<double> path;
  bool ok = false;
};

AscentOutcome ascend(LinearProgram& polytope, Matrix x, int max_iterations) {
  AscentOutcome out;
  const std::size_t n = x.rows();
  const std::size_t m = x.cols();
  double f = nlp_objective(x);
  out.path.push_back(f);
  // sum x_ij^2 <= n on the polytope, so reaching n ends the search.
  const double ceiling = static_cast<double>(n) * (1.0 - 1e-12);
  for (int it = 0; it < max_iterations && f < ceiling; ++it) {
    const Matrix g = nlp_gradient(x);
    auto gd = g.data();
    for (std::size_t k = 0; k < gd.size(); ++k) polytope.objective[k] = -gd[k];
    const LpOutcome lp = solve_lp(polytope, {PivotRule::DantzigWithBlandFallback});
    if (lp.status != LpStatus::Optimal) return out;
    const Matrix s = from_columns(lp.solution, n, m);
    const double gap = inner(g, s) - inner(g, x);
    if (gap <= 1e-12 * std::max(1.0, f)) break;

    double step = 1.0;
    bool accepted = false;
    Matrix candidate(n, m);
    double fc = f;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) candidate(i, j) = x(i, j) + step * (s(i, j) - x(i, j));
      }
      fc = nlp_objective(candidate);
      if (fc >= f + kArmijo * step * gap) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted || fc <= f) break;
    x = std::move(candidate);
    f = fc;
    out.path.push_back(f);
  }
  out.x = std::move(x);
  out.objective = f;
  out.ok = true;
  return out;
}

Matrix random_rows(const CounterRng& rng, std::size_t n, std::size_t m) {
  Matrix r(n, m);
  std::uint64_t counter = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      r(i, j) = 1.0 - rng.uniform(counter++);  // (0, 1]
      total += r(i, j);
    }
    for (std::size_t j = 0; j < m; ++j) r(i, j) /= total;
  }
  return r;
}

}  // namespace

double nlp_objective(const Matrix& x) {
  double s = 0.0;
  for (double v : x.data()) s += v * v;
  return s;
}

Matrix nlp_gradient(const Matrix& x) {
  Matrix g(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) g(i, j) = 2.0 * x(i, j);
  }
  return g;
}

LinearProgram assignment_polytope(const Instance& inst, int m) {
  if (m <= 0) throw InputError("bin count must be positive, got " + std::to_string(m));
  const std::size_t n = inst.size();
  const std::size_t bins = static_cast<std::size_t>(m);
  const std::size_t nv = n * bins;
  LinearProgram lp;
  lp.objective.assign(nv, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    LinearConstraint c{std::vector<double>(nv, 0.0), 1.0};
    for (std::size_t j = 0; j < bins; ++j) c.row[i * bins + j] = 1.0;
    lp.eq_constraints.push_back(std::move(c));
  }
  for (std::size_t j = 0; j < bins; ++j) {
    for (std::size_t k = 0; k < inst.dimension(); ++k) {
      LinearConstraint c{std::vector<double>(nv, 0.0), 1.0};
      for (std::size_t i = 0; i < n; ++i) c.row[i * bins + j] = inst.item(i)[k];
      lp.le_constraints.push_back(std::move(c));
    }
  }
  return lp;
}

Matrix repair_to_polytope(const Instance& inst, int m, const Matrix& target) {
  // y = target + up - down with up, down >= 0; minimize sum(up + down).
  const std::size_t n = inst.size();
  const std::size_t bins = static_cast<std::size_t>(m);
  const std::size_t cells = n * bins;
  LinearProgram lp;
  lp.objective.assign(2 * cells, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    double row_sum = 0.0;
    LinearConstraint c{std::vector<double>(2 * cells, 0.0), 0.0};
    for (std::size_t j = 0; j < bins; ++j) {
      c.row[i * bins + j] = 1.0;
      c.row[cells + i * bins + j] = -1.0;
      row_sum += target(i, j);
    }
    c.rhs = 1.0 - row_sum;
    lp.eq_constraints.push_back(std::move(c));
  }
  for (std::size_t j = 0; j < bins; ++j) {
    for (std::size_t k = 0; k < inst.dimension(); ++k) {
      LinearConstraint c{std::vector<double>(2 * cells, 0.0), 1.0};
      for (std::size_t i = 0; i < n; ++i) {
        const double p = inst.item(i)[k];
        c.row[i * bins + j] = p;
        c.row[cells + i * bins + j] = -p;
        c.rhs -= p * target(i, j);
      }
      lp.le_constraints.push_back(std::move(c));
    }
  }
  for (std::size_t c = 0; c < cells; ++c) {
    // down <= target keeps y >= 0
    LinearConstraint row{std::vector<double>(2 * cells, 0.0), target.data()[c]};
    row.row[cells + c] = 1.0;
    lp.le_constraints.push_back(std::move(row));
  }
  const LpOutcome out = solve_lp(lp, {PivotRule::DantzigWithBlandFallback});
  if (out.status != LpStatus::Optimal) {
    throw LpFailure(out.status, std::string("polytope repair: ") + to_string(out.status));
  }
  Matrix y(n, bins);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < bins; ++j) {
      const std::size_t c = i * bins + j;
      y(i, j) = std::max(0.0, target(i, j) + out.solution[c] - out.solution[cells + c]);
    }
  }
  return y;
}

bool is_integral(const Matrix& x, double eps) {
  return std::all_of(x.data().begin(), x.data().end(), [eps](double v) {
    return std::abs(v) <= eps || std::abs(v - 1.0) <= eps;
  });
}

QpResult solve_nlp_prime(const Instance& inst, int m, const QpOptions& options) {
  if (m <= 0) throw InputError("bin count must be positive, got " + std::to_string(m));
  const std::size_t n = inst.size();
  const std::size_t bins = static_cast<std::size_t>(m);
  QpResult best;
  best.x.x = Matrix(n, bins);
  if (n == 0) {
    best.integral = true;
    best.restarts_used = 1;
    return best;
  }

  const RelaxedModel model = build_relaxed_model(inst, m);
  const LpOutcome relaxed = solve_lp(model.lp);
  if (relaxed.status == LpStatus::Infeasible) {
    throw InputError("relaxation is infeasible at m=" + std::to_string(m));
  }

  LinearProgram polytope = assignment_polytope(inst, m);
  const CounterRng rng(options.seed);
  const int restarts = std::max(1, options.restarts);
  bool have_best = false;
  for (int r = 0; r < restarts; ++r) {
    Matrix start;
    if (r == 0) {
      if (relaxed.status != LpStatus::Optimal) {
        ++best.restarts_discarded;
        continue;
      }
      start = extract_assignment(model, relaxed.solution).x;
    } else {
      try {
        start = repair_to_polytope(inst, m, random_rows(rng.derive(static_cast<std::uint64_t>(r)), n, bins));
      } catch (const LpFailure&) {
        ++best.restarts_discarded;
        continue;
      }
    }
    AscentOutcome run = ascend(polytope, std::move(start), options.max_iterations);
    if (!run.ok) {
      ++best.restarts_discarded;
      continue;
    }
    ++best.restarts_used;
    best.ascent_paths.push_back(run.path);
    // Strict improvement only: earlier restarts win ties.
    if (!have_best || run.objective > best.objective) {
      have_best = true;
      best.x.x = std::move(run.x);
      best.objective = run.objective;
    }
  }
  if (!have_best) throw LpFailure(LpStatus::NumericalFailure, "every QP restart failed");
  best.integral = is_integral(best.x.x);
  best.dual_objective = dual_objective(best.x, find_dual_obj(best.x));
  return best;
}

QpResult solve_nlp_prime(const Instance& inst, int m, int restarts, std::uint64_t seed) {
  QpOptions options;
  options.restarts = restarts;
  options.seed = seed;
  return solve_nlp_prime(inst, m, options);
}

Packing extract_packing(const QpResult& q, const Instance& inst) {
  const Matrix& x = q.x.x;
  const std::size_t n = inst.size();
  const std::size_t d = inst.dimension();
  const std::size_t bins = x.cols();
  if (n == 0) return {};

  auto argmax_bin = [&x](std::size_t i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < x.cols(); ++j) {
      if (x(i, j) > x(i, best)) best = j;
    }
    return best;
  };

  if (q.integral) {
    Packing direct;
    direct.bin_count = static_cast<int>(bins);
    for (std::size_t i = 0; i < n; ++i) direct.assignment.push_back(static_cast<int>(argmax_bin(i)));
    if (validate_packing(inst, direct).ok()) return canonicalize(direct);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> row_max(n);
  for (std::size_t i = 0; i < n; ++i) row_max[i] = x(i, argmax_bin(i));
  std::stable_sort(order.begin(), order.end(),
                   [&row_max](int a, int b) { return row_max[a] > row_max[b]; });

  Packing pk;
  pk.assignment.assign(n, -1);
  pk.bin_count = static_cast<int>(bins);
  std::vector<double> loads(bins * d, 0.0);
  std::vector<int> leftovers;
  for (int i : order) {
    const std::size_t b = argmax_bin(static_cast<std::size_t>(i));
    const ItemVector& item = inst.item(static_cast<std::size_t>(i));
    if (fits({loads.data() + b * d, d}, item)) {
      add_load({loads.data() + b * d, d}, item);
      pk.assignment[static_cast<std::size_t>(i)] = static_cast<int>(b);
    } else {
      leftovers.push_back(i);
    }
  }
  // Leftovers go first-fit into new bins only.
  std::vector<double> extra;
  int extra_bins = 0;
  for (int i : leftovers) {
    const ItemVector& item = inst.item(static_cast<std::size_t>(i));
    int placed = -1;
    for (int b = 0; b < extra_bins; ++b) {
      if (fits({extra.data() + static_cast<std::size_t>(b) * d, d}, item)) {
        placed = b;
        break;
      }
    }
    if (placed < 0) {
      placed = extra_bins++;
      extra.resize(extra.size() + d, 0.0);
    }
    add_load({extra.data() + static_cast<std::size_t>(placed) * d, d}, item);
    pk.assignment[static_cast<std::size_t>(i)] = static_cast<int>(bins) + placed;
  }
  pk.bin_count += extra_bins;
  return canonicalize(pk);
}

}  // namespace vecpack
