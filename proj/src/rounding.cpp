#include "vecpack/rounding.hpp"

#include <algorithm>
#include <tuple>

#include "vecpack/heuristics.hpp"
#include "vecpack/relaxation.hpp"

namespace vecpack {

namespace {

// Threshold tests tolerate simplex noise around exactly one half.
constexpr double kHalf = 0.5;

struct Entry {
  double value;
  std::size_t row;
  std::size_t bin;
};

bool descending(const Entry& a, const Entry& b) {
  if (a.value != b.value) return a.value > b.value;
  return std::tie(a.row, a.bin) < std::tie(b.row, b.bin);
}

}  // namespace

DualMultipliers find_dual_obj(const FractionalAssignment& fa) {
  const Matrix& x = fa.x;
  DualMultipliers out{Matrix(x.rows(), x.cols())};
  for (std::size_t j = 0; j < x.cols(); ++j) {
    double mass = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) mass += std::max(0.0, x(i, j));
    if (mass <= kEpsNum) continue;
    for (std::size_t i = 0; i < x.rows(); ++i) out.z(i, j) = std::max(0.0, x(i, j)) / mass;
  }
  return out;
}

double utility_factor(const FractionalAssignment& x, const DualMultipliers& z,
                      std::size_t j) {
  double u = 0.0;
  for (std::size_t i = 0; i < x.x.rows(); ++i) u += x.x(i, j) * z.z(i, j);
  return u;
}

double dual_objective(const FractionalAssignment& x, const DualMultipliers& z) {
  double total = 0.0;
  for (std::size_t j = 0; j < x.bins(); ++j) total += utility_factor(x, z, j);
  return total;
}

double column_max_bound(const FractionalAssignment& fa) {
  double total = 0.0;
  for (std::size_t j = 0; j < fa.bins(); ++j) {
    double best = 0.0;
    for (std::size_t i = 0; i < fa.items(); ++i) best = std::max(best, fa.x(i, j));
    total += best;
  }
  return total;
}

double quadratic_objective(const FractionalAssignment& fa) {
  double total = 0.0;
  for (double v : fa.x.data()) total += v * v;
  return total;
}

PartialPacking::PartialPacking(const Instance& inst, std::vector<int> rows, int bins)
    : inst_(&inst),
      rows_(std::move(rows)),
      bins_(bins),
      bin_of_row_(rows_.size(), -1),
      loads_(static_cast<std::size_t>(bins) * inst.dimension(), 0.0) {}

std::span<const double> PartialPacking::load(int bin) const {
  const std::size_t d = inst_->dimension();
  return {loads_.data() + static_cast<std::size_t>(bin) * d, d};
}

bool PartialPacking::fits(std::size_t row, int bin) const {
  return vecpack::fits(load(bin), inst_->item(static_cast<std::size_t>(rows_[row])));
}

bool PartialPacking::try_commit(std::size_t row, int bin) {
  if (is_packed(row) || !fits(row, bin)) return false;
  const std::size_t d = inst_->dimension();
  add_load({loads_.data() + static_cast<std::size_t>(bin) * d, d},
           inst_->item(static_cast<std::size_t>(rows_[row])));
  bin_of_row_[row] = bin;
  ++committed_;
  return true;
}

std::vector<int> PartialPacking::remaining() const {
  std::vector<int> out;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (!is_packed(r)) out.push_back(rows_[r]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PartialPacking greedy_lp(PartialPacking state, const FractionalAssignment& x) {
  std::vector<Entry> entries;
  entries.reserve(x.items() * x.bins());
  for (std::size_t i = 0; i < x.items(); ++i) {
    for (std::size_t j = 0; j < x.bins(); ++j) entries.push_back({x.x(i, j), i, j});
  }
  std::sort(entries.begin(), entries.end(), descending);
  for (const Entry& e : entries) state.try_commit(e.row, static_cast<int>(e.bin));
  return state;
}

PartialPacking iterative_pack(PartialPacking state, const FractionalAssignment& x) {
  const DualMultipliers z = find_dual_obj(x);
  for (std::size_t j = 0; j < x.bins(); ++j) {
    if (utility_factor(x, z, j) < kHalf - kEpsNum) continue;
    std::vector<Entry> survivors;
    for (std::size_t i = 0; i < x.items(); ++i) {
      if (x.x(i, j) >= kHalf - kEpsNum) survivors.push_back({x.x(i, j), i, j});
    }
    std::sort(survivors.begin(), survivors.end(), descending);
    for (const Entry& e : survivors) state.try_commit(e.row, static_cast<int>(j));
  }
  return state;
}

const char* to_string(Branch b) {
  switch (b) {
    case Branch::FirstFit: return "first-fit";
    case Branch::GreedyLP: return "greedy-lp";
    case Branch::IterativePack: return "iterative-pack";
  }
  return "unknown";
}

Branch choose_branch(int m_prime, std::size_t n, std::size_t d) {
  // Integer forms of m >= n/2 and m <= sqrt(n/d).
  const long long m = m_prime;
  if (2 * m >= static_cast<long long>(n)) return Branch::FirstFit;
  if (m * m * static_cast<long long>(d) <= static_cast<long long>(n)) return Branch::GreedyLP;
  return Branch::IterativePack;
}

std::size_t RoundingTrace::items_packed() const {
  std::size_t total = 0;
  for (const auto& r : rounds) total += r.items_packed;
  return total;
}

namespace {

// First fit over `items`, writing fresh global bins starting at next_bin.
RoundRecord finish_with_first_fit(const Instance& inst, const std::vector<int>& items,
                                  std::vector<int>& assignment, int& next_bin) {
  const Packing ff = first_fit(inst.subset(items));
  for (std::size_t r = 0; r < items.size(); ++r) {
    assignment[static_cast<std::size_t>(items[r])] = next_bin + ff.assignment[r];
  }
  next_bin += ff.bin_count;
  RoundRecord rec;
  rec.branch = Branch::FirstFit;
  rec.remaining_before = items.size();
  rec.items_packed = items.size();
  rec.bins_used = ff.bin_count;
  return rec;
}

}  // namespace

PackingVectorsResult packing_vectors(const Instance& inst,
                                     const PackingVectorsOptions& options) {
  PackingVectorsResult out;
  std::vector<int> assignment(inst.size(), -1);
  int next_bin = 0;
  std::vector<int> remaining(inst.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = static_cast<int>(i);

  while (!remaining.empty()) {
    const Instance sub = inst.subset(remaining);
    RelaxationResult relax;
    try {
      relax = solve_relaxation(sub);
    } catch (const RelaxationError& e) {
      RoundRecord rec = finish_with_first_fit(inst, remaining, assignment, next_bin);
      rec.fallback = true;
      rec.note = std::string("lp failure: ") + e.what();
      out.trace.rounds.push_back(std::move(rec));
      break;
    }

    const Branch branch = choose_branch(relax.m_prime, sub.size(), sub.dimension());
    const DualMultipliers z = find_dual_obj(relax.x);
    const double dual_obj = dual_objective(relax.x, z);
    const double col_bound = column_max_bound(relax.x);
    const double quad_obj = quadratic_objective(relax.x);

    if (branch == Branch::FirstFit) {
      RoundRecord rec = finish_with_first_fit(inst, remaining, assignment, next_bin);
      rec.m_prime = relax.m_prime;
      rec.dual_objective = dual_obj;
      rec.column_max_bound = col_bound;
      rec.quadratic_objective = quad_obj;
      out.trace.rounds.push_back(std::move(rec));
      break;
    }

    PartialPacking state(inst, remaining, relax.m_prime);
    state = branch == Branch::GreedyLP ? greedy_lp(std::move(state), relax.x)
                                       : iterative_pack(std::move(state), relax.x);

    RoundRecord rec;
    rec.branch = branch;
    rec.m_prime = relax.m_prime;
    rec.remaining_before = remaining.size();
    rec.items_packed = state.committed_count();
    rec.dual_objective = dual_obj;
    rec.column_max_bound = col_bound;
    rec.quadratic_objective = quad_obj;
    std::vector<bool> used(static_cast<std::size_t>(relax.m_prime), false);
    for (std::size_t r = 0; r < state.rows().size(); ++r) {
      if (!state.is_packed(r)) continue;
      const int b = state.bin_of_row(r);
      used[static_cast<std::size_t>(b)] = true;
      assignment[static_cast<std::size_t>(state.rows()[r])] = next_bin + b;
    }
    rec.bins_used = static_cast<int>(std::count(used.begin(), used.end(), true));
    next_bin += relax.m_prime;
    const bool empty_round = state.committed_count() == 0;
    if (empty_round) rec.note = "empty round";
    out.trace.rounds.push_back(std::move(rec));

    if (empty_round) {
      RoundRecord fb = finish_with_first_fit(inst, remaining, assignment, next_bin);
      fb.fallback = true;
      fb.note = "no progress in previous round";
      out.trace.rounds.push_back(std::move(fb));
      break;
    }
    remaining = state.remaining();
  }

  Packing raw{std::move(assignment), next_bin};
  out.packing = canonicalize(raw);
  if (options.merge_bins) out.packing = merge_bins(inst, out.packing);
  return out;
}

Packing merge_bins(const Instance& inst, const Packing& pk) {
  const std::size_t d = inst.dimension();
  auto members = bin_members(pk);
  std::vector<std::vector<double>> loads(members.size(), std::vector<double>(d, 0.0));
  for (std::size_t b = 0; b < members.size(); ++b) {
    for (int i : members[b]) add_load(loads[b], inst.item(static_cast<std::size_t>(i)));
  }
  std::vector<int> target(members.size());
  for (std::size_t b = 0; b < members.size(); ++b) target[b] = static_cast<int>(b);
  for (std::size_t b = 1; b < members.size(); ++b) {
    for (std::size_t a = 0; a < b; ++a) {
      if (target[a] != static_cast<int>(a)) continue;
      bool ok = true;
      for (std::size_t k = 0; k < d && ok; ++k) ok = loads[a][k] + loads[b][k] <= 1.0 + kEpsCap;
      if (!ok) continue;
      for (std::size_t k = 0; k < d; ++k) loads[a][k] += loads[b][k];
      target[b] = static_cast<int>(a);
      break;
    }
  }
  Packing merged = pk;
  for (auto& b : merged.assignment) b = target[static_cast<std::size_t>(b)];
  return canonicalize(merged);
}

}  // namespace vecpack
