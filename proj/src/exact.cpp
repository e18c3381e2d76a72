#include "vecpack/exact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vecpack/heuristics.hpp"

namespace vecpack {

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst, std::int64_t budget)
      : inst_(inst),
        d_(inst.dimension()),
        budget_(budget),
        order_(decreasing_size_order(inst)),
        assignment_(inst.size(), -1),
        global_lower_(dimension_lower_bound(inst)) {}

  ExactResult run() {
    ExactResult result;
    best_ = first_fit_decreasing(inst_);
    if (best_.bin_count > global_lower_) {
      loads_.reserve(inst_.size() * d_);
      search(0, 0);
    }
    result.packing = best_;
    result.opt = best_.bin_count;
    result.nodes_explored = nodes_;
    result.proven = !aborted_;
    return result;
  }

 private:
  std::span<double> load(int b) { return {loads_.data() + static_cast<std::size_t>(b) * d_, d_}; }

  void place(std::size_t item, int b, double sign) {
    auto l = load(b);
    const ItemVector& v = inst_.item(item);
    for (std::size_t k = 0; k < d_; ++k) l[k] += sign * v[k];
  }

  // Items that fit no open bin must open new bins; their volume bounds how many.
  int lower_bound(std::size_t pos, int bins) {
    std::vector<double> stranded(d_, 0.0);
    for (std::size_t p = pos; p < order_.size(); ++p) {
      const ItemVector& v = inst_.item(static_cast<std::size_t>(order_[p]));
      bool fits_somewhere = false;
      for (int b = 0; b < bins && !fits_somewhere; ++b) fits_somewhere = fits(load(b), v);
      if (!fits_somewhere) add_load(stranded, v);
    }
    const double slack = kEpsCap * static_cast<double>(inst_.size());
    int extra = 0;
    for (double s : stranded) extra = std::max(extra, static_cast<int>(std::ceil(s - slack)));
    return std::max(global_lower_, bins + extra);
  }

  bool done() const { return aborted_ || best_.bin_count <= global_lower_; }

  void search(std::size_t pos, int bins) {
    if (done()) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (pos == order_.size()) {
      if (bins < best_.bin_count) best_ = canonicalize({assignment_, bins});
      return;
    }
    if (bins >= best_.bin_count || lower_bound(pos, bins) >= best_.bin_count) return;

    const std::size_t item = static_cast<std::size_t>(order_[pos]);
    for (int b = 0; b < bins; ++b) {
      if (!fits(load(b), inst_.item(item))) continue;
      // Bins with identical loads lead to symmetric subtrees.
      bool duplicate = false;
      for (int a = 0; a < b && !duplicate; ++a) {
        duplicate = std::equal(load(a).begin(), load(a).end(), load(b).begin());
      }
      if (duplicate) continue;
      place(item, b, 1.0);
      assignment_[item] = b;
      search(pos + 1, bins);
      place(item, b, -1.0);
      if (done()) return;
    }
    if (bins + 1 < best_.bin_count) {
      loads_.resize(static_cast<std::size_t>(bins + 1) * d_, 0.0);
      std::fill(loads_.begin() + static_cast<std::ptrdiff_t>(bins * d_), loads_.end(), 0.0);
      place(item, bins, 1.0);
      assignment_[item] = bins;
      search(pos + 1, bins + 1);
      loads_.resize(static_cast<std::size_t>(bins) * d_);
    }
    assignment_[item] = -1;
  }

  const Instance& inst_;
  std::size_t d_;
  std::int64_t budget_;
  std::vector<int> order_;
  std::vector<int> assignment_;
  std::vector<double> loads_;
  int global_lower_;
  Packing best_;
  std::int64_t nodes_ = 0;
  bool aborted_ = false;
};

void enumerate(const Instance& inst, std::size_t i, std::vector<std::vector<double>>& blocks,
               int& best) {
  if (i == inst.size()) {
    best = std::min(best, static_cast<int>(blocks.size()));
    return;
  }
  const ItemVector& v = inst.item(i);
  // Index access: the recursion appends to blocks and may reallocate.
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (!fits(blocks[b], v)) continue;
    add_load(blocks[b], v);
    enumerate(inst, i + 1, blocks, best);
    for (std::size_t k = 0; k < v.dimension(); ++k) blocks[b][k] -= v[k];
  }
  blocks.emplace_back(inst.dimension(), 0.0);
  add_load(blocks.back(), v);
  enumerate(inst, i + 1, blocks, best);
  blocks.pop_back();
}

}  // namespace

ExactResult solve_exact(const Instance& inst, std::int64_t node_budget) {
  if (node_budget < 1) throw InputError("node budget must be at least 1");
  if (inst.empty()) return {Packing{}, 0, 0, true};
  return BranchAndBound(inst, node_budget).run();
}

int enumerate_opt(const Instance& inst) {
  if (inst.size() > kEnumerationLimit) {
    throw InputError("enumeration refused for " + std::to_string(inst.size()) +
                     " items (limit " + std::to_string(kEnumerationLimit) + ")");
  }
  if (inst.empty()) return 0;
  std::vector<std::vector<double>> blocks;
  int best = static_cast<int>(inst.size());
  enumerate(inst, 0, blocks, best);
  return best;
}

}  // namespace vecpack
