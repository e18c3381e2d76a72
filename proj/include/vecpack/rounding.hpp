#pragma once

#include <span>
#include <string>
#include <vector>

#include "vecpack/core.hpp"

namespace vecpack {

// z_ij = x_ij / sum_i x_ij on columns with mass above kEpsNum, zero elsewhere.
DualMultipliers find_dual_obj(const FractionalAssignment& x);

// sum_i x_ij z_ij for bin j.
double utility_factor(const FractionalAssignment& x, const DualMultipliers& z,
                      std::size_t j);

// sum_ij x_ij z_ij
double dual_objective(const FractionalAssignment& x, const DualMultipliers& z);
// sum_j max_i x_ij, the best value any z with column sums <= 1 can reach.
double column_max_bound(const FractionalAssignment& x);
// sum_ij x_ij^2
double quadratic_objective(const FractionalAssignment& x);

// Commit state for one rounding round. Row r of the round's X is item
// rows()[r]; the round owns `bins` fresh, initially empty bins.
class PartialPacking {
 public:
  PartialPacking(const Instance& inst, std::vector<int> rows, int bins);

  const Instance& instance() const { return *inst_; }
  const std::vector<int>& rows() const { return rows_; }
  int bins() const { return bins_; }

  bool is_packed(std::size_t row) const { return bin_of_row_[row] >= 0; }
  int bin_of_row(std::size_t row) const { return bin_of_row_[row]; }
  std::span<const double> load(int bin) const;

  bool fits(std::size_t row, int bin) const;
  // Commits when the row is unpacked and fits; returns whether it did.
  bool try_commit(std::size_t row, int bin);

  std::size_t committed_count() const { return committed_; }
  // Global indices of items not yet committed, ascending.
  std::vector<int> remaining() const;

 private:
  const Instance* inst_;
  std::vector<int> rows_;
  int bins_;
  std::vector<int> bin_of_row_;
  std::vector<double> loads_;
  std::size_t committed_ = 0;
};

// Scan every x_ij in descending order (ties: lower row, then lower bin) and
// commit row i to bin j whenever i is unpacked and fits.
PartialPacking greedy_lp(PartialPacking state, const FractionalAssignment& x);

// For bins with utility factor >= 1/2, commit the column's entries with
// x_ij >= 1/2 in descending order, each only if it fits.
PartialPacking iterative_pack(PartialPacking state, const FractionalAssignment& x);

enum class Branch { FirstFit, GreedyLP, IterativePack };

const char* to_string(Branch b);

// m' >= n/2 -> FirstFit, else m' <= sqrt(n/d) -> GreedyLP, else IterativePack.
Branch choose_branch(int m_prime, std::size_t n, std::size_t d);

struct RoundRecord {
  Branch branch = Branch::FirstFit;
  int m_prime = 0;
  std::size_t remaining_before = 0;
  std::size_t items_packed = 0;
  int bins_used = 0;
  bool fallback = false;
  std::string note;
  double dual_objective = 0.0;
  double column_max_bound = 0.0;
  double quadratic_objective = 0.0;
};

struct RoundingTrace {
  std::vector<RoundRecord> rounds;

  std::size_t items_packed() const;
};

struct PackingVectorsOptions {
  // Greedily merge mutually fitting bins after the recursion.
  bool merge_bins = false;
};

struct PackingVectorsResult {
  Packing packing;
  RoundingTrace trace;
};

PackingVectorsResult packing_vectors(const Instance& inst,
                                     const PackingVectorsOptions& options = {});

// Merge bins pairwise while the union fits; result is canonical.
Packing merge_bins(const Instance& inst, const Packing& pk);

}  // namespace vecpack
