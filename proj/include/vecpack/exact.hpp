#pragma once

#include <cstdint>

#include "vecpack/core.hpp"

namespace vecpack {

inline constexpr std::int64_t kDefaultNodeBudget = 5'000'000;
inline constexpr std::size_t kEnumerationLimit = 10;

struct ExactResult {
  Packing packing;
  int opt = 0;
  std::int64_t nodes_explored = 0;
  // True when the search finished, so no packing with fewer bins exists.
  bool proven = false;
};

// Depth-first branch and bound over items in decreasing size order, seeded
// with the FFD packing. Each item tries the open bins it fits, then a single
// new bin.
ExactResult solve_exact(const Instance& inst, std::int64_t node_budget = kDefaultNodeBudget);

// Minimum bin count over all set partitions of the items whose blocks fit.
// Refuses instances with more than kEnumerationLimit items.
int enumerate_opt(const Instance& inst);

}  // namespace vecpack
