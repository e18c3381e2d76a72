#pragma once

#include <vector>

#include "vecpack/core.hpp"

namespace vecpack {

// Items in input order, each into the lowest-indexed bin it fits.
Packing first_fit(const Instance& inst);

// First fit over the given item order; assignment stays in instance indexing.
Packing first_fit_ordered(const Instance& inst, const std::vector<int>& order);

// Decreasing coordinate sum, then decreasing max coordinate, then index.
std::vector<int> decreasing_size_order(const Instance& inst);

Packing first_fit_decreasing(const Instance& inst);

}  // namespace vecpack
