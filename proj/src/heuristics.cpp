#include "vecpack/heuristics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace vecpack {

Packing first_fit_ordered(const Instance& inst, const std::vector<int>& order) {
  const std::size_t d = inst.dimension();
  Packing pk;
  pk.assignment.assign(inst.size(), -1);
  std::vector<double> loads;  // bin-major, d entries per bin
  for (int i : order) {
    const ItemVector& item = inst.item(static_cast<std::size_t>(i));
    int placed = -1;
    for (int b = 0; b < pk.bin_count; ++b) {
      if (fits({loads.data() + static_cast<std::size_t>(b) * d, d}, item)) {
        placed = b;
        break;
      }
    }
    if (placed < 0) {
      // An item within [0,1]^d always fits an empty bin.
      placed = pk.bin_count++;
      loads.resize(loads.size() + d, 0.0);
    }
    add_load({loads.data() + static_cast<std::size_t>(placed) * d, d}, item);
    pk.assignment[static_cast<std::size_t>(i)] = placed;
  }
  return pk;
}

Packing first_fit(const Instance& inst) {
  std::vector<int> order(inst.size());
  std::iota(order.begin(), order.end(), 0);
  return first_fit_ordered(inst, order);
}

std::vector<int> decreasing_size_order(const Instance& inst) {
  std::vector<int> order(inst.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> sums(inst.size());
  std::vector<double> maxes(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    sums[i] = inst.item(i).coord_sum();
    maxes[i] = inst.item(i).max_coord();
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (sums[a] != sums[b]) return sums[a] > sums[b];
    if (maxes[a] != maxes[b]) return maxes[a] > maxes[b];
    return a < b;
  });
  return order;
}

Packing first_fit_decreasing(const Instance& inst) {
  return canonicalize(first_fit_ordered(inst, decreasing_size_order(inst)));
}

}  // namespace vecpack
