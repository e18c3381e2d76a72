#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "vecpack/harness.hpp"
#include "vecpack/heuristics.hpp"

using namespace vecpack;

TEST(FirstFit, OneDimensionalTrace) {
  const Instance inst = Instance::from_rows(1, {{0.6}, {0.5}, {0.4}, {0.3}});
  const Packing pk = first_fit(inst);
  EXPECT_EQ(pk.assignment, (std::vector<int>{0, 1, 0, 1}));
  EXPECT_EQ(pk.bin_count, 2);
}

TEST(FirstFit, TwoDimensionalTrace) {
  const Instance inst = Instance::from_rows(2, {{0.9, 0.1}, {0.1, 0.9}, {0.5, 0.5}});
  const Packing pk = first_fit(inst);
  EXPECT_EQ(pk.assignment, (std::vector<int>{0, 0, 1}));
  EXPECT_EQ(pk.bin_count, 2);
}

TEST(FirstFit, Empty) {
  EXPECT_EQ(first_fit(Instance(3)).bin_count, 0);
  EXPECT_EQ(first_fit_decreasing(Instance(3)).bin_count, 0);
}

TEST(Ffd, SortsFirst) {
  const Instance inst = Instance::from_rows(1, {{0.3}, {0.6}, {0.5}, {0.4}});
  EXPECT_EQ(decreasing_size_order(inst), (std::vector<int>{1, 2, 3, 0}));
  const Packing pk = first_fit_decreasing(inst);
  EXPECT_EQ(pk.bin_count, 2);
  EXPECT_TRUE(validate_packing(inst, pk).ok());
}

TEST(Ffd, SingleItem) {
  EXPECT_EQ(first_fit_decreasing(Instance::from_rows(2, {{0.7, 0.2}})).bin_count, 1);
}

TEST(Ffd, OrderTieBreaks) {
  // equal sums: larger max coordinate first, then lower index
  const Instance inst = Instance::from_rows(2, {{0.3, 0.3}, {0.5, 0.1}, {0.1, 0.5}, {0.4, 0.4}});
  EXPECT_EQ(decreasing_size_order(inst), (std::vector<int>{3, 1, 2, 0}));
}

TEST(Ffd, PermutationInvariantBinCount) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenConfig cfg;
    cfg.n = 15;
    cfg.d = 3;
    cfg.seed = seed;
    const Instance inst = generate_instance(cfg);
    std::vector<int> perm(inst.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    std::rotate(perm.begin(), perm.begin() + static_cast<long>(seed % inst.size()), perm.end());
    EXPECT_EQ(first_fit_decreasing(inst).bin_count,
              first_fit_decreasing(inst.subset(perm)).bin_count)
        << seed;
  }
}

TEST(Heuristics, RandomInstancesAgainstOracle) {
  int ffd_not_worse = 0;
  const int total = 500;
  for (int t = 0; t < total; ++t) {
    GenConfig cfg;
    cfg.n = 12;
    cfg.d = 2 + static_cast<std::size_t>(t % 9);
    cfg.seed = 1000 + static_cast<std::uint64_t>(t);
    const Instance inst = generate_instance(cfg);
    const int opt = oracle::subset_dp_opt(inst);
    const Packing ff = first_fit(inst);
    const Packing ffd = first_fit_decreasing(inst);
    ASSERT_TRUE(validate_packing(inst, ff).ok()) << t;
    ASSERT_TRUE(validate_packing(inst, ffd).ok()) << t;
    EXPECT_GE(ff.bin_count, opt);
    EXPECT_GE(ffd.bin_count, opt);
    EXPECT_GE(ffd.bin_count, dimension_lower_bound(inst));
    if (ffd.bin_count <= ff.bin_count) ++ffd_not_worse;
  }
  RecordProperty("ffd_not_worse", ffd_not_worse);
  EXPECT_GT(ffd_not_worse, total * 3 / 4);
}
