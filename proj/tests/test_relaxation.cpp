#include <gtest/gtest.h>

#include "oracles.hpp"
#include "vecpack/harness.hpp"
#include "vecpack/heuristics.hpp"
#include "vecpack/relaxation.hpp"

using namespace vecpack;

TEST(RelaxedModel, RowAndColumnCounts) {
  const Instance inst = Instance::from_rows(1, {{0.3}, {0.4}});
  const RelaxedModel model = build_relaxed_model(inst, 2);
  EXPECT_EQ(model.assignment_rows(), 2u);
  EXPECT_EQ(model.capacity_rows(), 2u);
  EXPECT_EQ(model.coupling_rows(), 4u);
  EXPECT_EQ(model.usage_bound_rows(), 2u);
  EXPECT_EQ(model.num_vars(), 6u);
  EXPECT_EQ(model.lp.eq_constraints.size(), 2u);
  EXPECT_EQ(model.lp.le_constraints.size(), 2u + 4u + 2u);
}

TEST(RelaxedModel, LayoutIsBijective) {
  const Instance inst = Instance::from_rows(2, {{0.3, 0.1}, {0.4, 0.2}, {0.1, 0.1}});
  const RelaxedModel model = build_relaxed_model(inst, 4);
  std::vector<int> seen(model.num_vars(), 0);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 4; ++j) ++seen.at(model.x_col(i, j));
  }
  for (std::size_t j = 0; j < 4; ++j) ++seen.at(model.y_col(j));
  for (int s : seen) EXPECT_EQ(s, 1);
}

TEST(RelaxedModel, EmptyInstanceIsTriviallyFeasible) {
  const Instance inst(2);
  const RelaxedModel model = build_relaxed_model(inst, 1);
  const LpOutcome out = solve_lp(model.lp);
  ASSERT_EQ(out.status, LpStatus::Optimal);
  EXPECT_NEAR(out.objective_value, 0.0, 1e-12);
  EXPECT_EQ(solve_relaxation(inst).m_prime, 0);
}

TEST(RelaxedModel, RejectsNonPositiveM) {
  const Instance inst = Instance::from_rows(1, {{0.3}});
  EXPECT_THROW(build_relaxed_model(inst, 0), InputError);
  EXPECT_THROW(build_relaxed_model(inst, -2), InputError);
}

TEST(RelaxedModel, Seed42AtTenBins) {
  GenConfig cfg;
  cfg.n = 10;
  cfg.d = 3;
  cfg.seed = 42;
  const Instance inst = generate_instance(cfg);
  const RelaxedModel model = build_relaxed_model(inst, 10);
  const LpOutcome out = solve_lp(model.lp);
  ASSERT_EQ(out.status, LpStatus::Optimal);
  EXPECT_LE(out.objective_value, 10.0 + 1e-9);
  EXPECT_EQ(check_fractional(inst, extract_assignment(model, out.solution)), "");
}

TEST(Relaxation, VolumeForced) {
  const Instance inst = Instance::from_rows(1, {{0.5}, {0.5}, {0.5}, {0.5}});
  const RelaxationResult r = solve_relaxation(inst);
  EXPECT_EQ(r.m_prime, 2);
  EXPECT_EQ(r.x.items(), 4u);
  EXPECT_EQ(r.x.bins(), 2u);
  EXPECT_EQ(check_fractional(inst, r.x), "");
}

TEST(Relaxation, ExactFitInOneBin) {
  const Instance inst = Instance::from_rows(2, {{1.0, 0.0}, {0.0, 1.0}});
  EXPECT_EQ(solve_relaxation(inst).m_prime, 1);
}

TEST(Relaxation, BracketedByBoundsAndOpt) {
  for (std::uint64_t seed = 42; seed < 82; ++seed) {
    GenConfig cfg;
    cfg.n = 10;
    cfg.d = 1 + seed % 4;
    cfg.seed = seed;
    const Instance inst = generate_instance(cfg);
    const RelaxationResult r = solve_relaxation(inst);
    EXPECT_GE(r.m_prime, dimension_lower_bound(inst)) << seed;
    EXPECT_LE(r.m_prime, oracle::subset_dp_opt(inst)) << seed;
    EXPECT_LE(r.m_prime, first_fit_decreasing(inst).bin_count) << seed;
    EXPECT_EQ(check_fractional(inst, r.x), "") << seed;
    EXPECT_LE(r.window.lower, r.m_prime);
    EXPECT_GE(r.window.upper, r.m_prime);
    if (r.m_prime > 1) {
      // One bin fewer must be fractionally infeasible.
      EXPECT_FALSE(check_feasible(build_relaxed_model(inst, r.m_prime - 1).lp)) << seed;
    }
  }
}
