#include <gtest/gtest.h>

#include <cmath>

#include "vecpack/harness.hpp"

using namespace vecpack;

namespace {

bool same_instance(const Instance& a, const Instance& b) {
  if (a.dimension() != b.dimension() || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < a.dimension(); ++k) {
      if (a.item(i)[k] != b.item(i)[k]) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Generate, Deterministic) {
  GenConfig cfg;
  cfg.n = 20;
  cfg.d = 5;
  cfg.seed = 42;
  EXPECT_TRUE(same_instance(generate_instance(cfg), generate_instance(cfg)));
  GenConfig other = cfg;
  other.seed = 43;
  EXPECT_FALSE(same_instance(generate_instance(cfg), generate_instance(other)));
}

TEST(Generate, DegenerateScaledInterval) {
  GenConfig cfg;
  cfg.n = 1;
  cfg.d = 1;
  cfg.distribution = Distribution::UniformScaled;
  cfg.lo = 0.3;
  cfg.hi = 0.3;
  const Instance inst = generate_instance(cfg);
  ASSERT_EQ(inst.size(), 1u);
  EXPECT_EQ(inst.item(0)[0], 0.3);
}

TEST(Generate, CoordinatesInRange) {
  for (std::size_t d = 2; d <= 10; ++d) {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      GenConfig cfg;
      cfg.n = 20;
      cfg.d = d;
      cfg.seed = seed;
      const Instance inst = generate_instance(cfg);
      ASSERT_EQ(inst.size(), 20u);
      for (const ItemVector& v : inst.items()) {
        for (double c : v.coords()) {
          ASSERT_GE(c, 0.0);
          ASSERT_LE(c, 1.0);
        }
      }
    }
  }
}

TEST(Generate, RejectsBadConfig) {
  GenConfig cfg;
  cfg.n = 0;
  EXPECT_THROW(generate_instance(cfg), InputError);
  cfg.n = 3;
  cfg.distribution = Distribution::UniformScaled;
  cfg.lo = 0.5;
  cfg.hi = 0.4;
  EXPECT_THROW(generate_instance(cfg), InputError);
  cfg.lo = 0.0;
  cfg.hi = 0.4;
  EXPECT_THROW(generate_instance(cfg), InputError);
}

TEST(Experiment, SingletonAggregate) {
  ExperimentConfig cfg;
  cfg.dim_lo = 2;
  cfg.dim_hi = 2;
  cfg.trials = 1;
  cfg.qp_restarts = 2;
  const ExperimentResult res = run_experiment(cfg);
  ASSERT_EQ(res.records.size(), 1u);
  ASSERT_EQ(res.summaries.size(), 1u);
  const TrialRecord& rec = res.records[0];
  const SummaryRow& row = res.summaries[0];
  ASSERT_TRUE(rec.proven);
  EXPECT_EQ(row.trials, 1u);
  EXPECT_EQ(row.mean_ratio_pv, rec.ratio_pv);
  EXPECT_EQ(row.mean_ratio_ff, rec.ratio_ff);
  EXPECT_EQ(row.mean_ratio_ffd, rec.ratio_ffd);
  EXPECT_EQ(row.mean_ratio_qp, rec.ratio_qp);
  EXPECT_DOUBLE_EQ(row.ln_d_plus_1, std::log(2.0) + 1.0);
}

TEST(Experiment, RatiosAtLeastOneAndOrdered) {
  ExperimentConfig cfg;
  cfg.dim_lo = 2;
  cfg.dim_hi = 4;
  cfg.trials = 4;
  cfg.n = 12;
  cfg.qp_restarts = 2;
  const ExperimentResult res = run_experiment(cfg);
  ASSERT_EQ(res.records.size(), 12u);
  for (std::size_t k = 0; k < res.records.size(); ++k) {
    const TrialRecord& rec = res.records[k];
    EXPECT_EQ(rec.d, 2 + k / 4);
    EXPECT_EQ(rec.trial, k % 4);
    if (!rec.proven) continue;
    for (double r : {rec.ratio_pv, rec.ratio_ff, rec.ratio_ffd, rec.ratio_qp}) EXPECT_GE(r, 1.0);
    EXPECT_LE(rec.m_prime, rec.opt);
  }
  EXPECT_EQ(res.summaries.size(), 3u);
}

TEST(Experiment, WithoutQpLeavesColumnEmpty) {
  ExperimentConfig cfg;
  cfg.dim_lo = 3;
  cfg.dim_hi = 3;
  cfg.trials = 2;
  cfg.run_qp = false;
  const ExperimentResult res = run_experiment(cfg);
  EXPECT_TRUE(std::isnan(res.summaries[0].mean_ratio_qp));
}

TEST(Experiment, ThreadCountDoesNotChangeResults) {
  ExperimentConfig cfg;
  cfg.dim_lo = 2;
  cfg.dim_hi = 3;
  cfg.trials = 3;
  cfg.n = 10;
  cfg.qp_restarts = 1;
  cfg.threads = 1;
  const ExperimentResult one = run_experiment(cfg);
  cfg.threads = 3;
  const ExperimentResult three = run_experiment(cfg);
  EXPECT_EQ(summary_csv(one.summaries), summary_csv(three.summaries));
}

TEST(Summary, UnprovenTrialsAreExcludedAndFlagged) {
  std::vector<TrialRecord> recs(20);
  for (std::size_t t = 0; t < recs.size(); ++t) {
    recs[t].d = 3;
    recs[t].trial = t;
    recs[t].proven = t != 0;
    recs[t].ratio_pv = t == 0 ? 100.0 : 1.0;
    recs[t].ratio_ff = recs[t].ratio_ffd = recs[t].ratio_qp = 1.0;
  }
  auto rows = summarize(recs);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].trials, 19u);
  EXPECT_EQ(rows[0].unproven, 1u);
  EXPECT_EQ(rows[0].mean_ratio_pv, 1.0);
  EXPECT_FALSE(rows[0].flagged());  // 1 of 20 is exactly 5%
  recs[1].proven = false;
  EXPECT_TRUE(summarize(recs)[0].flagged());
}

TEST(Csv, HeaderIsExact) {
  const std::string csv = summary_csv({});
  EXPECT_EQ(csv, std::string(kSummaryCsvHeader) + "\n");
}

TEST(Csv, RoundTrip) {
  SummaryRow a;
  a.d = 2;
  a.trials = 200;
  a.mean_ratio_pv = 1.0 / 3.0;
  a.mean_ratio_ff = 1.1234567890123457;
  a.mean_ratio_ffd = 1e-300;
  a.mean_ratio_qp = std::numeric_limits<double>::quiet_NaN();
  a.ln_d_plus_1 = std::log(2.0) + 1.0;
  a.unproven = 3;
  SummaryRow b = a;
  b.d = 10;
  b.mean_ratio_qp = 1.25;
  const std::string csv = summary_csv({a, b}, "distribution=uniform01");
  EXPECT_EQ(csv.rfind("# ", 0), 0u);
  const auto back = parse_summary_csv(csv);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1], b);
  EXPECT_EQ(back[0].mean_ratio_pv, a.mean_ratio_pv);
  EXPECT_EQ(back[0].mean_ratio_ffd, a.mean_ratio_ffd);
  EXPECT_TRUE(std::isnan(back[0].mean_ratio_qp));
  EXPECT_EQ(summary_csv(back, "distribution=uniform01"), csv);
}

TEST(Csv, ParseErrorsNameTheLine) {
  try {
    parse_summary_csv(std::string(kSummaryCsvHeader) + "\n2,1,x,1,1,1,1,0\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}
