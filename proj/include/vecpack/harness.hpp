#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vecpack/core.hpp"
#include "vecpack/exact.hpp"
#include "vecpack/qp.hpp"

namespace vecpack {

enum class Distribution { Uniform01, UniformScaled };

struct GenConfig {
  std::size_t n = 20;
  std::size_t d = 2;
  Distribution distribution = Distribution::Uniform01;
  // Interval for UniformScaled; 0 < lo <= hi <= 1.
  double lo = 0.0;
  double hi = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
  std::string describe_distribution() const;
};

// Coordinate k of item i is draw i*d + k of a counter stream keyed by seed.
Instance generate_instance(const GenConfig& cfg);

// Seed of instance `trial` at dimension d for a run keyed by base_seed.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t d, std::size_t trial);

struct TrialRecord {
  std::size_t d = 0;
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  int m_prime = 0;
  int bins_pv = 0;
  int bins_ff = 0;
  int bins_ffd = 0;
  int bins_qp = 0;
  int opt = 0;
  bool proven = false;
  double ratio_pv = 0.0;
  double ratio_ff = 0.0;
  double ratio_ffd = 0.0;
  double ratio_qp = 0.0;
  double seconds_pv = 0.0;
  double seconds_ff = 0.0;
  double seconds_ffd = 0.0;
  double seconds_qp = 0.0;
  double seconds_exact = 0.0;
};

struct SummaryRow {
  std::size_t d = 0;
  std::size_t trials = 0;  // proven trials included in the means
  double mean_ratio_pv = 0.0;
  double mean_ratio_ff = 0.0;
  double mean_ratio_ffd = 0.0;
  double mean_ratio_qp = 0.0;
  double ln_d_plus_1 = 0.0;
  std::size_t unproven = 0;

  // More than 5% of this dimension's trials lacked a proven optimum.
  bool flagged() const;
  friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

struct ExperimentConfig {
  std::size_t dim_lo = 2;
  std::size_t dim_hi = 10;
  std::size_t trials = 200;
  std::size_t n = 20;
  GenConfig generator;  // n, d and seed are set per trial
  std::uint64_t seed = 7;
  int qp_restarts = kDefaultRestarts;
  std::int64_t node_budget = kDefaultNodeBudget;
  bool run_qp = true;
  // 0 picks VECPACK_THREADS or the hardware concurrency.
  unsigned threads = 0;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;  // ordered by (d, trial)
  std::vector<SummaryRow> summaries;
  bool flagged() const;
};

// Solves one generated instance with every algorithm and validates all of
// the packings; throws std::logic_error on an invalid packing.
TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t d, std::size_t trial);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

unsigned worker_count(unsigned requested);

inline constexpr const char* kSummaryCsvHeader =
    "d,trials,mean_ratio_pv,mean_ratio_ff,mean_ratio_ffd,mean_ratio_qp,ln_d_plus_1,unproven";

// Optional '#' comment line, then the header and one row per dimension.
std::string summary_csv(const std::vector<SummaryRow>& rows, const std::string& comment = {});
std::vector<SummaryRow> parse_summary_csv(const std::string& text);

std::string records_csv(const std::vector<TrialRecord>& records);

std::string experiment_comment(const ExperimentConfig& cfg);

}  // namespace vecpack
