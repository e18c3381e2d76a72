#include "vecpack/cli.hpp"

#include <charconv>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "vecpack/exact.hpp"
#include "vecpack/harness.hpp"
#include "vecpack/heuristics.hpp"
#include "vecpack/io.hpp"
#include "vecpack/qp.hpp"
#include "vecpack/relaxation.hpp"
#include "vecpack/rounding.hpp"

namespace vecpack {

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DistOptions {
  std::string name = "uniform01";
  double lo = 0.0;
  double hi = 1.0;

  void apply(GenConfig& cfg) const {
    if (name == "uniform01") {
      cfg.distribution = Distribution::Uniform01;
    } else if (name == "scaled") {
      cfg.distribution = Distribution::UniformScaled;
      cfg.lo = lo;
      cfg.hi = hi;
    } else {
      throw UsageError("unknown distribution '" + name + "' (expected uniform01 or scaled)");
    }
  }
};

void add_dist_options(CLI::App* cmd, DistOptions& dist) {
  cmd->add_option("--dist", dist.name, "uniform01 or scaled");
  cmd->add_option("--lo", dist.lo, "lower end for --dist scaled");
  cmd->add_option("--hi", dist.hi, "upper end for --dist scaled");
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text) {
  auto parse = [&text](std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
      throw UsageError("invalid --dims '" + text + "' (expected e.g. 2..10)");
    }
    return v;
  };
  const auto sep = text.find("..");
  if (sep == std::string::npos) {
    const std::size_t d = parse(text);
    return {d, d};
  }
  const std::size_t lo = parse(std::string_view(text).substr(0, sep));
  const std::size_t hi = parse(std::string_view(text).substr(sep + 2));
  if (lo > hi) throw UsageError("invalid --dims '" + text + "': empty range");
  return {lo, hi};
}

struct GenArgs {
  std::size_t n = 20;
  std::size_t d = 2;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  DistOptions dist;
};

int run_gen(const GenArgs& a, std::ostream& out) {
  GenConfig cfg;
  cfg.n = a.n;
  cfg.d = a.d;
  cfg.seed = a.seed;
  a.dist.apply(cfg);
  const Instance inst = generate_instance(cfg);
  std::string text;
  if (a.format == "json") {
    text = instance_to_json(inst);
  } else if (a.format == "text") {
    text = instance_to_text(inst);
  } else {
    throw UsageError("unknown --format '" + a.format + "' (expected json or text)");
  }
  if (a.out.empty()) {
    out << text;
  } else {
    write_file(a.out, text);
  }
  return 0;
}

struct SolveArgs {
  std::string algo;
  std::string input;
  std::string out;
  int restarts = kDefaultRestarts;
  std::uint64_t seed = 0;
  std::int64_t node_budget = kDefaultNodeBudget;
  bool merge = false;
  bool trace = false;
};

int run_solve(const SolveArgs& a, std::ostream& out) {
  static const std::map<std::string, std::string> aliases = {
      {"first-fit", "first-fit"}, {"ff", "first-fit"},
      {"ffd", "ffd"},             {"first-fit-decreasing", "ffd"},
      {"packing-vectors", "pv"},  {"pv", "pv"},
      {"qp", "qp"},               {"exact", "exact"}};
  const auto it = aliases.find(a.algo);
  if (it == aliases.end()) {
    throw UsageError("unknown algorithm '" + a.algo +
                     "' (expected first-fit, ffd, packing-vectors, qp or exact)");
  }
  const Instance inst = parse_instance(read_file(a.input));
  nlohmann::json doc;
  Packing pk;
  const std::string& algo = it->second;
  if (algo == "first-fit") {
    pk = first_fit(inst);
  } else if (algo == "ffd") {
    pk = first_fit_decreasing(inst);
  } else if (algo == "pv") {
    PackingVectorsOptions opts;
    opts.merge_bins = a.merge;
    auto res = packing_vectors(inst, opts);
    pk = std::move(res.packing);
    if (a.trace) doc["trace"] = trace_to_json(res.trace);
  } else if (algo == "qp") {
    const int m = inst.empty() ? 0 : solve_relaxation(inst).m_prime;
    if (m == 0) {
      pk = Packing{};
    } else {
      const QpResult q = solve_nlp_prime(inst, m, a.restarts, a.seed);
      pk = extract_packing(q, inst);
      doc["qp"] = {{"m", m},
                   {"objective", q.objective},
                   {"dual_objective", q.dual_objective},
                   {"integral", q.integral},
                   {"restarts_used", q.restarts_used},
                   {"restarts_discarded", q.restarts_discarded}};
    }
  } else {
    const ExactResult ex = solve_exact(inst, a.node_budget);
    pk = ex.packing;
    doc["proven"] = ex.proven;
    doc["nodes"] = ex.nodes_explored;
  }
  const ValidationReport report = validate_packing(inst, pk);
  if (!report.ok()) throw std::logic_error("solver produced an invalid packing: " + report.to_string());

  const nlohmann::json packing = packing_to_json(pk);
  for (auto& [key, value] : packing.items()) doc[key] = value;
  if (!a.out.empty()) write_file(a.out, packing.dump() + "\n");
  out << doc.dump() << "\n";
  out << "bins=" << pk.bin_count << "\n";
  return 0;
}

struct BenchArgs {
  std::string dims = "2..10";
  std::size_t trials = 200;
  std::size_t n = 20;
  std::uint64_t seed = 7;
  std::string out;
  std::string records;
  int restarts = kDefaultRestarts;
  std::int64_t node_budget = kDefaultNodeBudget;
  bool no_qp = false;
  unsigned threads = 0;
  DistOptions dist;
};

int run_bench(const BenchArgs& a, std::ostream& out) {
  ExperimentConfig cfg;
  std::tie(cfg.dim_lo, cfg.dim_hi) = parse_dims(a.dims);
  cfg.trials = a.trials;
  cfg.n = a.n;
  cfg.seed = a.seed;
  cfg.qp_restarts = a.restarts;
  cfg.node_budget = a.node_budget;
  cfg.run_qp = !a.no_qp;
  cfg.threads = a.threads;
  a.dist.apply(cfg.generator);
  const ExperimentResult result = run_experiment(cfg);
  const std::string csv = summary_csv(result.summaries, experiment_comment(cfg));
  if (a.out.empty()) {
    out << csv;
  } else {
    write_file(a.out, csv);
  }
  if (!a.records.empty()) write_file(a.records, records_csv(result.records));
  for (const SummaryRow& row : result.summaries) {
    if (row.flagged()) {
      out << "warning: d=" << row.d << " has " << row.unproven
          << " trials without a proven optimum (over 5%)\n";
    }
    if (row.trials > 0 && row.mean_ratio_pv > 1.2) {
      out << "note: d=" << row.d << " mean packing-vectors ratio " << row.mean_ratio_pv
          << " is above 1.2\n";
    }
  }
  return 0;
}

int run_verify(const std::string& instance_path, const std::string& packing_path,
               std::ostream& out) {
  const Instance inst = parse_instance(read_file(instance_path));
  const Packing pk = parse_packing_json(read_file(packing_path));
  const ValidationReport report = validate_packing(inst, pk);
  if (report.ok()) {
    out << "ok: " << inst.size() << " items in " << pk.bin_count << " bins\n";
    return 0;
  }
  out << "invalid packing\n" << report.to_string();
  return kExitFailure;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vector bin packing solvers and benchmark harness", "vecpack"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a random instance");
  gen_cmd->add_option("--n", gen.n, "number of items")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--d", gen.d, "dimension")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_option("--format", gen.format, "json or text");
  gen_cmd->add_option("--out", gen.out, "output file (default: stdout)");
  add_dist_options(gen_cmd, gen.dist);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Pack one instance");
  solve_cmd->add_option("--algo", solve.algo, "first-fit, ffd, packing-vectors, qp or exact")
      ->required();
  solve_cmd->add_option("--input", solve.input, "instance file (JSON or text)")->required();
  solve_cmd->add_option("--out", solve.out, "also write the packing JSON here");
  solve_cmd->add_option("--restarts", solve.restarts, "QP restarts")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", solve.seed, "QP seed");
  solve_cmd->add_option("--node-budget", solve.node_budget, "exact search node budget")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--merge-bins", solve.merge, "merge mutually fitting bins afterwards");
  solve_cmd->add_flag("--trace", solve.trace, "include the rounding trace");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run the approximation-ratio experiment");
  bench_cmd->add_option("--dims", bench.dims, "dimension range, e.g. 2..10");
  bench_cmd->add_option("--trials", bench.trials, "trials per dimension")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--n", bench.n, "items per instance")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "base seed");
  bench_cmd->add_option("--out", bench.out, "summary CSV file (default: stdout)");
  bench_cmd->add_option("--records", bench.records, "per-trial CSV file");
  bench_cmd->add_option("--restarts", bench.restarts, "QP restarts")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--node-budget", bench.node_budget, "exact search node budget")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--no-qp", bench.no_qp, "skip the QP solver");
  bench_cmd->add_option("--threads", bench.threads, "worker threads (capped by VECPACK_THREADS)");
  add_dist_options(bench_cmd, bench.dist);

  std::string verify_instance;
  std::string verify_packing;
  auto* verify_cmd = app.add_subcommand("verify", "Check a packing against an instance");
  verify_cmd->add_option("--instance", verify_instance, "instance file")->required();
  verify_cmd->add_option("--packing", verify_packing, "packing JSON file")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen, out);
    if (*solve_cmd) return run_solve(solve, out);
    if (*bench_cmd) return run_bench(bench, out);
    if (*verify_cmd) return run_verify(verify_instance, verify_packing, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace vecpack
