#include "vecpack/harness.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "vecpack/heuristics.hpp"
#include "vecpack/random.hpp"
#include "vecpack/relaxation.hpp"
#include "vecpack/rounding.hpp"

namespace vecpack {

void GenConfig::validate() const {
  if (n < 1) throw InputError("generator needs n >= 1");
  if (d < 1) throw InputError("generator needs d >= 1");
  if (distribution == Distribution::UniformScaled && !(lo > 0.0 && lo <= hi && hi <= 1.0)) {
    throw InputError("scaled distribution needs 0 < lo <= hi <= 1");
  }
}

std::string GenConfig::describe_distribution() const {
  if (distribution == Distribution::Uniform01) return "uniform01";
  std::ostringstream out;
  out << "scaled(" << lo << "," << hi << ")";
  return out.str();
}

Instance generate_instance(const GenConfig& cfg) {
  cfg.validate();
  const CounterRng rng(cfg.seed);
  std::vector<ItemVector> items;
  items.reserve(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    std::vector<double> coords(cfg.d);
    for (std::size_t k = 0; k < cfg.d; ++k) {
      const double u = rng.uniform(i * cfg.d + k);
      coords[k] = cfg.distribution == Distribution::Uniform01 ? u
                                                              : cfg.lo + (cfg.hi - cfg.lo) * u;
    }
    items.emplace_back(std::move(coords));
  }
  return Instance(cfg.d, std::move(items));
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t d, std::size_t trial) {
  return CounterRng(base_seed).derive(d).bits(trial);
}

namespace {

template <class F>
auto timed(double& seconds, F&& f) {
  const auto start = std::chrono::steady_clock::now();
  auto result = f();
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void require_valid(const Instance& inst, const Packing& pk, const char* algo,
                   std::size_t d, std::size_t trial) {
  const ValidationReport report = validate_packing(inst, pk);
  if (!report.ok()) {
    std::ostringstream msg;
    msg << algo << " produced an invalid packing (d=" << d << ", trial=" << trial
        << "): " << report.to_string();
    throw std::logic_error(msg.str());
  }
}

}  // namespace

TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t d, std::size_t trial) {
  GenConfig gen = cfg.generator;
  gen.n = cfg.n;
  gen.d = d;
  gen.seed = trial_seed(cfg.seed, d, trial);
  const Instance inst = generate_instance(gen);

  TrialRecord rec;
  rec.d = d;
  rec.n = cfg.n;
  rec.trial = trial;
  rec.seed = gen.seed;

  const Packing ff = timed(rec.seconds_ff, [&] { return first_fit(inst); });
  const Packing ffd = timed(rec.seconds_ffd, [&] { return first_fit_decreasing(inst); });
  const Packing pv = timed(rec.seconds_pv, [&] { return packing_vectors(inst).packing; });
  const ExactResult exact = timed(rec.seconds_exact, [&] { return solve_exact(inst, cfg.node_budget); });
  rec.m_prime = solve_relaxation(inst).m_prime;

  require_valid(inst, ff, "first-fit", d, trial);
  require_valid(inst, ffd, "ffd", d, trial);
  require_valid(inst, pv, "packing-vectors", d, trial);
  require_valid(inst, exact.packing, "exact", d, trial);
  rec.bins_ff = ff.bin_count;
  rec.bins_ffd = ffd.bin_count;
  rec.bins_pv = pv.bin_count;
  rec.opt = exact.opt;
  rec.proven = exact.proven;

  if (cfg.run_qp) {
    const Packing qp = timed(rec.seconds_qp, [&] {
      return extract_packing(solve_nlp_prime(inst, rec.m_prime, cfg.qp_restarts, gen.seed), inst);
    });
    require_valid(inst, qp, "qp", d, trial);
    rec.bins_qp = qp.bin_count;
  }

  for (const auto& [algo, bins] : {std::pair{"first-fit", rec.bins_ff}, {"ffd", rec.bins_ffd},
                                    {"packing-vectors", rec.bins_pv}, {"exact", rec.opt},
                                    {"qp", cfg.run_qp ? rec.bins_qp : rec.opt}}) {
    if (bins < rec.m_prime || (rec.proven && bins < rec.opt)) {
      std::ostringstream msg;
      msg << algo << " used " << bins << " bins, below m'=" << rec.m_prime << " or opt="
          << rec.opt << " (d=" << d << ", trial=" << trial << ")";
      throw std::logic_error(msg.str());
    }
  }

  const double opt = static_cast<double>(rec.opt);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rec.ratio_pv = rec.bins_pv / opt;
  rec.ratio_ff = rec.bins_ff / opt;
  rec.ratio_ffd = rec.bins_ffd / opt;
  rec.ratio_qp = cfg.run_qp ? rec.bins_qp / opt : nan;
  return rec;
}

unsigned worker_count(unsigned requested) {
  unsigned count = requested;
  if (count == 0) count = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("VECPACK_THREADS")) {
    unsigned cap = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (ec == std::errc() && ptr == s.data() + s.size() && cap > 0) count = std::min(count, cap);
  }
  return std::max(1u, count);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw InputError("experiment needs at least one trial");
  if (cfg.dim_lo < 1 || cfg.dim_lo > cfg.dim_hi) throw InputError("invalid dimension range");
  if (cfg.n < 1) throw InputError("experiment needs n >= 1");

  const std::size_t dims = cfg.dim_hi - cfg.dim_lo + 1;
  const std::size_t jobs = dims * cfg.trials;
  ExperimentResult result;
  result.records.resize(jobs);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t job = next.fetch_add(1);
      if (job >= jobs) return;
      try {
        result.records[job] = run_trial(cfg, cfg.dim_lo + job / cfg.trials, job % cfg.trials);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(jobs);
        return;
      }
    }
  };
  const unsigned workers = std::min<std::size_t>(worker_count(cfg.threads), jobs);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  result.summaries = summarize(result.records);
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
  std::vector<SummaryRow> rows;
  for (const TrialRecord& rec : records) {
    if (rows.empty() || rows.back().d != rec.d) {
      SummaryRow row;
      row.d = rec.d;
      row.ln_d_plus_1 = std::log(static_cast<double>(rec.d)) + 1.0;
      rows.push_back(row);
    }
    SummaryRow& row = rows.back();
    if (!rec.proven) {
      ++row.unproven;
      continue;
    }
    ++row.trials;
    row.mean_ratio_pv += rec.ratio_pv;
    row.mean_ratio_ff += rec.ratio_ff;
    row.mean_ratio_ffd += rec.ratio_ffd;
    row.mean_ratio_qp += rec.ratio_qp;
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (SummaryRow& row : rows) {
    const double t = static_cast<double>(row.trials);
    row.mean_ratio_pv = row.trials ? row.mean_ratio_pv / t : nan;
    row.mean_ratio_ff = row.trials ? row.mean_ratio_ff / t : nan;
    row.mean_ratio_ffd = row.trials ? row.mean_ratio_ffd / t : nan;
    row.mean_ratio_qp = row.trials ? row.mean_ratio_qp / t : nan;
  }
  return rows;
}

bool SummaryRow::flagged() const {
  const std::size_t total = trials + unproven;
  return total > 0 && static_cast<double>(unproven) > 0.05 * static_cast<double>(total);
}

bool ExperimentResult::flagged() const {
  for (const auto& row : summaries) {
    if (row.flagged()) return true;
  }
  return false;
}

namespace {

void append_double(std::string& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

template <class T>
T parse_field(const std::string& s, std::size_t line_no, std::size_t field) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("summary CSV line " + std::to_string(line_no) + ", field " +
                     std::to_string(field + 1) + ": cannot parse '" + s + "'");
  }
  return v;
}

}  // namespace

std::string summary_csv(const std::vector<SummaryRow>& rows, const std::string& comment) {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  out += kSummaryCsvHeader;
  out += '\n';
  for (const SummaryRow& row : rows) {
    out += std::to_string(row.d) + ',' + std::to_string(row.trials) + ',';
    append_double(out, row.mean_ratio_pv);
    out += ',';
    append_double(out, row.mean_ratio_ff);
    out += ',';
    append_double(out, row.mean_ratio_ffd);
    out += ',';
    append_double(out, row.mean_ratio_qp);
    out += ',';
    append_double(out, row.ln_d_plus_1);
    out += ',' + std::to_string(row.unproven) + '\n';
  }
  return out;
}

std::vector<SummaryRow> parse_summary_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kSummaryCsvHeader) {
        throw InputError("summary CSV line " + std::to_string(line_no) + ": unexpected header");
      }
      header_seen = true;
      continue;
    }
    const auto f = split_fields(line);
    if (f.size() != 8) {
      throw InputError("summary CSV line " + std::to_string(line_no) + ": expected 8 fields");
    }
    SummaryRow row;
    row.d = parse_field<std::size_t>(f[0], line_no, 0);
    row.trials = parse_field<std::size_t>(f[1], line_no, 1);
    row.mean_ratio_pv = parse_field<double>(f[2], line_no, 2);
    row.mean_ratio_ff = parse_field<double>(f[3], line_no, 3);
    row.mean_ratio_ffd = parse_field<double>(f[4], line_no, 4);
    row.mean_ratio_qp = parse_field<double>(f[5], line_no, 5);
    row.ln_d_plus_1 = parse_field<double>(f[6], line_no, 6);
    row.unproven = parse_field<std::size_t>(f[7], line_no, 7);
    rows.push_back(row);
  }
  if (!header_seen) throw InputError("summary CSV has no header");
  return rows;
}

std::string records_csv(const std::vector<TrialRecord>& records) {
  std::string out =
      "d,n,trial,seed,m_prime,opt,proven,bins_pv,bins_ff,bins_ffd,bins_qp,"
      "seconds_pv,seconds_ff,seconds_ffd,seconds_qp,seconds_exact\n";
  for (const TrialRecord& r : records) {
    out += std::to_string(r.d) + ',' + std::to_string(r.n) + ',' + std::to_string(r.trial) + ',' +
           std::to_string(r.seed) + ',' + std::to_string(r.m_prime) + ',' +
           std::to_string(r.opt) + ',' + (r.proven ? "1" : "0") + ',' +
           std::to_string(r.bins_pv) + ',' + std::to_string(r.bins_ff) + ',' +
           std::to_string(r.bins_ffd) + ',' + std::to_string(r.bins_qp);
    for (double s : {r.seconds_pv, r.seconds_ff, r.seconds_ffd, r.seconds_qp, r.seconds_exact}) {
      out += ',';
      append_double(out, s);
    }
    out += '\n';
  }
  return out;
}

std::string experiment_comment(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "distribution=" << cfg.generator.describe_distribution() << " n=" << cfg.n
      << " trials=" << cfg.trials << " dims=" << cfg.dim_lo << ".." << cfg.dim_hi
      << " seed=" << cfg.seed << " qp_restarts=" << (cfg.run_qp ? cfg.qp_restarts : 0)
      << " node_budget=" << cfg.node_budget;
  return out.str();
}

}  // namespace vecpack
