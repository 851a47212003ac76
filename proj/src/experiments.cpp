#include "subsum/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "subsum/errors.hpp"
#include "subsum/oracle.hpp"

namespace subsum::experiments {

void SweepConfig::validate() const {
  if (n == 0) throw ValidationError("n must be at least 1");
  if (trials == 0) throw ValidationError("trials must be at least 1");
  if (exponents.empty()) throw ValidationError("no exponents to sweep");
  if (std::find(exponents.begin(), exponents.end(), 0U) != exponents.end())
    throw ValidationError("exponents must be at least 1");
  if (variants.empty()) throw ValidationError("no variants selected");
}

TrialSeeds derive_trial_seeds(std::uint64_t base_seed, std::size_t trial) {
  SplitMix64 stream(base_seed + trial);
  const auto instance = stream.next();
  return {instance, stream.next()};
}

std::vector<unsigned> exponent_range(unsigned from, unsigned to, unsigned step) {
  if (step == 0) throw ValidationError("step must be positive");
  if (from < to) throw ValidationError("exponent range must run downwards");
  std::vector<unsigned> out;
  for (long e = from; e >= static_cast<long>(to); e -= step) out.push_back(static_cast<unsigned>(e));
  return out;
}

namespace {

std::vector<TrialResult> run_unit(const SweepConfig& config, unsigned exponent, std::size_t trial,
                                  const HarnessOptions& options) {
  const auto seeds = derive_trial_seeds(config.base_seed, trial);
  InstanceParams params;
  params.n = config.n;
  params.density = ExplicitDensity{exponent};
  params.seed = seeds.instance;
  auto instance = gen_instance(params);
  if (config.noisy) instance = add_noise(instance, seeds.noise);

  const mpz_class tolerance = config.noisy ? mpz_class(config.n) : mpz_class(0);
  std::optional<std::vector<BitVector>> oracle_solutions;

  SolveOptions solve_options;
  if (options.time_limit) solve_options.time_limit = *options.time_limit;

  std::vector<TrialResult> out;
  out.reserve(config.variants.size());
  for (const auto& variant : config.variants) {
    const auto report = solve(instance.observed, variant, config.noisy, solve_options);
    TrialResult r;
    r.seed = seeds.instance;
    r.n = config.n;
    r.exponent = exponent;
    r.variant = to_string(variant);
    r.noisy = config.noisy;
    r.status = report.status;
    r.verified = report.e && verify(instance.observed, *report.e, tolerance);
    r.matched_ground_truth = report.e && *report.e == instance.truth.e;
    r.first_norm_within_m = report.status == SolveStatus::Solved && report.first_norm_within_m();
    r.timed_out = report.timed_out;
    r.wall_time = report.wall_time;

    if (report.status == SolveStatus::Solved && !r.verified)
      throw std::logic_error("solver returned an unverified selection");
    if (r.verified && options.cross_check && config.n <= 30) {
      if (!oracle_solutions)
        oracle_solutions = oracle::brute_force_subset_sum(instance.observed.weights, instance.observed.b0, tolerance);
      if (!std::binary_search(oracle_solutions->begin(), oracle_solutions->end(), *report.e))
        throw std::logic_error("solver selection missing from brute-force solution set");
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<TrialResult> run_trials(const SweepConfig& config, const HarnessOptions& options) {
  config.validate();
  const std::size_t units = config.exponents.size() * config.trials;
  std::vector<std::vector<TrialResult>> slots(units);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t u = next++; u < units; u = next++) {
      try {
        slots[u] = run_unit(config, config.exponents[u / config.trials], u % config.trials, options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = units;
      }
    }
  };

  const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(units)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<TrialResult> out;
  out.reserve(units * config.variants.size());
  for (auto& slot : slots)
    for (auto& r : slot) out.push_back(std::move(r));
  return out;
}

std::vector<RateRow> aggregate(std::span<const TrialResult> results) {
  using Key = std::tuple<std::size_t, unsigned, std::string, bool>;
  std::vector<std::pair<Key, const TrialResult*>> keyed;
  keyed.reserve(results.size());
  for (const auto& r : results) keyed.push_back({{r.n, r.exponent, r.variant, r.noisy}, &r});
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<RateRow> rows;
  std::vector<double> total_ms;
  for (const auto& [key, r] : keyed) {
    if (rows.empty() || std::tie(rows.back().n, rows.back().exponent, rows.back().variant, rows.back().noisy) != key) {
      rows.push_back({r->n, r->exponent, r->variant, r->noisy, 0, 0, 0, 0});
      total_ms.push_back(0);
    }
    auto& row = rows.back();
    ++row.trials;
    row.solved += r->verified ? 1 : 0;
    row.ground_truth += r->matched_ground_truth ? 1 : 0;
    total_ms.back() += std::chrono::duration<double, std::milli>(r->wall_time).count();
  }
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].mean_ms = total_ms[i] / static_cast<double>(rows[i].trials);
  return rows;
}

std::vector<RateRow> compare_variants(std::span<const std::size_t> n_list, std::size_t trials, std::uint64_t seed,
                                      const HarnessOptions& options) {
  if (n_list.empty()) throw ValidationError("n list must not be empty");
  std::vector<TrialResult> all;
  for (auto n : n_list) {
    SweepConfig config{n, {half_square_exponent(n)}, trials, six_variants(), seed, false};
    auto results = run_trials(config, options);
    all.insert(all.end(), std::make_move_iterator(results.begin()), std::make_move_iterator(results.end()));
  }
  return aggregate(all);
}

std::vector<RateRow> phase_sweep(const SweepConfig& config, const HarnessOptions& options) {
  const auto results = run_trials(config, options);
  return aggregate(results);
}

std::vector<RateRow> noise_experiment(std::span<const std::size_t> n_list, std::size_t trials, std::uint64_t seed,
                                      const HarnessOptions& options) {
  if (n_list.empty()) throw ValidationError("n list must not be empty");
  std::vector<TrialResult> all;
  for (auto n : n_list) {
    SweepConfig config{n, {half_square_exponent(n)}, trials, six_variants(), seed, true};
    auto results = run_trials(config, options);
    all.insert(all.end(), std::make_move_iterator(results.begin()), std::make_move_iterator(results.end()));
  }
  return aggregate(all);
}

std::string to_csv(std::span<const RateRow> rows, bool include_timing) {
  std::string out = "n,exponent,variant,noisy,trials,solved_rate,ground_truth_rate,mean_ms\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%u,%s,%d,%zu,%.4f,%.4f,", r.n, r.exponent, r.variant.c_str(),
                  r.noisy ? 1 : 0, r.trials, r.solved_rate(), r.ground_truth_rate());
    out += buf;
    if (include_timing) {
      std::snprintf(buf, sizeof buf, "%.3f", r.mean_ms);
      out += buf;
    } else {
      out += "NA";
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::filesystem::path& path, std::span<const RateRow> rows, bool include_timing) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << to_csv(rows, include_timing);
  if (!out) throw IoError("failed writing " + path.string());
}

const RateRow* find_row(std::span<const RateRow> rows, std::size_t n, unsigned exponent, const std::string& variant) {
  for (const auto& r : rows)
    if (r.n == n && r.exponent == exponent && r.variant == variant) return &r;
  return nullptr;
}

}  // namespace subsum::experiments
