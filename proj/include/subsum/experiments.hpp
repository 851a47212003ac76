#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subsum/construct.hpp"
#include "subsum/solver.hpp"

namespace subsum::experiments {

struct TrialResult {
  std::uint64_t seed = 0;  // instance seed
  std::size_t n = 0;
  unsigned exponent = 0;
  std::string variant;
  bool noisy = false;
  SolveStatus status = SolveStatus::NoCandidate;
  bool verified = false;
  bool matched_ground_truth = false;
  bool first_norm_within_m = false;
  bool timed_out = false;
  std::chrono::nanoseconds wall_time{0};
};

struct SweepConfig {
  std::size_t n = 0;
  std::vector<unsigned> exponents;  // descending
  std::size_t trials = 1;
  std::vector<Variant> variants;
  std::uint64_t base_seed = 0;
  bool noisy = false;

  void validate() const;
};

struct HarnessOptions {
  unsigned threads = 1;
  std::optional<std::chrono::milliseconds> time_limit;
  // Re-check every verified solution against brute-force enumeration (n <= 30).
  bool cross_check = true;
};

// One line of the results table.
struct RateRow {
  std::size_t n = 0;
  unsigned exponent = 0;
  std::string variant;
  bool noisy = false;
  std::size_t trials = 0;
  std::size_t solved = 0;
  std::size_t ground_truth = 0;
  double mean_ms = 0;

  double solved_rate() const { return trials ? static_cast<double>(solved) / static_cast<double>(trials) : 0.0; }
  double ground_truth_rate() const {
    return trials ? static_cast<double>(ground_truth) / static_cast<double>(trials) : 0.0;
  }
};

struct TrialSeeds {
  std::uint64_t instance;
  std::uint64_t noise;
};

// Seeds for trial t: the first two outputs of SplitMix64(base + t). Every
// variant at a given (n, exponent, t) sees the same instance.
TrialSeeds derive_trial_seeds(std::uint64_t base_seed, std::size_t trial);

// from, from - step, ... while >= to.
std::vector<unsigned> exponent_range(unsigned from, unsigned to, unsigned step);

std::vector<TrialResult> run_trials(const SweepConfig& config, const HarnessOptions& options = {});

// Rows sorted by (n, exponent, variant, noisy).
std::vector<RateRow> aggregate(std::span<const TrialResult> results);

std::vector<RateRow> compare_variants(std::span<const std::size_t> n_list, std::size_t trials, std::uint64_t seed,
                                      const HarnessOptions& options = {});
std::vector<RateRow> phase_sweep(const SweepConfig& config, const HarnessOptions& options = {});
std::vector<RateRow> noise_experiment(std::span<const std::size_t> n_list, std::size_t trials, std::uint64_t seed,
                                      const HarnessOptions& options = {});

// Header: n,exponent,variant,noisy,trials,solved_rate,ground_truth_rate,mean_ms.
// With include_timing = false the mean_ms field is written as "NA" so the
// output depends only on the configuration.
std::string to_csv(std::span<const RateRow> rows, bool include_timing = true);
void write_csv(const std::filesystem::path& path, std::span<const RateRow> rows, bool include_timing = true);

const RateRow* find_row(std::span<const RateRow> rows, std::size_t n, unsigned exponent, const std::string& variant);

}  // namespace subsum::experiments
