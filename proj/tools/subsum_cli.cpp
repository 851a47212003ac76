// Command-line front end: instance generation, single solves, and the
// Monte-Carlo experiments.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subsum/construct.hpp"
#include "subsum/errors.hpp"
#include "subsum/experiments.hpp"
#include "subsum/instance.hpp"
#include "subsum/solver.hpp"

namespace {

constexpr int kValidationExit = 2;

struct HarnessFlags {
  unsigned threads = 1;
  long time_limit_ms = 0;
  bool no_timing = false;
  bool no_cross_check = false;

  void attach(CLI::App* app) {
    app->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    app->add_option("--time-limit-ms", time_limit_ms, "Per-solve wall-clock budget (0 = unlimited)")
        ->check(CLI::NonNegativeNumber);
    app->add_flag("--no-timing", no_timing, "Write mean_ms as NA so the CSV is reproducible byte for byte");
    app->add_flag("--no-cross-check", no_cross_check, "Skip brute-force re-verification of solutions");
  }

  subsum::experiments::HarnessOptions options() const {
    subsum::experiments::HarnessOptions o;
    o.threads = threads;
    if (time_limit_ms > 0) o.time_limit = std::chrono::milliseconds(time_limit_ms);
    o.cross_check = !no_cross_check;
    return o;
  }
};

std::string bits(const subsum::BitVector& e) {
  std::string s;
  for (auto b : e) s += b ? '1' : '0';
  return s;
}

void print_report(const subsum::SolveReport& report, const subsum::InstanceRecord& record, bool as_json) {
  const double ms = std::chrono::duration<double, std::milli>(report.wall_time).count();
  std::optional<bool> matches;
  if (record.truth && report.e) matches = *report.e == record.truth->e;

  if (as_json) {
    nlohmann::ordered_json j;
    j["status"] = subsum::to_string(report.status);
    if (report.e) {
      j["e"] = nlohmann::ordered_json::array();
      for (auto b : *report.e) j["e"].push_back(static_cast<int>(b));
    } else {
      j["e"] = nullptr;
    }
    j["matched_column"] = report.matched_column ? nlohmann::ordered_json(*report.matched_column) : nullptr;
    j["k"] = report.k ? nlohmann::ordered_json(report.k->get_str()) : nullptr;
    j["flipped"] = report.flipped;
    j["norm_bound_m"] = report.norm_bound_m.get_str();
    j["first_vector_norm_sq"] = report.first_vector_norm_sq.get_str();
    j["first_norm_within_m"] = report.first_norm_within_m();
    j["timed_out"] = report.timed_out;
    j["wall_time_ms"] = ms;
    if (matches) j["matches_ground_truth"] = *matches;
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "status: " << subsum::to_string(report.status) << "\n";
  if (report.e) {
    std::cout << "e: " << bits(*report.e) << "\n"
              << "column: " << *report.matched_column << "  k: " << *report.k << "\n";
  }
  std::cout << "flipped: " << (report.flipped ? "yes" : "no") << "\n"
            << "first vector |x|^2: " << report.first_vector_norm_sq << "  m: " << report.norm_bound_m
            << (report.first_norm_within_m() ? "  (within m)" : "  (exceeds m)") << "\n";
  if (report.timed_out) std::cout << "timed out\n";
  if (matches) std::cout << "ground truth: " << (*matches ? "match" : "differs") << "\n";
  std::cout << "time: " << ms << " ms\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subset-sum solving by exact LLL lattice reduction"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  std::size_t gen_n = 0;
  unsigned gen_exponent = 0;
  double gen_epsilon = 0;
  std::uint64_t gen_seed = 0;
  std::optional<std::uint64_t> gen_noise_seed;
  std::optional<std::size_t> gen_weight;
  std::string gen_out;
  bool gen_noise = false;
  gen->add_option("--n", gen_n, "Number of weights")->required()->check(CLI::PositiveNumber);
  auto* exp_opt = gen->add_option("--exponent", gen_exponent, "Weights uniform on [1, 2^K]")->check(CLI::PositiveNumber);
  auto* eps_opt = gen->add_option("--epsilon", gen_epsilon, "Exponent ceil((1/2 + E) n^2)");
  exp_opt->excludes(eps_opt);
  gen->add_option("--seed", gen_seed, "Instance seed")->required();
  gen->add_option("--out", gen_out, "Output JSON file")->required();
  gen->add_flag("--noise", gen_noise, "Perturb weights by uniform {-1,0,1} noise");
  gen->add_option("--noise-seed", gen_noise_seed, "Noise seed (defaults to --seed)");
  gen->add_option("--weight", gen_weight, "Fixed Hamming weight of e");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  std::string solve_variant;
  std::string solve_in;
  bool solve_noisy = false;
  bool solve_json = false;
  long solve_limit_ms = 0;
  solve_cmd->add_option("--variant", solve_variant, "classic[+flip][+p] or extrarow[+flip][+p]")->required();
  solve_cmd->add_option("--in", solve_in, "Instance JSON file")->required();
  solve_cmd->add_flag("--noisy", solve_noisy, "Accept solutions within n of B0");
  solve_cmd->add_flag("--json", solve_json, "Print the report as JSON");
  solve_cmd->add_option("--time-limit-ms", solve_limit_ms, "Wall-clock budget (0 = unlimited)");

  // compare
  auto* compare = app.add_subcommand("compare", "Six-variant comparison at exponent ceil(n^2/2)");
  std::vector<std::size_t> cmp_n;
  std::size_t cmp_trials = 0;
  std::uint64_t cmp_seed = 0;
  std::string cmp_out;
  HarnessFlags cmp_flags;
  compare->add_option("--n", cmp_n, "Dimensions")->required()->delimiter(',');
  compare->add_option("--trials", cmp_trials, "Trials per n")->required();
  compare->add_option("--seed", cmp_seed, "Base seed")->required();
  compare->add_option("--out", cmp_out, "Output CSV")->required();
  cmp_flags.attach(compare);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Success rate against the weight exponent");
  std::size_t sw_n = 0;
  unsigned sw_from = 0, sw_to = 0, sw_step = 1;
  std::size_t sw_trials = 0;
  std::uint64_t sw_seed = 0;
  std::string sw_out;
  std::vector<std::string> sw_variants;
  bool sw_noisy = false;
  HarnessFlags sw_flags;
  sweep->add_option("--n", sw_n, "Dimension")->required();
  sweep->add_option("--exp-from", sw_from, "Largest exponent")->required();
  sweep->add_option("--exp-to", sw_to, "Smallest exponent")->required();
  sweep->add_option("--step", sw_step, "Exponent decrement")->required();
  sweep->add_option("--trials", sw_trials, "Trials per exponent")->required();
  sweep->add_option("--seed", sw_seed, "Base seed")->required();
  sweep->add_option("--out", sw_out, "Output CSV")->required();
  sweep->add_option("--variant", sw_variants, "Variants (default: the six methods)")->delimiter(',');
  sweep->add_flag("--noisy", sw_noisy, "Use noisy instances");
  sw_flags.attach(sweep);

  // noise
  auto* noise = app.add_subcommand("noise", "Noisy-input experiment at exponent ceil(n^2/2)");
  std::vector<std::size_t> nz_n;
  std::size_t nz_trials = 0;
  std::uint64_t nz_seed = 0;
  std::string nz_out;
  HarnessFlags nz_flags;
  noise->add_option("--n", nz_n, "Dimensions")->required()->delimiter(',');
  noise->add_option("--trials", nz_trials, "Trials per n")->required();
  noise->add_option("--seed", nz_seed, "Base seed")->required();
  noise->add_option("--out", nz_out, "Output CSV")->required();
  nz_flags.attach(noise);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidationExit;
  }

  namespace ex = subsum::experiments;
  try {
    if (*gen) {
      if (exp_opt->count() == 0 && eps_opt->count() == 0)
        throw subsum::ValidationError("one of --exponent or --epsilon is required");
      subsum::InstanceParams params;
      params.n = gen_n;
      params.seed = gen_seed;
      params.hamming_weight = gen_weight;
      if (eps_opt->count()) {
        params.density = subsum::TheoreticalDensity{gen_epsilon};
      } else {
        params.density = subsum::ExplicitDensity{gen_exponent};
      }
      auto inst = subsum::gen_instance(params);
      if (gen_noise) inst = subsum::add_noise(inst, gen_noise_seed.value_or(gen_seed));
      subsum::save({params.exponent(), gen_seed, inst.truth, inst.observed}, gen_out);
    } else if (*solve_cmd) {
      const auto variant = subsum::parse_variant(solve_variant);
      const auto record = subsum::load(solve_in);
      subsum::SolveOptions options;
      if (solve_limit_ms > 0) options.time_limit = std::chrono::milliseconds(solve_limit_ms);
      const auto report = subsum::solve(record.observed, variant, solve_noisy, options);
      print_report(report, record, solve_json);
    } else if (*compare) {
      ex::write_csv(cmp_out, ex::compare_variants(cmp_n, cmp_trials, cmp_seed, cmp_flags.options()),
                    !cmp_flags.no_timing);
    } else if (*sweep) {
      ex::SweepConfig config;
      config.n = sw_n;
      config.exponents = ex::exponent_range(sw_from, sw_to, sw_step);
      config.trials = sw_trials;
      config.base_seed = sw_seed;
      config.noisy = sw_noisy;
      if (sw_variants.empty()) {
        config.variants = subsum::six_variants();
      } else {
        for (const auto& v : sw_variants) config.variants.push_back(subsum::parse_variant(v));
      }
      ex::write_csv(sw_out, ex::phase_sweep(config, sw_flags.options()), !sw_flags.no_timing);
    } else if (*noise) {
      ex::write_csv(nz_out, ex::noise_experiment(nz_n, nz_trials, nz_seed, nz_flags.options()), !nz_flags.no_timing);
    }
  } catch (const subsum::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationExit;
  } catch (const subsum::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
