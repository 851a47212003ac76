#include <doctest.h>

#include <set>

#include "subsum/errors.hpp"
#include "subsum/experiments.hpp"

using namespace subsum;
using namespace subsum::experiments;

TEST_CASE("trial seeds are paired and distinct") {
  const auto a = derive_trial_seeds(10, 0);
  const auto b = derive_trial_seeds(10, 1);
  CHECK(a.instance != b.instance);
  CHECK(a.instance != a.noise);
  CHECK(derive_trial_seeds(10, 1).instance == derive_trial_seeds(11, 0).instance);
}

TEST_CASE("exponent_range") {
  CHECK(exponent_range(98, 14, 7) ==
        std::vector<unsigned>{98, 91, 84, 77, 70, 63, 56, 49, 42, 35, 28, 21, 14});
  CHECK(exponent_range(10, 4, 4) == std::vector<unsigned>{10, 6});
  CHECK(exponent_range(5, 5, 1) == std::vector<unsigned>{5});
  CHECK_THROWS_AS(exponent_range(4, 10, 1), ValidationError);
  CHECK_THROWS_AS(exponent_range(10, 4, 0), ValidationError);
}

TEST_CASE("compare_variants with one trial at n = 5") {
  const std::vector<std::size_t> ns{5};
  const auto rows = compare_variants(ns, 1, 3);
  REQUIRE(rows.size() == 6);
  std::set<std::string> names;
  for (const auto& r : rows) {
    names.insert(r.variant);
    CHECK(r.n == 5);
    CHECK(r.exponent == 13);
    CHECK(r.trials == 1);
    CHECK((r.solved_rate() == 0.0 || r.solved_rate() == 1.0));
  }
  CHECK(names.size() == 6);
}

TEST_CASE("variants see identical instances") {
  SweepConfig config{10, {50}, 4, six_variants(), 99, false};
  const auto results = run_trials(config);
  REQUIRE(results.size() == 24);
  for (std::size_t t = 0; t < 4; ++t)
    for (std::size_t v = 1; v < 6; ++v) CHECK(results[t * 6 + v].seed == results[t * 6].seed);
}

TEST_CASE("CSV is deterministic and independent of thread count") {
  SweepConfig config{10, {50, 30, 12}, 5, {parse_variant("extrarow"), parse_variant("classic+flip")}, 4, false};
  HarnessOptions serial;
  HarnessOptions parallel;
  parallel.threads = 4;
  const auto a = to_csv(phase_sweep(config, serial), false);
  const auto b = to_csv(phase_sweep(config, parallel), false);
  const auto c = to_csv(phase_sweep(config, serial), false);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a.rfind("n,exponent,variant,noisy,trials,solved_rate,ground_truth_rate,mean_ms\n", 0) == 0);
  CHECK(a.find("NA\n") != std::string::npos);
}

TEST_CASE("degenerate sweep equals the compare_variants rows") {
  const std::vector<std::size_t> ns{8};
  const auto compared = compare_variants(ns, 6, 21);
  SweepConfig config{8, {half_square_exponent(8)}, 6, six_variants(), 21, false};
  const auto swept = phase_sweep(config);
  CHECK(to_csv(compared, false) == to_csv(swept, false));
}

TEST_CASE("noise experiment reports both groups") {
  const std::vector<std::size_t> ns{8};
  const auto rows = noise_experiment(ns, 5, 1);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    CHECK(r.noisy);
    if (r.variant.find("+p") == std::string::npos) CHECK(r.solved_rate() == 1.0);
  }
}

TEST_CASE("validation") {
  const std::vector<std::size_t> empty;
  const std::vector<std::size_t> ns{8};
  CHECK_THROWS_AS(compare_variants(empty, 1, 0), ValidationError);
  CHECK_THROWS_AS(noise_experiment(ns, 0, 0), ValidationError);
  CHECK_THROWS_AS(compare_variants(ns, 0, 0), ValidationError);
  SweepConfig config{8, {}, 1, six_variants(), 0, false};
  CHECK_THROWS_AS(phase_sweep(config), ValidationError);
}

TEST_CASE("aggregate counts solved and ground-truth matches separately") {
  std::vector<TrialResult> results(3);
  for (auto& r : results) {
    r.n = 4;
    r.exponent = 2;
    r.variant = "extrarow";
  }
  results[0].verified = true;
  results[0].matched_ground_truth = true;
  results[1].verified = true;
  const auto rows = aggregate(results);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].trials == 3);
  CHECK(rows[0].solved == 2);
  CHECK(rows[0].ground_truth == 1);
  CHECK(to_csv(rows, false) ==
        "n,exponent,variant,noisy,trials,solved_rate,ground_truth_rate,mean_ms\n"
        "4,2,extrarow,0,3,0.6667,0.3333,NA\n");
}
