#include <doctest.h>

#include <cmath>
#include <vector>

#include "simfair/optim_exhaustive.hpp"

using namespace simfair;

namespace {

NetworkScenario make_scenario(int k_users, int n_aps, int m_antennas, std::uint64_t seed = 7) {
  ScenarioConfig config;
  config.radio.num_users = k_users;
  config.radio.num_aps = n_aps;
  config.radio.num_sat_antennas = m_antennas;
  config.radio.fill_data_power(100.0);
  RandomStream rng(seed, "scenario");
  return generate_scenario(config, rng);
}

}  // namespace

TEST_SUITE_BEGIN("optim_exhaustive");

TEST_CASE("K=1 enumerates exactly 4 patterns (3 when index 0 is skipped)") {
  const auto fitness_fn = [](const Genome& g) {
    return static_cast<double>(g.bits[0] + g.bits[1]);
  };
  const SearchResult with_zero = exhaustive_search(fitness_fn, 1);
  CHECK(with_zero.evaluations == 4);
  ExhaustiveOptions skip;
  skip.include_zero_index = false;
  const SearchResult without_zero = exhaustive_search(fitness_fn, 1, skip);
  CHECK(without_zero.evaluations == 3);
  CHECK(with_zero.best_value == without_zero.best_value);
}

TEST_CASE("ties break toward the lowest enumeration index") {
  const auto constant = [](const Genome&) { return 1.0; };
  const SearchResult with_zero = exhaustive_search(constant, 2);
  CHECK(with_zero.best_genome.bits == std::vector<std::uint8_t>{0, 0, 0, 0});
  ExhaustiveOptions skip;
  skip.include_zero_index = false;
  const SearchResult without_zero = exhaustive_search(constant, 2, skip);
  CHECK(without_zero.best_genome.bits == std::vector<std::uint8_t>{1, 0, 0, 0});
}

TEST_CASE("matches an independent nested-loop enumerator at K=3") {
  const NetworkScenario scenario = make_scenario(3, 2, 4);
  for (UtilityKind kind :
       {UtilityKind::kArithmetic, UtilityKind::kGeometric, UtilityKind::kMaxMin}) {
    const FitnessEvaluator evaluator(scenario, kind);
    const SearchResult result = exhaustive_search(scenario, kind);
    CHECK(result.evaluations == 64);

    // Second, structurally different enumerator: six nested bit loops.
    double best = -1.0;
    Genome probe;
    probe.bits.assign(6, 0);
    for (int b0 = 0; b0 < 2; ++b0)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2)
          for (int b3 = 0; b3 < 2; ++b3)
            for (int b4 = 0; b4 < 2; ++b4)
              for (int b5 = 0; b5 < 2; ++b5) {
                probe.bits = {static_cast<std::uint8_t>(b0), static_cast<std::uint8_t>(b1),
                              static_cast<std::uint8_t>(b2), static_cast<std::uint8_t>(b3),
                              static_cast<std::uint8_t>(b4), static_cast<std::uint8_t>(b5)};
                best = std::max(best, evaluator(probe));
              }
    CHECK(result.best_value == doctest::Approx(best).epsilon(1e-12));
    CHECK(evaluator(result.best_genome) == doctest::Approx(result.best_value).epsilon(1e-12));
  }
}

TEST_CASE("result dominates the full-association genome and random genomes") {
  const NetworkScenario scenario = make_scenario(3, 3, 4, 21);
  const FitnessEvaluator evaluator(scenario, UtilityKind::kMaxMin);
  const SearchResult result = exhaustive_search(scenario, UtilityKind::kMaxMin);
  CHECK(result.best_value >= evaluator(all_ones_genome(3)));
  RandomStream rng(5, "probe");
  Genome probe;
  probe.bits.assign(6, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    for (auto& b : probe.bits) b = rng.uniform() < 0.5;
    CHECK(evaluator(probe) <= result.best_value + 1e-12);
  }
}

TEST_CASE("deterministic across repeated runs") {
  const NetworkScenario scenario = make_scenario(2, 2, 4);
  const SearchResult a = exhaustive_search(scenario, UtilityKind::kGeometric);
  const SearchResult b = exhaustive_search(scenario, UtilityKind::kGeometric);
  CHECK(a.best_value == b.best_value);
  CHECK(a.best_genome == b.best_genome);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("the 4^K cap refuses oversized requests") {
  const auto constant = [](const Genome&) { return 1.0; };
  CHECK_THROWS_AS(exhaustive_search(constant, 14), std::invalid_argument);
}

TEST_SUITE_END();
