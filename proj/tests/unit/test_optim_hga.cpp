#include <doctest.h>

#include <cmath>
#include <vector>

#include "simfair/optim_ga.hpp"
#include "simfair/optim_hga.hpp"

using namespace simfair;

namespace {

// Toy hybrid objective: reward satellite bits, and power genes near 0.75.
double toy_hybrid_fitness(const Genome& g) {
  double value = 0.0;
  for (std::size_t i = 1; i < g.bits.size(); i += 2) value += g.bits[i];
  for (double x : g.xi) value -= (x - 0.75) * (x - 0.75);
  return value;
}

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

TEST_SUITE_BEGIN("optim_hga");

TEST_CASE("power normalization is an exact affine bijection") {
  CHECK(normalize_power(0.0, 100.0) == 0.0);
  CHECK(normalize_power(100.0, 100.0) == 1.0);
  CHECK(denormalize_power(1.0, 100.0) == 100.0);
  CHECK(denormalize_power(0.0, 100.0) == 0.0);
  RandomStream rng(1, "pw");
  for (int i = 0; i < 1000; ++i) {
    const double p_max = rng.uniform(1e-3, 200.0);
    const double p = rng.uniform(0.0, p_max);
    CHECK(denormalize_power(normalize_power(p, p_max), p_max) ==
          doctest::Approx(p).epsilon(1e-15));
  }
  CHECK_THROWS_AS(normalize_power(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(denormalize_power(1.5, 1.0), std::invalid_argument);
}

TEST_CASE("fitness is identical through the normalized and raw power routes") {
  const NetworkScenario scenario = make_scenario(3, 2, 4);
  const FitnessEvaluator evaluator(scenario, UtilityKind::kGeometric);
  const ClosedFormStats stats = build_closed_form_stats(scenario);
  RandomStream rng(2, "pw");
  for (int trial = 0; trial < 100; ++trial) {
    Genome genome = all_ones_genome(3, /*hybrid=*/true);
    for (double& x : genome.xi) x = rng.uniform();
    // Direct route: powers constructed from xi by hand.
    PowerAllocation powers;
    powers.p_max = scenario.constants.data_power_max_w;
    powers.xi = genome.xi;
    const RateReport direct = all_rates(scenario, stats, decode_genome(genome), powers);
    CHECK(evaluator(genome) == utility(direct.rate_mbps, UtilityKind::kGeometric));
  }
}

TEST_CASE("sbx keeps equal parents fixed") {
  RandomStream rng(3, "sbx");
  const std::vector<double> p{0.3, 0.7, 0.0, 1.0};
  const auto [c1, c2] = sbx_crossover(p, p, 15.0, rng);
  CHECK(c1 == p);
  CHECK(c2 == p);
}

TEST_CASE("sbx preserves the parent mean exactly") {
  RandomStream rng(4, "sbx");
  for (int trial = 0; trial < 5000; ++trial) {
    const std::vector<double> p1{rng.uniform(), rng.uniform(), rng.uniform()};
    const std::vector<double> p2{rng.uniform(), rng.uniform(), rng.uniform()};
    const auto [c1, c2] = sbx_crossover(p1, p2, 15.0, rng);
    for (int i = 0; i < 3; ++i)
      CHECK(std::abs(c1[i] + c2[i] - p1[i] - p2[i]) < 1e-12);
  }
}

TEST_CASE("sbx children stay inside the unit interval") {
  RandomStream rng(5, "sbx");
  for (int trial = 0; trial < 100000; ++trial) {
    const std::vector<double> p1{rng.uniform()};
    const std::vector<double> p2{rng.uniform()};
    const double eta = rng.uniform(0.5, 30.0);
    const auto [c1, c2] = sbx_crossover(p1, p2, eta, rng);
    CHECK(c1[0] >= 0.0);
    CHECK(c1[0] <= 1.0);
    CHECK(c2[0] >= 0.0);
    CHECK(c2[0] <= 1.0);
  }
}

TEST_CASE("swapping sbx parents swaps the children") {
  RandomStream rng_a(6, "sbx");
  RandomStream rng_b(6, "sbx");  // identical draws for both orders
  const std::vector<double> p1{0.2, 0.9};
  const std::vector<double> p2{0.6, 0.1};
  const auto [a1, a2] = sbx_crossover(p1, p2, 12.0, rng_a);
  const auto [b1, b2] = sbx_crossover(p2, p1, 12.0, rng_b);
  CHECK(a1 == b2);
  CHECK(a2 == b1);
}

TEST_CASE("polynomial mutation respects bounds for any draw") {
  RandomStream rng(7, "pm");
  for (int trial = 0; trial < 100000; ++trial) {
    const double xi = rng.uniform();
    const double eta = rng.uniform(0.5, 40.0);
    const double mutated = polynomial_mutation(xi, eta, rng);
    CHECK(mutated >= 0.0);
    CHECK(mutated <= 1.0);
  }
}

TEST_CASE("polynomial perturbation vanishes at mu = 0.5 and spans [-delta, +delta]") {
  for (double xi : {0.1, 0.35, 0.5, 0.82}) {
    for (double eta : {5.0, 20.0}) {
      CHECK(polynomial_mutation_delta(xi, eta, 0.5) == 0.0);
      const double delta_k = std::min(xi, 1.0 - xi);
      CHECK(polynomial_mutation_delta(xi, eta, 0.0) == doctest::Approx(-delta_k).epsilon(1e-12));
      CHECK(polynomial_mutation_delta(xi, eta, 1.0) == doctest::Approx(delta_k).epsilon(1e-12));
    }
  }
}

TEST_CASE("polynomial mutation leaves the boundary points fixed") {
  // delta_k = min(xi, 1 - xi) = 0 at both ends: the perturbation vanishes for
  // every draw of mu.
  RandomStream rng(8, "pm");
  for (int trial = 0; trial < 1000; ++trial) {
    CHECK(polynomial_mutation(0.0, 20.0, rng) == 0.0);
    CHECK(polynomial_mutation(1.0, 20.0, rng) == 1.0);
  }
}

TEST_CASE("polynomial mutation is centered near the input") {
  RandomStream rng(9, "pm");
  const int draws = 20000;
  double acc = 0.0;
  for (int i = 0; i < draws; ++i) acc += polynomial_mutation(0.5, 20.0, rng) - 0.5;
  CHECK(std::abs(acc / draws) < 0.01);
}

TEST_CASE("run_hga keeps power genes in bounds and histories nondecreasing") {
  HgaConfig config;
  config.population_q = 16;
  config.max_generations = 150;
  config.seed = 10;
  const HgaResult run = run_hga(toy_hybrid_fitness, 5, config);
  REQUIRE(run.result.best_genome.xi.size() == 5);
  for (double x : run.result.best_genome.xi) {
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
  for (std::size_t i = 1; i < run.history.size(); ++i)
    CHECK(run.history[i].best_fitness >= run.history[i - 1].best_fitness);
  // The toy optimum: all satellite bits set, xi at 0.75.
  CHECK(run.result.best_value > 4.9);
}

TEST_CASE("run_hga is deterministic per seed") {
  HgaConfig config;
  config.population_q = 12;
  config.max_generations = 30;
  config.seed = 11;
  const HgaResult a = run_hga(toy_hybrid_fitness, 4, config);
  const HgaResult b = run_hga(toy_hybrid_fitness, 4, config);
  CHECK(a.result.best_value == b.result.best_value);
  CHECK(a.result.best_genome == b.result.best_genome);
}

TEST_CASE("hga dominates the fixed-power baseline it is seeded with") {
  const NetworkScenario scenario = make_scenario(4, 3, 6, 13);
  const UtilityKind kind = UtilityKind::kMaxMin;

  GaConfig ga;
  ga.population_q = 30;
  ga.max_generations = 80;
  ga.seed = 3;
  const BcgaResult bcga = run_bcga(scenario, kind, ga);

  HgaConfig hga;
  static_cast<GaConfig&>(hga) = ga;
  hga.extra_seeds = {bcga.result.best_genome};  // xi filled with ones inside
  const HgaResult run = run_hga(scenario, kind, hga);
  CHECK(run.result.best_value >= bcga.result.best_value);
  // Full-association fixed-power baseline is dominated by construction.
  const FitnessEvaluator evaluator(scenario, kind);
  CHECK(run.result.best_value >= evaluator(all_ones_genome(4, true)));
}

TEST_CASE("literal operator counts are accepted and still elitist") {
  HgaConfig config;
  config.population_q = 8;
  config.max_generations = 3;
  config.seed = 4;
  config.literal_counts = true;  // large offspring pools per the listing
  const HgaResult run = run_hga(toy_hybrid_fitness, 3, config);
  for (std::size_t i = 1; i < run.history.size(); ++i)
    CHECK(run.history[i].best_fitness >= run.history[i - 1].best_fitness);
  // n_c = 2 floor((0.9 + 15) * 8 / 4) = 62, n_m = floor((0.2 + 20) * 8 / 2) = 80.
  CHECK(run.result.evaluations == 8 + 3ull * (62 + 80));
}

TEST_SUITE_END();
