#include "simfair/optim_hga.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace simfair {

void HgaConfig::validate() const {
  GaConfig::validate();
  if (sbx_eta <= 0) throw std::invalid_argument("HgaConfig: sbx_eta must be > 0");
  if (polymut_eta <= 0) throw std::invalid_argument("HgaConfig: polymut_eta must be > 0");
  if (real_mutation_rate < 0 || real_mutation_rate > 1)
    throw std::invalid_argument("HgaConfig: real_mutation_rate must lie in [0, 1]");
}

double normalize_power(double power_w, double p_max_w) {
  if (p_max_w <= 0) throw std::invalid_argument("normalize_power: p_max_w must be > 0");
  if (power_w < 0 || power_w > p_max_w)
    throw std::invalid_argument("normalize_power: power must lie in [0, p_max]");
  return power_w / p_max_w;
}

double denormalize_power(double xi, double p_max_w) {
  if (xi < 0 || xi > 1) throw std::invalid_argument("denormalize_power: xi must lie in [0, 1]");
  return xi * p_max_w;
}

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Spread factor of bounded SBX: in (0, bound], where bound is the tighter of
// the two boundary factors, so both children land inside [0, 1].
double sbx_spread(double bound, double eta_c, double mu) {
  const double theta = 2.0 - std::pow(bound, -(eta_c + 1.0));
  if (mu <= 1.0 / theta) return std::pow(theta * mu, 1.0 / (eta_c + 1.0));
  return std::pow(1.0 / (2.0 - theta * mu), 1.0 / (eta_c + 1.0));
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> sbx_crossover(
    const std::vector<double>& parent1, const std::vector<double>& parent2, double eta_c,
    RandomStream& rng) {
  if (parent1.size() != parent2.size())
    throw std::invalid_argument("sbx_crossover: parent length mismatch");
  std::vector<double> child1(parent1.size());
  std::vector<double> child2(parent1.size());
  for (std::size_t i = 0; i < parent1.size(); ++i) {
    const double p1 = parent1[i];
    const double p2 = parent2[i];
    if (p1 < 0 || p1 > 1 || p2 < 0 || p2 > 1)
      throw std::invalid_argument("sbx_crossover: parents must lie in [0, 1]");
    const double mu = rng.uniform();  // one draw per coordinate, values aside
    const double lo = std::min(p1, p2);
    const double hi = std::max(p1, p2);
    const double gap = hi - lo;
    if (gap < 1e-14) {
      child1[i] = p1;
      child2[i] = p2;
      continue;
    }
    const double bound = 1.0 + 2.0 * std::min(lo, 1.0 - hi) / gap;
    const double spread = sbx_spread(bound, eta_c, mu);
    // Signed difference keeps the operator parent-symmetric: swapping the
    // parents swaps the children.
    child1[i] = clamp01(0.5 * ((p1 + p2) - spread * (p2 - p1)));
    child2[i] = clamp01(0.5 * ((p1 + p2) + spread * (p2 - p1)));
  }
  return {std::move(child1), std::move(child2)};
}

double polynomial_mutation_delta(double xi, double eta_m, double mu) {
  if (xi < 0 || xi > 1)
    throw std::invalid_argument("polynomial_mutation: xi must lie in [0, 1]");
  const double delta_k = std::min(xi, 1.0 - xi);
  const double exponent = 1.0 / (eta_m + 1.0);
  if (mu <= 0.5) {
    return std::pow(2.0 * mu + (1.0 - 2.0 * mu) * std::pow(1.0 - delta_k, eta_m + 1.0),
                    exponent) -
           1.0;
  }
  return 1.0 - std::pow(2.0 * (1.0 - mu) +
                            2.0 * (mu - 0.5) * std::pow(1.0 - delta_k, eta_m + 1.0),
                        exponent);
}

double polynomial_mutation(double xi, double eta_m, RandomStream& rng) {
  return clamp01(xi + polynomial_mutation_delta(xi, eta_m, rng.uniform()));
}

namespace {

void apply_forced_zeros(Genome& genome, const std::vector<std::uint8_t>& mask) {
  if (mask.empty()) return;
  for (std::size_t i = 0; i < genome.bits.size() && i < mask.size(); ++i) {
    if (mask[i]) genome.bits[i] = 0;
  }
}

std::pair<int, int> pick_parents(const Population& pop, ParentSelection selection,
                                 RandomStream& rng) {
  const int q = pop.size();
  if (selection == ParentSelection::kTournament2) {
    auto tournament = [&]() {
      const int a = static_cast<int>(rng.uniform_index(q));
      const int b = static_cast<int>(rng.uniform_index(q));
      return pop.fitness[a] >= pop.fitness[b] ? a : b;
    };
    const int first = tournament();
    int second = tournament();
    while (second == first) second = tournament();
    return {first, second};
  }
  const int first = static_cast<int>(rng.uniform_index(q));
  int second = static_cast<int>(rng.uniform_index(q));
  while (second == first) second = static_cast<int>(rng.uniform_index(q));
  return {first, second};
}

}  // namespace

HgaResult run_hga(const FitnessFunction& fitness_fn, int k_users, const HgaConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const int q = config.population_q;
  const int bits = 2 * k_users;
  const int n_mutate_max =
      std::max(1, static_cast<int>(std::ceil(config.mutate_max_fraction * bits)));

  int n_c = config.offspring_count();
  int n_m = config.mutant_count();
  if (config.literal_counts) {
    n_c = 2 * static_cast<int>(std::floor((config.crossover_rate + config.sbx_eta) * q / 4.0));
    n_m = static_cast<int>(std::floor((config.mutation_rate + config.polymut_eta) * q / 2.0));
  }

  RandomStream rng(config.seed, "hga");

  // Member 0: full association at full power. Remaining members draw bits from
  // Bernoulli(0.5) and power genes from U[0, 1].
  Population pop;
  pop.members.reserve(q);
  pop.members.push_back(all_ones_genome(k_users, /*hybrid=*/true));
  for (int i = 1; i < q; ++i) {
    Genome g;
    g.bits.resize(bits);
    for (int j = 0; j < bits; ++j) g.bits[j] = rng.uniform() < 0.5 ? 0 : 1;
    g.xi.resize(k_users);
    for (int j = 0; j < k_users; ++j) g.xi[j] = rng.uniform();
    pop.members.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < config.extra_seeds.size() && i + 1 < pop.members.size(); ++i) {
    Genome seeded = config.extra_seeds[i];
    if (seeded.bits.size() != static_cast<std::size_t>(bits))
      throw std::invalid_argument("run_hga: extra seed genome has wrong length");
    if (seeded.xi.empty()) seeded.xi.assign(k_users, 1.0);
    if (seeded.xi.size() != static_cast<std::size_t>(k_users))
      throw std::invalid_argument("run_hga: extra seed power genes have wrong length");
    pop.members[i + 1] = std::move(seeded);
  }
  for (Genome& g : pop.members) apply_forced_zeros(g, config.forced_zero_mask);

  std::uint64_t evals = 0;
  pop.fitness.resize(q);
  for (int i = 0; i < q; ++i) {
    pop.fitness[i] = fitness_fn(pop.members[i]);
    ++evals;
  }

  auto refresh_best = [&pop]() {
    const auto it = std::max_element(pop.fitness.begin(), pop.fitness.end());
    const int idx = static_cast<int>(it - pop.fitness.begin());
    if (pop.generation == 0 || pop.fitness[idx] > pop.best_value) {
      pop.best_value = pop.fitness[idx];
      pop.best_genome = pop.members[idx];
      pop.best_generation = pop.generation;
    }
  };
  refresh_best();

  HgaResult out;
  auto record = [&]() {
    const double mean =
        std::accumulate(pop.fitness.begin(), pop.fitness.end(), 0.0) / pop.fitness.size();
    out.history.push_back({pop.generation, pop.best_value, mean, evals});
  };
  record();

  for (int s = 1; s <= config.max_generations; ++s) {
    std::vector<Genome> offspring;
    offspring.reserve(n_c + n_m);
    for (int pair = 0; pair < n_c / 2; ++pair) {
      const auto [i1, i2] = pick_parents(pop, config.parent_selection, rng);
      const MaskKind kind = draw_mask_kind(config.mask_prob_one_point,
                                           config.mask_prob_two_point, rng);
      const auto mask = make_mask(kind, bits, rng);
      auto [c1, c2] = masked_crossover(pop.members[i1], pop.members[i2], mask);
      auto [xi1, xi2] =
          sbx_crossover(pop.members[i1].xi, pop.members[i2].xi, config.sbx_eta, rng);
      c1.xi = std::move(xi1);
      c2.xi = std::move(xi2);
      apply_forced_zeros(c1, config.forced_zero_mask);
      apply_forced_zeros(c2, config.forced_zero_mask);
      offspring.push_back(std::move(c1));
      offspring.push_back(std::move(c2));
    }
    const int crossover_offspring = static_cast<int>(offspring.size());
    for (int mut = 0; mut < n_m && crossover_offspring > 0; ++mut) {
      const int src = static_cast<int>(rng.uniform_index(crossover_offspring));
      const int count = 1 + static_cast<int>(rng.uniform_index(n_mutate_max));
      Genome mutant = bitwise_mutation(offspring[src], rng, count);
      for (double& gene : mutant.xi) {
        if (rng.uniform() < config.real_mutation_rate)
          gene = polynomial_mutation(gene, config.polymut_eta, rng);
      }
      apply_forced_zeros(mutant, config.forced_zero_mask);
      offspring.push_back(std::move(mutant));
    }

    std::vector<double> offspring_fitness(offspring.size());
    for (std::size_t i = 0; i < offspring.size(); ++i) {
      offspring_fitness[i] = fitness_fn(offspring[i]);
      ++evals;
    }

    survival_select(pop, std::move(offspring), std::move(offspring_fitness), q);
    pop.generation = s;
    refresh_best();
    record();
  }

  out.result.best_genome = pop.best_genome;
  out.result.best_value = pop.best_value;
  out.result.evaluations = evals;
  out.result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

HgaResult run_hga(const NetworkScenario& scenario, UtilityKind kind, const HgaConfig& config) {
  const FitnessEvaluator evaluator(scenario, kind);
  return run_hga([&evaluator](const Genome& g) { return evaluator(g); }, scenario.num_users(),
                 config);
}

}  // namespace simfair
