#include "simfair/optim_ga.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace simfair {

int GaConfig::offspring_count() const {
  return 2 * static_cast<int>(std::floor(crossover_rate * population_q / 2.0));
}

int GaConfig::mutant_count() const {
  return static_cast<int>(std::floor(mutation_rate * population_q));
}

void GaConfig::validate() const {
  if (population_q < 2) throw std::invalid_argument("GaConfig: population_q must be >= 2");
  if (max_generations < 0) throw std::invalid_argument("GaConfig: max_generations must be >= 0");
  if (crossover_rate <= 0 || crossover_rate > 1)
    throw std::invalid_argument("GaConfig: crossover_rate must lie in (0, 1]");
  if (mutation_rate <= 0 || mutation_rate > 1)
    throw std::invalid_argument("GaConfig: mutation_rate must lie in (0, 1]");
  if (mask_prob_one_point < 0 || mask_prob_two_point < 0 ||
      mask_prob_one_point + mask_prob_two_point > 1.0 + 1e-12)
    throw std::invalid_argument("GaConfig: mask probabilities must be >= 0 and sum to <= 1");
  if (mutate_max_fraction <= 0 || mutate_max_fraction > 1)
    throw std::invalid_argument("GaConfig: mutate_max_fraction must lie in (0, 1]");
}

Population init_population(int q, int k_users, RandomStream& rng) {
  if (q < 2) throw std::invalid_argument("init_population: q must be >= 2");
  if (k_users < 1) throw std::invalid_argument("init_population: k_users must be >= 1");
  Population pop;
  pop.members.reserve(q);
  pop.members.push_back(all_ones_genome(k_users));
  const std::size_t bits = 2 * static_cast<std::size_t>(k_users);
  for (int i = 1; i < q; ++i) {
    Genome g;
    g.bits.resize(bits);
    for (std::size_t j = 0; j < bits; ++j) g.bits[j] = rng.uniform() < 0.5 ? 0 : 1;
    pop.members.push_back(std::move(g));
  }
  return pop;
}

MaskKind draw_mask_kind(double eps_one_point, double eps_two_point, RandomStream& rng) {
  const double u = rng.uniform();
  if (u < eps_one_point) return MaskKind::kOnePoint;
  if (u < eps_one_point + eps_two_point) return MaskKind::kTwoPoint;
  return MaskKind::kUniform;
}

std::vector<std::uint8_t> make_mask(MaskKind kind, int length, RandomStream& rng) {
  if (length < 2) throw std::invalid_argument("make_mask: length must be >= 2");
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(length));
  switch (kind) {
    case MaskKind::kOnePoint: {
      const int cut = 1 + static_cast<int>(rng.uniform_index(length - 1));  // {1..len-1}
      for (int i = 0; i < length; ++i) mask[i] = i < cut ? 0 : 1;
      break;
    }
    case MaskKind::kTwoPoint: {
      // Ordered pair of distinct cuts from {1..len-1}; zero out [cut1, cut2).
      const int cut1 = 1 + static_cast<int>(rng.uniform_index(length - 1));
      int cut2 = 1 + static_cast<int>(rng.uniform_index(length - 1));
      while (cut2 == cut1) cut2 = 1 + static_cast<int>(rng.uniform_index(length - 1));
      const int lo = std::min(cut1, cut2);
      const int hi = std::max(cut1, cut2);
      for (int i = 0; i < length; ++i) mask[i] = (i >= lo && i < hi) ? 0 : 1;
      break;
    }
    case MaskKind::kUniform: {
      for (int i = 0; i < length; ++i) mask[i] = rng.uniform() < 0.5 ? 0 : 1;
      break;
    }
  }
  return mask;
}

std::pair<Genome, Genome> masked_crossover(const Genome& parent1, const Genome& parent2,
                                           const std::vector<std::uint8_t>& mask) {
  if (parent1.bits.size() != parent2.bits.size() || parent1.bits.size() != mask.size())
    throw std::invalid_argument("masked_crossover: length mismatch");
  Genome child1 = parent1;
  Genome child2 = parent2;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    child1.bits[i] = mask[i] ? parent1.bits[i] : parent2.bits[i];
    child2.bits[i] = mask[i] ? parent2.bits[i] : parent1.bits[i];
  }
  return {std::move(child1), std::move(child2)};
}

Genome bitwise_mutation(const Genome& genome, RandomStream& rng, int mutate_count) {
  const int bits = static_cast<int>(genome.bits.size());
  if (mutate_count < 1 || mutate_count > bits)
    throw std::invalid_argument("bitwise_mutation: mutate_count must lie in [1, 2K]");
  // Partial Fisher-Yates draw of mutate_count distinct positions.
  std::vector<int> positions(static_cast<std::size_t>(bits));
  std::iota(positions.begin(), positions.end(), 0);
  Genome mutant = genome;
  for (int i = 0; i < mutate_count; ++i) {
    const int j = i + static_cast<int>(rng.uniform_index(bits - i));
    std::swap(positions[i], positions[j]);
    mutant.bits[positions[i]] ^= 1;
  }
  return mutant;
}

void survival_select(Population& population, std::vector<Genome> offspring,
                     std::vector<double> offspring_fitness, int q) {
  if (offspring.size() != offspring_fitness.size())
    throw std::invalid_argument("survival_select: offspring/fitness size mismatch");
  if (population.members.size() != population.fitness.size())
    throw std::invalid_argument("survival_select: population fitness not evaluated");

  const std::size_t pool_size = population.members.size() + offspring.size();
  if (pool_size == 0) throw std::invalid_argument("survival_select: empty pool");

  // Pool order encodes the tie rule: parents (older) first, then offspring in
  // creation order. A stable sort on fitness alone preserves it.
  std::vector<int> order(pool_size);
  std::iota(order.begin(), order.end(), 0);
  auto fitness_of = [&](int idx) {
    return idx < population.size() ? population.fitness[idx]
                                   : offspring_fitness[idx - population.size()];
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return fitness_of(a) > fitness_of(b); });

  const int keep = std::min<int>(q, static_cast<int>(pool_size));
  std::vector<Genome> next_members;
  std::vector<double> next_fitness;
  next_members.reserve(keep);
  next_fitness.reserve(keep);
  for (int i = 0; i < keep; ++i) {
    const int idx = order[i];
    next_fitness.push_back(fitness_of(idx));
    if (idx < population.size())
      next_members.push_back(std::move(population.members[idx]));
    else
      next_members.push_back(std::move(offspring[idx - population.size()]));
  }
  population.members = std::move(next_members);
  population.fitness = std::move(next_fitness);
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
  switch (selection) {
    case ParentSelection::kUniform: {
      const int first = static_cast<int>(rng.uniform_index(q));
      int second = static_cast<int>(rng.uniform_index(q));
      while (second == first) second = static_cast<int>(rng.uniform_index(q));
      return {first, second};
    }
    case ParentSelection::kTournament2: {
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
  }
  throw std::logic_error("pick_parents: bad selection kind");
}

// Sliding-window success counts per mask kind, for the optional adaptive mode.
struct MaskAdaptation {
  static constexpr int kWindow = 10;
  std::deque<std::array<int, 3>> window;
  std::array<int, 3> current{0, 0, 0};

  void note_success(MaskKind kind) { ++current[static_cast<int>(kind)]; }
  void end_generation() {
    window.push_back(current);
    current = {0, 0, 0};
    if (static_cast<int>(window.size()) > kWindow) window.pop_front();
  }
  std::pair<double, double> probabilities() const {
    std::array<double, 3> weight{1.0, 1.0, 1.0};
    for (const auto& gen : window)
      for (int i = 0; i < 3; ++i) weight[i] += gen[i];
    const double total = weight[0] + weight[1] + weight[2];
    return {weight[0] / total, weight[1] / total};
  }
};

}  // namespace

BcgaResult run_bcga(const FitnessFunction& fitness_fn, int k_users, const GaConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const int q = config.population_q;
  const int bits = 2 * k_users;
  const int n_mutate_max = std::max(1, static_cast<int>(std::ceil(config.mutate_max_fraction * bits)));

  RandomStream rng(config.seed, "bcga");

  Population pop = init_population(q, k_users, rng);
  for (std::size_t i = 0; i < config.extra_seeds.size() && i + 1 < pop.members.size(); ++i) {
    if (config.extra_seeds[i].bits.size() != static_cast<std::size_t>(bits))
      throw std::invalid_argument("run_bcga: extra seed genome has wrong length");
    Genome seeded = config.extra_seeds[i];
    seeded.xi.clear();
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

  BcgaResult out;
  auto record = [&]() {
    const double mean =
        std::accumulate(pop.fitness.begin(), pop.fitness.end(), 0.0) / pop.fitness.size();
    out.history.push_back({pop.generation, pop.best_value, mean, evals});
  };
  record();

  MaskAdaptation adaptation;
  const int n_c = config.offspring_count();
  const int n_m = config.mutant_count();

  for (int s = 1; s <= config.max_generations; ++s) {
    double eps1 = config.mask_prob_one_point;
    double eps2 = config.mask_prob_two_point;
    if (config.adaptive_masks) std::tie(eps1, eps2) = adaptation.probabilities();

    std::vector<Genome> offspring;
    std::vector<MaskKind> offspring_kind;
    offspring.reserve(n_c + n_m);
    for (int pair = 0; pair < n_c / 2; ++pair) {
      const auto [i1, i2] = pick_parents(pop, config.parent_selection, rng);
      const MaskKind kind = draw_mask_kind(eps1, eps2, rng);
      const auto mask = make_mask(kind, bits, rng);
      auto [c1, c2] = masked_crossover(pop.members[i1], pop.members[i2], mask);
      apply_forced_zeros(c1, config.forced_zero_mask);
      apply_forced_zeros(c2, config.forced_zero_mask);
      offspring.push_back(std::move(c1));
      offspring.push_back(std::move(c2));
      offspring_kind.push_back(kind);
      offspring_kind.push_back(kind);
    }
    const int crossover_offspring = static_cast<int>(offspring.size());
    for (int mut = 0; mut < n_m && crossover_offspring > 0; ++mut) {
      const int src = static_cast<int>(rng.uniform_index(crossover_offspring));
      const int count = 1 + static_cast<int>(rng.uniform_index(n_mutate_max));
      Genome mutant = bitwise_mutation(offspring[src], rng, count);
      apply_forced_zeros(mutant, config.forced_zero_mask);
      offspring.push_back(std::move(mutant));
    }

    std::vector<double> offspring_fitness(offspring.size());
    const double parent_best = *std::max_element(pop.fitness.begin(), pop.fitness.end());
    for (std::size_t i = 0; i < offspring.size(); ++i) {
      offspring_fitness[i] = fitness_fn(offspring[i]);
      ++evals;
      if (config.adaptive_masks && i < offspring_kind.size() &&
          offspring_fitness[i] > parent_best)
        adaptation.note_success(offspring_kind[i]);
    }
    if (config.adaptive_masks) adaptation.end_generation();

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

BcgaResult run_bcga(const NetworkScenario& scenario, UtilityKind kind, const GaConfig& config) {
  const FitnessEvaluator evaluator(scenario, kind);
  return run_bcga([&evaluator](const Genome& g) { return evaluator(g); }, scenario.num_users(),
                  config);
}

}  // namespace simfair
