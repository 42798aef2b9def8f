#pragma once

#include <cstdint>
#include <vector>

#include "simfair/fairness.hpp"
#include "simfair/optim_exhaustive.hpp"
#include "simfair/rng.hpp"

namespace simfair {

enum class MaskKind { kOnePoint, kTwoPoint, kUniform };
enum class ParentSelection { kUniform, kTournament2 };

struct GaConfig {
  int population_q = 50;
  int max_generations = 300;
  double crossover_rate = 0.9;  // p_c; offspring count n_c = 2 floor(p_c Q / 2)
  double mutation_rate = 0.2;   // p_m; mutant count n_m = floor(p_m Q)
  double mask_prob_one_point = 1.0 / 3.0;  // eps1
  double mask_prob_two_point = 1.0 / 3.0;  // eps2; uniform mask gets the rest
  // n_mutate ~ U{1, ..., ceil(mutate_max_fraction * 2K)} per mutation event.
  // Default covers the full range; a cap near one bit cannot move a converged
  // population out of a multi-bit local optimum.
  double mutate_max_fraction = 1.0;
  // When true, mask-kind probabilities follow recent success counts over a
  // 10-generation window instead of staying fixed.
  bool adaptive_masks = false;
  ParentSelection parent_selection = ParentSelection::kUniform;
  // Optional constraint: genome positions where this mask is 1 are forced to 0
  // after every operator (used for satellite-only / APs-only runs). Empty
  // means unconstrained.
  std::vector<std::uint8_t> forced_zero_mask;
  // Extra genomes injected after the all-ones member during initialization
  // (warm starts). Truncated to fit the population.
  std::vector<Genome> extra_seeds;
  std::uint64_t seed = 1;

  int offspring_count() const;
  int mutant_count() const;
  void validate() const;
};

struct HistoryRow {
  int generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  std::uint64_t evals_cum = 0;
};

struct Population {
  std::vector<Genome> members;
  std::vector<double> fitness;
  int generation = 0;
  Genome best_genome;
  double best_value = 0.0;
  int best_generation = 0;

  int size() const { return static_cast<int>(members.size()); }
};

// Member 0 is the all-ones genome; the rest draw each bit from Bernoulli(0.5).
// Fitness is left unevaluated (empty).
Population init_population(int q, int k_users, RandomStream& rng);

MaskKind draw_mask_kind(double eps_one_point, double eps_two_point, RandomStream& rng);

// One-point: 0 before the cut, 1 from the cut on (cut in {1..len-1}).
// Two-point: 0 on [cut1, cut2), 1 elsewhere (1 <= cut1 < cut2 <= len-1 + 1).
// Uniform: i.i.d. Bernoulli(0.5).
std::vector<std::uint8_t> make_mask(MaskKind kind, int length, RandomStream& rng);

// child1 takes parent1 where mask = 1 and parent2 where mask = 0; child2 is
// the complement. Power genes, when present, are passed through unchanged
// (the hybrid loop crosses them separately).
std::pair<Genome, Genome> masked_crossover(const Genome& parent1, const Genome& parent2,
                                           const std::vector<std::uint8_t>& mask);

// XOR with a mask of exactly mutate_count distinct positions.
Genome bitwise_mutation(const Genome& genome, RandomStream& rng, int mutate_count);

// Keeps the q best of parents + offspring, descending fitness; ties keep
// parents (older generation) first, then lower index. Returns the surviving
// population; best-so-far tracking is updated by the caller.
void survival_select(Population& population, std::vector<Genome> offspring,
                     std::vector<double> offspring_fitness, int q);

struct BcgaResult {
  SearchResult result;
  std::vector<HistoryRow> history;  // one row per generation, index 0 = init
};

BcgaResult run_bcga(const FitnessFunction& fitness_fn, int k_users, const GaConfig& config);
BcgaResult run_bcga(const NetworkScenario& scenario, UtilityKind kind, const GaConfig& config);

}  // namespace simfair
