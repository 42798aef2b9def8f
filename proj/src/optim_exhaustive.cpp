#include "simfair/optim_exhaustive.hpp"

#include <chrono>
#include <stdexcept>

namespace simfair {

SearchResult exhaustive_search(const FitnessFunction& fitness_fn, int num_users,
                               const ExhaustiveOptions& options) {
  if (num_users < 1) throw std::invalid_argument("exhaustive_search: num_users must be >= 1");
  const int bits = 2 * num_users;
  if (bits > options.max_genome_bits)
    throw std::invalid_argument("exhaustive_search: 2K = " + std::to_string(bits) +
                                " exceeds the cap of " + std::to_string(options.max_genome_bits) +
                                " bits (4^K patterns)");

  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t count = std::uint64_t{1} << bits;
  const std::uint64_t first = options.include_zero_index ? 0 : 1;

  SearchResult result;
  result.best_value = -std::numeric_limits<double>::infinity();
  Genome genome;
  genome.bits.resize(bits);
  for (std::uint64_t index = first; index < count; ++index) {
    for (int j = 0; j < bits; ++j) genome.bits[j] = (index >> j) & 1;
    const double value = fitness_fn(genome);
    ++result.evaluations;
    if (value > result.best_value) {
      result.best_value = value;
      result.best_genome = genome;
    }
  }
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SearchResult exhaustive_search(const NetworkScenario& scenario, UtilityKind kind,
                               const ExhaustiveOptions& options) {
  const FitnessEvaluator evaluator(scenario, kind);
  return exhaustive_search([&evaluator](const Genome& g) { return evaluator(g); },
                           scenario.num_users(), options);
}

}  // namespace simfair
