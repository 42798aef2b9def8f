#pragma once

#include <cstdint>
#include <functional>

#include "simfair/fairness.hpp"

namespace simfair {

struct SearchResult {
  Genome best_genome;
  double best_value = 0.0;
  std::uint64_t evaluations = 0;
  double wall_time_s = 0.0;
};

using FitnessFunction = std::function<double(const Genome&)>;

struct ExhaustiveOptions {
  // Index 0 is the all-zero pattern; its fitness is 0 but it is enumerated by
  // default for completeness. Set false to match a loop that starts at 1.
  bool include_zero_index = true;
  int max_genome_bits = 26;  // refuse 4^K enumerations beyond 2K = 26
};

// Enumerates every 2K-bit association pattern (bit j of the index maps to
// genome position j) and returns the argmax. Ties break toward the lowest
// enumeration index.
SearchResult exhaustive_search(const FitnessFunction& fitness_fn, int num_users,
                               const ExhaustiveOptions& options = {});

SearchResult exhaustive_search(const NetworkScenario& scenario, UtilityKind kind,
                               const ExhaustiveOptions& options = {});

}  // namespace simfair
