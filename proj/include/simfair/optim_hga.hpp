#pragma once

#include <utility>
#include <vector>

#include "simfair/optim_ga.hpp"

namespace simfair {

struct HgaConfig : GaConfig {
  double sbx_eta = 15.0;      // eta_c: SBX distribution index
  double polymut_eta = 20.0;  // eta_m: polynomial-mutation distribution index
  // Per-coordinate probability that a mutant's power gene is perturbed.
  double real_mutation_rate = 0.5;
  // Reproduce the literal operator counts 2 floor((p_c + eta_c) Q / 4) and
  // floor((p_m + eta_m) Q / 2) instead of the binary-GA counts.
  bool literal_counts = false;

  void validate() const;
};

double normalize_power(double power_w, double p_max_w);
double denormalize_power(double xi, double p_max_w);

// Bounded SBX on [0, 1], one spread factor per coordinate shared by both
// children, so the pre-clamp child mean equals the parent mean exactly and
// swapping parents swaps the children.
std::pair<std::vector<double>, std::vector<double>> sbx_crossover(
    const std::vector<double>& parent1, const std::vector<double>& parent2, double eta_c,
    RandomStream& rng);

// Perturbation of polynomial (parameter-based) mutation for a given draw
// mu in [0, 1]: two-branch form with delta = min(xi, 1 - xi), zero at
// mu = 0.5, and xi + perturbation always inside [0, 1].
double polynomial_mutation_delta(double xi, double eta_m, double mu);

double polynomial_mutation(double xi, double eta_m, RandomStream& rng);

struct HgaResult {
  SearchResult result;
  std::vector<HistoryRow> history;
};

// Hybrid loop: association bits evolve with the binary operators, power genes
// with SBX + polynomial mutation; joint fitness, elitist truncation to Q.
// Member 0 is all-ones bits at full power, so the fixed-power full-association
// baseline is always dominated.
HgaResult run_hga(const FitnessFunction& fitness_fn, int k_users, const HgaConfig& config);
HgaResult run_hga(const NetworkScenario& scenario, UtilityKind kind, const HgaConfig& config);

}  // namespace simfair
