#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "simfair/throughput.hpp"

namespace simfair {

enum class UtilityKind { kArithmetic, kGeometric, kMaxMin };

std::string utility_name(UtilityKind kind);
UtilityKind utility_from_name(const std::string& name);

// Optimizer decision variable. bits has length 2K, laid out user-major as
// [AP flag, satellite flag] per user. Hybrid genomes additionally carry K
// normalized power genes xi in [0, 1].
struct Genome {
  std::vector<std::uint8_t> bits;
  std::vector<double> xi;

  bool hybrid() const { return !xi.empty(); }
  int num_users() const { return static_cast<int>(bits.size()) / 2; }
  bool operator==(const Genome& other) const = default;
};

// Aggregate utility of a per-user rate vector. Geometric mean is computed in
// the log domain and returns exactly 0 when any rate is <= 0.
double utility(const Eigen::VectorXd& rates, UtilityKind kind);

AssociationPattern decode_genome(const Genome& genome);
Genome encode_genome(const AssociationPattern& assoc);
Genome encode_genome(const AssociationPattern& assoc, const std::vector<double>& xi);

// xi genes mapped onto a power allocation; genomes without a power segment
// get full power.
PowerAllocation decode_power(const Genome& genome, const std::vector<double>& p_max);

Genome all_ones_genome(int num_users, bool hybrid = false);

// Caches the closed-form statistics of one scenario so genome evaluation is
// O(K^2). This is the optimization objective of every search algorithm; the
// Monte-Carlo path stays a validation oracle only.
class FitnessEvaluator {
 public:
  FitnessEvaluator(const NetworkScenario& scenario, UtilityKind kind);

  double operator()(const Genome& genome) const;
  RateReport rates(const Genome& genome) const;

  const ClosedFormStats& stats() const { return stats_; }
  const NetworkScenario& scenario() const { return *scenario_; }
  UtilityKind kind() const { return kind_; }

 private:
  const NetworkScenario* scenario_;
  UtilityKind kind_;
  ClosedFormStats stats_;
};

double fitness(const Genome& genome, const NetworkScenario& scenario, UtilityKind kind);

}  // namespace simfair
