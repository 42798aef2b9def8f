#include "simfair/fairness.hpp"

#include <cmath>
#include <stdexcept>

namespace simfair {

std::string utility_name(UtilityKind kind) {
  switch (kind) {
    case UtilityKind::kArithmetic: return "arithmetic";
    case UtilityKind::kGeometric: return "geometric";
    case UtilityKind::kMaxMin: return "maxmin";
  }
  throw std::logic_error("utility_name: bad kind");
}

UtilityKind utility_from_name(const std::string& name) {
  if (name == "arithmetic") return UtilityKind::kArithmetic;
  if (name == "geometric") return UtilityKind::kGeometric;
  if (name == "maxmin") return UtilityKind::kMaxMin;
  throw std::invalid_argument("unknown utility '" + name +
                              "' (expected arithmetic|geometric|maxmin)");
}

double utility(const Eigen::VectorXd& rates, UtilityKind kind) {
  if (rates.size() == 0) throw std::invalid_argument("utility: empty rate vector");
  switch (kind) {
    case UtilityKind::kArithmetic:
      return rates.mean();
    case UtilityKind::kGeometric: {
      double log_sum = 0.0;
      for (double r : rates) {
        if (r <= 0.0) return 0.0;
        log_sum += std::log(r);
      }
      return std::exp(log_sum / static_cast<double>(rates.size()));
    }
    case UtilityKind::kMaxMin:
      return rates.minCoeff();
  }
  throw std::logic_error("utility: bad kind");
}

AssociationPattern decode_genome(const Genome& genome) {
  if (genome.bits.empty() || genome.bits.size() % 2 != 0)
    throw std::invalid_argument("decode_genome: bits length must be 2K, got " +
                                std::to_string(genome.bits.size()));
  const int k_users = genome.num_users();
  if (genome.hybrid() && static_cast<int>(genome.xi.size()) != k_users)
    throw std::invalid_argument("decode_genome: hybrid genome needs K power genes");
  AssociationPattern assoc;
  assoc.alpha.resize(k_users);
  assoc.alpha_tilde.resize(k_users);
  for (int k = 0; k < k_users; ++k) {
    assoc.alpha[k] = genome.bits[2 * k] ? 1 : 0;
    assoc.alpha_tilde[k] = genome.bits[2 * k + 1] ? 1 : 0;
  }
  return assoc;
}

Genome encode_genome(const AssociationPattern& assoc) {
  Genome genome;
  const int k_users = assoc.num_users();
  genome.bits.resize(2 * static_cast<std::size_t>(k_users));
  for (int k = 0; k < k_users; ++k) {
    genome.bits[2 * k] = assoc.alpha[k];
    genome.bits[2 * k + 1] = assoc.alpha_tilde[k];
  }
  return genome;
}

Genome encode_genome(const AssociationPattern& assoc, const std::vector<double>& xi) {
  Genome genome = encode_genome(assoc);
  genome.xi = xi;
  return genome;
}

PowerAllocation decode_power(const Genome& genome, const std::vector<double>& p_max) {
  PowerAllocation powers;
  powers.p_max = p_max;
  if (genome.hybrid()) {
    if (genome.xi.size() != p_max.size())
      throw std::invalid_argument("decode_power: xi and p_max length mismatch");
    powers.xi = genome.xi;
  } else {
    powers.xi.assign(p_max.size(), 1.0);
  }
  return powers;
}

Genome all_ones_genome(int num_users, bool hybrid) {
  Genome genome;
  genome.bits.assign(2 * static_cast<std::size_t>(num_users), 1);
  if (hybrid) genome.xi.assign(static_cast<std::size_t>(num_users), 1.0);
  return genome;
}

FitnessEvaluator::FitnessEvaluator(const NetworkScenario& scenario, UtilityKind kind)
    : scenario_(&scenario), kind_(kind), stats_(build_closed_form_stats(scenario)) {}

RateReport FitnessEvaluator::rates(const Genome& genome) const {
  const AssociationPattern assoc = decode_genome(genome);
  const PowerAllocation powers = decode_power(genome, scenario_->constants.data_power_max_w);
  return all_rates(*scenario_, stats_, assoc, powers);
}

double FitnessEvaluator::operator()(const Genome& genome) const {
  return utility(rates(genome).rate_mbps, kind_);
}

double fitness(const Genome& genome, const NetworkScenario& scenario, UtilityKind kind) {
  return FitnessEvaluator(scenario, kind)(genome);
}

}  // namespace simfair
