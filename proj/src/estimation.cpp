#include "simfair/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace simfair {

PilotObservation receive_pilots(const NetworkScenario& scenario,
                                const ChannelRealization& channels, RandomStream& rng) {
  const int k_users = scenario.num_users();
  const int n_aps = scenario.num_aps();
  const int m = scenario.num_sat_antennas();
  const double amp = std::sqrt(scenario.constants.pilot_power_w * k_users);
  const double sigma_a = std::sqrt(scenario.constants.noise_var_ap_w);
  const double sigma_s = std::sqrt(scenario.constants.noise_var_sat_w);

  PilotObservation obs;
  obs.y_ap.resize(n_aps, k_users);
  for (int n = 0; n < n_aps; ++n) {
    for (int k = 0; k < k_users; ++k) {
      obs.y_ap(n, k) = amp * channels.g(k, n) + sigma_a * rng.complex_gaussian();
    }
  }
  obs.y_sat.resize(m, k_users);
  for (int k = 0; k < k_users; ++k) {
    for (int i = 0; i < m; ++i) {
      obs.y_sat(i, k) = amp * channels.h[k](i) + sigma_s * rng.complex_gaussian();
    }
  }
  return obs;
}

double estimation_variance(double beta, double pilot_power, int num_users, double noise_var) {
  if (beta < 0 || pilot_power < 0 || num_users < 1 || noise_var <= 0)
    throw std::invalid_argument("estimation_variance: invalid parameters");
  const double pk_beta = pilot_power * num_users * beta;
  if (pk_beta == 0.0) return 0.0;
  return pk_beta * beta / (pk_beta + noise_var);
}

Eigen::MatrixXcd psi_matrix(const Eigen::MatrixXcd& correlation, double pilot_power,
                            int num_users, double noise_var_sat) {
  if (noise_var_sat <= 0) throw std::invalid_argument("psi_matrix: noise_var_sat must be > 0");
  const int m = static_cast<int>(correlation.rows());
  const Eigen::MatrixXcd system =
      pilot_power * num_users * correlation + noise_var_sat * Eigen::MatrixXcd::Identity(m, m);
  Eigen::MatrixXcd psi = system.ldlt().solve(Eigen::MatrixXcd::Identity(m, m));
  const double residual = (system * psi - Eigen::MatrixXcd::Identity(m, m)).norm();
  if (residual > 1e-10)
    throw std::runtime_error("psi_matrix: solve residual " + std::to_string(residual) +
                             " exceeds 1e-10");
  // Symmetrize away factorization round-off.
  return 0.5 * (psi + psi.adjoint().eval());
}

MmseEstimator::MmseEstimator(const NetworkScenario& scenario) : scenario_(&scenario) {
  const int k_users = scenario.num_users();
  const int n_aps = scenario.num_aps();
  const double p = scenario.constants.pilot_power_w;
  const double pk = p * k_users;
  const double sigma_a2 = scenario.constants.noise_var_ap_w;
  const double sigma_s2 = scenario.constants.noise_var_sat_w;

  gain_terrestrial_.resize(k_users, n_aps);
  varrho_.resize(k_users, n_aps);
  for (int k = 0; k < k_users; ++k) {
    for (int n = 0; n < n_aps; ++n) {
      const double beta = scenario.beta_terrestrial(k, n);
      gain_terrestrial_(k, n) = std::sqrt(pk) * beta / (pk * beta + sigma_a2);
      varrho_(k, n) = estimation_variance(beta, p, k_users, sigma_a2);
    }
  }

  psi_.reserve(k_users);
  filter_sat_.reserve(k_users);
  for (int k = 0; k < k_users; ++k) {
    psi_.push_back(psi_matrix(scenario.correlation[k], p, k_users, sigma_s2));
    filter_sat_.push_back(std::sqrt(pk) * scenario.correlation[k] * psi_[k]);
  }
}

ChannelEstimate MmseEstimator::estimate(const PilotObservation& observation) const {
  const NetworkScenario& sc = *scenario_;
  const int k_users = sc.num_users();
  const int n_aps = sc.num_aps();
  const double amp = std::sqrt(sc.constants.pilot_power_w * k_users);

  ChannelEstimate est;
  est.varrho = varrho_;
  est.psi = psi_;
  est.g_hat.resize(k_users, n_aps);
  for (int k = 0; k < k_users; ++k) {
    for (int n = 0; n < n_aps; ++n) {
      est.g_hat(k, n) = gain_terrestrial_(k, n) * observation.y_ap(n, k);
    }
  }
  est.h_hat.reserve(k_users);
  for (int k = 0; k < k_users; ++k) {
    const Eigen::VectorXcd innovation = observation.y_sat.col(k) - amp * sc.los_vectors[k];
    est.h_hat.push_back(sc.los_vectors[k] + filter_sat_[k] * innovation);
  }
  return est;
}

Eigen::MatrixXcd mmse_estimate_terrestrial(const PilotObservation& observation,
                                           const NetworkScenario& scenario) {
  return MmseEstimator(scenario).estimate(observation).g_hat;
}

std::vector<Eigen::VectorXcd> mmse_estimate_satellite(const PilotObservation& observation,
                                                      const NetworkScenario& scenario) {
  return MmseEstimator(scenario).estimate(observation).h_hat;
}

ChannelEstimate mmse_estimate(const PilotObservation& observation,
                              const NetworkScenario& scenario) {
  return MmseEstimator(scenario).estimate(observation);
}

}  // namespace simfair
