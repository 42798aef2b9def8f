#pragma once

#include <Eigen/Dense>
#include <vector>

#include "simfair/geometry_channel.hpp"
#include "simfair/rng.hpp"

namespace simfair {

// Pilot-phase observations after despreading with the orthonormal pilot book
// (scaled identity: pilot k is the k-th standard basis vector).
//   y_ap(n, k)  = sqrt(pK) g_nk + CN(0, sigma_a^2)
//   y_sat.col(k) = sqrt(pK) h_k + CN(0, sigma_s^2 I_M)
struct PilotObservation {
  Eigen::MatrixXcd y_ap;   // N x K
  Eigen::MatrixXcd y_sat;  // M x K
};

// MMSE channel estimates and their error statistics.
struct ChannelEstimate {
  Eigen::MatrixXcd g_hat;                 // K x N
  std::vector<Eigen::VectorXcd> h_hat;    // K vectors of length M
  Eigen::MatrixXd varrho;                 // K x N estimate variances
  std::vector<Eigen::MatrixXcd> psi;      // K matrices (pK R_k + sigma_s^2 I)^-1
};

PilotObservation receive_pilots(const NetworkScenario& scenario,
                                const ChannelRealization& channels, RandomStream& rng);

// varrho = pK beta^2 / (pK beta + sigma^2); 0 <= varrho <= beta.
double estimation_variance(double beta, double pilot_power, int num_users, double noise_var);

// Psi_k = (pK R_k + sigma_s^2 I)^-1 via Hermitian factorization. The residual
// ||(pK R + sigma^2 I) Psi - I|| is checked at 1e-10.
Eigen::MatrixXcd psi_matrix(const Eigen::MatrixXcd& correlation, double pilot_power,
                            int num_users, double noise_var_sat);

Eigen::MatrixXcd mmse_estimate_terrestrial(const PilotObservation& observation,
                                           const NetworkScenario& scenario);

std::vector<Eigen::VectorXcd> mmse_estimate_satellite(const PilotObservation& observation,
                                                      const NetworkScenario& scenario);

// Precomputes the per-user MMSE filters once so repeated estimation (one call
// per Monte-Carlo realization) stays cheap.
class MmseEstimator {
 public:
  explicit MmseEstimator(const NetworkScenario& scenario);

  ChannelEstimate estimate(const PilotObservation& observation) const;

  const Eigen::MatrixXd& varrho() const { return varrho_; }
  const std::vector<Eigen::MatrixXcd>& psi() const { return psi_; }

 private:
  const NetworkScenario* scenario_;
  Eigen::MatrixXd gain_terrestrial_;          // K x N: sqrt(pK) beta / (pK beta + sigma_a^2)
  Eigen::MatrixXd varrho_;                    // K x N
  std::vector<Eigen::MatrixXcd> psi_;         // K
  std::vector<Eigen::MatrixXcd> filter_sat_;  // K: sqrt(pK) R_k Psi_k
};

ChannelEstimate mmse_estimate(const PilotObservation& observation,
                              const NetworkScenario& scenario);

}  // namespace simfair
