#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "simfair/estimation.hpp"
#include "simfair/geometry_channel.hpp"
#include "simfair/rng.hpp"

namespace simfair {

// Per-user service flags: alpha selects the AP cluster, alpha_tilde the
// satellite. A signal path contributes to user k's decoder only when both
// the decoding user and the transmitting user enable that path.
struct AssociationPattern {
  std::vector<std::uint8_t> alpha;        // AP flags
  std::vector<std::uint8_t> alpha_tilde;  // satellite flags

  static AssociationPattern full(int num_users);
  int num_users() const { return static_cast<int>(alpha.size()); }
  bool served(int k) const { return alpha[k] != 0 || alpha_tilde[k] != 0; }
};

// Normalized transmit powers: p_k = xi_k * p_max_k with xi_k in [0, 1].
struct PowerAllocation {
  std::vector<double> xi;
  std::vector<double> p_max;

  static PowerAllocation full_power(const NetworkScenario& scenario);
  double power_w(int k) const { return xi[k] * p_max[k]; }
  int num_users() const { return static_cast<int>(xi.size()); }
};

enum class RateMethod { kClosedForm, kMonteCarlo };

struct RateReport {
  Eigen::VectorXd sinr;
  Eigen::VectorXd rate_mbps;
  RateMethod method = RateMethod::kClosedForm;
  int mc_realizations = 0;  // 0 for the closed form
  std::string warning;      // set when the Monte-Carlo sample is too small
};

// Association-independent ingredients of the closed-form MRC SINR, built once
// per scenario. With Theta_k = R_k Psi_k R_k:
//   ds_sat[k]     = ||hbar_k||^2 + pK tr(Theta_k)
//   ds_ap[k]      = sum_n varrho_nk
//   mi_sat(k,k')  = |hbar_k^H hbar_k'|^2 + pK hbar_k'^H Theta_k hbar_k'
//                   + hbar_k^H R_k' hbar_k + pK tr(R_k' Theta_k)     (k' != k)
//   mi_sat(k,k)   =                pK hbar_k^H Theta_k hbar_k
//                   + hbar_k^H R_k hbar_k  + pK tr(R_k Theta_k)
//   mi_ap(k,k')   = sum_n varrho_nk beta_nk'
// The k' = k entries are the beamforming-uncertainty variances left after the
// use-and-then-forget split removes the squared mean.
struct ClosedFormStats {
  Eigen::VectorXd ds_sat;
  Eigen::VectorXd ds_ap;
  Eigen::MatrixXd mi_sat;
  Eigen::MatrixXd mi_ap;
  double noise_var_sat = 0.0;
  double noise_var_ap = 0.0;
};

ClosedFormStats build_closed_form_stats(const NetworkScenario& scenario);

// Effective SINR of user k under MRC, association pattern and powers.
// Returns exactly 0 for an unserved user.
double sinr_closed_form(const ClosedFormStats& stats, const AssociationPattern& assoc,
                        const PowerAllocation& powers, int user_k);

// B(1 - K/tau_c) log2(1 + sinr), in Mbps (B in MHz).
double rate_from_sinr(double sinr, const RadioConstants& constants);

// MRC detectors equal the channel estimates.
struct MrcDetectors {
  Eigen::MatrixXcd w_ap;                // K x N
  std::vector<Eigen::VectorXcd> w_sat;  // K vectors of length M
};

MrcDetectors mrc_detectors(const ChannelEstimate& estimate);

// Use-and-then-forget SINR estimated from n_realizations independent draws of
// channels, pilot noise and estimates. Fixed-size realization blocks own
// independent substreams and block partials are reduced in index order, so
// the result depends only on (scenario, assoc, powers, n, seed stream).
Eigen::VectorXd sinr_monte_carlo(const NetworkScenario& scenario, const AssociationPattern& assoc,
                                 const PowerAllocation& powers, int n_realizations,
                                 RandomStream& rng);

RateReport all_rates(const NetworkScenario& scenario, const ClosedFormStats& stats,
                     const AssociationPattern& assoc, const PowerAllocation& powers);

RateReport all_rates_monte_carlo(const NetworkScenario& scenario, const AssociationPattern& assoc,
                                 const PowerAllocation& powers, int n_realizations,
                                 RandomStream& rng);

}  // namespace simfair
