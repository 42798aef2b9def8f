#include "simfair/throughput.hpp"

#include <cmath>
#include <stdexcept>

namespace simfair {

namespace {

constexpr int kMonteCarloBlock = 256;

void check_shapes(const NetworkScenario& scenario, const AssociationPattern& assoc,
                  const PowerAllocation& powers) {
  const int k_users = scenario.num_users();
  if (assoc.num_users() != k_users || static_cast<int>(assoc.alpha_tilde.size()) != k_users)
    throw std::invalid_argument("association pattern length must equal num_users");
  if (powers.num_users() != k_users || static_cast<int>(powers.p_max.size()) != k_users)
    throw std::invalid_argument("power allocation length must equal num_users");
  for (double x : powers.xi)
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("xi entries must lie in [0, 1]");
}

}  // namespace

AssociationPattern AssociationPattern::full(int num_users) {
  AssociationPattern p;
  p.alpha.assign(static_cast<std::size_t>(num_users), 1);
  p.alpha_tilde.assign(static_cast<std::size_t>(num_users), 1);
  return p;
}

PowerAllocation PowerAllocation::full_power(const NetworkScenario& scenario) {
  PowerAllocation p;
  p.xi.assign(static_cast<std::size_t>(scenario.num_users()), 1.0);
  p.p_max = scenario.constants.data_power_max_w;
  return p;
}

ClosedFormStats build_closed_form_stats(const NetworkScenario& scenario) {
  const int k_users = scenario.num_users();
  const int m = scenario.num_sat_antennas();
  const double pk = scenario.constants.pilot_power_w * k_users;

  MmseEstimator estimator(scenario);
  const Eigen::MatrixXd& varrho = estimator.varrho();

  // Stack the LoS vectors once; all cross terms become matrix products.
  Eigen::MatrixXcd hbar(m, k_users);
  for (int k = 0; k < k_users; ++k) hbar.col(k) = scenario.los_vectors[k];

  ClosedFormStats stats;
  stats.noise_var_sat = scenario.constants.noise_var_sat_w;
  stats.noise_var_ap = scenario.constants.noise_var_ap_w;
  stats.ds_sat.resize(k_users);
  stats.ds_ap.resize(k_users);
  stats.mi_sat.resize(k_users, k_users);
  stats.mi_ap.resize(k_users, k_users);

  const Eigen::MatrixXd gram2 = (hbar.adjoint() * hbar).cwiseAbs2();  // |hbar_k^H hbar_k'|^2

  for (int k = 0; k < k_users; ++k) {
    const Eigen::MatrixXcd& r_k = scenario.correlation[k];
    const Eigen::MatrixXcd theta = r_k * estimator.psi()[k] * r_k;

    stats.ds_sat(k) = hbar.col(k).squaredNorm() + pk * theta.real().trace();
    stats.ds_ap(k) = varrho.row(k).sum();

    const Eigen::MatrixXcd theta_h = theta * hbar;  // column k' = Theta_k hbar_k'
    for (int kp = 0; kp < k_users; ++kp) {
      const Eigen::MatrixXcd& r_kp = scenario.correlation[kp];
      const double quad_theta = hbar.col(kp).dot(theta_h.col(kp)).real();
      const double quad_r = hbar.col(k).dot(r_kp * hbar.col(k)).real();
      const double tr_r_theta = r_kp.cwiseProduct(theta.transpose()).sum().real();
      double sat = pk * quad_theta + quad_r + pk * tr_r_theta;
      if (kp != k) sat += gram2(k, kp);
      stats.mi_sat(k, kp) = sat;
      stats.mi_ap(k, kp) =
          (varrho.row(k).array() * scenario.beta_terrestrial.row(kp).array()).sum();
    }
  }
  return stats;
}

double sinr_closed_form(const ClosedFormStats& stats, const AssociationPattern& assoc,
                        const PowerAllocation& powers, int user_k) {
  const int k_users = static_cast<int>(stats.ds_sat.size());
  if (user_k < 0 || user_k >= k_users) throw std::invalid_argument("sinr_closed_form: bad user index");
  const double a = assoc.alpha[user_k];
  const double at = assoc.alpha_tilde[user_k];
  if (a == 0.0 && at == 0.0) return 0.0;

  const double p_k = powers.power_w(user_k);
  const double desired = at * stats.ds_sat(user_k) + a * stats.ds_ap(user_k);
  const double numerator = p_k * desired * desired;
  if (numerator == 0.0) return 0.0;

  double interference = 0.0;
  for (int kp = 0; kp < k_users; ++kp) {
    const double p_kp = powers.power_w(kp);
    interference += p_kp * (at * assoc.alpha_tilde[kp] * stats.mi_sat(user_k, kp) +
                            a * assoc.alpha[kp] * stats.mi_ap(user_k, kp));
  }
  const double noise =
      at * stats.noise_var_sat * stats.ds_sat(user_k) + a * stats.noise_var_ap * stats.ds_ap(user_k);
  const double denominator = interference + noise;
  if (denominator <= 0.0) return 0.0;
  return numerator / denominator;
}

double rate_from_sinr(double sinr, const RadioConstants& constants) {
  if (sinr < 0) throw std::invalid_argument("rate_from_sinr: sinr must be >= 0");
  if (constants.coherence_symbols <= constants.num_users)
    throw std::invalid_argument("rate_from_sinr: coherence_symbols must exceed num_users");
  const double prelog =
      1.0 - static_cast<double>(constants.num_users) / constants.coherence_symbols;
  return constants.bandwidth_hz / 1e6 * prelog * std::log2(1.0 + sinr);
}

MrcDetectors mrc_detectors(const ChannelEstimate& estimate) {
  return {estimate.g_hat, estimate.h_hat};
}

Eigen::VectorXd sinr_monte_carlo(const NetworkScenario& scenario, const AssociationPattern& assoc,
                                 const PowerAllocation& powers, int n_realizations,
                                 RandomStream& rng) {
  check_shapes(scenario, assoc, powers);
  if (n_realizations < 1) throw std::invalid_argument("sinr_monte_carlo: n_realizations >= 1");

  const int k_users = scenario.num_users();
  const double sigma_s2 = scenario.constants.noise_var_sat_w;
  const double sigma_a2 = scenario.constants.noise_var_ap_w;

  const ChannelSampler sampler(scenario);
  const MmseEstimator estimator(scenario);

  // Accumulators for the four expectations in the UatF bound.
  Eigen::VectorXcd mean_o = Eigen::VectorXcd::Zero(k_users);          // E{o_kk}
  Eigen::MatrixXd mean_o2 = Eigen::MatrixXd::Zero(k_users, k_users);  // E{|o_kk'|^2}
  Eigen::VectorXd mean_w_sat = Eigen::VectorXd::Zero(k_users);        // E{||w_k||^2}
  Eigen::VectorXd mean_w_ap = Eigen::VectorXd::Zero(k_users);         // E{sum_n |w_nk|^2}

  const int num_blocks = (n_realizations + kMonteCarloBlock - 1) / kMonteCarloBlock;
  for (int block = 0; block < num_blocks; ++block) {
    RandomStream block_rng = rng.substream(static_cast<std::uint64_t>(block));
    const int block_n =
        std::min(kMonteCarloBlock, n_realizations - block * kMonteCarloBlock);

    Eigen::VectorXcd acc_o = Eigen::VectorXcd::Zero(k_users);
    Eigen::MatrixXd acc_o2 = Eigen::MatrixXd::Zero(k_users, k_users);
    Eigen::VectorXd acc_w_sat = Eigen::VectorXd::Zero(k_users);
    Eigen::VectorXd acc_w_ap = Eigen::VectorXd::Zero(k_users);

    for (int rep = 0; rep < block_n; ++rep) {
      const ChannelRealization channels = sampler.sample(block_rng);
      const PilotObservation observation = receive_pilots(scenario, channels, block_rng);
      const ChannelEstimate estimate = estimator.estimate(observation);
      const MrcDetectors detectors = mrc_detectors(estimate);

      for (int k = 0; k < k_users; ++k) {
        const double at_k = assoc.alpha_tilde[k];
        const double a_k = assoc.alpha[k];
        for (int kp = 0; kp < k_users; ++kp) {
          std::complex<double> o = 0.0;
          if (at_k != 0.0 && assoc.alpha_tilde[kp] != 0.0)
            o += detectors.w_sat[k].dot(channels.h[kp]);
          if (a_k != 0.0 && assoc.alpha[kp] != 0.0)
            o += detectors.w_ap.row(k).dot(channels.g.row(kp));  // sum_n conj(w_nk) g_nk'
          acc_o2(k, kp) += std::norm(o);
          if (kp == k) acc_o(k) += o;
        }
        acc_w_sat(k) += detectors.w_sat[k].squaredNorm();
        acc_w_ap(k) += detectors.w_ap.row(k).squaredNorm();
      }
    }

    const double w = 1.0 / n_realizations;
    mean_o += acc_o * w;
    mean_o2 += acc_o2 * w;
    mean_w_sat += acc_w_sat * w;
    mean_w_ap += acc_w_ap * w;
  }

  Eigen::VectorXd sinr(k_users);
  for (int k = 0; k < k_users; ++k) {
    if (!assoc.served(k)) {
      sinr(k) = 0.0;
      continue;
    }
    const double numerator = powers.power_w(k) * std::norm(mean_o(k));
    double interference = 0.0;
    for (int kp = 0; kp < k_users; ++kp) interference += powers.power_w(kp) * mean_o2(k, kp);
    const double noise = assoc.alpha_tilde[k] * sigma_s2 * mean_w_sat(k) +
                         assoc.alpha[k] * sigma_a2 * mean_w_ap(k);
    const double denominator = interference - numerator + noise;
    sinr(k) = (numerator > 0.0 && denominator > 0.0) ? numerator / denominator : 0.0;
  }
  return sinr;
}

RateReport all_rates(const NetworkScenario& scenario, const ClosedFormStats& stats,
                     const AssociationPattern& assoc, const PowerAllocation& powers) {
  check_shapes(scenario, assoc, powers);
  const int k_users = scenario.num_users();
  RateReport report;
  report.method = RateMethod::kClosedForm;
  report.sinr.resize(k_users);
  report.rate_mbps.resize(k_users);
  for (int k = 0; k < k_users; ++k) {
    report.sinr(k) = sinr_closed_form(stats, assoc, powers, k);
    report.rate_mbps(k) = rate_from_sinr(report.sinr(k), scenario.constants);
  }
  return report;
}

RateReport all_rates_monte_carlo(const NetworkScenario& scenario, const AssociationPattern& assoc,
                                 const PowerAllocation& powers, int n_realizations,
                                 RandomStream& rng) {
  RateReport report;
  report.method = RateMethod::kMonteCarlo;
  report.mc_realizations = n_realizations;
  if (n_realizations < 1000)
    report.warning = "monte-carlo estimate from only " + std::to_string(n_realizations) +
                     " realizations; expect a noisy SINR";
  report.sinr = sinr_monte_carlo(scenario, assoc, powers, n_realizations, rng);
  report.rate_mbps.resize(report.sinr.size());
  for (int k = 0; k < report.sinr.size(); ++k)
    report.rate_mbps(k) = rate_from_sinr(report.sinr(k), scenario.constants);
  return report;
}

}  // namespace simfair
