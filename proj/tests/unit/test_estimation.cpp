#include <doctest.h>

#include <cmath>
#include <complex>

#include "simfair/estimation.hpp"

using namespace simfair;

namespace {

ScenarioConfig small_config(int k_users, int n_aps, int m_antennas) {
  ScenarioConfig config;
  config.radio.num_users = k_users;
  config.radio.num_aps = n_aps;
  config.radio.num_sat_antennas = m_antennas;
  config.radio.fill_data_power(100.0);
  return config;
}

NetworkScenario make_scenario(int k_users, int n_aps, int m_antennas, std::uint64_t seed = 7) {
  RandomStream rng(seed, "scenario");
  return generate_scenario(small_config(k_users, n_aps, m_antennas), rng);
}

}  // namespace

TEST_SUITE_BEGIN("estimation");

TEST_CASE("noise-free pilots reproduce the channels exactly") {
  NetworkScenario scenario = make_scenario(3, 2, 4);
  scenario.constants.noise_var_ap_w = 1e-300;
  scenario.constants.noise_var_sat_w = 1e-300;
  RandomStream rng(1, "channels");
  const ChannelRealization channels = sample_channels(scenario, rng);
  const PilotObservation obs = receive_pilots(scenario, channels, rng);
  const double amp = std::sqrt(scenario.constants.pilot_power_w * 3);
  for (int n = 0; n < 2; ++n)
    for (int k = 0; k < 3; ++k)
      CHECK(std::abs(obs.y_ap(n, k) - amp * channels.g(k, n)) < 1e-12 * amp);
  // Near-zero noise also makes the MMSE estimates collapse onto the truth.
  const ChannelEstimate est = mmse_estimate(obs, scenario);
  for (int k = 0; k < 3; ++k) {
    for (int n = 0; n < 2; ++n)
      CHECK(std::abs(est.g_hat(k, n) - channels.g(k, n)) < 1e-9 * std::abs(channels.g(k, n)));
    CHECK((est.h_hat[k] - channels.h[k]).norm() < 1e-6 * channels.h[k].norm());
  }
}

TEST_CASE("zero pilot power leaves pure noise and the prior mean") {
  NetworkScenario scenario = make_scenario(2, 2, 4);
  scenario.constants.pilot_power_w = 0.0;
  RandomStream rng(2, "channels");
  const int draws = 20000;
  double noise_power = 0.0;
  for (int i = 0; i < draws; ++i) {
    const ChannelRealization channels = sample_channels(scenario, rng);
    const PilotObservation obs = receive_pilots(scenario, channels, rng);
    noise_power += std::norm(obs.y_ap(0, 0));
    if (i == 0) {
      const ChannelEstimate est = mmse_estimate(obs, scenario);
      CHECK(est.g_hat(0, 0) == std::complex<double>(0, 0));
      // p = 0: the satellite estimate falls back to the prior mean.
      CHECK((est.h_hat[0] - scenario.los_vectors[0]).norm() == 0.0);
    }
  }
  CHECK(noise_power / draws ==
        doctest::Approx(scenario.constants.noise_var_ap_w).epsilon(0.05));
}

TEST_CASE("satellite projection noise has variance M sigma_s^2") {
  const NetworkScenario scenario = make_scenario(2, 2, 6);
  RandomStream rng(3, "channels");
  const double amp = std::sqrt(scenario.constants.pilot_power_w * 2);
  const int draws = 10000;
  double acc = 0.0;
  for (int i = 0; i < draws; ++i) {
    const ChannelRealization channels = sample_channels(scenario, rng);
    const PilotObservation obs = receive_pilots(scenario, channels, rng);
    acc += (obs.y_sat.col(0) - amp * channels.h[0]).squaredNorm();
  }
  CHECK(acc / draws ==
        doctest::Approx(6 * scenario.constants.noise_var_sat_w).epsilon(0.05));
}

TEST_CASE("estimation variance formula") {
  CHECK(estimation_variance(2.0, 0.0, 4, 1.0) == 0.0);
  // pK beta = sigma^2 gives beta/2: p=1, K=2, beta=3, sigma^2=6.
  CHECK(estimation_variance(3.0, 1.0, 2, 6.0) == doctest::Approx(1.5).epsilon(1e-12));
  // Perfect-CSI limit.
  CHECK(estimation_variance(3.0, 1e30, 2, 6.0) == doctest::Approx(3.0).epsilon(1e-12));
  // Monotone in p and bounded by beta.
  double prev = 0.0;
  for (double p : {0.1, 1.0, 10.0, 100.0}) {
    const double v = estimation_variance(2.5, p, 3, 0.7);
    CHECK(v >= prev);
    CHECK(v <= 2.5);
    prev = v;
  }
  CHECK_THROWS_AS(estimation_variance(1.0, 1.0, 2, 0.0), std::invalid_argument);
}

TEST_CASE("psi matrix special cases and residual") {
  const int m = 5;
  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(m, m);
  const Eigen::MatrixXcd psi0 = psi_matrix(zero, 1.0, 2, 0.25);
  CHECK((psi0 - 4.0 * Eigen::MatrixXcd::Identity(m, m)).norm() < 1e-12);
  // R = I, pK = sigma^2 = 1 -> Psi = I/2.
  const Eigen::MatrixXcd psi1 = psi_matrix(Eigen::MatrixXcd::Identity(m, m), 0.5, 2, 1.0);
  CHECK((psi1 - 0.5 * Eigen::MatrixXcd::Identity(m, m)).norm() < 1e-12);
  // Random PSD input: inverse property.
  RandomStream rng(5, "psi");
  Eigen::MatrixXcd a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = rng.complex_gaussian();
  const Eigen::MatrixXcd r = a * a.adjoint();
  const Eigen::MatrixXcd psi = psi_matrix(r, 2.0, 3, 0.1);
  const Eigen::MatrixXcd system = 6.0 * r + 0.1 * Eigen::MatrixXcd::Identity(m, m);
  CHECK((system * psi - Eigen::MatrixXcd::Identity(m, m)).norm() < 1e-10);
}

TEST_CASE("terrestrial estimate matches Lemma statistics") {
  const NetworkScenario scenario = make_scenario(2, 2, 4);
  const MmseEstimator estimator(scenario);
  RandomStream rng(6, "channels");
  const int draws = 100000;
  double var_acc = 0.0;
  std::complex<double> cross_acc = 0.0;
  double err_var_acc = 0.0;
  for (int i = 0; i < draws; ++i) {
    const ChannelRealization channels = sample_channels(scenario, rng);
    const PilotObservation obs = receive_pilots(scenario, channels, rng);
    const ChannelEstimate est = estimator.estimate(obs);
    const std::complex<double> g_hat = est.g_hat(0, 0);
    const std::complex<double> error = channels.g(0, 0) - g_hat;
    var_acc += std::norm(g_hat);
    err_var_acc += std::norm(error);
    cross_acc += std::conj(g_hat) * error;
  }
  const double varrho = estimator.varrho()(0, 0);
  const double beta = scenario.beta_terrestrial(0, 0);
  CHECK(var_acc / draws == doctest::Approx(varrho).epsilon(0.02));
  CHECK(err_var_acc / draws == doctest::Approx(beta - varrho).epsilon(0.02));
  // Estimate/error orthogonality.
  const double corr =
      std::abs(cross_acc / double(draws)) / std::sqrt(varrho * (beta - varrho));
  CHECK(corr < 0.02);
}

TEST_CASE("satellite estimate covariance matches Lemma statistics") {
  const NetworkScenario scenario = make_scenario(2, 2, 4);
  const MmseEstimator estimator(scenario);
  const double pk = scenario.constants.pilot_power_w * 2;
  const Eigen::MatrixXcd& r = scenario.correlation[0];
  const Eigen::MatrixXcd expected_cov = pk * r * estimator.psi()[0] * r;
  const Eigen::MatrixXcd expected_err_cov = r - expected_cov;

  RandomStream rng(8, "channels");
  const int draws = 10000;
  Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(4, 4);
  Eigen::MatrixXcd err_cov = Eigen::MatrixXcd::Zero(4, 4);
  for (int i = 0; i < draws; ++i) {
    const ChannelRealization channels = sample_channels(scenario, rng);
    const PilotObservation obs = receive_pilots(scenario, channels, rng);
    const ChannelEstimate est = estimator.estimate(obs);
    const Eigen::VectorXcd centered = est.h_hat[0] - scenario.los_vectors[0];
    cov += centered * centered.adjoint();
    const Eigen::VectorXcd error = channels.h[0] - est.h_hat[0];
    err_cov += error * error.adjoint();
  }
  cov /= draws;
  err_cov /= draws;
  CHECK((cov - expected_cov).norm() <= 0.05 * expected_cov.norm());
  CHECK((err_cov - expected_err_cov).norm() <= 0.05 * expected_err_cov.norm());
}

TEST_CASE("estimation is linear in the observation on the terrestrial path") {
  const NetworkScenario scenario = make_scenario(2, 2, 4);
  const MmseEstimator estimator(scenario);
  RandomStream rng(9, "channels");
  const ChannelRealization channels = sample_channels(scenario, rng);
  PilotObservation obs = receive_pilots(scenario, channels, rng);
  const ChannelEstimate base = estimator.estimate(obs);
  obs.y_ap *= 3.0;
  const ChannelEstimate scaled = estimator.estimate(obs);
  for (int k = 0; k < 2; ++k)
    for (int n = 0; n < 2; ++n)
      CHECK(std::abs(scaled.g_hat(k, n) - 3.0 * base.g_hat(k, n)) < 1e-12);
}

TEST_CASE("varrho never exceeds beta") {
  const NetworkScenario scenario = make_scenario(4, 3, 4);
  const MmseEstimator estimator(scenario);
  for (int k = 0; k < 4; ++k)
    for (int n = 0; n < 3; ++n) {
      CHECK(estimator.varrho()(k, n) >= 0.0);
      CHECK(estimator.varrho()(k, n) <= scenario.beta_terrestrial(k, n));
    }
}

TEST_SUITE_END();
