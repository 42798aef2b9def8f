#pragma once

#include <Eigen/Dense>
#include <vector>

#include "simfair/rng.hpp"

namespace simfair {

// Physical-layer constants of the integrated satellite / cell-free network.
// Linear SI units throughout (Hz, m, W); dB values only appear in the
// path-loss model formulas.
struct RadioConstants {
  double bandwidth_hz = 100e6;
  double carrier_hz = 20e9;
  int coherence_symbols = 10000;  // tau_c; K of them are spent on pilots
  int num_users = 20;             // K
  int num_aps = 10;               // N
  int num_sat_antennas = 100;     // M
  double pilot_power_w = 100.0;
  std::vector<double> data_power_max_w;  // per user; fill_data_power() expands a scalar
  double noise_var_ap_w = 1.584893192461111e-12;   // -88 dBm (NF 6 dB at 100 MHz)
  double noise_var_sat_w = 5.370317963702532e-13;  // -92.7 dBm (NF 1.3 dB)
  double ap_antenna_gain_dbi = 10.0;
  double user_antenna_gain_dbi = 10.0;
  double sat_antenna_gain_dbi = 26.9;
  double aperture_radius_m = 0.5;
  double sat_altitude_m = 400e3;
  double earth_radius_m = 6371e3;

  void fill_data_power(double watts);
  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Everything generate_scenario() needs besides randomness.
struct ScenarioConfig {
  RadioConstants radio;
  double area_x_m = 3872.983346207417;  // sqrt(15 km^2): a 15 km^2 square
  double area_y_m = 3872.983346207417;
  double ap_height_m = 10.0;
  double user_height_m = 1.5;
  Eigen::Vector3d sat_position_m{300e3, 350e3, 400e3};
  double rician_kappa = 10.0;          // LoS/NLoS power split of the space link
  double correlation_rho = 0.5;        // exponential-correlation coefficient, [0, 1)
  double shadow_std_terrestrial_db = 7.0;
  double shadow_std_satellite_db = 4.0;
  double min_distance_m = 1.0;

  void validate() const;
};

// Deterministic large-scale statistics of one network drop.
struct NetworkScenario {
  RadioConstants constants;
  std::vector<Eigen::Vector3d> ap_positions;
  std::vector<Eigen::Vector3d> user_positions;
  Eigen::Vector3d sat_position;
  Eigen::MatrixXd beta_terrestrial;            // K x N, linear gains beta_nk
  Eigen::VectorXd beta_sat;                    // K, linear gains beta_k
  std::vector<Eigen::VectorXcd> los_vectors;   // K vectors of length M
  std::vector<Eigen::MatrixXcd> correlation;   // K Hermitian PSD M x M matrices

  int num_users() const { return constants.num_users; }
  int num_aps() const { return constants.num_aps; }
  int num_sat_antennas() const { return constants.num_sat_antennas; }
};

// One draw of all small-scale channels.
struct ChannelRealization {
  Eigen::MatrixXcd g;                 // K x N, g(k, n) = g_nk
  std::vector<Eigen::VectorXcd> h;    // K vectors of length M
};

double db_to_linear(double db);
double linear_to_db(double linear);

// Rural-macro terrestrial large-scale fading in dB:
//   beta_nk = H_m + H_k - 8.50 - 20 log10(f_c[GHz]) - 38.63 log10(r_nk[m]) + eta_nk.
// Distances below 1 m are clamped to 1 m.
double terrestrial_pathloss_db(double ap_gain_dbi, double user_gain_dbi, double carrier_hz,
                               double distance_m, double shadow_db);

// Space-link large-scale fading in dB:
//   beta_k = H + H_k + Hbeam_k - 32.45 - 20 log10(f_c[GHz] * r_k[m]) + eta_k.
// The -32.45 constant matches the classic MHz*km free-space form, which is
// identical to GHz*m.
double satellite_pathloss_db(double sat_gain_dbi, double user_gain_dbi, double beam_gain_db,
                             double carrier_hz, double slant_range_m, double shadow_db);

// Normalized circular-aperture pattern 4 |J1(x)/x|^2 with
// x = (2 pi / lambda) * a * sin(angle); analytic limit 1 at boresight.
// angle must lie in [0, pi/2].
double beam_pattern_gain(double angle_rad, double aperture_radius_m, double wavelength_m);

// Distance to a satellite at altitude z0 seen under elevation eps:
//   d = sqrt(R^2 sin^2(eps) + z0^2 + 2 z0 R) - R sin(eps).
double slant_range(double elevation_rad, double altitude_m, double earth_radius_m);

// NLoS spatial correlation R_k = beta/(1+kappa) * C with
// C[a][b] = rho^|a-b| * exp(j * phase * (a-b)); trace(R) = M * beta/(1+kappa).
Eigen::MatrixXcd build_spatial_correlation(double beta_sat, double rician_kappa, double rho,
                                           double steering_phase, int num_antennas);

// LoS component: ULA steering vector at the given phase, scaled so that
// ||hbar||^2 = M * beta * kappa/(1+kappa).
Eigen::VectorXcd build_los_vector(double beta_sat, double rician_kappa, double steering_phase,
                                  int num_antennas);

// Uniform user/AP placement plus all large-scale statistics. Pure function of
// (config, stream state).
NetworkScenario generate_scenario(const ScenarioConfig& config, RandomStream& rng);

// Reusable sampler holding the matrix square roots of the correlation
// matrices; sample() draws g_nk ~ CN(0, beta_nk) and h_k = hbar_k + R^1/2 z.
class ChannelSampler {
 public:
  explicit ChannelSampler(const NetworkScenario& scenario);
  ChannelRealization sample(RandomStream& rng) const;

 private:
  const NetworkScenario* scenario_;
  std::vector<Eigen::MatrixXcd> correlation_sqrt_;
};

ChannelRealization sample_channels(const NetworkScenario& scenario, RandomStream& rng);

// Throws std::runtime_error if any structural invariant is violated
// (positivity, PSD correlation, power-split consistency, dimensions).
void check_scenario_invariants(const NetworkScenario& scenario);

}  // namespace simfair
