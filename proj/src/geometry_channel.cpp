#include "simfair/geometry_channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace simfair {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

// kappa/(1+kappa) and 1/(1+kappa), well defined for kappa in [0, inf].
double los_power_fraction(double kappa) {
  if (std::isinf(kappa)) return 1.0;
  return kappa / (1.0 + kappa);
}

double nlos_power_fraction(double kappa) {
  if (std::isinf(kappa)) return 0.0;
  return 1.0 / (1.0 + kappa);
}

}  // namespace

void RadioConstants::fill_data_power(double watts) {
  data_power_max_w.assign(static_cast<std::size_t>(num_users), watts);
}

void RadioConstants::validate() const {
  require(bandwidth_hz > 0, "RadioConstants: bandwidth_hz must be > 0");
  require(carrier_hz > 0, "RadioConstants: carrier_hz must be > 0");
  require(num_users >= 1, "RadioConstants: num_users must be >= 1");
  require(num_aps >= 1, "RadioConstants: num_aps must be >= 1");
  require(num_sat_antennas >= 1, "RadioConstants: num_sat_antennas must be >= 1");
  require(coherence_symbols > num_users,
          "RadioConstants: coherence_symbols must exceed num_users (got " +
              std::to_string(coherence_symbols) + " <= " + std::to_string(num_users) +
              "); the pilot phase would leave no data symbols");
  require(pilot_power_w >= 0, "RadioConstants: pilot_power_w must be >= 0");
  require(data_power_max_w.size() == static_cast<std::size_t>(num_users),
          "RadioConstants: data_power_max_w must hold one entry per user");
  for (double p : data_power_max_w)
    require(p >= 0, "RadioConstants: data_power_max_w entries must be >= 0");
  require(noise_var_ap_w > 0, "RadioConstants: noise_var_ap_w must be > 0");
  require(noise_var_sat_w > 0, "RadioConstants: noise_var_sat_w must be > 0");
  require(aperture_radius_m > 0, "RadioConstants: aperture_radius_m must be > 0");
  require(sat_altitude_m > 0, "RadioConstants: sat_altitude_m must be > 0");
  require(earth_radius_m > 0, "RadioConstants: earth_radius_m must be > 0");
}

void ScenarioConfig::validate() const {
  radio.validate();
  require(area_x_m > 0 && area_y_m > 0, "ScenarioConfig: area extents must be > 0");
  require(rician_kappa >= 0, "ScenarioConfig: rician_kappa must be >= 0");
  require(correlation_rho >= 0 && correlation_rho < 1,
          "ScenarioConfig: correlation_rho must lie in [0, 1)");
  require(shadow_std_terrestrial_db >= 0 && shadow_std_satellite_db >= 0,
          "ScenarioConfig: shadowing standard deviations must be >= 0");
  require(min_distance_m > 0, "ScenarioConfig: min_distance_m must be > 0");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double terrestrial_pathloss_db(double ap_gain_dbi, double user_gain_dbi, double carrier_hz,
                               double distance_m, double shadow_db) {
  require(carrier_hz > 0, "terrestrial_pathloss_db: carrier_hz must be > 0");
  require(distance_m > 0, "terrestrial_pathloss_db: distance_m must be > 0");
  const double carrier_ghz = carrier_hz / 1e9;
  const double r = std::max(distance_m, 1.0);
  return ap_gain_dbi + user_gain_dbi - 8.50 - 20.0 * std::log10(carrier_ghz) -
         38.63 * std::log10(r) + shadow_db;
}

double satellite_pathloss_db(double sat_gain_dbi, double user_gain_dbi, double beam_gain_db,
                             double carrier_hz, double slant_range_m, double shadow_db) {
  require(carrier_hz > 0, "satellite_pathloss_db: carrier_hz must be > 0");
  require(slant_range_m > 0, "satellite_pathloss_db: slant_range_m must be > 0");
  const double carrier_ghz = carrier_hz / 1e9;
  return sat_gain_dbi + user_gain_dbi + beam_gain_db - 32.45 -
         20.0 * std::log10(carrier_ghz * slant_range_m) + shadow_db;
}

double beam_pattern_gain(double angle_rad, double aperture_radius_m, double wavelength_m) {
  require(angle_rad >= 0 && angle_rad <= std::numbers::pi / 2,
          "beam_pattern_gain: angle must lie in [0, pi/2]");
  require(aperture_radius_m > 0, "beam_pattern_gain: aperture_radius_m must be > 0");
  require(wavelength_m > 0, "beam_pattern_gain: wavelength_m must be > 0");
  const double x = 2.0 * std::numbers::pi / wavelength_m * aperture_radius_m * std::sin(angle_rad);
  if (x < 1e-9) return 1.0;  // J1(x)/x -> 1/2, so the normalized pattern -> 1
  const double ratio = std::cyl_bessel_j(1.0, x) / x;
  return 4.0 * ratio * ratio;
}

double slant_range(double elevation_rad, double altitude_m, double earth_radius_m) {
  require(elevation_rad > 0 && elevation_rad <= std::numbers::pi / 2,
          "slant_range: elevation must lie in (0, pi/2]");
  require(altitude_m > 0, "slant_range: altitude_m must be > 0");
  require(earth_radius_m > 0, "slant_range: earth_radius_m must be > 0");
  const double sin_eps = std::sin(elevation_rad);
  const double r = earth_radius_m;
  const double z0 = altitude_m;
  return std::sqrt(r * r * sin_eps * sin_eps + z0 * z0 + 2.0 * z0 * r) - r * sin_eps;
}

Eigen::MatrixXcd build_spatial_correlation(double beta_sat, double rician_kappa, double rho,
                                           double steering_phase, int num_antennas) {
  require(beta_sat > 0, "build_spatial_correlation: beta_sat must be > 0");
  require(rician_kappa >= 0, "build_spatial_correlation: rician_kappa must be >= 0");
  require(rho >= 0 && rho < 1, "build_spatial_correlation: rho must lie in [0, 1)");
  require(num_antennas >= 1, "build_spatial_correlation: num_antennas must be >= 1");
  const double scale = beta_sat * nlos_power_fraction(rician_kappa);
  Eigen::MatrixXcd r(num_antennas, num_antennas);
  for (int a = 0; a < num_antennas; ++a) {
    for (int b = 0; b < num_antennas; ++b) {
      const int lag = a - b;
      const double mag = scale * std::pow(rho, std::abs(lag));
      r(a, b) = std::polar(mag, steering_phase * lag);
    }
  }
  return r;
}

Eigen::VectorXcd build_los_vector(double beta_sat, double rician_kappa, double steering_phase,
                                  int num_antennas) {
  require(beta_sat > 0, "build_los_vector: beta_sat must be > 0");
  require(rician_kappa >= 0, "build_los_vector: rician_kappa must be >= 0");
  require(num_antennas >= 1, "build_los_vector: num_antennas must be >= 1");
  const double amplitude = std::sqrt(beta_sat * los_power_fraction(rician_kappa));
  Eigen::VectorXcd v(num_antennas);
  for (int a = 0; a < num_antennas; ++a) v(a) = std::polar(amplitude, steering_phase * a);
  return v;
}

NetworkScenario generate_scenario(const ScenarioConfig& config, RandomStream& rng) {
  config.validate();
  const RadioConstants& rc = config.radio;
  const int k_users = rc.num_users;
  const int n_aps = rc.num_aps;
  const int m_antennas = rc.num_sat_antennas;
  const double wavelength = 299792458.0 / rc.carrier_hz;

  NetworkScenario scenario;
  scenario.constants = rc;
  scenario.sat_position = config.sat_position_m;

  scenario.ap_positions.reserve(n_aps);
  for (int n = 0; n < n_aps; ++n) {
    scenario.ap_positions.emplace_back(rng.uniform(0.0, config.area_x_m),
                                       rng.uniform(0.0, config.area_y_m), config.ap_height_m);
  }
  scenario.user_positions.reserve(k_users);
  for (int k = 0; k < k_users; ++k) {
    scenario.user_positions.emplace_back(rng.uniform(0.0, config.area_x_m),
                                         rng.uniform(0.0, config.area_y_m),
                                         config.user_height_m);
  }

  scenario.beta_terrestrial.resize(k_users, n_aps);
  for (int k = 0; k < k_users; ++k) {
    for (int n = 0; n < n_aps; ++n) {
      const double raw = (scenario.user_positions[k] - scenario.ap_positions[n]).norm();
      const double distance = std::max(raw, config.min_distance_m);
      const double shadow = config.shadow_std_terrestrial_db * rng.gaussian();
      scenario.beta_terrestrial(k, n) =
          db_to_linear(terrestrial_pathloss_db(rc.ap_antenna_gain_dbi, rc.user_antenna_gain_dbi,
                                               rc.carrier_hz, distance, shadow));
    }
  }

  // The satellite beam is pointed at the center of the service area.
  const Eigen::Vector3d beam_center(config.area_x_m / 2.0, config.area_y_m / 2.0, 0.0);
  const Eigen::Vector3d to_center = (beam_center - scenario.sat_position).normalized();

  scenario.beta_sat.resize(k_users);
  scenario.los_vectors.reserve(k_users);
  scenario.correlation.reserve(k_users);
  for (int k = 0; k < k_users; ++k) {
    const Eigen::Vector3d to_user = (scenario.user_positions[k] - scenario.sat_position);
    const double range = to_user.norm();
    const Eigen::Vector3d dir = to_user / range;
    const double cos_off = std::clamp(dir.dot(to_center), -1.0, 1.0);
    // Users behind the aperture plane get the edge-of-pattern gain.
    const double off_boresight = std::min(std::acos(cos_off), std::numbers::pi / 2);
    const double beam_db =
        linear_to_db(beam_pattern_gain(off_boresight, rc.aperture_radius_m, wavelength));
    const double shadow = config.shadow_std_satellite_db * rng.gaussian();
    scenario.beta_sat(k) =
        db_to_linear(satellite_pathloss_db(rc.sat_antenna_gain_dbi, rc.user_antenna_gain_dbi,
                                           beam_db, rc.carrier_hz, range, shadow));

    // Half-wavelength ULA along the global x axis at the satellite.
    const double steering_phase = std::numbers::pi * dir.x();
    scenario.los_vectors.push_back(
        build_los_vector(scenario.beta_sat(k), config.rician_kappa, steering_phase, m_antennas));
    scenario.correlation.push_back(build_spatial_correlation(
        scenario.beta_sat(k), config.rician_kappa, config.correlation_rho, steering_phase,
        m_antennas));
  }
  return scenario;
}

ChannelSampler::ChannelSampler(const NetworkScenario& scenario) : scenario_(&scenario) {
  const int m = scenario.num_sat_antennas();
  correlation_sqrt_.reserve(scenario.correlation.size());
  for (const Eigen::MatrixXcd& r : scenario.correlation) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(r);
    if (eig.info() != Eigen::Success)
      throw std::runtime_error("ChannelSampler: eigendecomposition of R_k failed");
    const double trace = r.real().trace();
    Eigen::VectorXd values = eig.eigenvalues();
    for (int i = 0; i < m; ++i) {
      if (values(i) < -1e-12 * std::max(trace, 1e-300))
        throw std::runtime_error("ChannelSampler: correlation matrix is not PSD");
      values(i) = std::sqrt(std::max(values(i), 0.0));
    }
    correlation_sqrt_.push_back(eig.eigenvectors() * values.asDiagonal() *
                                eig.eigenvectors().adjoint());
  }
}

ChannelRealization ChannelSampler::sample(RandomStream& rng) const {
  const NetworkScenario& sc = *scenario_;
  const int k_users = sc.num_users();
  const int n_aps = sc.num_aps();
  const int m = sc.num_sat_antennas();

  ChannelRealization channels;
  channels.g.resize(k_users, n_aps);
  for (int k = 0; k < k_users; ++k) {
    for (int n = 0; n < n_aps; ++n) {
      channels.g(k, n) = std::sqrt(sc.beta_terrestrial(k, n)) * rng.complex_gaussian();
    }
  }
  channels.h.reserve(k_users);
  Eigen::VectorXcd z(m);
  for (int k = 0; k < k_users; ++k) {
    for (int i = 0; i < m; ++i) z(i) = rng.complex_gaussian();
    channels.h.push_back(sc.los_vectors[k] + correlation_sqrt_[k] * z);
  }
  return channels;
}

ChannelRealization sample_channels(const NetworkScenario& scenario, RandomStream& rng) {
  return ChannelSampler(scenario).sample(rng);
}

void check_scenario_invariants(const NetworkScenario& scenario) {
  const int k_users = scenario.num_users();
  const int n_aps = scenario.num_aps();
  const int m = scenario.num_sat_antennas();
  auto fail = [](const std::string& what) { throw std::runtime_error("scenario invariant: " + what); };

  if (scenario.beta_terrestrial.rows() != k_users || scenario.beta_terrestrial.cols() != n_aps)
    fail("beta_terrestrial has wrong shape");
  if (scenario.beta_sat.size() != k_users) fail("beta_sat has wrong length");
  if (static_cast<int>(scenario.los_vectors.size()) != k_users) fail("los_vectors count");
  if (static_cast<int>(scenario.correlation.size()) != k_users) fail("correlation count");
  if ((scenario.beta_terrestrial.array() <= 0).any()) fail("beta_nk must be > 0");
  if ((scenario.beta_sat.array() <= 0).any()) fail("beta_k must be > 0");

  for (int k = 0; k < k_users; ++k) {
    const Eigen::VectorXcd& hbar = scenario.los_vectors[k];
    const Eigen::MatrixXcd& r = scenario.correlation[k];
    if (hbar.size() != m || r.rows() != m || r.cols() != m) fail("space-link dimensions");
    if (!hbar.allFinite()) fail("hbar_k must be finite");
    if ((r - r.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, r.cwiseAbs().maxCoeff()))
      fail("R_k must be Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(r);
    const double trace = r.real().trace();
    if (eig.eigenvalues().minCoeff() < -1e-12 * std::max(trace, 1e-300)) fail("R_k must be PSD");
    // trace(R_k) + ||hbar_k||^2 = M * beta_k: the LoS/NLoS power split is lossless.
    const double total = trace + hbar.squaredNorm();
    const double expected = m * scenario.beta_sat(k);
    if (std::abs(total - expected) > 1e-10 * expected) fail("space-link power budget");
  }
}

}  // namespace simfair
