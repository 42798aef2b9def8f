#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simfair/fairness.hpp"
#include "simfair/geometry_channel.hpp"
#include "simfair/optim_ga.hpp"
#include "simfair/optim_hga.hpp"
#include "simfair/rng.hpp"

namespace simfair {

enum class OptimizerChoice { kBcga, kHga, kExhaustive };

std::string optimizer_name(OptimizerChoice choice);
OptimizerChoice optimizer_from_name(const std::string& name);

// Full run configuration. Values are stored in the units the config file
// uses (MHz, GHz, km, dBW, dB) and converted on demand, so emit/load round
// trips are exact.
struct SimConfig {
  // radio.*
  double bandwidth_mhz = 100.0;
  double carrier_ghz = 20.0;
  int coherence_symbols = 10000;
  int num_users = 20;
  int num_aps = 10;
  int num_sat_antennas = 100;
  double pilot_power_dbw = 20.0;
  double data_power_dbw = 20.0;
  double noise_figure_ap_db = 6.0;
  double noise_figure_sat_db = 1.3;
  double ap_gain_dbi = 10.0;
  double user_gain_dbi = 10.0;
  double sat_gain_dbi = 26.9;
  double aperture_radius_m = 0.5;
  double earth_radius_km = 6371.0;
  // area.*
  double area_x_km = 3.872983346207417;  // 15 km^2 square by default
  double area_y_km = 3.872983346207417;
  double ap_height_m = 10.0;
  double user_height_m = 1.5;
  // sat.*
  double sat_x_km = 300.0;
  double sat_y_km = 350.0;
  double sat_z_km = 400.0;
  // channel.*
  double rician_kappa = 10.0;
  double correlation_rho = 0.5;
  double shadow_terrestrial_db = 7.0;
  double shadow_satellite_db = 4.0;
  double min_distance_m = 1.0;
  // sim.*
  std::string utility = "maxmin";
  std::string optimizer = "bcga";
  int mc_realizations = 50000;
  std::uint64_t seed = 1;
  std::string out_dir;
  // ga.* / hga.*
  int ga_population = 50;
  int ga_generations = 300;
  double ga_crossover_rate = 0.9;
  double ga_mutation_rate = 0.2;
  double ga_eps_one_point = 1.0 / 3.0;
  double ga_eps_two_point = 1.0 / 3.0;
  double ga_mutate_max_fraction = 1.0;
  bool ga_adaptive_masks = false;
  std::string ga_parent_selection = "uniform";
  double hga_eta_c = 15.0;
  double hga_eta_m = 20.0;
  double hga_real_mutation_rate = 0.5;
  bool hga_literal_counts = false;

  UtilityKind utility_kind() const { return utility_from_name(utility); }
  OptimizerChoice optimizer_choice() const { return optimizer_from_name(optimizer); }
  ScenarioConfig scenario_config() const;
  GaConfig ga_config() const;
  HgaConfig hga_config() const;

  // Cross-field invariants, with config-key-level messages.
  void validate() const;
};

// Parses "key = value" lines with '#' comments and dotted sections. Errors
// carry the line number and key. The result is validated.
SimConfig load_config(const std::string& text);
SimConfig load_config_file(const std::string& path);

// Applies one "key=value" override using the same parser/validation table as
// config files.
void apply_override(SimConfig& config, const std::string& assignment);

// Canonical text form; load(emit(c)) == c exactly (floats are emitted
// shortest-round-trip).
std::string emit_config(const SimConfig& config);

// Labeled deterministic stream (see RandomStream for the generator family).
RandomStream seeded_stream(std::uint64_t seed, std::string_view label);

// SHA-256 over a canonical serialization of all large-scale statistics.
std::string scenario_digest(const NetworkScenario& scenario);

enum class ReportFormat { kCsv, kJson };

struct RunReport {
  std::string config_text;  // emitted config echo
  std::string digest;       // scenario digest
  std::string utility;      // optimized utility name
  std::string optimizer;
  // Per-user results (users.csv).
  std::vector<double> user_x_m, user_y_m;
  std::vector<std::uint8_t> alpha, alpha_tilde;
  std::vector<double> xi, p_w, sinr, rate_mbps;
  // Aggregates of the reported rates under all three utilities.
  double utility_arithmetic = 0.0;
  double utility_geometric = 0.0;
  double utility_maxmin = 0.0;
  double best_value = 0.0;
  double baseline_full_value = 0.0;  // all-ones genome at full power
  Genome best_genome;
  std::vector<HistoryRow> history;
  std::uint64_t evaluations = 0;
  int mc_realizations = 0;
  // Wall-clock fields; excluded from determinism comparisons.
  double time_scenario_s = 0.0;
  double time_optimize_s = 0.0;
  double time_total_s = 0.0;
};

RunReport make_run_report(const SimConfig& config, const NetworkScenario& scenario,
                          const FitnessEvaluator& evaluator, const SearchResult& search,
                          const std::vector<HistoryRow>& history);

// CSV format writes users.csv and history.csv into the directory; JSON writes
// summary.json. Floats are printed with 9 significant digits; rewriting the
// same report is byte-identical.
void write_report(const RunReport& report, ReportFormat format, const std::string& directory);

std::string users_csv_text(const RunReport& report);
std::string history_csv_text(const RunReport& report);
std::string summary_json_text(const RunReport& report);

}  // namespace simfair
