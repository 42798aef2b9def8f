#include "simfair/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "simfair/digest.hpp"

namespace simfair {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

// Shortest exact decimal form; reparses to the identical double.
std::string format_exact(double value) {
  char buf[40];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

// Report floats: fixed 9 significant digits.
std::string format_g9(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

double round_g9(double value) {
  return std::strtod(format_g9(value).c_str(), nullptr);
}

struct KeyHandler {
  std::function<void(SimConfig&, const std::string&)> set;
  std::function<std::string(const SimConfig&)> get;
};

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  std::size_t consumed = 0;
  double parsed = 0;
  try {
    parsed = std::stod(v, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected number for " + key + ", got '" + v + "'");
  }
  if (consumed != v.size())
    throw std::invalid_argument("expected number for " + key + ", got '" + v + "'");
  return parsed;
}

int parse_int(const std::string& key, const std::string& value) {
  const double parsed = parse_double(key, value);
  if (parsed != std::floor(parsed) || std::abs(parsed) > 1e18)
    throw std::invalid_argument("expected integer for " + key + ", got '" + trim(value) + "'");
  return static_cast<int>(parsed);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  std::uint64_t parsed = 0;
  const auto result = std::from_chars(v.data(), v.data() + v.size(), parsed);
  if (result.ec != std::errc{} || result.ptr != v.data() + v.size())
    throw std::invalid_argument("expected unsigned integer for " + key + ", got '" + v + "'");
  return parsed;
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("expected true/false for " + key + ", got '" + v + "'");
}

const std::map<std::string, KeyHandler>& key_table() {
  static const std::map<std::string, KeyHandler> table = [] {
    std::map<std::string, KeyHandler> t;
    auto dbl = [&t](const std::string& key, double SimConfig::* member) {
      t[key] = {[key, member](SimConfig& c, const std::string& v) { c.*member = parse_double(key, v); },
                [member](const SimConfig& c) { return format_exact(c.*member); }};
    };
    auto integer = [&t](const std::string& key, int SimConfig::* member) {
      t[key] = {[key, member](SimConfig& c, const std::string& v) { c.*member = parse_int(key, v); },
                [member](const SimConfig& c) { return std::to_string(c.*member); }};
    };
    auto boolean = [&t](const std::string& key, bool SimConfig::* member) {
      t[key] = {[key, member](SimConfig& c, const std::string& v) { c.*member = parse_bool(key, v); },
                [member](const SimConfig& c) { return (c.*member) ? "true" : "false"; }};
    };
    auto text = [&t](const std::string& key, std::string SimConfig::* member) {
      t[key] = {[member](SimConfig& c, const std::string& v) { c.*member = trim(v); },
                [member](const SimConfig& c) { return c.*member; }};
    };

    dbl("radio.bandwidth_mhz", &SimConfig::bandwidth_mhz);
    dbl("radio.carrier_ghz", &SimConfig::carrier_ghz);
    integer("radio.coherence_symbols", &SimConfig::coherence_symbols);
    integer("radio.num_users", &SimConfig::num_users);
    integer("radio.num_aps", &SimConfig::num_aps);
    integer("radio.num_sat_antennas", &SimConfig::num_sat_antennas);
    dbl("radio.pilot_power_dbw", &SimConfig::pilot_power_dbw);
    dbl("radio.data_power_dbw", &SimConfig::data_power_dbw);
    dbl("radio.noise_figure_ap_db", &SimConfig::noise_figure_ap_db);
    dbl("radio.noise_figure_sat_db", &SimConfig::noise_figure_sat_db);
    dbl("radio.ap_gain_dbi", &SimConfig::ap_gain_dbi);
    dbl("radio.user_gain_dbi", &SimConfig::user_gain_dbi);
    dbl("radio.sat_gain_dbi", &SimConfig::sat_gain_dbi);
    dbl("radio.aperture_radius_m", &SimConfig::aperture_radius_m);
    dbl("radio.earth_radius_km", &SimConfig::earth_radius_km);
    dbl("area.x_km", &SimConfig::area_x_km);
    dbl("area.y_km", &SimConfig::area_y_km);
    dbl("area.ap_height_m", &SimConfig::ap_height_m);
    dbl("area.user_height_m", &SimConfig::user_height_m);
    dbl("sat.x_km", &SimConfig::sat_x_km);
    dbl("sat.y_km", &SimConfig::sat_y_km);
    dbl("sat.z_km", &SimConfig::sat_z_km);
    dbl("channel.rician_kappa", &SimConfig::rician_kappa);
    dbl("channel.rho", &SimConfig::correlation_rho);
    dbl("channel.shadow_terrestrial_db", &SimConfig::shadow_terrestrial_db);
    dbl("channel.shadow_satellite_db", &SimConfig::shadow_satellite_db);
    dbl("channel.min_distance_m", &SimConfig::min_distance_m);
    text("sim.utility", &SimConfig::utility);
    text("sim.optimizer", &SimConfig::optimizer);
    integer("sim.mc_realizations", &SimConfig::mc_realizations);
    t["sim.seed"] = {[](SimConfig& c, const std::string& v) { c.seed = parse_u64("sim.seed", v); },
                     [](const SimConfig& c) { return std::to_string(c.seed); }};
    text("sim.out_dir", &SimConfig::out_dir);
    integer("ga.population", &SimConfig::ga_population);
    integer("ga.generations", &SimConfig::ga_generations);
    dbl("ga.crossover_rate", &SimConfig::ga_crossover_rate);
    dbl("ga.mutation_rate", &SimConfig::ga_mutation_rate);
    dbl("ga.eps_one_point", &SimConfig::ga_eps_one_point);
    dbl("ga.eps_two_point", &SimConfig::ga_eps_two_point);
    dbl("ga.mutate_max_fraction", &SimConfig::ga_mutate_max_fraction);
    boolean("ga.adaptive_masks", &SimConfig::ga_adaptive_masks);
    text("ga.parent_selection", &SimConfig::ga_parent_selection);
    dbl("hga.eta_c", &SimConfig::hga_eta_c);
    dbl("hga.eta_m", &SimConfig::hga_eta_m);
    dbl("hga.real_mutation_rate", &SimConfig::hga_real_mutation_rate);
    boolean("hga.literal_counts", &SimConfig::hga_literal_counts);
    return t;
  }();
  return table;
}

void apply_assignment(SimConfig& config, const std::string& line, const std::string& where) {
  const auto eq = line.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument(where + ": expected 'key = value', got '" + trim(line) + "'");
  const std::string key = trim(line.substr(0, eq));
  const std::string value = line.substr(eq + 1);
  const auto& table = key_table();
  const auto it = table.find(key);
  if (it == table.end()) throw std::invalid_argument(where + ": unknown key '" + key + "'");
  try {
    it->second.set(config, value);
  } catch (const std::invalid_argument& error) {
    throw std::invalid_argument(where + ": " + error.what());
  }
}

}  // namespace

std::string optimizer_name(OptimizerChoice choice) {
  switch (choice) {
    case OptimizerChoice::kBcga: return "bcga";
    case OptimizerChoice::kHga: return "hga";
    case OptimizerChoice::kExhaustive: return "exhaustive";
  }
  throw std::logic_error("optimizer_name: bad choice");
}

OptimizerChoice optimizer_from_name(const std::string& name) {
  if (name == "bcga") return OptimizerChoice::kBcga;
  if (name == "hga") return OptimizerChoice::kHga;
  if (name == "exhaustive") return OptimizerChoice::kExhaustive;
  throw std::invalid_argument("unknown optimizer '" + name + "' (expected bcga|hga|exhaustive)");
}

ScenarioConfig SimConfig::scenario_config() const {
  ScenarioConfig sc;
  sc.radio.bandwidth_hz = bandwidth_mhz * 1e6;
  sc.radio.carrier_hz = carrier_ghz * 1e9;
  sc.radio.coherence_symbols = coherence_symbols;
  sc.radio.num_users = num_users;
  sc.radio.num_aps = num_aps;
  sc.radio.num_sat_antennas = num_sat_antennas;
  sc.radio.pilot_power_w = std::pow(10.0, pilot_power_dbw / 10.0);
  sc.radio.fill_data_power(std::pow(10.0, data_power_dbw / 10.0));
  // sigma^2 [dBm] = -174 + 10 log10(B) + NF.
  const double thermal_dbm = -174.0 + 10.0 * std::log10(bandwidth_mhz * 1e6);
  sc.radio.noise_var_ap_w = std::pow(10.0, (thermal_dbm + noise_figure_ap_db - 30.0) / 10.0);
  sc.radio.noise_var_sat_w = std::pow(10.0, (thermal_dbm + noise_figure_sat_db - 30.0) / 10.0);
  sc.radio.ap_antenna_gain_dbi = ap_gain_dbi;
  sc.radio.user_antenna_gain_dbi = user_gain_dbi;
  sc.radio.sat_antenna_gain_dbi = sat_gain_dbi;
  sc.radio.aperture_radius_m = aperture_radius_m;
  sc.radio.sat_altitude_m = sat_z_km * 1e3;
  sc.radio.earth_radius_m = earth_radius_km * 1e3;
  sc.area_x_m = area_x_km * 1e3;
  sc.area_y_m = area_y_km * 1e3;
  sc.ap_height_m = ap_height_m;
  sc.user_height_m = user_height_m;
  sc.sat_position_m = Eigen::Vector3d(sat_x_km * 1e3, sat_y_km * 1e3, sat_z_km * 1e3);
  sc.rician_kappa = rician_kappa;
  sc.correlation_rho = correlation_rho;
  sc.shadow_std_terrestrial_db = shadow_terrestrial_db;
  sc.shadow_std_satellite_db = shadow_satellite_db;
  sc.min_distance_m = min_distance_m;
  return sc;
}

GaConfig SimConfig::ga_config() const {
  GaConfig ga;
  ga.population_q = ga_population;
  ga.max_generations = ga_generations;
  ga.crossover_rate = ga_crossover_rate;
  ga.mutation_rate = ga_mutation_rate;
  ga.mask_prob_one_point = ga_eps_one_point;
  ga.mask_prob_two_point = ga_eps_two_point;
  ga.mutate_max_fraction = ga_mutate_max_fraction;
  ga.adaptive_masks = ga_adaptive_masks;
  if (ga_parent_selection == "uniform")
    ga.parent_selection = ParentSelection::kUniform;
  else if (ga_parent_selection == "tournament")
    ga.parent_selection = ParentSelection::kTournament2;
  else
    throw std::invalid_argument("ga.parent_selection must be uniform|tournament, got '" +
                                ga_parent_selection + "'");
  ga.seed = seed;
  return ga;
}

HgaConfig SimConfig::hga_config() const {
  HgaConfig hga;
  static_cast<GaConfig&>(hga) = ga_config();
  hga.sbx_eta = hga_eta_c;
  hga.polymut_eta = hga_eta_m;
  hga.real_mutation_rate = hga_real_mutation_rate;
  hga.literal_counts = hga_literal_counts;
  return hga;
}

void SimConfig::validate() const {
  auto fail = [](const std::string& message) { throw std::invalid_argument(message); };
  if (bandwidth_mhz <= 0) fail("radio.bandwidth_mhz must be > 0");
  if (carrier_ghz <= 0) fail("radio.carrier_ghz must be > 0");
  if (num_users < 1) fail("radio.num_users must be >= 1");
  if (num_aps < 1) fail("radio.num_aps must be >= 1");
  if (num_sat_antennas < 1) fail("radio.num_sat_antennas must be >= 1");
  if (coherence_symbols <= num_users)
    fail("radio.coherence_symbols must exceed radio.num_users (got " +
         std::to_string(coherence_symbols) + " <= " + std::to_string(num_users) +
         "); the pilot phase would leave no data symbols");
  if (aperture_radius_m <= 0) fail("radio.aperture_radius_m must be > 0");
  if (earth_radius_km <= 0) fail("radio.earth_radius_km must be > 0");
  if (area_x_km <= 0 || area_y_km <= 0) fail("area extents must be > 0");
  if (sat_z_km <= 0) fail("sat.z_km must be > 0");
  if (rician_kappa < 0) fail("channel.rician_kappa must be >= 0");
  if (correlation_rho < 0 || correlation_rho >= 1) fail("channel.rho must lie in [0, 1)");
  if (shadow_terrestrial_db < 0) fail("channel.shadow_terrestrial_db must be >= 0");
  if (shadow_satellite_db < 0) fail("channel.shadow_satellite_db must be >= 0");
  if (min_distance_m <= 0) fail("channel.min_distance_m must be > 0");
  if (mc_realizations < 1) fail("sim.mc_realizations must be >= 1");
  utility_kind();       // throws with key context if invalid
  optimizer_choice();
  ga_config().validate();
  hga_config().validate();
}

SimConfig load_config(const std::string& text) {
  SimConfig config;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    if (trim(line).empty()) continue;
    apply_assignment(config, line, "line " + std::to_string(line_number));
  }
  config.validate();
  return config;
}

SimConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_config(buffer.str());
}

void apply_override(SimConfig& config, const std::string& assignment) {
  apply_assignment(config, assignment, "override '" + trim(assignment) + "'");
  config.validate();
}

std::string emit_config(const SimConfig& config) {
  std::ostringstream out;
  for (const auto& [key, handler] : key_table()) {
    out << key << " = " << handler.get(config) << "\n";
  }
  return out.str();
}

RandomStream seeded_stream(std::uint64_t seed, std::string_view label) {
  return RandomStream(seed, label);
}

std::string scenario_digest(const NetworkScenario& scenario) {
  Sha256 hash;
  hash.update(static_cast<std::uint64_t>(scenario.num_users()));
  hash.update(static_cast<std::uint64_t>(scenario.num_aps()));
  hash.update(static_cast<std::uint64_t>(scenario.num_sat_antennas()));
  for (int k = 0; k < scenario.beta_terrestrial.rows(); ++k)
    for (int n = 0; n < scenario.beta_terrestrial.cols(); ++n)
      hash.update(scenario.beta_terrestrial(k, n));
  for (int k = 0; k < scenario.beta_sat.size(); ++k) hash.update(scenario.beta_sat(k));
  for (const Eigen::VectorXcd& hbar : scenario.los_vectors) {
    for (int i = 0; i < hbar.size(); ++i) {
      hash.update(hbar(i).real());
      hash.update(hbar(i).imag());
    }
  }
  for (const Eigen::MatrixXcd& r : scenario.correlation) {
    for (int a = 0; a < r.rows(); ++a) {
      for (int b = 0; b < r.cols(); ++b) {
        hash.update(r(a, b).real());
        hash.update(r(a, b).imag());
      }
    }
  }
  return hash.hex_digest();
}

RunReport make_run_report(const SimConfig& config, const NetworkScenario& scenario,
                          const FitnessEvaluator& evaluator, const SearchResult& search,
                          const std::vector<HistoryRow>& history) {
  RunReport report;
  report.config_text = emit_config(config);
  report.digest = scenario_digest(scenario);
  report.utility = config.utility;
  report.optimizer = config.optimizer;

  const int k_users = scenario.num_users();
  const AssociationPattern assoc = decode_genome(search.best_genome);
  const PowerAllocation powers =
      decode_power(search.best_genome, scenario.constants.data_power_max_w);
  const RateReport rates = evaluator.rates(search.best_genome);

  report.user_x_m.resize(k_users);
  report.user_y_m.resize(k_users);
  report.xi.resize(k_users);
  report.p_w.resize(k_users);
  report.sinr.resize(k_users);
  report.rate_mbps.resize(k_users);
  for (int k = 0; k < k_users; ++k) {
    report.user_x_m[k] = scenario.user_positions[k].x();
    report.user_y_m[k] = scenario.user_positions[k].y();
    report.xi[k] = powers.xi[k];
    report.p_w[k] = powers.power_w(k);
    report.sinr[k] = rates.sinr(k);
    report.rate_mbps[k] = rates.rate_mbps(k);
  }
  report.alpha = assoc.alpha;
  report.alpha_tilde = assoc.alpha_tilde;
  report.utility_arithmetic = utility(rates.rate_mbps, UtilityKind::kArithmetic);
  report.utility_geometric = utility(rates.rate_mbps, UtilityKind::kGeometric);
  report.utility_maxmin = utility(rates.rate_mbps, UtilityKind::kMaxMin);
  report.best_value = search.best_value;
  report.baseline_full_value = evaluator(all_ones_genome(k_users));
  report.best_genome = search.best_genome;
  report.history = history;
  report.evaluations = search.evaluations;
  return report;
}

std::string users_csv_text(const RunReport& report) {
  std::ostringstream out;
  out << "user_id,x_m,y_m,alpha,alpha_tilde,xi,p_w,sinr,rate_mbps\n";
  for (std::size_t k = 0; k < report.rate_mbps.size(); ++k) {
    out << k << ',' << format_g9(report.user_x_m[k]) << ',' << format_g9(report.user_y_m[k]) << ','
        << int(report.alpha[k]) << ',' << int(report.alpha_tilde[k]) << ','
        << format_g9(report.xi[k]) << ',' << format_g9(report.p_w[k]) << ','
        << format_g9(report.sinr[k]) << ',' << format_g9(report.rate_mbps[k]) << '\n';
  }
  return out.str();
}

std::string history_csv_text(const RunReport& report) {
  std::ostringstream out;
  out << "generation,best_fitness,mean_fitness,evals_cum\n";
  for (const HistoryRow& row : report.history) {
    out << row.generation << ',' << format_g9(row.best_fitness) << ','
        << format_g9(row.mean_fitness) << ',' << row.evals_cum << '\n';
  }
  return out.str();
}

std::string summary_json_text(const RunReport& report) {
  ordered_json j;
  j["config"] = report.config_text;
  j["scenario_digest"] = report.digest;
  j["utility"] = report.utility;
  j["optimizer"] = report.optimizer;
  j["best_value"] = round_g9(report.best_value);
  j["baseline_full_value"] = round_g9(report.baseline_full_value);
  j["utilities"] = {{"arithmetic", round_g9(report.utility_arithmetic)},
                    {"geometric", round_g9(report.utility_geometric)},
                    {"maxmin", round_g9(report.utility_maxmin)}};
  j["evaluations"] = report.evaluations;
  j["mc_realizations"] = report.mc_realizations;
  j["best_genome"] = {{"bits", report.best_genome.bits}, {"xi", report.best_genome.xi}};
  ordered_json users = ordered_json::array();
  for (std::size_t k = 0; k < report.rate_mbps.size(); ++k) {
    users.push_back({{"user_id", k},
                     {"x_m", round_g9(report.user_x_m[k])},
                     {"y_m", round_g9(report.user_y_m[k])},
                     {"alpha", int(report.alpha[k])},
                     {"alpha_tilde", int(report.alpha_tilde[k])},
                     {"xi", round_g9(report.xi[k])},
                     {"p_w", round_g9(report.p_w[k])},
                     {"sinr", round_g9(report.sinr[k])},
                     {"rate_mbps", round_g9(report.rate_mbps[k])}});
  }
  j["users"] = std::move(users);
  ordered_json history = ordered_json::array();
  for (const HistoryRow& row : report.history) {
    history.push_back({{"generation", row.generation},
                       {"best_fitness", round_g9(row.best_fitness)},
                       {"mean_fitness", round_g9(row.mean_fitness)},
                       {"evals_cum", row.evals_cum}});
  }
  j["history"] = std::move(history);
  j["timings"] = {{"scenario_s", report.time_scenario_s},
                  {"optimize_s", report.time_optimize_s},
                  {"total_s", report.time_total_s}};
  return j.dump(2) + "\n";
}

namespace {

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

void write_report(const RunReport& report, ReportFormat format, const std::string& directory) {
  std::filesystem::create_directories(directory);
  const std::filesystem::path dir(directory);
  if (format == ReportFormat::kCsv) {
    write_text_file((dir / "users.csv").string(), users_csv_text(report));
    write_text_file((dir / "history.csv").string(), history_csv_text(report));
  } else {
    write_text_file((dir / "summary.json").string(), summary_json_text(report));
  }
}

}  // namespace simfair
