#include "simfair/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "simfair/optim_exhaustive.hpp"

namespace simfair {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_g9(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
}

NetworkScenario build_scenario(const SimConfig& config) {
  RandomStream rng = seeded_stream(config.seed, "scenario");
  return generate_scenario(config.scenario_config(), rng);
}

OptimizeOutcome run_optimizer(const SimConfig& config, const NetworkScenario& scenario) {
  const auto start = Clock::now();
  const FitnessEvaluator evaluator(scenario, config.utility_kind());
  const auto stats_done = Clock::now();

  SearchResult search;
  std::vector<HistoryRow> history;
  switch (config.optimizer_choice()) {
    case OptimizerChoice::kBcga: {
      BcgaResult r = run_bcga(scenario, config.utility_kind(), config.ga_config());
      search = std::move(r.result);
      history = std::move(r.history);
      break;
    }
    case OptimizerChoice::kHga: {
      HgaResult r = run_hga(scenario, config.utility_kind(), config.hga_config());
      search = std::move(r.result);
      history = std::move(r.history);
      break;
    }
    case OptimizerChoice::kExhaustive: {
      search = exhaustive_search(scenario, config.utility_kind());
      history.push_back({0, search.best_value, search.best_value, search.evaluations});
      break;
    }
  }

  OptimizeOutcome outcome;
  outcome.report = make_run_report(config, scenario, evaluator, search, history);
  outcome.report.time_optimize_s = seconds_since(stats_done);
  outcome.report.time_total_s = seconds_since(start);
  outcome.shares = connection_mode_shares(decode_genome(search.best_genome));
  return outcome;
}

}  // namespace

ValidateResult cmd_validate(const SimConfig& config) {
  return cmd_validate(config, AssociationPattern::full(config.num_users));
}

ValidateResult cmd_validate(const SimConfig& config, const AssociationPattern& assoc) {
  if (config.num_aps > 8 || config.num_users > 6 || config.num_sat_antennas > 16)
    throw std::invalid_argument(
        "cmd_validate: cross-validation is limited to N <= 8, K <= 6, M <= 16 (got N=" +
        std::to_string(config.num_aps) + ", K=" + std::to_string(config.num_users) +
        ", M=" + std::to_string(config.num_sat_antennas) + ")");

  const NetworkScenario scenario = build_scenario(config);
  const PowerAllocation powers = PowerAllocation::full_power(scenario);

  const ClosedFormStats stats = build_closed_form_stats(scenario);
  ValidateResult result;
  result.mc_realizations = config.mc_realizations;
  result.closed_form.resize(scenario.num_users());
  for (int k = 0; k < scenario.num_users(); ++k)
    result.closed_form(k) = sinr_closed_form(stats, assoc, powers, k);

  RandomStream mc_rng = seeded_stream(config.seed, "mc");
  result.monte_carlo =
      sinr_monte_carlo(scenario, assoc, powers, config.mc_realizations, mc_rng);

  result.rel_error.resize(scenario.num_users());
  result.worst_error = 0.0;
  result.worst_user = 0;
  for (int k = 0; k < scenario.num_users(); ++k) {
    const double cf = result.closed_form(k);
    const double mc = result.monte_carlo(k);
    const double err = cf == 0.0 ? std::abs(mc) : std::abs(cf - mc) / cf;
    result.rel_error(k) = err;
    if (err > result.worst_error) {
      result.worst_error = err;
      result.worst_user = k;
    }
  }
  result.pass = result.worst_error <= result.tolerance;
  return result;
}

ModeShares connection_mode_shares(const AssociationPattern& assoc) {
  const int k_users = assoc.num_users();
  int sat_only = 0, ap_only = 0, both = 0, unserved = 0;
  for (int k = 0; k < k_users; ++k) {
    const bool ap = assoc.alpha[k] != 0;
    const bool sat = assoc.alpha_tilde[k] != 0;
    if (ap && sat)
      ++both;
    else if (sat)
      ++sat_only;
    else if (ap)
      ++ap_only;
    else
      ++unserved;
  }
  const double scale = 100.0 / k_users;
  return {sat_only * scale, ap_only * scale, both * scale, unserved * scale};
}

OptimizeOutcome cmd_optimize(const SimConfig& config) {
  const auto start = Clock::now();
  const NetworkScenario scenario = build_scenario(config);
  const double scenario_s = seconds_since(start);

  OptimizeOutcome outcome = run_optimizer(config, scenario);
  outcome.report.time_scenario_s = scenario_s;
  outcome.report.time_total_s = seconds_since(start);
  if (!config.out_dir.empty()) {
    write_report(outcome.report, ReportFormat::kCsv, config.out_dir);
    write_report(outcome.report, ReportFormat::kJson, config.out_dir);
  }
  return outcome;
}

OptimizeOutcome cmd_exhaustive(const SimConfig& config) {
  SimConfig forced = config;
  forced.optimizer = "exhaustive";
  return cmd_optimize(forced);
}

SweepAxis sweep_axis_from_name(const std::string& name) {
  if (name == "num_users") return SweepAxis::kNumUsers;
  if (name == "num_aps") return SweepAxis::kNumAps;
  if (name == "generations") return SweepAxis::kGenerations;
  throw std::invalid_argument("unknown sweep axis '" + name +
                              "' (expected num_users|num_aps|generations)");
}

std::vector<SweepRow> cmd_sweep(const SimConfig& config, SweepAxis axis,
                                const std::vector<double>& values, int num_seeds) {
  if (values.empty()) throw std::invalid_argument("cmd_sweep: no axis values given");
  if (num_seeds < 1) throw std::invalid_argument("cmd_sweep: num_seeds must be >= 1");

  static const UtilityKind kinds[3] = {UtilityKind::kArithmetic, UtilityKind::kGeometric,
                                       UtilityKind::kMaxMin};
  std::vector<SweepRow> rows;
  for (double value : values) {
    SimConfig point = config;
    point.out_dir.clear();
    const int int_value = static_cast<int>(std::llround(value));
    switch (axis) {
      case SweepAxis::kNumUsers: point.num_users = int_value; break;
      case SweepAxis::kNumAps: point.num_aps = int_value; break;
      case SweepAxis::kGenerations: point.ga_generations = int_value; break;
    }
    for (int trial = 0; trial < num_seeds; ++trial) {
      SimConfig run = point;
      run.seed = config.seed + static_cast<std::uint64_t>(trial);
      run.validate();
      const NetworkScenario scenario = build_scenario(run);
      for (UtilityKind kind : kinds) {
        SimConfig per_kind = run;
        per_kind.utility = utility_name(kind);
        const OptimizeOutcome outcome = run_optimizer(per_kind, scenario);
        rows.push_back({value, utility_name(kind), outcome.report.best_value});
      }
    }
  }
  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    write_text_file((std::filesystem::path(config.out_dir) / "sweep.csv").string(),
                    sweep_csv_text(rows));
  }
  return rows;
}

namespace {

ModeRunSummary summarize_mode(const std::string& mode, const SimConfig& config,
                              const NetworkScenario& scenario,
                              const std::vector<std::uint8_t>& forced_zero_mask) {
  SimConfig run = config;
  run.out_dir.clear();
  if (run.optimizer_choice() == OptimizerChoice::kExhaustive) run.optimizer = "bcga";

  const FitnessEvaluator evaluator(scenario, run.utility_kind());
  SearchResult search;
  if (run.optimizer_choice() == OptimizerChoice::kHga) {
    HgaConfig hga = run.hga_config();
    hga.forced_zero_mask = forced_zero_mask;
    search = run_hga(scenario, run.utility_kind(), hga).result;
  } else {
    GaConfig ga = run.ga_config();
    ga.forced_zero_mask = forced_zero_mask;
    search = run_bcga(scenario, run.utility_kind(), ga).result;
  }

  ModeRunSummary summary;
  summary.mode = mode;
  summary.best_value = search.best_value;
  summary.best_genome = search.best_genome;
  Eigen::VectorXd rates = evaluator.rates(search.best_genome).rate_mbps;
  std::vector<double> sorted(rates.data(), rates.data() + rates.size());
  std::sort(sorted.begin(), sorted.end());
  summary.min_rate = sorted.front();
  summary.max_rate = sorted.back();
  const std::size_t n = sorted.size();
  summary.median_rate =
      n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return summary;
}

}  // namespace

CompareModesResult cmd_compare_modes(const SimConfig& config) {
  const NetworkScenario scenario = build_scenario(config);
  const int k_users = scenario.num_users();

  // Genome layout is [AP, satellite] per user: masking even positions removes
  // AP service, odd positions satellite service.
  std::vector<std::uint8_t> mask_aps(2 * static_cast<std::size_t>(k_users), 0);
  std::vector<std::uint8_t> mask_sat(2 * static_cast<std::size_t>(k_users), 0);
  for (int k = 0; k < k_users; ++k) {
    mask_aps[2 * k] = 1;       // satellite-only mode: AP flags forced to 0
    mask_sat[2 * k + 1] = 1;   // APs-only mode: satellite flags forced to 0
  }

  CompareModesResult result;
  result.satellite_only = summarize_mode("satellite_only", config, scenario, mask_aps);
  result.aps_only = summarize_mode("aps_only", config, scenario, mask_sat);
  result.unconstrained = summarize_mode("unconstrained", config, scenario, {});
  return result;
}

HittingTimeResult cmd_hitting_time(const SimConfig& config, int n_trials, double bound_c) {
  if (config.num_users > 3)
    throw std::invalid_argument("cmd_hitting_time: needs a tiny instance with K <= 3, got K=" +
                                std::to_string(config.num_users));
  if (n_trials < 1) throw std::invalid_argument("cmd_hitting_time: n_trials must be >= 1");

  const NetworkScenario scenario = build_scenario(config);
  const UtilityKind kind = config.utility_kind();
  const FitnessEvaluator evaluator(scenario, kind);
  const FitnessFunction fitness_fn = [&evaluator](const Genome& g) { return evaluator(g); };

  const SearchResult optimum = exhaustive_search(fitness_fn, scenario.num_users());

  HittingTimeResult result;
  result.optimum = optimum.best_value;
  result.trials = n_trials;
  result.bound_c = bound_c;
  const double hit_level = optimum.best_value - 1e-9 * std::max(1.0, std::abs(optimum.best_value));

  RandomStream trial_seeds = seeded_stream(config.seed, "hitting");
  for (int trial = 0; trial < n_trials; ++trial) {
    GaConfig ga = config.ga_config();
    ga.seed = trial_seeds.substream(static_cast<std::uint64_t>(trial)).raw();
    const BcgaResult run = run_bcga(fitness_fn, scenario.num_users(), ga);
    int hit = -1;
    for (const HistoryRow& row : run.history) {
      if (row.best_fitness >= hit_level) {
        hit = row.generation;
        break;
      }
    }
    result.hit_generation.push_back(hit);
    if (hit < 0) ++result.censored;
  }

  std::vector<int> hits;
  for (int g : result.hit_generation)
    if (g >= 0) hits.push_back(g);
  if (!hits.empty()) {
    std::sort(hits.begin(), hits.end());
    double sum = 0.0;
    for (int g : hits) sum += g;
    result.mean = sum / hits.size();
    const std::size_t n = hits.size();
    result.median = n % 2 == 1 ? hits[n / 2] : 0.5 * (hits[n / 2 - 1] + hits[n / 2]);
    double sq = 0.0;
    for (int g : hits) sq += (g - result.mean) * (g - result.mean);
    result.stddev = hits.size() > 1 ? std::sqrt(sq / (hits.size() - 1)) : 0.0;
  }

  const int bits = 2 * scenario.num_users();
  for (double pm = 0.05; pm <= 0.501; pm += 0.05) {
    const double bound = bound_c * std::pow(1.0 - pm, -bits) / scenario.num_users();
    result.bound_curve.emplace_back(pm, bound);
  }

  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    write_text_file(
        (std::filesystem::path(config.out_dir) / "hitting_time.csv").string(),
        hitting_time_csv_text(result));
  }
  return result;
}

std::string sweep_csv_text(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "axis_value,utility_kind,best_fitness\n";
  for (const SweepRow& row : rows)
    out << format_g9(row.axis_value) << ',' << row.utility << ',' << format_g9(row.best_fitness)
        << '\n';
  return out.str();
}

std::string hitting_time_csv_text(const HittingTimeResult& result) {
  std::ostringstream out;
  out << "trial,hit_generation,censored\n";
  for (std::size_t trial = 0; trial < result.hit_generation.size(); ++trial) {
    const int hit = result.hit_generation[trial];
    out << trial << ',' << hit << ',' << (hit < 0 ? 1 : 0) << '\n';
  }
  out << "# p_m,efht_bound\n";
  for (const auto& [pm, bound] : result.bound_curve)
    out << "# " << format_g9(pm) << ',' << format_g9(bound) << '\n';
  return out.str();
}

}  // namespace simfair
