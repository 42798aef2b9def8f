#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simfair/experiments.hpp"

namespace {

using namespace simfair;

// Built-in starting points used when no --config is given. validate and
// hitting-time default to instances small enough for their preconditions.
const char* kValidateDefaults =
    "radio.num_users = 4\n"
    "radio.num_aps = 5\n"
    "radio.num_sat_antennas = 8\n";

const char* kHittingTimeDefaults =
    "radio.num_users = 2\n"
    "radio.num_aps = 2\n"
    "radio.num_sat_antennas = 8\n"
    "ga.population = 8\n"
    "ga.mutation_rate = 0.3\n"
    "ga.generations = 500\n";

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Config file (key = value lines)");
  cmd->add_option("--set", args.overrides, "Override entries, e.g. --set radio.num_users=10");
  cmd->add_option("--out", args.out_dir, "Output directory (default: $SIMFAIR_OUT or none)");
  cmd->add_option("--seed", args.seed, "Run seed override")->each([&args](const std::string&) {
    args.seed_set = true;
  });
}

SimConfig resolve_config(const CommonArgs& args, const char* defaults) {
  SimConfig config;
  if (!args.config_path.empty())
    config = load_config_file(args.config_path);
  else if (defaults != nullptr)
    config = load_config(defaults);
  for (const std::string& assignment : args.overrides) apply_override(config, assignment);
  if (args.seed_set) config.seed = args.seed;
  if (!args.out_dir.empty()) {
    config.out_dir = args.out_dir;
  } else if (config.out_dir.empty()) {
    if (const char* env = std::getenv("SIMFAIR_OUT")) config.out_dir = env;
  }
  config.validate();
  return config;
}

void print_optimize_outcome(const OptimizeOutcome& outcome) {
  const RunReport& r = outcome.report;
  std::printf("optimizer          : %s\n", r.optimizer.c_str());
  std::printf("utility            : %s\n", r.utility.c_str());
  std::printf("best value         : %.9g\n", r.best_value);
  std::printf("full-association   : %.9g\n", r.baseline_full_value);
  if (r.baseline_full_value > 0)
    std::printf("gain over baseline : %.2f%%\n",
                100.0 * (r.best_value - r.baseline_full_value) / r.baseline_full_value);
  std::printf("evaluations        : %llu\n", static_cast<unsigned long long>(r.evaluations));
  std::printf("connection modes   : satellite-only %.2f%% | APs-only %.2f%% | both %.2f%% | unserved %.2f%%\n",
              outcome.shares.satellite_only, outcome.shares.aps_only, outcome.shares.both,
              outcome.shares.unserved);
  std::printf("scenario digest    : %s\n", r.digest.c_str());
}

int run_validate(const CommonArgs& args) {
  const SimConfig config = resolve_config(args, kValidateDefaults);
  const ValidateResult result = cmd_validate(config);
  std::printf("closed form vs Monte-Carlo (%d realizations), tolerance %.1f%%\n",
              result.mc_realizations, 100.0 * result.tolerance);
  std::printf("%6s %16s %16s %12s %s\n", "user", "closed_form", "monte_carlo", "rel_error", "ok");
  for (int k = 0; k < result.closed_form.size(); ++k) {
    std::printf("%6d %16.6g %16.6g %12.4g %s\n", k, result.closed_form(k), result.monte_carlo(k),
                result.rel_error(k), result.rel_error(k) <= result.tolerance ? "yes" : "NO");
  }
  if (!result.pass) {
    std::printf("FAIL: user %d exceeds tolerance (rel error %.4g > %.4g)\n", result.worst_user,
                result.worst_error, result.tolerance);
    return 1;
  }
  std::printf("PASS: worst user %d at rel error %.4g\n", result.worst_user, result.worst_error);
  return 0;
}

int run_optimize(const CommonArgs& args) {
  const SimConfig config = resolve_config(args, nullptr);
  print_optimize_outcome(cmd_optimize(config));
  return 0;
}

int run_exhaustive(const CommonArgs& args) {
  const SimConfig config = resolve_config(args, nullptr);
  print_optimize_outcome(cmd_exhaustive(config));
  return 0;
}

int run_sweep(const CommonArgs& args, const std::string& axis, std::vector<double>& values,
              int num_seeds) {
  const SimConfig config = resolve_config(args, nullptr);
  const auto rows = cmd_sweep(config, sweep_axis_from_name(axis), values, num_seeds);
  std::printf("axis_value,utility_kind,best_fitness\n");
  for (const SweepRow& row : rows)
    std::printf("%.9g,%s,%.9g\n", row.axis_value, row.utility.c_str(), row.best_fitness);
  return 0;
}

void print_mode(const ModeRunSummary& mode) {
  std::printf("%-16s best %.9g | rate min %.6g median %.6g max %.6g\n", mode.mode.c_str(),
              mode.best_value, mode.min_rate, mode.median_rate, mode.max_rate);
}

int run_compare_modes(const CommonArgs& args) {
  const SimConfig config = resolve_config(args, nullptr);
  const CompareModesResult result = cmd_compare_modes(config);
  print_mode(result.satellite_only);
  print_mode(result.aps_only);
  print_mode(result.unconstrained);
  return 0;
}

int run_hitting_time(const CommonArgs& args, int trials, double bound_c) {
  const SimConfig config = resolve_config(args, kHittingTimeDefaults);
  const HittingTimeResult result = cmd_hitting_time(config, trials, bound_c);
  std::printf("exhaustive optimum : %.9g\n", result.optimum);
  std::printf("trials             : %d (censored %d)\n", result.trials, result.censored);
  std::printf("hit generation     : mean %.2f median %.1f stddev %.2f\n", result.mean,
              result.median, result.stddev);
  std::printf("bound c(1-pm)^(-2K)/K with c = %.3g:\n", result.bound_c);
  for (const auto& [pm, bound] : result.bound_curve)
    std::printf("  p_m %.2f -> %.4g\n", pm, bound);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simfair: uplink throughput simulation and association/power optimization for an "
               "integrated LEO-satellite + cell-free massive MIMO network"};
  app.require_subcommand(1);

  CommonArgs validate_args, optimize_args, exhaustive_args, sweep_args, modes_args, hit_args;

  CLI::App* validate = app.add_subcommand(
      "validate", "Cross-validate closed-form SINR against the Monte-Carlo oracle");
  add_common(validate, validate_args);

  CLI::App* optimize =
      app.add_subcommand("optimize", "Optimize the association pattern (and powers with hga)");
  add_common(optimize, optimize_args);

  CLI::App* exhaustive =
      app.add_subcommand("exhaustive", "Globally optimal association by enumerating 4^K patterns");
  add_common(exhaustive, exhaustive_args);

  std::string sweep_axis = "num_users";
  std::vector<double> sweep_values;
  int sweep_seeds = 1;
  CLI::App* sweep = app.add_subcommand("sweep", "Optimize across a parameter axis");
  add_common(sweep, sweep_args);
  sweep->add_option("--axis", sweep_axis, "num_users|num_aps|generations");
  sweep->add_option("--values", sweep_values, "Axis values")->required();
  sweep->add_option("--seeds", sweep_seeds, "Seeds per axis value (default 1)");

  CLI::App* modes = app.add_subcommand(
      "compare-modes", "Optimize satellite-only, APs-only, and unconstrained configurations");
  add_common(modes, modes_args);

  int hit_trials = 200;
  double hit_bound_c = 1.0;
  CLI::App* hitting =
      app.add_subcommand("hitting-time", "Empirical first-hitting-time study on a tiny instance");
  add_common(hitting, hit_args);
  hitting->add_option("--trials", hit_trials, "Number of GA trials (default 200)");
  hitting->add_option("--bound-c", hit_bound_c, "Constant c of the reference bound curve");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return run_validate(validate_args);
    if (optimize->parsed()) return run_optimize(optimize_args);
    if (exhaustive->parsed()) return run_exhaustive(exhaustive_args);
    if (sweep->parsed()) return run_sweep(sweep_args, sweep_axis, sweep_values, sweep_seeds);
    if (modes->parsed()) return run_compare_modes(modes_args);
    if (hitting->parsed()) return run_hitting_time(hit_args, hit_trials, hit_bound_c);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }
  return 0;
}
