#pragma once

#include <string>
#include <vector>

#include "simfair/scenario_io.hpp"

namespace simfair {

// Closed form vs Monte-Carlo cross-validation on a small scenario
// (N <= 8, K <= 6, M <= 16 enforced). Relative error is |cf - mc| / cf with
// the 0/0 case counting as 0.
struct ValidateResult {
  Eigen::VectorXd closed_form;
  Eigen::VectorXd monte_carlo;
  Eigen::VectorXd rel_error;
  double tolerance = 0.02;
  int worst_user = -1;
  double worst_error = 0.0;
  bool pass = false;
  int mc_realizations = 0;
};

// The pattern defaults to full association; rows of unserved users compare
// exact zeros on both routes.
ValidateResult cmd_validate(const SimConfig& config);
ValidateResult cmd_validate(const SimConfig& config, const AssociationPattern& assoc);

// Association-mode breakdown of a decoded genome, in percent of users.
struct ModeShares {
  double satellite_only = 0.0;
  double aps_only = 0.0;
  double both = 0.0;
  double unserved = 0.0;
};

ModeShares connection_mode_shares(const AssociationPattern& assoc);

struct OptimizeOutcome {
  RunReport report;
  ModeShares shares;
};

// Runs the configured optimizer and utility; writes users.csv, history.csv
// and summary.json into config.out_dir when it is non-empty.
OptimizeOutcome cmd_optimize(const SimConfig& config);

enum class SweepAxis { kNumUsers, kNumAps, kGenerations };

SweepAxis sweep_axis_from_name(const std::string& name);

struct SweepRow {
  double axis_value = 0.0;
  std::string utility;
  double best_fitness = 0.0;
};

// One optimize run per (axis value, utility, seed offset); scenario seeds are
// shared across axis values so runs are paired. Writes sweep.csv when
// config.out_dir is non-empty.
std::vector<SweepRow> cmd_sweep(const SimConfig& config, SweepAxis axis,
                                const std::vector<double>& values, int num_seeds = 1);

struct ModeRunSummary {
  std::string mode;
  double best_value = 0.0;
  double min_rate = 0.0;
  double median_rate = 0.0;
  double max_rate = 0.0;
  Genome best_genome;
};

// Optimizes the same scenario three times: genomes constrained to
// satellite-only, APs-only (constraints enforced by masking bits after every
// operator), and unconstrained.
struct CompareModesResult {
  ModeRunSummary satellite_only;
  ModeRunSummary aps_only;
  ModeRunSummary unconstrained;
};

CompareModesResult cmd_compare_modes(const SimConfig& config);

// Empirical first-hitting-time statistics of the binary GA against the
// exhaustive optimum on a tiny instance (K <= 3 enforced).
struct HittingTimeResult {
  double optimum = 0.0;
  // Per trial: first generation whose best reached the optimum, or -1 when
  // the trial never hit within max_generations (censored).
  std::vector<int> hit_generation;
  int censored = 0;
  int trials = 0;
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;
  double bound_c = 1.0;
  // (p_m, c (1 - p_m)^(-2K) / K) pairs for visual comparison.
  std::vector<std::pair<double, double>> bound_curve;
};

HittingTimeResult cmd_hitting_time(const SimConfig& config, int n_trials, double bound_c = 1.0);

// Exhaustive search run packaged like cmd_optimize.
OptimizeOutcome cmd_exhaustive(const SimConfig& config);

std::string sweep_csv_text(const std::vector<SweepRow>& rows);
std::string hitting_time_csv_text(const HittingTimeResult& result);

}  // namespace simfair
