#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "simfair/experiments.hpp"
#include "simfair/optim_exhaustive.hpp"
#include "simfair/optim_ga.hpp"
#include "simfair/optim_hga.hpp"

namespace py = pybind11;
using namespace simfair;

namespace {

SimConfig config_from_text(const std::string& text) { return load_config(text); }

py::dict history_to_dicts(const std::vector<HistoryRow>& history) {
  py::list generations, best, mean, evals;
  for (const HistoryRow& row : history) {
    generations.append(row.generation);
    best.append(row.best_fitness);
    mean.append(row.mean_fitness);
    evals.append(row.evals_cum);
  }
  py::dict d;
  d["generation"] = generations;
  d["best_fitness"] = best;
  d["mean_fitness"] = mean;
  d["evals_cum"] = evals;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Uplink throughput simulation and association/power optimization for an integrated "
            "LEO-satellite + cell-free massive MIMO network";

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_static("from_text", &config_from_text, py::arg("text"))
      .def("set", [](SimConfig& c, const std::string& key, const std::string& value) {
        apply_override(c, key + "=" + value);
      })
      .def("emit", &emit_config)
      .def("validate", &SimConfig::validate)
      .def_readwrite("num_users", &SimConfig::num_users)
      .def_readwrite("num_aps", &SimConfig::num_aps)
      .def_readwrite("num_sat_antennas", &SimConfig::num_sat_antennas)
      .def_readwrite("utility", &SimConfig::utility)
      .def_readwrite("optimizer", &SimConfig::optimizer)
      .def_readwrite("mc_realizations", &SimConfig::mc_realizations)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("out_dir", &SimConfig::out_dir)
      .def_readwrite("ga_population", &SimConfig::ga_population)
      .def_readwrite("ga_generations", &SimConfig::ga_generations);

  py::class_<NetworkScenario>(m, "NetworkScenario")
      .def_property_readonly("num_users", &NetworkScenario::num_users)
      .def_property_readonly("num_aps", &NetworkScenario::num_aps)
      .def_property_readonly("num_sat_antennas", &NetworkScenario::num_sat_antennas)
      .def_readonly("beta_terrestrial", &NetworkScenario::beta_terrestrial)
      .def_readonly("beta_sat", &NetworkScenario::beta_sat)
      .def("digest", [](const NetworkScenario& s) { return scenario_digest(s); });

  py::class_<Genome>(m, "Genome")
      .def(py::init<>())
      .def_readwrite("bits", &Genome::bits)
      .def_readwrite("xi", &Genome::xi)
      .def("__eq__", [](const Genome& a, const Genome& b) { return a == b; });

  py::class_<AssociationPattern>(m, "AssociationPattern")
      .def(py::init<>())
      .def_static("full", &AssociationPattern::full, py::arg("num_users"))
      .def_readwrite("alpha", &AssociationPattern::alpha)
      .def_readwrite("alpha_tilde", &AssociationPattern::alpha_tilde);

  py::class_<SearchResult>(m, "SearchResult")
      .def_readonly("best_genome", &SearchResult::best_genome)
      .def_readonly("best_value", &SearchResult::best_value)
      .def_readonly("evaluations", &SearchResult::evaluations)
      .def_readonly("wall_time_s", &SearchResult::wall_time_s);

  m.def("generate_scenario", [](const SimConfig& config) {
    RandomStream rng = seeded_stream(config.seed, "scenario");
    return generate_scenario(config.scenario_config(), rng);
  });

  m.def(
      "closed_form_rates",
      [](const NetworkScenario& scenario, const AssociationPattern& assoc,
         const std::vector<double>& xi) {
        const ClosedFormStats stats = build_closed_form_stats(scenario);
        PowerAllocation powers = PowerAllocation::full_power(scenario);
        if (!xi.empty()) powers.xi = xi;
        const RateReport report = all_rates(scenario, stats, assoc, powers);
        py::dict out;
        out["sinr"] = report.sinr;
        out["rate_mbps"] = report.rate_mbps;
        return out;
      },
      py::arg("scenario"), py::arg("assoc"), py::arg("xi") = std::vector<double>{});

  m.def(
      "monte_carlo_rates",
      [](const NetworkScenario& scenario, const AssociationPattern& assoc, int n_realizations,
         std::uint64_t seed) {
        RandomStream rng = seeded_stream(seed, "mc");
        const PowerAllocation powers = PowerAllocation::full_power(scenario);
        const RateReport report =
            all_rates_monte_carlo(scenario, assoc, powers, n_realizations, rng);
        py::dict out;
        out["sinr"] = report.sinr;
        out["rate_mbps"] = report.rate_mbps;
        return out;
      },
      py::arg("scenario"), py::arg("assoc"), py::arg("n_realizations") = 2000,
      py::arg("seed") = 1);

  m.def("utility", [](const Eigen::VectorXd& rates, const std::string& kind) {
    return utility(rates, utility_from_name(kind));
  });

  m.def("fitness", [](const Genome& genome, const NetworkScenario& scenario,
                      const std::string& kind) {
    return fitness(genome, scenario, utility_from_name(kind));
  });

  m.def("all_ones_genome", &all_ones_genome, py::arg("num_users"), py::arg("hybrid") = false);
  m.def("decode_genome", &decode_genome);

  m.def("terrestrial_pathloss_db", &terrestrial_pathloss_db, py::arg("ap_gain_dbi"),
        py::arg("user_gain_dbi"), py::arg("carrier_hz"), py::arg("distance_m"),
        py::arg("shadow_db") = 0.0);
  m.def("satellite_pathloss_db", &satellite_pathloss_db, py::arg("sat_gain_dbi"),
        py::arg("user_gain_dbi"), py::arg("beam_gain_db"), py::arg("carrier_hz"),
        py::arg("slant_range_m"), py::arg("shadow_db") = 0.0);
  m.def("beam_pattern_gain", &beam_pattern_gain, py::arg("angle_rad"),
        py::arg("aperture_radius_m"), py::arg("wavelength_m"));
  m.def("slant_range", &slant_range, py::arg("elevation_rad"), py::arg("altitude_m"),
        py::arg("earth_radius_m"));

  m.def("exhaustive_search", [](const NetworkScenario& scenario, const std::string& kind) {
    return exhaustive_search(scenario, utility_from_name(kind));
  });

  m.def(
      "run_bcga",
      [](const NetworkScenario& scenario, const std::string& kind, int population,
         int generations, std::uint64_t seed) {
        GaConfig config;
        config.population_q = population;
        config.max_generations = generations;
        config.seed = seed;
        const BcgaResult r = run_bcga(scenario, utility_from_name(kind), config);
        py::dict out;
        out["best_value"] = r.result.best_value;
        out["best_genome"] = r.result.best_genome;
        out["evaluations"] = r.result.evaluations;
        out["history"] = history_to_dicts(r.history);
        return out;
      },
      py::arg("scenario"), py::arg("kind"), py::arg("population") = 50,
      py::arg("generations") = 300, py::arg("seed") = 1);

  m.def(
      "run_hga",
      [](const NetworkScenario& scenario, const std::string& kind, int population,
         int generations, std::uint64_t seed) {
        HgaConfig config;
        config.population_q = population;
        config.max_generations = generations;
        config.seed = seed;
        const HgaResult r = run_hga(scenario, utility_from_name(kind), config);
        py::dict out;
        out["best_value"] = r.result.best_value;
        out["best_genome"] = r.result.best_genome;
        out["evaluations"] = r.result.evaluations;
        out["history"] = history_to_dicts(r.history);
        return out;
      },
      py::arg("scenario"), py::arg("kind"), py::arg("population") = 50,
      py::arg("generations") = 300, py::arg("seed") = 1);

  m.attr("__version__") = "0.1.0";
}
