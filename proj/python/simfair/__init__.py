"""Uplink throughput simulation and association/power optimization for an
integrated LEO-satellite + cell-free massive MIMO network."""

from simfair._core import (
    AssociationPattern,
    Genome,
    NetworkScenario,
    SearchResult,
    SimConfig,
    all_ones_genome,
    beam_pattern_gain,
    closed_form_rates,
    decode_genome,
    exhaustive_search,
    fitness,
    generate_scenario,
    monte_carlo_rates,
    run_bcga,
    run_hga,
    satellite_pathloss_db,
    slant_range,
    terrestrial_pathloss_db,
    utility,
    __version__,
)

__all__ = [
    "AssociationPattern",
    "Genome",
    "NetworkScenario",
    "SearchResult",
    "SimConfig",
    "all_ones_genome",
    "beam_pattern_gain",
    "closed_form_rates",
    "decode_genome",
    "exhaustive_search",
    "fitness",
    "generate_scenario",
    "monte_carlo_rates",
    "run_bcga",
    "run_hga",
    "satellite_pathloss_db",
    "slant_range",
    "terrestrial_pathloss_db",
    "utility",
    "__version__",
]
