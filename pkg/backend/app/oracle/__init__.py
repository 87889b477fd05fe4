"""
Independent verification for CoPart: exhaustive enumeration and core simulation.
"""
from .exhaustive import cache_splits, exhaustive_search, set_partitions
from .simulator import (
    ReleasePattern,
    SimulationResult,
    blocking_pattern,
    default_horizon,
    npedf_patterns,
    npedf_simulation_verdict,
    npfp_patterns,
    observed_npfp_worst,
    simulate_npedf_core,
    simulate_npfp_core,
    synchronous_pattern,
)
from .suite import check_instance, random_instance, run_oracle_suite

__all__ = [
    "cache_splits",
    "exhaustive_search",
    "set_partitions",
    "ReleasePattern",
    "SimulationResult",
    "blocking_pattern",
    "default_horizon",
    "npedf_patterns",
    "npedf_simulation_verdict",
    "npfp_patterns",
    "observed_npfp_worst",
    "simulate_npedf_core",
    "simulate_npfp_core",
    "synchronous_pattern",
    "check_instance",
    "random_instance",
    "run_oracle_suite",
]
