"""
Task-set synthesis for CoPart experiments.
"""
from .utilization import gen_utilizations, randfixedsum
from .profiles import (
    BENCHMARK_NAMES,
    SD_S1_ALPHAS,
    SD_S2_ALPHAS,
    SYNTHETIC_ALPHAS,
    benchmark_curve,
    build_task,
    curve_from_cache_stats,
    curve_slowdown,
    exec_time_model,
    load_benchmark_curves,
    load_curve,
    synthetic_curve,
    synthetic_slowdown,
)
from .scenario import (
    PERIODS_MS,
    ScenarioInstance,
    all_scenarios,
    gen_scenario,
    gen_scenario_instances,
    gen_task_set,
    profile_collection,
)

__all__ = [
    "gen_utilizations",
    "randfixedsum",
    "BENCHMARK_NAMES",
    "SD_S1_ALPHAS",
    "SD_S2_ALPHAS",
    "SYNTHETIC_ALPHAS",
    "benchmark_curve",
    "build_task",
    "curve_from_cache_stats",
    "curve_slowdown",
    "exec_time_model",
    "load_benchmark_curves",
    "load_curve",
    "synthetic_curve",
    "synthetic_slowdown",
    "PERIODS_MS",
    "ScenarioInstance",
    "all_scenarios",
    "gen_scenario",
    "gen_scenario_instances",
    "gen_task_set",
    "profile_collection",
]
