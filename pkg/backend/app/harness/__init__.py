"""
Experiment harness: scenario batches, records and summaries.
"""
from .reports import mu_save_histogram, ratio_rows, runtime_report, summarize
from .runner import (
    CellOutcome,
    evaluate_task_set,
    normalize_algorithms,
    run_all_scenarios,
    run_allocator,
    run_experiment,
)

__all__ = [
    "CellOutcome",
    "evaluate_task_set",
    "normalize_algorithms",
    "run_all_scenarios",
    "run_allocator",
    "run_experiment",
    "mu_save_histogram",
    "ratio_rows",
    "runtime_report",
    "summarize",
]
