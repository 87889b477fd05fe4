"""
Batch experiment runner.

Every (task set, algorithm) cell is independent: cells run in the calling
process or in a process pool, and all writing happens here in the parent.
"""
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from app.core.config import settings
from app.core.exceptions import AllocationTimeout
from app.core.logging import harness_logger
from app.models import (
    BASELINE_ALGORITHMS,
    PROPOSED_ALGORITHMS,
    AlgorithmName,
    AllocationResult,
    CacheSaveRecord,
    ExperimentRecord,
    ExperimentSummary,
    Policy,
    ScenarioConfig,
    SlowdownCurve,
    TaskSet,
)
from app.analysis import get_test
from app.allocators import get_allocator, minimize_cache
from app.generator import all_scenarios, gen_scenario_instances
from app.telemetry import RecordSink
from .reports import summarize


class CellOutcome(NamedTuple):
    """Records of one task set across the requested algorithms"""
    records: Tuple[ExperimentRecord, ...]
    cache_save: Optional[CacheSaveRecord]


def normalize_algorithms(algorithms: Iterable[Union[str, AlgorithmName]]) -> Tuple[AlgorithmName, ...]:
    """Requested algorithms in canonical order; BOTH implies COMP and CASE"""
    requested = {AlgorithmName(a) if not isinstance(a, AlgorithmName) else a for a in algorithms}
    if AlgorithmName.BOTH in requested:
        requested.update(PROPOSED_ALGORITHMS)
    return tuple(a for a in AlgorithmName if a in requested)


def run_allocator(
    algorithm: AlgorithmName,
    task_set: TaskSet,
    policy: Policy,
    timeout_s: Optional[float],
) -> Tuple[AllocationResult, float]:
    """One allocator run; failures come back as unschedulable results"""
    test = get_test(policy)
    start = time.monotonic()
    deadline = start + timeout_s if timeout_s else None
    try:
        result = get_allocator(algorithm).allocate(task_set, test, deadline=deadline)
    except AllocationTimeout:
        harness_logger.warning(f"⏱️ {algorithm.value} timed out after {timeout_s}s")
        result = AllocationResult(algorithm=algorithm, policy=policy, timed_out=True)
    except Exception as e:
        harness_logger.exception(f"❌ {algorithm.value} failed: {e}")
        result = AllocationResult(algorithm=algorithm, policy=policy, error=f"{type(e).__name__}: {e}")
    return result, (time.monotonic() - start) * 1000.0


def _record(
    scenario_id: str,
    u_tar: float,
    set_index: int,
    task_set: TaskSet,
    algorithm: AlgorithmName,
    policy: Policy,
    schedulable: bool,
    cache_used: Optional[int],
    timed_out: bool,
    error: bool,
    runtime_ms: float,
) -> ExperimentRecord:
    return ExperimentRecord(
        scenario_id=scenario_id,
        u_tar=u_tar,
        set_index=set_index,
        algorithm=algorithm,
        policy=policy,
        n_partitions=task_set.platform.n_partitions,
        schedulable=schedulable,
        total_cache_used=cache_used if schedulable else None,
        timed_out=timed_out,
        error=error,
        runtime_ms=runtime_ms,
    )


def evaluate_task_set(
    scenario_id: str,
    u_tar: float,
    set_index: int,
    task_set: TaskSet,
    policy: Policy,
    algorithms: Sequence[AlgorithmName],
    timeout_s: Optional[float] = None,
) -> CellOutcome:
    """Run every algorithm on one task set and derive the BOTH row and the cache saving"""
    records: List[ExperimentRecord] = []
    results: Dict[AlgorithmName, Tuple[AllocationResult, float]] = {}
    for algorithm in algorithms:
        if algorithm == AlgorithmName.BOTH:
            continue
        result, runtime_ms = run_allocator(algorithm, task_set, policy, timeout_s)
        results[algorithm] = (result, runtime_ms)
        records.append(
            _record(
                scenario_id, u_tar, set_index, task_set, algorithm, policy,
                schedulable=result.schedulable,
                cache_used=result.solution.total_cache_used if result.solution else None,
                timed_out=result.timed_out,
                error=result.error is not None,
                runtime_ms=runtime_ms,
            )
        )

    proposed = [results[a][0] for a in PROPOSED_ALGORITHMS if a in results]
    proposed_used = [r.solution.total_cache_used for r in proposed if r.solution]
    if AlgorithmName.BOTH in algorithms:
        records.append(
            _record(
                scenario_id, u_tar, set_index, task_set, AlgorithmName.BOTH, policy,
                schedulable=bool(proposed_used),
                cache_used=min(proposed_used) if proposed_used else None,
                timed_out=not proposed_used and any(r.timed_out for r in proposed),
                error=not proposed_used and any(r.error for r in proposed),
                runtime_ms=sum(results[a][1] for a in PROPOSED_ALGORITHMS if a in results),
            )
        )

    baseline_used = []
    test = get_test(policy)
    for algorithm in BASELINE_ALGORITHMS:
        if algorithm not in results or results[algorithm][0].solution is None:
            continue
        try:
            minimized = minimize_cache(results[algorithm][0].solution, task_set, test)
        except Exception as e:
            harness_logger.exception(f"❌ Cache minimization of {algorithm.value} failed: {e}")
            records = [r.model_copy(update={"error": True}) if r.algorithm == algorithm else r for r in records]
            continue
        baseline_used.append(minimized.total_cache_used)

    cache_save = None
    if proposed_used and baseline_used:
        mu_prop, mu_base = min(proposed_used), min(baseline_used)
        cache_save = CacheSaveRecord(
            scenario_id=scenario_id,
            u_tar=u_tar,
            set_index=set_index,
            mu_prop=mu_prop,
            mu_base=mu_base,
            mu_save=mu_base - mu_prop,
        )
    return CellOutcome(tuple(records), cache_save)


def _evaluate_packed(args: tuple) -> CellOutcome:
    return evaluate_task_set(*args)


def run_experiment(
    config: ScenarioConfig,
    algorithms: Iterable[Union[str, AlgorithmName]],
    out_dir: Optional[Union[str, Path]] = None,
    timeout_s: Optional[float] = None,
    jobs: Optional[int] = None,
    benchmark_curves: Optional[Dict[str, SlowdownCurve]] = None,
) -> ExperimentSummary:
    """
    Generate the scenario's task sets, run the algorithms on each and write
    records.csv, cache_save.csv and summary.json into out_dir.
    """
    selected = normalize_algorithms(algorithms)
    timeout_s = settings.TIMEOUT_S if timeout_s is None else timeout_s
    jobs = settings.JOBS if jobs is None else jobs
    out_dir = Path(out_dir) if out_dir is not None else settings.output_path(config.scenario_id, config.policy.value)
    sink = RecordSink(out_dir)

    records: List[ExperimentRecord] = []
    saves: List[CacheSaveRecord] = []
    harness_logger.info(
        f"🚀 Running {config.scenario_id} under {config.policy.value} with "
        f"{[a.value for a in selected]} (jobs={jobs}, timeout={timeout_s}s)"
    )
    started = time.monotonic()

    if selected:
        cells = (
            (config.scenario_id, inst.u_tar, inst.set_index, inst.task_set, config.policy, selected, timeout_s)
            for inst in gen_scenario_instances(config, benchmark_curves)
        )
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                outcomes = list(pool.map(_evaluate_packed, cells, chunksize=4))
        else:
            outcomes = [_evaluate_packed(cell) for cell in cells]
        for outcome in outcomes:
            records.extend(outcome.records)
            if outcome.cache_save is not None:
                saves.append(outcome.cache_save)

    summary = summarize(config.scenario_id, config.policy, records, saves)
    try:
        sink.write_records(records)
        sink.write_cache_saves(saves)
        sink.write_summary(summary)
    except OSError as e:
        harness_logger.error(f"❌ Could not write results to {out_dir}: {e}")
        raise

    harness_logger.info(
        f"✅ {config.scenario_id}: {summary.n_task_sets} task sets, counts={summary.counts} "
        f"in {time.monotonic() - started:.1f}s"
    )
    return summary


def run_all_scenarios(
    policy: Policy,
    algorithms: Iterable[Union[str, AlgorithmName]],
    out_dir: Optional[Union[str, Path]] = None,
    timeout_s: Optional[float] = None,
    jobs: Optional[int] = None,
    **overrides,
) -> Dict[str, ExperimentSummary]:
    """All twelve scenarios under one policy, one sub-directory each"""
    root = Path(out_dir) if out_dir is not None else settings.output_path()
    selected = normalize_algorithms(algorithms)
    summaries: Dict[str, ExperimentSummary] = {}
    for config in all_scenarios(policy=policy, **overrides):
        summaries[config.scenario_id] = run_experiment(
            config,
            selected,
            out_dir=root / config.scenario_id / policy.value,
            timeout_s=timeout_s,
            jobs=jobs,
        )
    return summaries
