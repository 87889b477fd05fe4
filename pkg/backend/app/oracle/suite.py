"""
Soundness suite: random small instances checked against exhaustive truth.

For every instance each allocator must either return NONE or an allocation
whose cores independently re-pass the test within the cache budget, and no
allocator may schedule an instance the enumeration proves infeasible. Under
NP-FP, every witness core is also simulated and no observed response may
exceed the analytical bound.
"""
from typing import List, Optional, Sequence, Union

import numpy as np

from app.core.logging import oracle_logger
from app.models import (
    AlgorithmName,
    ExecProfile,
    OracleSuiteReport,
    PlatformConfig,
    Policy,
    Task,
    TaskSet,
)
from app.analysis import CoreAssignment, get_test, npfp_response_times
from app.allocators import get_allocator
from app.oracle.exhaustive import exhaustive_search
from app.oracle.simulator import observed_npfp_worst

SUITE_PERIODS = (10, 20, 25, 40, 50)
SUITE_ALGORITHMS = (
    AlgorithmName.COMP,
    AlgorithmName.CASE,
    AlgorithmName.IA3,
    AlgorithmName.PDPA,
    AlgorithmName.CAM,
)


def random_instance(rng: np.random.Generator, max_tasks: int = 6, n_cores: int = 2, max_partitions: int = 4) -> TaskSet:
    """Small task set with random periods, loads and exponential slowdowns"""
    n_tasks = int(rng.integers(2, max_tasks + 1))
    n_p = int(rng.integers(1, max_partitions + 1))
    tasks = []
    for i in range(n_tasks):
        period = int(rng.choice(SUITE_PERIODS))
        base = max(1, int(round(period * rng.uniform(0.05, 0.55))))
        alpha = float(rng.uniform(0.0, 0.4))
        eps = [int(np.ceil(base * np.exp((n_p - mu) * alpha) - 1e-9)) for mu in range(1, n_p + 1)]
        tasks.append(Task(id=i, period=period, profile=ExecProfile(eps=eps)))
    return TaskSet(tasks=tuple(tasks), platform=PlatformConfig(n_cores=n_cores, n_partitions=n_p))


def check_instance(
    task_set: TaskSet,
    policy: Policy,
    algorithms: Sequence[AlgorithmName] = SUITE_ALGORITHMS,
    report: Optional[OracleSuiteReport] = None,
    label: str = "instance",
) -> OracleSuiteReport:
    """Check every allocator on one instance, accumulating into report"""
    report = report or OracleSuiteReport(policy=policy)
    test = get_test(policy)
    tasks = task_set.by_id()
    verdict = exhaustive_search(task_set, test)
    report.instances += 1
    report.oracle_schedulable += int(verdict.exists_schedulable)

    for algorithm in algorithms:
        result = get_allocator(algorithm).allocate(task_set, test)
        if not result.schedulable:
            continue
        report.schedulable[algorithm.value] = report.schedulable.get(algorithm.value, 0) + 1
        solution = result.solution
        if not verdict.exists_schedulable:
            report.violations.append(f"{label}: {algorithm.value} schedules an infeasible instance")
        if solution.total_cache_used > task_set.platform.n_partitions:
            report.violations.append(f"{label}: {algorithm.value} uses {solution.total_cache_used} partitions")
        placed = sorted(i for ids in solution.task_alloc for i in ids)
        if placed != sorted(tasks):
            report.violations.append(f"{label}: {algorithm.value} does not place every task exactly once")
        for ids, mu in zip(solution.task_alloc, solution.cache_part):
            if ids and not test.accepts([tasks[i] for i in ids], mu):
                report.violations.append(f"{label}: {algorithm.value} core {list(ids)} fails at mu={mu}")

    if policy == Policy.NPFP and verdict.witness is not None:
        for ids, mu in zip(verdict.witness.task_alloc, verdict.witness.cache_part):
            if not ids:
                continue
            core = CoreAssignment.from_tasks([tasks[i] for i in ids], mu)
            analytic = npfp_response_times(core).response_times
            for tid, observed in observed_npfp_worst(core).items():
                if analytic[tid] is None or observed > analytic[tid]:
                    report.violations.append(f"{label}: task {tid} observed {observed} > bound {analytic[tid]}")
    return report


def run_oracle_suite(
    instances: int = 200,
    seed: int = 0,
    policy: Union[str, Policy] = Policy.NPFP,
    algorithms: Sequence[AlgorithmName] = SUITE_ALGORITHMS,
) -> OracleSuiteReport:
    """Soundness of every allocator on random instances with at most 6 tasks, 2 cores and 4 partitions"""
    policy = Policy(policy)
    rng = np.random.default_rng(seed)
    report = OracleSuiteReport(policy=policy)
    oracle_logger.info(f"🔍 Oracle suite: {instances} instances, policy {policy.value}, seed {seed}")
    for k in range(instances):
        check_instance(random_instance(rng), policy, algorithms, report, label=f"#{k}")
    if report.violations:
        oracle_logger.error(f"❌ {len(report.violations)} soundness violations")
    else:
        oracle_logger.info(
            f"✅ No violations; oracle feasible {report.oracle_schedulable}/{report.instances}, "
            f"schedulable per algorithm {report.schedulable}"
        )
    return report
