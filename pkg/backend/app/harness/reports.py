"""
Aggregation of experiment records into ratio rows, runtime statistics and
cache-saving summaries. Everything here is recomputable from the written CSVs.
"""
from collections import Counter, defaultdict
from typing import Dict, Iterable, List, Sequence, Tuple

from app.models import (
    AlgorithmName,
    CacheSaveRecord,
    ExperimentRecord,
    ExperimentSummary,
    Policy,
    RatioRow,
    RuntimeStat,
)

_ORDER = {name: k for k, name in enumerate(AlgorithmName)}


def ratio_rows(records: Iterable[ExperimentRecord]) -> List[RatioRow]:
    """Per (u_tar, algorithm) percentage of schedulable task sets"""
    totals: Dict[Tuple[float, AlgorithmName], List[int]] = defaultdict(lambda: [0, 0])
    for record in records:
        cell = totals[(record.u_tar, record.algorithm)]
        cell[1] += 1
        if record.schedulable:
            cell[0] += 1
    return [
        RatioRow(
            u_tar=u_tar,
            algorithm=algorithm,
            schedulable=ok,
            total=total,
            ratio_pct=100.0 * ok / total,
        )
        for (u_tar, algorithm), (ok, total) in sorted(totals.items(), key=lambda kv: (kv[0][0], _ORDER[kv[0][1]]))
    ]


def runtime_report(records: Iterable[ExperimentRecord]) -> List[RuntimeStat]:
    """Average and maximum wall time grouped by (algorithm, policy, n_partitions)"""
    groups: Dict[Tuple[AlgorithmName, Policy, int], List[float]] = defaultdict(list)
    for record in records:
        groups[(record.algorithm, record.policy, record.n_partitions)].append(record.runtime_ms)
    report = []
    for (algorithm, policy, n_partitions), times in sorted(
        groups.items(), key=lambda kv: (_ORDER[kv[0][0]], kv[0][1].value, kv[0][2])
    ):
        report.append(
            RuntimeStat(
                algorithm=algorithm,
                policy=policy,
                n_partitions=n_partitions,
                count=len(times),
                avg_ms=sum(times) / len(times),
                max_ms=max(times),
            )
        )
    return report


def mu_save_histogram(saves: Iterable[CacheSaveRecord]) -> Dict[int, int]:
    return dict(sorted(Counter(save.mu_save for save in saves).items()))


def summarize(
    scenario_id: str,
    policy: Policy,
    records: Sequence[ExperimentRecord],
    saves: Sequence[CacheSaveRecord],
) -> ExperimentSummary:
    """Scenario summary; counts are plain recounts of the records"""
    counts: Counter = Counter()
    timeouts: Counter = Counter()
    errors: Counter = Counter()
    for record in records:
        key = record.algorithm.value
        counts[key] += int(record.schedulable)
        timeouts[key] += int(record.timed_out)
        errors[key] += int(record.error)

    histogram = mu_save_histogram(saves)
    mean = sum(s.mu_save for s in saves) / len(saves) if saves else None
    return ExperimentSummary(
        scenario_id=scenario_id,
        policy=policy,
        n_records=len(records),
        n_task_sets=len({(r.u_tar, r.set_index) for r in records}),
        counts=dict(counts),
        timeouts=dict(timeouts),
        errors=dict(errors),
        ratios=ratio_rows(records),
        mu_save_histogram=histogram,
        mu_save_mean=mean,
        runtime=runtime_report(records),
    )
