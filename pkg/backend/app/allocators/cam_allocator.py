"""
Cache-aware mapping: group tasks with similar slowdown profiles on one core.

Profiles are normalized to full cache and clustered with k-means (k = number
of cores). Each cluster is anchored on its own core, the cache is split over
the cores in proportion to how much the clusters gain from cache, and tasks
are placed first fit, trying their cluster's core before the others.
"""
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from app.core.config import settings
from app.models import AlgorithmName, AllocationResult, Task, TaskSet
from app.models.metrics import cache_sensitivity_potential
from app.analysis.base import BaseSchedulabilityTest
from .base_allocator import BaseAllocator, build_result, check_deadline
from .clustering import kmeans


def proportional_split(weights: Sequence[Fraction], total: int) -> List[int]:
    """Largest-remainder apportionment of total partitions; ties go to the lower index"""
    weight_sum = sum(weights, Fraction(0))
    if weight_sum <= 0:
        weights = [Fraction(1)] * len(weights)
        weight_sum = Fraction(len(weights))
    quotas = [Fraction(total) * Fraction(w) / weight_sum for w in weights]
    shares = [int(q) for q in quotas]
    order = sorted(range(len(weights)), key=lambda j: (-(quotas[j] - shares[j]), j))
    for j in order[: total - sum(shares)]:
        shares[j] += 1
    return shares


def first_fit(
    tasks: Sequence[Task],
    test: BaseSchedulabilityTest,
    cache_part: Sequence[int],
    preferred: Optional[Dict[int, int]] = None,
    algorithm: AlgorithmName = AlgorithmName.CAM,
    deadline: Optional[float] = None,
) -> Optional[List[List[Task]]]:
    """Place tasks in the given order on the first core (preferred core first) that stays schedulable"""
    cores: List[List[Task]] = [[] for _ in cache_part]
    for task in tasks:
        check_deadline(algorithm, deadline)
        candidates = list(range(len(cache_part)))
        if preferred and task.id in preferred:
            home = preferred[task.id]
            candidates = [home] + [j for j in candidates if j != home]
        for j in candidates:
            if cache_part[j] >= 1 and test.accepts(cores[j] + [task], cache_part[j]):
                cores[j].append(task)
                break
        else:
            return None
    return cores


def _utilization_order(tasks: Sequence[Task]) -> List[Task]:
    return sorted(tasks, key=lambda t: (-Fraction(t.profile.eps[-1], t.period), t.id))


def run_first_fit(
    task_set: TaskSet,
    test: BaseSchedulabilityTest,
    deadline: Optional[float] = None,
) -> AllocationResult:
    """Decreasing-utilization first fit over an equal cache split"""
    n_c, n_p = task_set.platform.n_cores, task_set.platform.n_partitions
    split = proportional_split([Fraction(1)] * n_c, n_p)
    cores = first_fit(_utilization_order(task_set.tasks), test, split, deadline=deadline)
    if cores is None:
        return build_result(AlgorithmName.CAM, test, task_set)
    return build_result(AlgorithmName.CAM, test, task_set, cores, split)


def slowdown_features(tasks: Sequence[Task]) -> np.ndarray:
    """Execution time at each grant relative to the full-cache execution time"""
    return np.array([[e / t.profile.eps[-1] for e in t.profile.eps] for t in tasks], dtype=float)


def run_cam(
    task_set: TaskSet,
    test: BaseSchedulabilityTest,
    deadline: Optional[float] = None,
    seed: Optional[int] = None,
) -> AllocationResult:
    n_c, n_p = task_set.platform.n_cores, task_set.platform.n_partitions
    tasks = list(task_set.tasks)
    if not tasks:
        return build_result(AlgorithmName.CAM, test, task_set, [[] for _ in range(n_c)], [0] * n_c)

    labels = kmeans(
        slowdown_features(tasks),
        k=min(n_c, len(tasks)),
        seed=settings.KMEANS_SEED if seed is None else seed,
        max_iter=settings.KMEANS_MAX_ITER,
    )
    clusters: Dict[int, List[Task]] = {}
    for task, label in zip(tasks, labels):
        clusters.setdefault(label, []).append(task)

    gain = {
        label: sum((cache_sensitivity_potential(t, 1) for t in members), Fraction(0))
        for label, members in clusters.items()
    }
    # most cache-hungry cluster anchors core 0
    ranked = sorted(clusters, key=lambda label: (-gain[label], min(t.id for t in clusters[label])))
    home_core = {label: core for core, label in enumerate(ranked)}

    weights = [Fraction(1)] * n_c
    for label, core in home_core.items():
        weights[core] += gain[label]
    split = proportional_split(weights, n_p)

    order = [t for label in ranked for t in _utilization_order(clusters[label])]
    preferred = {t.id: home_core[label] for label in ranked for t in clusters[label]}
    cores = first_fit(order, test, split, preferred, deadline=deadline)
    if cores is None:
        return build_result(AlgorithmName.CAM, test, task_set)
    return build_result(AlgorithmName.CAM, test, task_set, cores, split)


class CaMAllocator(BaseAllocator):
    """k-means clustering of slowdown profiles with first-fit placement"""

    algorithm = AlgorithmName.CAM

    def __init__(self):
        super().__init__(name="cam", description="Slowdown-profile clustering with first-fit placement")

    def allocate(self, task_set, test, deadline=None) -> AllocationResult:
        return run_cam(task_set, test, deadline)
