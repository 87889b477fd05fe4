"""
Period-driven partitioning allocation.

Each core is anchored by a critical task: the task with the longest period
takes the first core, the remaining cores take high-utilization,
low-variability tasks whose periods are at least delta apart. Every other task
joins the core whose critical period is the closest one not shorter than its
own. Cores that fail even with the full cache shed their lowest-priority
tasks to the next core that can take them, and each core then keeps the
smallest grant it is schedulable with. Allocations whose grants add up to
more than the cache are rejected.
"""
from fractions import Fraction
from typing import List, Optional

from app.core.config import settings
from app.models import AlgorithmName, AllocationResult, Task, TaskSet
from app.analysis.base import BaseSchedulabilityTest
from .base_allocator import BaseAllocator, build_result, check_deadline, minimal_grant


def _full_cache_utilization(task: Task) -> Fraction:
    return Fraction(task.profile.eps[-1], task.period)


def _variability(task: Task) -> Fraction:
    return Fraction(task.profile.eps[0], task.profile.eps[-1])


def critical_spacing(task_set: TaskSet, delta_pct: int) -> Fraction:
    """Minimum period distance between critical tasks"""
    periods = [t.period for t in task_set.tasks]
    return Fraction(max(periods) - min(periods), task_set.platform.n_cores) * Fraction(delta_pct, 100)


def select_critical_tasks(task_set: TaskSet, delta_pct: int) -> List[Task]:
    """Critical tasks in core order; may be fewer than the cores"""
    spacing = critical_spacing(task_set, delta_pct)
    first = min(task_set.tasks, key=lambda t: (-t.period, t.id))
    critical = [first]
    ranked = sorted(
        (t for t in task_set.tasks if t.id != first.id),
        key=lambda t: (-_full_cache_utilization(t), _variability(t), t.id),
    )
    for task in ranked:
        if len(critical) == task_set.platform.n_cores:
            break
        if all(abs(task.period - c.period) >= spacing for c in critical):
            critical.append(task)
    return critical


def _lowest_priority(core: List[Task], critical_ids: set) -> Optional[Task]:
    movable = [t for t in core if t.id not in critical_ids]
    if not movable:
        return None
    return max(movable, key=lambda t: (t.period, -t.profile.eps[-1], t.id))


def run_pdpa(
    task_set: TaskSet,
    test: BaseSchedulabilityTest,
    deadline: Optional[float] = None,
    delta_pct: Optional[int] = None,
) -> AllocationResult:
    delta_pct = settings.PDPA_DELTA if delta_pct is None else delta_pct
    n_c, n_p = task_set.platform.n_cores, task_set.platform.n_partitions
    if not task_set.tasks:
        return build_result(AlgorithmName.PDPA, test, task_set, [[] for _ in range(n_c)], [0] * n_c)

    critical = select_critical_tasks(task_set, delta_pct)
    critical_ids = {t.id for t in critical}
    cores: List[List[Task]] = [[c] for c in critical] + [[] for _ in range(n_c - len(critical))]

    others = sorted(
        (t for t in task_set.tasks if t.id not in critical_ids),
        key=lambda t: (-_full_cache_utilization(t), t.id),
    )
    for task in others:
        eligible = [j for j, c in enumerate(critical) if c.period >= task.period]
        j = min(eligible, key=lambda j: (critical[j].period - task.period, j))
        cores[j].append(task)

    # remap only cores that fail with the full cache
    for j in range(n_c):
        while cores[j] and not test.accepts(cores[j], n_p):
            check_deadline(AlgorithmName.PDPA, deadline)
            victim = _lowest_priority(cores[j], critical_ids)
            if victim is None:
                return build_result(AlgorithmName.PDPA, test, task_set)
            targets = [k for k in range(j + 1, n_c)] + [k for k in range(j)]
            target = next((k for k in targets if test.accepts(cores[k] + [victim], n_p)), None)
            if target is None:
                return build_result(AlgorithmName.PDPA, test, task_set)
            cores[j].remove(victim)
            cores[target].append(victim)

    grants = [minimal_grant(test, core, n_p) if core else 0 for core in cores]
    if sum(grants) > n_p:
        return build_result(AlgorithmName.PDPA, test, task_set)
    return build_result(AlgorithmName.PDPA, test, task_set, cores, grants)


class PDPAAllocator(BaseAllocator):
    """Critical-task anchored partitioning with full-cache remapping"""

    algorithm = AlgorithmName.PDPA

    def __init__(self):
        super().__init__(name="pdpa", description="Period-driven partitioning with critical tasks")

    def allocate(self, task_set, test, deadline=None) -> AllocationResult:
        return run_pdpa(task_set, test, deadline)
