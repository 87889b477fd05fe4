"""
First-sort-then-pack: fill one core greedily with the tasks that fit at a given grant.
"""
from typing import Iterable, List, Optional, Tuple

from app.core.exceptions import PreconditionViolation
from app.models import PlatformConfig, SortCriterion, Task
from app.models.metrics import cache_sensitivity_potential
from app.analysis.base import BaseSchedulabilityTest, CoreAssignment


def _check_mu(tasks: List[Task], mu: int, platform: Optional[PlatformConfig]) -> None:
    limit = platform.n_partitions if platform is not None else min(
        (t.profile.n_partitions for t in tasks), default=mu
    )
    if not 1 <= mu <= limit:
        raise PreconditionViolation(f"mu={mu} outside 1..{limit}")


def sort_tasks(
    tasks: Iterable[Task],
    criterion: SortCriterion,
    mu: int,
    platform: Optional[PlatformConfig] = None,
) -> List[Task]:
    """COMP: period ascending. CASE: cache sensitivity potential at mu ascending. Ties by id."""
    tasks = list(tasks)
    _check_mu(tasks, mu, platform)
    if criterion == SortCriterion.COMP:
        return sorted(tasks, key=lambda t: (t.period, t.id))
    return sorted(tasks, key=lambda t: (cache_sensitivity_potential(t, mu), t.id))


def alloc_task(
    tasks_left: Iterable[Task],
    mu: int,
    criterion: SortCriterion,
    test: BaseSchedulabilityTest,
    platform: Optional[PlatformConfig] = None,
) -> Tuple[Task, ...]:
    """Tasks packed onto one core sharing mu partitions, possibly none"""
    tasks_left = list(tasks_left)
    if not tasks_left:
        return ()
    core = CoreAssignment((), mu)
    packed: List[Task] = []
    for task in sort_tasks(tasks_left, criterion, mu, platform):
        candidate = core.with_task(task)
        if test.is_schedulable(candidate):
            core = candidate
            packed.append(task)
    return tuple(packed)
