"""
Derived per-task metrics.

All values are exact rationals; multiplying a utilization by the period
recovers the integer execution time.
"""
from fractions import Fraction
from typing import Iterable, Optional

from app.core.exceptions import PreconditionViolation
from app.models import PlatformConfig, Task


def _check_mu(task: Task, mu: int) -> None:
    if not 1 <= mu <= task.profile.n_partitions:
        raise PreconditionViolation(
            f"mu={mu} outside 1..{task.profile.n_partitions} for task {task.id}"
        )


def base_utilization(task: Task, platform: Optional[PlatformConfig] = None) -> Fraction:
    """Utilization with the entire cache granted"""
    if platform is not None and task.profile.n_partitions != platform.n_partitions:
        raise PreconditionViolation(
            f"task {task.id} profile length {task.profile.n_partitions} != {platform.n_partitions}"
        )
    return Fraction(task.profile.eps[-1], task.period)


def utilization_at(task: Task, mu: int) -> Fraction:
    """Utilization with mu partitions granted"""
    _check_mu(task, mu)
    return Fraction(task.profile.eps[mu - 1], task.period)


def cache_sensitivity_potential(task: Task, mu: int) -> Fraction:
    """Utilization reclaimable by granting the full cache instead of mu partitions"""
    _check_mu(task, mu)
    return Fraction(task.profile.eps[mu - 1] - task.profile.eps[-1], task.period)


def scheduling_demand(tasks: Iterable[Task], platform: Optional[PlatformConfig] = None) -> Fraction:
    """Sum of base utilizations, zero for no tasks"""
    return sum((base_utilization(task, platform) for task in tasks), Fraction(0))
