"""
EDF schedulability tests for sporadic tasks with implicit deadlines.

The non-preemptive test follows Jeffay, Stanat and Martel (1991): with tasks
sorted by period, the core is schedulable iff its utilization is at most one
and, for every task i and every L with p_1 < L < p_i,

    L >= e_i + sum_{j < i} floor((L - 1) / p_j) * e_j

The right-hand side only changes at L = k * p_j + 1, so those points (plus
p_1 + 1) are the only ones checked.
"""
from fractions import Fraction
from threading import RLock
from typing import Tuple

from cachetools import LRUCache, cached

from app.core.config import settings
from app.core.exceptions import PreconditionViolation
from app.models import Policy
from app.analysis.base import BaseSchedulabilityTest, CoreAssignment, core_utilization


def _demand_points(periods: Tuple[int, ...], i: int):
    low, high = periods[0], periods[i]
    points = set()
    if low + 1 < high:
        points.add(low + 1)
    for p_j in periods[:i]:
        k = low // p_j
        while k * p_j + 1 < high:
            if k * p_j + 1 > low:
                points.add(k * p_j + 1)
            k += 1
    return sorted(points)


@cached(cache=LRUCache(maxsize=settings.ANALYSIS_CACHE_SIZE), lock=RLock())
def _npedf_verdict(pairs: Tuple[Tuple[int, int], ...]) -> bool:
    if sum(Fraction(e, p) for p, e in pairs) > 1:
        return False
    periods = tuple(p for p, _ in pairs)
    execs = tuple(e for _, e in pairs)
    for i in range(1, len(pairs)):
        for L in _demand_points(periods, i):
            demand = execs[i] + sum((L - 1) // periods[j] * execs[j] for j in range(i))
            if demand > L:
                return False
    return True


def npedf_is_schedulable(assignment: CoreAssignment) -> bool:
    """Exact NP-EDF verdict for the core"""
    if not assignment.entries:
        raise PreconditionViolation("schedulability test needs at least one task")
    # sorted by period; for equal periods the later task never sees an L below its period
    return _npedf_verdict(tuple(sorted((e.period, e.exec) for e in assignment.entries)))


def pedf_is_schedulable(assignment: CoreAssignment) -> bool:
    """Preemptive EDF: utilization at most one"""
    if not assignment.entries:
        raise PreconditionViolation("schedulability test needs at least one task")
    return core_utilization(assignment) <= 1


class NPEDFTest(BaseSchedulabilityTest):
    """Non-preemptive EDF test"""

    policy = Policy.NPEDF

    def __init__(self):
        super().__init__(name="npedf", description="Exact NP-EDF test for sporadic tasks")

    def is_schedulable(self, assignment: CoreAssignment) -> bool:
        return npedf_is_schedulable(assignment)


class PEDFTest(BaseSchedulabilityTest):
    """Preemptive EDF utilization bound"""

    policy = Policy.PEDF

    def __init__(self):
        super().__init__(name="pedf", description="Preemptive EDF utilization test")

    def is_schedulable(self, assignment: CoreAssignment) -> bool:
        return pedf_is_schedulable(assignment)
