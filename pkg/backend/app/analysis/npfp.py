"""
Exact response-time analysis for non-preemptive fixed-priority scheduling.

Priorities are rate monotonic; equal periods favour the longer job, then the
smaller id. A task is delayed by at most one lower-priority job that started
just before it was released (blocking) and by every higher-priority release
up to its own start. All arithmetic is on integer ticks.
"""
from fractions import Fraction
from math import lcm
from threading import RLock
from typing import Optional, Sequence, Tuple

from cachetools import LRUCache, cached

from app.core.config import settings
from app.core.exceptions import PreconditionViolation
from app.models import Policy, Task
from app.analysis.base import BaseSchedulabilityTest, CoreAssignment, CoreTask, ResponseReport


def _priority_key(entry: CoreTask) -> Tuple[int, int, int]:
    return (entry.period, -entry.exec, entry.task_id)


def priority_order(assignment: CoreAssignment) -> Tuple[CoreTask, ...]:
    """Core tasks from highest to lowest priority"""
    return tuple(sorted(assignment.entries, key=_priority_key))


def strict_ceil_div(w: int, p: int) -> int:
    """Number of releases of period p in the half-open window [0, w] (w + delta limit)"""
    if p <= 0:
        raise PreconditionViolation(f"period must be positive, got {p}")
    if w < 0:
        raise PreconditionViolation(f"window must be non-negative, got {w}")
    return w // p + 1


def _analyse(order: Sequence[CoreTask], k: int) -> Tuple[Optional[int], Optional[int], Optional[int]]:
    """(worst-case response, busy period, instances) of order[k]; None when divergent"""
    task = order[k]
    hp = order[:k]
    hep = order[: k + 1]
    blocking = max((entry.exec for entry in order[k + 1:]), default=0)

    u_hep = sum((Fraction(entry.exec, entry.period) for entry in hep), Fraction(0))
    if u_hep > 1 or (u_hep == 1 and blocking > 0):
        return None, None, None
    if u_hep < 1:
        bound = Fraction(len(order) * max(entry.exec for entry in order)) / (1 - u_hep)
    else:
        # fully loaded without blocking: the level-i busy period ends by the hyperperiod
        bound = Fraction(lcm(*(entry.period for entry in hep)))

    busy = task.exec
    while True:
        nxt = blocking + sum(-(-busy // entry.period) * entry.exec for entry in hep)
        if nxt > bound:
            return None, None, None
        if nxt == busy:
            break
        busy = nxt

    instances = -(-busy // task.period)
    worst = 0
    for q in range(1, instances + 1):
        own = blocking + (q - 1) * task.exec
        start = own
        while True:
            nxt = own + sum(strict_ceil_div(start, entry.period) * entry.exec for entry in hp)
            if nxt > bound:
                return None, busy, instances
            if nxt == start:
                break
            start = nxt
        worst = max(worst, start - (q - 1) * task.period + task.exec)
    return worst, busy, instances


def npfp_response_times(assignment: CoreAssignment) -> ResponseReport:
    """Worst-case response time of every task on the core"""
    if not assignment.entries:
        raise PreconditionViolation("response-time analysis needs at least one task")
    order = priority_order(assignment)
    response, busy, instances = {}, {}, {}
    schedulable = True
    for k, entry in enumerate(order):
        r, t, q = _analyse(order, k)
        response[entry.task_id], busy[entry.task_id], instances[entry.task_id] = r, t, q
        if r is None or r > entry.period:
            schedulable = False
    return ResponseReport(response_times=response, schedulable=schedulable, busy_periods=busy, instances=instances)


@cached(cache=LRUCache(maxsize=settings.ANALYSIS_CACHE_SIZE), lock=RLock())
def _npfp_verdict(pairs: Tuple[Tuple[int, int], ...]) -> bool:
    if sum(Fraction(e, p) for p, e in pairs) > 1:
        return False
    order = tuple(sorted((CoreTask(i, p, e) for i, (p, e) in enumerate(pairs)), key=_priority_key))
    for k, entry in enumerate(order):
        r, _, _ = _analyse(order, k)
        if r is None or r > entry.period:
            return False
    return True


def npfp_schedulable(assignment: CoreAssignment) -> bool:
    """Memoized verdict; ids do not influence it, so the key is the (period, exec) multiset"""
    if not assignment.entries:
        raise PreconditionViolation("schedulability test needs at least one task")
    return _npfp_verdict(tuple(sorted((e.period, e.exec) for e in assignment.entries)))


def npfp_is_schedulable_with(existing: CoreAssignment, candidate: Task) -> bool:
    """Exact verdict for the core after adding candidate"""
    return npfp_schedulable(existing.with_task(candidate))


class NPFPTest(BaseSchedulabilityTest):
    """Non-preemptive fixed-priority response-time test"""

    policy = Policy.NPFP

    def __init__(self):
        super().__init__(name="npfp", description="Exact NP-FP response-time analysis")

    def is_schedulable(self, assignment: CoreAssignment) -> bool:
        return npfp_schedulable(assignment)

    def response_times(self, assignment: CoreAssignment) -> ResponseReport:
        return npfp_response_times(assignment)
