"""
Discrete-event simulation of one non-preemptive core.

At every instant the core is idle the best pending job starts and runs to
completion. Jobs are released periodically from each task's first release
until the horizon; pending work is then drained, so every released job is
accounted for.
"""
import heapq
from dataclasses import dataclass, field
from math import lcm
from typing import Callable, Dict, List, Optional, Tuple

from app.core.config import settings
from app.core.exceptions import PreconditionViolation
from app.analysis.base import CoreAssignment, CoreTask, core_utilization
from app.analysis.npfp import priority_order


@dataclass(frozen=True)
class ReleasePattern:
    """First release per task (None: never released) and an optional job already running at t=0"""
    name: str
    offsets: Dict[int, Optional[int]]
    dispatched: Optional[int] = None


@dataclass(frozen=True)
class SimulationResult:
    """Largest observed response time per task"""
    pattern: str
    max_response: Dict[int, int]
    deadline_miss: bool
    truncated: bool
    jobs: int
    misses: List[Tuple[int, int]] = field(default_factory=list)


def default_horizon(assignment: CoreAssignment, cap: Optional[int] = None) -> int:
    """Twice the hyperperiod, capped, never shorter than the longest period"""
    cap = cap or settings.SIM_HORIZON_CAP
    periods = [e.period for e in assignment.entries]
    return max(min(2 * lcm(*periods), cap), max(periods))


def synchronous_pattern(assignment: CoreAssignment) -> ReleasePattern:
    return ReleasePattern("synchronous", {e.task_id: 0 for e in assignment.entries})


def blocking_pattern(assignment: CoreAssignment, task_id: int) -> Optional[ReleasePattern]:
    """Longest lower-priority job starts at t=0 just ahead of a synchronous release of all others"""
    order = priority_order(assignment)
    rank = next(k for k, e in enumerate(order) if e.task_id == task_id)
    lower = order[rank + 1:]
    if not lower:
        return None
    blocker = max(lower, key=lambda e: e.exec)
    return ReleasePattern(f"blocked-{task_id}-by-{blocker.task_id}", {e.task_id: 0 for e in order}, dispatched=blocker.task_id)


def npfp_patterns(assignment: CoreAssignment) -> List[ReleasePattern]:
    patterns = [synchronous_pattern(assignment)]
    for entry in priority_order(assignment):
        pattern = blocking_pattern(assignment, entry.task_id)
        if pattern is not None:
            patterns.append(pattern)
    return patterns


def npedf_patterns(assignment: CoreAssignment) -> List[ReleasePattern]:
    """Synchronous release, plus for each task: its job starts at 0 and every shorter-period task releases from 1"""
    patterns = [synchronous_pattern(assignment)]
    for entry in assignment.entries:
        offsets = {
            e.task_id: (0 if e.task_id == entry.task_id else 1 if e.period < entry.period else None)
            for e in assignment.entries
        }
        patterns.append(ReleasePattern(f"blocked-by-{entry.task_id}", offsets))
    return patterns


def _simulate(
    assignment: CoreAssignment,
    pattern: ReleasePattern,
    horizon: int,
    job_key: Callable[[CoreTask, int], tuple],
) -> SimulationResult:
    if not assignment.entries:
        raise PreconditionViolation("simulation needs at least one task")
    entries = {e.task_id: e for e in assignment.entries}
    if horizon < max(e.period for e in entries.values()):
        raise PreconditionViolation(f"horizon {horizon} shorter than the longest period")

    next_release = {tid: off for tid, off in pattern.offsets.items() if off is not None}
    max_response = {tid: 0 for tid in entries}
    misses: List[Tuple[int, int]] = []
    pending: list = []
    jobs = 0
    now = 0

    def run(tid: int, release: int) -> None:
        nonlocal now, jobs
        entry = entries[tid]
        now += entry.exec
        response = now - release
        jobs += 1
        max_response[tid] = max(max_response[tid], response)
        if response > entry.period:
            misses.append((tid, release))

    if pattern.dispatched is not None:
        tid = pattern.dispatched
        next_release[tid] = entries[tid].period
        run(tid, 0)

    while True:
        for tid, release in list(next_release.items()):
            while release <= now and release < horizon:
                heapq.heappush(pending, (job_key(entries[tid], release), tid, release))
                release += entries[tid].period
            next_release[tid] = release
        if pending:
            _, tid, release = heapq.heappop(pending)
            run(tid, release)
            continue
        upcoming = [r for r in next_release.values() if r < horizon]
        if not upcoming:
            break
        now = min(upcoming)

    return SimulationResult(
        pattern=pattern.name,
        max_response=max_response,
        deadline_miss=bool(misses),
        truncated=core_utilization(assignment) > 1,
        jobs=jobs,
        misses=misses,
    )


def simulate_npfp_core(
    assignment: CoreAssignment,
    pattern: ReleasePattern,
    horizon: Optional[int] = None,
) -> SimulationResult:
    """Non-preemptive fixed-priority dispatch in priority_order"""
    rank = {e.task_id: k for k, e in enumerate(priority_order(assignment))}
    horizon = horizon if horizon is not None else default_horizon(assignment)
    return _simulate(assignment, pattern, horizon, lambda entry, release: (rank[entry.task_id], release))


def simulate_npedf_core(
    assignment: CoreAssignment,
    pattern: ReleasePattern,
    horizon: Optional[int] = None,
) -> SimulationResult:
    """Non-preemptive EDF dispatch; equal deadlines go to the smaller task id"""
    horizon = horizon if horizon is not None else default_horizon(assignment) + 1
    return _simulate(assignment, pattern, horizon, lambda entry, release: (release + entry.period, entry.task_id))


def observed_npfp_worst(assignment: CoreAssignment, horizon: Optional[int] = None) -> Dict[int, int]:
    """Largest response per task over the synchronous and all blocking patterns"""
    worst = {e.task_id: 0 for e in assignment.entries}
    for pattern in npfp_patterns(assignment):
        result = simulate_npfp_core(assignment, pattern, horizon)
        for tid, response in result.max_response.items():
            worst[tid] = max(worst[tid], response)
    return worst


def npedf_simulation_verdict(assignment: CoreAssignment, horizon: Optional[int] = None) -> bool:
    """True when no simulated NP-EDF pattern misses a deadline"""
    return not any(simulate_npedf_core(assignment, p, horizon).deadline_miss for p in npedf_patterns(assignment))
