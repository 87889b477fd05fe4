"""
Interference-aware allocation.

Tasks are placed in decreasing order of cache sensitivity; each goes to the
core that needs the fewest extra partitions to keep it schedulable.
"""
from fractions import Fraction
from typing import List, Optional

from app.models import AlgorithmName, AllocationResult, Task, TaskSet
from app.analysis.base import BaseSchedulabilityTest
from .base_allocator import BaseAllocator, build_result, check_deadline


def cache_sensitivity(task: Task) -> Fraction:
    """Utilization lost when running with one partition instead of the full cache"""
    return Fraction(task.profile.eps[0] - task.profile.eps[-1], task.period)


def run_ia3(
    task_set: TaskSet,
    test: BaseSchedulabilityTest,
    deadline: Optional[float] = None,
) -> AllocationResult:
    n_c, n_p = task_set.platform.n_cores, task_set.platform.n_partitions
    cores: List[List[Task]] = [[] for _ in range(n_c)]
    grants = [0] * n_c

    for task in sorted(task_set.tasks, key=lambda t: (-cache_sensitivity(t), t.id)):
        check_deadline(AlgorithmName.IA3, deadline)
        best = None
        for j in range(n_c):
            budget = n_p - (sum(grants) - grants[j])
            for mu in range(max(grants[j], 1), budget + 1):
                if test.accepts(cores[j] + [task], mu):
                    if best is None or mu - grants[j] < best[0]:
                        best = (mu - grants[j], j, mu)
                    break
        if best is None:
            return build_result(AlgorithmName.IA3, test, task_set)
        _, j, mu = best
        cores[j].append(task)
        grants[j] = mu

    return build_result(AlgorithmName.IA3, test, task_set, cores, grants)


class IA3Allocator(BaseAllocator):
    """Cache-sensitivity ordered best fit on extra partitions"""

    algorithm = AlgorithmName.IA3

    def __init__(self):
        super().__init__(name="ia3", description="Interference-aware allocation by cache sensitivity")

    def allocate(self, task_set, test, deadline=None) -> AllocationResult:
        return run_ia3(task_set, test, deadline)
