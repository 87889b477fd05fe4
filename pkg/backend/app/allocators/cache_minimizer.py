"""
Post-processing that hands back partitions a schedulable allocation does not need.
"""
from typing import List

from app.core.exceptions import PreconditionViolation
from app.models import Solution, TaskSet
from app.analysis.base import BaseSchedulabilityTest


def minimize_cache(solution: Solution, task_set: TaskSet, test: BaseSchedulabilityTest) -> Solution:
    """Lower each core's grant, in core order, while the core stays schedulable"""
    tasks = task_set.by_id()
    grants: List[int] = list(solution.cache_part)
    for j, ids in enumerate(solution.task_alloc):
        if not ids:
            continue
        core = [tasks[i] for i in ids]
        if not test.accepts(core, grants[j]):
            raise PreconditionViolation(f"core {j} is not schedulable with {grants[j]} partitions")
        while grants[j] > 1 and test.accepts(core, grants[j] - 1):
            grants[j] -= 1
    return Solution.build([list(ids) for ids in solution.task_alloc], grants, len(solution.task_alloc))
