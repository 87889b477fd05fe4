"""
Base class and shared helpers for all allocators.
"""
import time
from typing import Iterable, List, Optional, Sequence

from loguru import logger

from app.core.exceptions import AllocationTimeout
from app.models import AlgorithmName, AllocationResult, Solution, Task, TaskSet
from app.analysis.base import BaseSchedulabilityTest


class BaseAllocator:
    """Base class for allocators mapping a task set onto cores and cache partitions"""

    algorithm: AlgorithmName

    def __init__(self, name: str, description: str):
        self.name = name
        self.description = description
        self.logger = logger.bind(module=f"allocator.{name}")

    def allocate(
        self,
        task_set: TaskSet,
        test: BaseSchedulabilityTest,
        deadline: Optional[float] = None,
    ) -> AllocationResult:
        """Run the allocator; deadline is a time.monotonic() instant"""
        raise NotImplementedError("Subclasses must implement allocate method")

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.name})"


def check_deadline(algorithm: AlgorithmName, deadline: Optional[float]) -> None:
    if deadline is not None and time.monotonic() > deadline:
        raise AllocationTimeout(algorithm.value)


def minimal_grant(test: BaseSchedulabilityTest, tasks: Sequence[Task], limit: int, start: int = 1) -> Optional[int]:
    """Smallest grant in start..limit under which the tasks pass, None if there is none"""
    for mu in range(max(start, 1), limit + 1):
        if test.accepts(tasks, mu):
            return mu
    return None


def build_result(
    algorithm: AlgorithmName,
    test: BaseSchedulabilityTest,
    task_set: TaskSet,
    cores: Optional[List[List[Task]]] = None,
    grants: Optional[Iterable[int]] = None,
) -> AllocationResult:
    """AllocationResult from per-core task lists, or a no-solution result"""
    if cores is None:
        return AllocationResult(algorithm=algorithm, policy=test.policy)
    solution = Solution.build([[t.id for t in core] for core in cores], list(grants), task_set.platform.n_cores)
    return AllocationResult(
        algorithm=algorithm,
        policy=test.policy,
        solution=solution,
        best_rem_sched_demand=0.0,
    )
