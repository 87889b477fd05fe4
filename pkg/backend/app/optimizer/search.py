"""
Breadth-first exploration of per-core cache grants.

Depth x fixes the task set and grant of core x. Every node at a depth is
expanded with each grant the remaining cache allows, the core is filled by the
packing layer, and after the depth is complete only nodes that are not
dominated in (cache left, unallocated demand) survive. The search keeps
going after the first complete allocation and returns the complete node
that leaves the most cache unused.
"""
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from app.core.exceptions import AllocationTimeout, SearchInvariantError
from app.core.logging import search_logger
from app.models import AlgorithmName, AllocationResult, SortCriterion, Solution, Task, TaskSet
from app.models.metrics import scheduling_demand
from app.analysis.base import BaseSchedulabilityTest
from app.optimizer.packing import alloc_task


@dataclass(frozen=True)
class PartialSolution:
    """Search node: cores fixed so far and what is still to be placed"""
    task_alloc: Tuple[Tuple[int, ...], ...]
    cache_part: Tuple[int, ...]
    tasks_left: FrozenSet[int]
    cache_left: int
    rem_sched_demand: Fraction

    @classmethod
    def initial(cls, task_set: TaskSet) -> "PartialSolution":
        return cls(
            task_alloc=(),
            cache_part=(),
            tasks_left=frozenset(t.id for t in task_set.tasks),
            cache_left=task_set.platform.n_partitions,
            rem_sched_demand=scheduling_demand(task_set.tasks),
        )

    @property
    def depth(self) -> int:
        return len(self.cache_part)

    @property
    def complete(self) -> bool:
        return not self.tasks_left

    def extend(self, packed: Sequence[Task], mu: int) -> "PartialSolution":
        """Child node with one more core holding packed at mu partitions"""
        ids = tuple(sorted(t.id for t in packed))
        return PartialSolution(
            task_alloc=self.task_alloc + (ids,),
            cache_part=self.cache_part + (mu,),
            tasks_left=self.tasks_left.difference(ids),
            cache_left=self.cache_left - mu,
            rem_sched_demand=self.rem_sched_demand - scheduling_demand(packed),
        )


def dominates(a: PartialSolution, b: PartialSolution) -> bool:
    """a keeps more cache for no more demand, or equal cache for strictly less demand"""
    if a.cache_left > b.cache_left:
        return a.rem_sched_demand <= b.rem_sched_demand
    if a.cache_left == b.cache_left:
        return a.rem_sched_demand < b.rem_sched_demand
    return False


def remove_dominated(nodes: Sequence[PartialSolution]) -> List[PartialSolution]:
    """Pareto front of nodes; exact ties keep the earliest node"""
    kept: List[PartialSolution] = []
    seen = set()
    for node in nodes:
        if any(dominates(other, node) for other in nodes if other is not node):
            continue
        key = (node.cache_left, node.rem_sched_demand)
        if key in seen:
            continue
        seen.add(key)
        kept.append(node)
    return kept


def is_prospective(node: PartialSolution, depth: int, n_cores: int) -> bool:
    """A node with tasks left but no core or cache left can never complete"""
    return node.complete or not (depth == n_cores or node.cache_left == 0)


def _check_budget(node: PartialSolution, task_set: TaskSet, tasks: Dict[int, Task]) -> None:
    n_p = task_set.platform.n_partitions
    if sum(node.cache_part) + node.cache_left != n_p:
        raise SearchInvariantError(f"cache budget broken: {node.cache_part} + {node.cache_left} != {n_p}")
    if node.rem_sched_demand != scheduling_demand(tasks[i] for i in node.tasks_left):
        raise SearchInvariantError("remaining demand out of sync with tasks left")


def _to_solution(node: PartialSolution, n_cores: int) -> Solution:
    return Solution.build([list(ids) for ids in node.task_alloc], list(node.cache_part), n_cores)


def optimize(
    task_set: TaskSet,
    criterion: SortCriterion,
    test: BaseSchedulabilityTest,
    deadline: Optional[float] = None,
) -> AllocationResult:
    """Co-allocate tasks and cache partitions; deadline is a time.monotonic() instant"""
    platform = task_set.platform
    n_c, n_p = platform.n_cores, platform.n_partitions
    tasks = task_set.by_id()
    algorithm = AlgorithmName(criterion.value)

    root = PartialSolution.initial(task_set)
    frontier: List[PartialSolution] = [root]
    best_demand = root.rem_sched_demand
    calls = 0
    sizes: List[int] = []

    for depth in range(1, n_c + 1):
        expanded: List[PartialSolution] = []
        for node in frontier:
            if node.complete:
                expanded.append(node)
                continue
            left = [tasks[i] for i in sorted(node.tasks_left)]
            for mu in range(1, node.cache_left + 1):
                if deadline is not None and time.monotonic() > deadline:
                    raise AllocationTimeout(algorithm.value)
                packed = alloc_task(left, mu, criterion, test, platform)
                calls += 1
                if not packed:
                    continue
                child = node.extend(packed, mu)
                _check_budget(child, task_set, tasks)
                best_demand = min(best_demand, child.rem_sched_demand)
                if is_prospective(child, depth, n_c):
                    expanded.append(child)

        frontier = remove_dominated(expanded)
        sizes.append(len(frontier))
        if len(frontier) > n_p + 2 - depth:
            raise SearchInvariantError(f"frontier of {len(frontier)} nodes at depth {depth} exceeds {n_p + 2 - depth}")
        search_logger.debug(f"depth {depth}: {len(expanded)} expanded, {len(frontier)} kept")
        if not frontier:
            break

    if calls > n_c * n_p * n_p:
        raise SearchInvariantError(f"{calls} packing calls exceed {n_c * n_p * n_p}")

    complete = [node for node in frontier if node.complete]
    solution = None
    if complete:
        # max() keeps the first node among equal cache_left
        best = max(complete, key=lambda node: node.cache_left)
        solution = _to_solution(best, n_c)
        best_demand = Fraction(0)

    return AllocationResult(
        algorithm=algorithm,
        policy=test.policy,
        solution=solution,
        best_rem_sched_demand=float(best_demand),
        alloc_calls=calls,
        frontier_sizes=tuple(sizes),
    )
