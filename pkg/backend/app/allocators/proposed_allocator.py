"""
The co-optimizing search exposed as allocators, one per sorting criterion.
"""
from typing import Optional

from app.models import AlgorithmName, AllocationResult, SortCriterion, TaskSet
from app.analysis.base import BaseSchedulabilityTest
from app.optimizer import optimize
from .base_allocator import BaseAllocator


class ProposedAllocator(BaseAllocator):
    """Breadth-first cache grant search with first-sort-then-pack cores"""

    def __init__(self, criterion: SortCriterion):
        self.criterion = criterion
        self.algorithm = AlgorithmName(criterion.value)
        super().__init__(
            name=criterion.value,
            description=f"Co-allocation search packing cores in {criterion.value.upper()} order",
        )

    def allocate(
        self,
        task_set: TaskSet,
        test: BaseSchedulabilityTest,
        deadline: Optional[float] = None,
    ) -> AllocationResult:
        result = optimize(task_set, self.criterion, test, deadline=deadline)
        self.logger.debug(
            f"{task_set.n_tasks} tasks: schedulable={result.schedulable}, "
            f"calls={result.alloc_calls}, frontier={list(result.frontier_sizes)}"
        )
        return result


class CompAllocator(ProposedAllocator):
    """Tasks packed in period order"""

    def __init__(self):
        super().__init__(SortCriterion.COMP)


class CaseAllocator(ProposedAllocator):
    """Tasks packed in cache sensitivity order"""

    def __init__(self):
        super().__init__(SortCriterion.CASE)
