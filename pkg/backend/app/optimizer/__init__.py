"""
Cache-partition and task co-allocation search for CoPart.
"""
from .packing import alloc_task, sort_tasks
from .search import PartialSolution, dominates, is_prospective, optimize, remove_dominated

__all__ = [
    "alloc_task",
    "sort_tasks",
    "PartialSolution",
    "dominates",
    "remove_dominated",
    "is_prospective",
    "optimize",
]
