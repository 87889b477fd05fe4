"""
Exhaustive enumeration of small instances.

Cores are interchangeable, so task-to-core assignments are enumerated as set
partitions with at most n_c blocks (restricted growth strings); every split
of the cache that grants each non-empty core at least one partition is then
tried.
"""
from typing import Dict, Iterator, List, Optional, Tuple

from app.core.config import settings
from app.core.exceptions import OracleSizeError
from app.core.logging import oracle_logger
from app.models import OracleVerdict, Solution, TaskSet
from app.analysis.base import BaseSchedulabilityTest


def set_partitions(n: int, max_blocks: int) -> Iterator[List[List[int]]]:
    """Every partition of range(n) into at most max_blocks non-empty blocks"""
    if n == 0:
        yield []
        return

    def grow(i: int, labels: List[int], blocks: int):
        if i == n:
            yield [[k for k in range(n) if labels[k] == b] for b in range(blocks)]
            return
        for b in range(min(blocks + 1, max_blocks)):
            labels.append(b)
            yield from grow(i + 1, labels, max(blocks, b + 1))
            labels.pop()

    yield from grow(0, [], 0)


def cache_splits(blocks: int, n_p: int) -> Iterator[Tuple[int, ...]]:
    """Grants of at least one partition per block with a total of at most n_p"""
    if blocks == 0:
        yield ()
        return
    for first in range(1, n_p - (blocks - 1) + 1):
        for rest in cache_splits(blocks - 1, n_p - first):
            yield (first,) + rest


def exhaustive_search(
    task_set: TaskSet,
    test: BaseSchedulabilityTest,
    max_tasks: Optional[int] = None,
    max_cores: Optional[int] = None,
    max_partitions: Optional[int] = None,
) -> OracleVerdict:
    """Whether any (assignment, split) pair passes the test, with the first one found"""
    max_tasks = max_tasks or settings.ORACLE_MAX_TASKS
    max_cores = max_cores or settings.ORACLE_MAX_CORES
    max_partitions = max_partitions or settings.ORACLE_MAX_PARTITIONS
    n_c, n_p = task_set.platform.n_cores, task_set.platform.n_partitions
    if task_set.n_tasks > max_tasks or n_c > max_cores or n_p > max_partitions:
        raise OracleSizeError(
            f"instance {task_set.n_tasks} tasks / {n_c} cores / {n_p} partitions exceeds "
            f"{max_tasks} / {max_cores} / {max_partitions}"
        )

    tasks = sorted(task_set.tasks, key=lambda t: t.id)
    verdicts: Dict[Tuple[Tuple[int, ...], int], bool] = {}

    def passes(block: Tuple[int, ...], mu: int) -> bool:
        key = (block, mu)
        if key not in verdicts:
            verdicts[key] = test.accepts([tasks[i] for i in block], mu)
        return verdicts[key]

    explored = 0
    for partition in set_partitions(len(tasks), n_c):
        blocks = [tuple(tasks[i].id for i in block) for block in partition]
        for split in cache_splits(len(blocks), n_p):
            explored += 1
            if all(passes(block, mu) for block, mu in zip(blocks, split)):
                witness = Solution.build([list(b) for b in blocks], list(split), n_c)
                oracle_logger.debug(f"witness after {explored} pairs: {witness.cache_part}")
                return OracleVerdict(exists_schedulable=True, witness=witness, explored=explored)

    return OracleVerdict(exists_schedulable=False, explored=explored)
