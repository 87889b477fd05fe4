"""
Shared types of the uniprocessor schedulability tests.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, NamedTuple, Optional, Tuple

from loguru import logger

from app.core.exceptions import PreconditionViolation
from app.models import Policy, Task


class CoreTask(NamedTuple):
    """A task as seen by one core: execution time fixed by the core's grant"""
    task_id: int
    period: int
    exec: int


@dataclass(frozen=True)
class CoreAssignment:
    """Tasks mapped on one core together with the core's partition count"""
    entries: Tuple[CoreTask, ...]
    mu: int

    @classmethod
    def from_tasks(cls, tasks: Iterable[Task], mu: int) -> "CoreAssignment":
        tasks = list(tasks)
        for task in tasks:
            if not 1 <= mu <= task.profile.n_partitions:
                raise PreconditionViolation(f"mu={mu} outside 1..{task.profile.n_partitions}")
        return cls(tuple(CoreTask(t.id, t.period, t.profile.eps[mu - 1]) for t in tasks), mu)

    @classmethod
    def of(cls, *pairs: Tuple[int, int], mu: int = 1) -> "CoreAssignment":
        """Build from (period, exec) pairs; ids follow argument order"""
        return cls(tuple(CoreTask(i, p, e) for i, (p, e) in enumerate(pairs)), mu)

    def with_task(self, task: Task) -> "CoreAssignment":
        if any(entry.task_id == task.id for entry in self.entries):
            raise PreconditionViolation(f"task {task.id} already on this core")
        return CoreAssignment(self.entries + (CoreTask(task.id, task.period, task.exec_at(self.mu)),), self.mu)

    @property
    def task_ids(self) -> Tuple[int, ...]:
        return tuple(entry.task_id for entry in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def core_utilization(assignment: CoreAssignment) -> Fraction:
    """Exact utilization of a core"""
    return sum((Fraction(e.exec, e.period) for e in assignment.entries), Fraction(0))


@dataclass(frozen=True)
class ResponseReport:
    """Per-task worst-case response times; None marks a divergent recurrence"""
    response_times: Dict[int, Optional[int]]
    schedulable: bool
    busy_periods: Dict[int, Optional[int]] = field(default_factory=dict)
    instances: Dict[int, Optional[int]] = field(default_factory=dict)

    @property
    def divergent(self) -> bool:
        return any(r is None for r in self.response_times.values())

    def to_dict(self) -> dict:
        return {
            "schedulable": self.schedulable,
            "divergent": self.divergent,
            "response_times": {str(k): v for k, v in self.response_times.items()},
            "busy_periods": {str(k): v for k, v in self.busy_periods.items()},
            "instances": {str(k): v for k, v in self.instances.items()},
        }


class BaseSchedulabilityTest:
    """Base class for uniprocessor schedulability tests plugged into the allocators"""

    policy: Policy

    def __init__(self, name: str, description: str):
        self.name = name
        self.description = description
        self.logger = logger.bind(module=f"analysis.{name}")

    def is_schedulable(self, assignment: CoreAssignment) -> bool:
        """Verdict for one core"""
        raise NotImplementedError("Subclasses must implement is_schedulable method")

    def is_schedulable_with(self, existing: CoreAssignment, candidate: Task) -> bool:
        """Verdict for a core after adding one more task"""
        return self.is_schedulable(existing.with_task(candidate))

    def accepts(self, tasks: Iterable[Task], mu: int) -> bool:
        """Verdict for a set of tasks sharing mu partitions; an empty core passes"""
        assignment = CoreAssignment.from_tasks(tasks, mu)
        return not assignment.entries or self.is_schedulable(assignment)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.policy.value})"
