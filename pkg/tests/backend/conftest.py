"""
Shared fixtures: the two four-task worked examples on 2 cores x 4 partitions.
Task ids are 0-based, so tau_1 is id 0.
"""
import pytest

from app.core.logging import setup_logging
from app.models import ExecProfile, PlatformConfig, Task, TaskSet

COMP_ONLY_ROWS = [
    (100, [36, 35, 34, 34]),
    (100, [75, 55, 45, 27]),
    (150, [77, 48, 35, 25]),
    (150, [85, 82, 81, 79]),
]
CASE_ONLY_ROWS = [
    (200, [35, 33, 31, 26]),
    (200, [177, 172, 168, 165]),
    (250, [324, 178, 119, 80]),
    (250, [65, 63, 62, 60]),
]


def make_task_set(rows, n_cores=2, n_partitions=None) -> TaskSet:
    n_partitions = n_partitions or len(rows[0][1])
    tasks = tuple(
        Task(id=i, period=period, profile=ExecProfile(eps=eps)) for i, (period, eps) in enumerate(rows)
    )
    return TaskSet(tasks=tasks, platform=PlatformConfig(n_cores=n_cores, n_partitions=n_partitions))


@pytest.fixture(scope="session", autouse=True)
def quiet_logging():
    setup_logging("WARNING")


@pytest.fixture
def comp_only_set() -> TaskSet:
    """COMP succeeds, CASE fails"""
    return make_task_set(COMP_ONLY_ROWS)


@pytest.fixture
def case_only_set() -> TaskSet:
    """CASE succeeds, COMP fails"""
    return make_task_set(CASE_ONLY_ROWS)


@pytest.fixture
def task_factory():
    def _make(period, eps, task_id=0):
        return Task(id=task_id, period=period, profile=ExecProfile(eps=eps))
    return _make
