"""
Tests for the problem model and derived metrics.
"""
from fractions import Fraction

import pytest
from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import PreconditionViolation
from app.models import (
    Architecture,
    ExecProfile,
    PeriodSet,
    PlatformConfig,
    ProfileSet,
    ScenarioConfig,
    Solution,
    Task,
    TaskSet,
)
from app.models.metrics import (
    base_utilization,
    cache_sensitivity_potential,
    scheduling_demand,
    utilization_at,
)


class TestExecProfile:
    def test_monotone_profile_kept(self):
        profile = ExecProfile(eps=[36, 35, 34, 34])
        assert profile.eps == (36, 35, 34, 34)
        assert not profile.clamped

    def test_smaller_cache_entry_raised(self):
        profile = ExecProfile(eps=[30, 35, 34, 34])
        assert profile.eps == (35, 35, 34, 34)
        assert profile.clamped

    def test_full_cache_needs_a_tick(self):
        with pytest.raises(ValidationError):
            ExecProfile(eps=[3, 2, 0])

    def test_accessor(self, task_factory):
        task = task_factory(150, [77, 48, 35, 25])
        assert task.exec_at(2) == 48
        assert task.profile.at(4) == 25


class TestTaskSet:
    def test_ids_must_be_dense(self):
        platform = PlatformConfig(n_cores=1, n_partitions=2)
        tasks = (
            Task(id=0, period=10, profile=ExecProfile(eps=[5, 5])),
            Task(id=2, period=10, profile=ExecProfile(eps=[5, 5])),
        )
        with pytest.raises(ValidationError):
            TaskSet(tasks=tasks, platform=platform)

    def test_profile_length_must_match_platform(self):
        platform = PlatformConfig(n_cores=1, n_partitions=3)
        with pytest.raises(ValidationError):
            TaskSet(tasks=(Task(id=0, period=10, profile=ExecProfile(eps=[5, 5])),), platform=platform)

    def test_document_round_trip(self, comp_only_set):
        restored = TaskSet.from_json(comp_only_set.to_json())
        assert restored == comp_only_set
        document = comp_only_set.to_document()
        assert document["n_cores"] == 2
        assert document["partition_kb"] == 64
        assert document["tasks"][2] == {"id": 2, "period": 150, "eps": [77, 48, 35, 25]}

    def test_clamped_flag_survives_reload(self):
        platform = PlatformConfig(n_cores=1, n_partitions=3)
        task_set = TaskSet(
            tasks=(
                Task(id=0, period=50, profile=ExecProfile(eps=[8, 9, 7])),
                Task(id=1, period=50, profile=ExecProfile(eps=[9, 8, 7])),
            ),
            platform=platform,
        )
        document = task_set.to_document()
        assert document["tasks"][0]["clamped"] is True
        assert "clamped" not in document["tasks"][1]
        restored = TaskSet.from_json(task_set.to_json())
        assert restored.task(0).profile.clamped
        assert restored.task(0).profile.eps == (9, 9, 7)
        assert not restored.task(1).profile.clamped

    def test_tick_length_follows_settings(self, monkeypatch):
        monkeypatch.setattr(settings, "TICK_NS", 500)
        platform = PlatformConfig(n_cores=1, n_partitions=2)
        tasks = (Task(id=0, period=10, profile=ExecProfile(eps=[5, 5])),)
        assert TaskSet(tasks=tasks, platform=platform).tick_ns == 500
        document = {"n_cores": 1, "n_partitions": 2, "tasks": [{"id": 0, "period": 10, "eps": [5, 5]}]}
        assert TaskSet.from_document(document).tick_ns == 500

    def test_json_is_byte_stable(self, case_only_set):
        assert case_only_set.to_json() == TaskSet.from_json(case_only_set.to_json()).to_json()
        assert case_only_set.to_json().endswith(b"\n")

    def test_total_base_utilization(self, comp_only_set):
        assert comp_only_set.total_base_utilization() == Fraction(34, 100) + Fraction(27, 100) + Fraction(25, 150) + Fraction(79, 150)


class TestMetrics:
    def test_base_utilization(self, task_factory):
        assert base_utilization(task_factory(100, [36, 35, 34, 34])) == Fraction(34, 100)
        assert base_utilization(task_factory(150, [77, 48, 35, 25])) == Fraction(1, 6)
        assert base_utilization(task_factory(10, [5, 5])) == Fraction(1, 2)

    def test_base_utilization_checks_platform(self, task_factory):
        with pytest.raises(PreconditionViolation):
            base_utilization(task_factory(10, [5, 5]), PlatformConfig(n_cores=1, n_partitions=4))

    def test_utilization_at(self, task_factory):
        assert utilization_at(task_factory(100, [75, 55, 45, 27]), 2) == Fraction(55, 100)
        assert utilization_at(task_factory(250, [324, 178, 119, 80]), 1) == Fraction(324, 250)

    def test_utilization_at_rejects_bad_mu(self, task_factory):
        task = task_factory(100, [75, 55, 45, 27])
        with pytest.raises(PreconditionViolation):
            utilization_at(task, 0)
        with pytest.raises(PreconditionViolation):
            utilization_at(task, 5)

    def test_cache_sensitivity_potential(self, comp_only_set):
        gamma_3 = cache_sensitivity_potential(comp_only_set.task(2), 2)
        gamma_2 = cache_sensitivity_potential(comp_only_set.task(1), 2)
        assert float(gamma_3) == pytest.approx(0.1533, abs=1e-3)
        assert gamma_2 == Fraction(28, 100)

    def test_potential_is_zero_at_full_cache(self, comp_only_set):
        assert all(cache_sensitivity_potential(t, 4) == 0 for t in comp_only_set.tasks)

    def test_scheduling_demand(self, comp_only_set):
        assert scheduling_demand([]) == 0
        assert float(scheduling_demand(comp_only_set.tasks)) == pytest.approx(1.3033, abs=1e-4)


class TestSolution:
    def test_build_pads_and_zeroes_empty_cores(self):
        solution = Solution.build([[3, 1], []], [2, 2], n_cores=3)
        assert solution.task_alloc == ((1, 3), (), ())
        assert solution.cache_part == (2, 0, 0)
        assert solution.total_cache_used == 2
        assert solution.core_of(3) == 0

    def test_core_with_tasks_needs_a_partition(self):
        with pytest.raises(ValidationError):
            Solution(task_alloc=((0,),), cache_part=(0,), total_cache_used=0)

    def test_total_must_match(self):
        with pytest.raises(ValidationError):
            Solution(task_alloc=((0,), (1,)), cache_part=(1, 2), total_cache_used=2)


class TestScenarioConfig:
    def test_preset_platform(self):
        config = ScenarioConfig.preset(Architecture.AR_II, PeriodSet.SH, ProfileSet.SD_S2)
        assert config.platform.n_partitions == 32
        assert config.platform.n_cores == 4
        assert config.scenario_id == "AR-II+SH+SD-S2"

    def test_custom_platform_id(self):
        config = ScenarioConfig(architecture=None, platform=PlatformConfig(n_cores=2, n_partitions=8), u_tar_grid=(1.0,))
        assert config.scenario_id == "2C8P+WD+SD-B"

    def test_grid_must_fit_cores(self):
        with pytest.raises(ValidationError):
            ScenarioConfig(u_tar_grid=(4.5,))

    def test_default_grid(self):
        config = ScenarioConfig()
        assert config.u_tar_grid[0] == 1.0
        assert config.u_tar_grid[-1] == 4.0
        assert len(config.u_tar_grid) == 31
