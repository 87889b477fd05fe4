"""
Tests for exhaustive enumeration, core simulation and the soundness suite.
"""
import numpy as np
import pytest

from app.core.exceptions import OracleSizeError, PreconditionViolation
from app.analysis import (
    CoreAssignment,
    NPFPTest,
    npedf_is_schedulable,
    npfp_response_times,
)
from app.models import AlgorithmName, Policy
from app.oracle import (
    blocking_pattern,
    cache_splits,
    check_instance,
    exhaustive_search,
    npfp_patterns,
    npedf_simulation_verdict,
    observed_npfp_worst,
    random_instance,
    run_oracle_suite,
    set_partitions,
    simulate_npfp_core,
    synchronous_pattern,
)

from conftest import make_task_set


class TestEnumeration:
    @pytest.mark.parametrize("n,max_blocks,count", [(0, 2, 1), (1, 2, 1), (3, 3, 5), (4, 2, 8), (4, 4, 15), (5, 2, 16)])
    def test_set_partition_counts(self, n, max_blocks, count):
        partitions = list(set_partitions(n, max_blocks))
        assert len(partitions) == count
        for partition in partitions:
            assert sorted(i for block in partition for i in block) == list(range(n))
            assert all(block for block in partition)

    def test_cache_splits(self):
        assert list(cache_splits(1, 3)) == [(1,), (2,), (3,)]
        assert len(list(cache_splits(2, 4))) == 6
        assert all(min(split) >= 1 and sum(split) <= 4 for split in cache_splits(3, 4))
        assert list(cache_splits(3, 2)) == []


class TestExhaustiveSearch:
    @pytest.mark.parametrize("fixture", ["comp_only_set", "case_only_set"])
    def test_worked_examples_are_feasible(self, fixture, request):
        task_set = request.getfixturevalue(fixture)
        test = NPFPTest()
        verdict = exhaustive_search(task_set, test)
        assert verdict.exists_schedulable
        witness = verdict.witness
        assert witness.total_cache_used <= task_set.platform.n_partitions
        for ids, mu in zip(witness.task_alloc, witness.cache_part):
            assert test.accepts([task_set.task(i) for i in ids], mu)

    def test_infeasible_instance(self):
        task_set = make_task_set([(10, [12, 11])], n_cores=1)
        verdict = exhaustive_search(task_set, NPFPTest())
        assert not verdict.exists_schedulable
        assert verdict.witness is None
        assert verdict.explored == 2

    def test_size_limit(self, comp_only_set):
        with pytest.raises(OracleSizeError):
            exhaustive_search(comp_only_set, NPFPTest(), max_tasks=3)


class TestSimulator:
    def test_blocking_pattern_reaches_the_bound(self):
        core = CoreAssignment.of((100, 35), (150, 48))
        assert observed_npfp_worst(core) == {0: 83, 1: 83}

    def test_synchronous_release_alone(self):
        core = CoreAssignment.of((100, 35), (150, 48))
        result = simulate_npfp_core(core, synchronous_pattern(core))
        assert result.max_response == {0: 35, 1: 83}
        assert not result.deadline_miss
        assert not result.truncated

    def test_equal_periods(self):
        core = CoreAssignment.of((200, 31), (200, 168))
        assert observed_npfp_worst(core) == {0: 199, 1: 199}

    def test_low_priority_response(self):
        core = CoreAssignment.of((200, 35), (250, 65))
        assert observed_npfp_worst(core)[1] == 100

    def test_lowest_priority_has_no_blocker(self):
        core = CoreAssignment.of((100, 35), (150, 48))
        assert blocking_pattern(core, 1) is None
        assert len(npfp_patterns(core)) == 2

    def test_deadline_miss_reported(self):
        core = CoreAssignment.of((10, 5), (100, 6))
        pattern = blocking_pattern(core, 0)
        result = simulate_npfp_core(core, pattern)
        assert result.deadline_miss
        assert result.max_response[0] == 11

    def test_horizon_too_short(self):
        core = CoreAssignment.of((100, 35), (150, 48))
        with pytest.raises(PreconditionViolation):
            simulate_npfp_core(core, synchronous_pattern(core), horizon=120)

    def test_analysis_bounds_simulation(self):
        rng = np.random.default_rng(5)
        for _ in range(60):
            n = int(rng.integers(1, 5))
            periods = rng.choice([10, 20, 25, 40, 50], size=n)
            pairs = [(int(p), int(rng.integers(1, p // 2 + 1))) for p in periods]
            core = CoreAssignment.of(*pairs)
            report = npfp_response_times(core)
            if not report.schedulable:
                continue
            for tid, observed in observed_npfp_worst(core).items():
                assert observed <= report.response_times[tid]

    def test_npedf_test_matches_simulation(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            n = int(rng.integers(1, 5))
            periods = rng.choice([10, 20, 25, 40, 50], size=n)
            pairs = [(int(p), int(rng.integers(1, p // 2 + 1))) for p in periods]
            core = CoreAssignment.of(*pairs)
            assert npedf_is_schedulable(core) == npedf_simulation_verdict(core), core

    def test_npedf_blocking_miss_found(self):
        assert not npedf_simulation_verdict(CoreAssignment.of((10, 5), (100, 7)))


class TestSuite:
    def test_random_instance_limits(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            task_set = random_instance(rng)
            assert 2 <= task_set.n_tasks <= 6
            assert task_set.platform.n_cores == 2
            assert 1 <= task_set.platform.n_partitions <= 4

    def test_check_worked_example(self, comp_only_set):
        report = check_instance(comp_only_set, Policy.NPFP)
        assert report.passed
        assert report.instances == 1
        assert report.oracle_schedulable == 1
        assert report.schedulable["comp"] == 1
        assert "case" not in report.schedulable

    def test_check_selected_algorithms(self, case_only_set):
        report = check_instance(case_only_set, Policy.NPFP, algorithms=[AlgorithmName.CASE])
        assert report.schedulable == {"case": 1}

    @pytest.mark.parametrize("policy", list(Policy))
    def test_short_suite(self, policy):
        report = run_oracle_suite(instances=20, seed=0, policy=policy)
        assert report.instances == 20
        assert report.passed, report.violations

    @pytest.mark.slow
    def test_full_suite(self):
        report = run_oracle_suite(instances=200, seed=0)
        assert report.passed, report.violations
