"""
Tests for the allocator registry, the baselines and cache minimization.
"""
import time
from fractions import Fraction

import numpy as np
import pytest

from app.core.exceptions import AllocationTimeout, PreconditionViolation
from app.analysis import NPFPTest, get_test
from app.allocators import (
    ALLOCATOR_REGISTRY,
    CaMAllocator,
    CompAllocator,
    first_fit,
    get_allocator,
    list_available_allocators,
    minimal_grant,
    minimize_cache,
    proportional_split,
    run_cam,
    run_first_fit,
    run_ia3,
    run_pdpa,
    select_critical_tasks,
)
from app.allocators.clustering import kmeans
from app.allocators.ia3_allocator import cache_sensitivity
from app.models import AlgorithmName, Policy, Solution

from conftest import make_task_set


def assert_sound(result, task_set, test):
    solution = result.solution
    assert solution.total_cache_used <= task_set.platform.n_partitions
    placed = sorted(i for ids in solution.task_alloc for i in ids)
    assert placed == list(range(task_set.n_tasks))
    for ids, mu in zip(solution.task_alloc, solution.cache_part):
        assert test.accepts([task_set.task(i) for i in ids], mu)


class TestRegistry:
    def test_lookup(self):
        assert isinstance(get_allocator("comp"), CompAllocator)
        assert isinstance(get_allocator(AlgorithmName.CAM), CaMAllocator)
        assert get_allocator("CASE").algorithm == AlgorithmName.CASE

    def test_unknown(self):
        with pytest.raises(ValueError, match="Available algorithms"):
            get_allocator("both")

    def test_listing(self):
        assert set(list_available_allocators()) == set(ALLOCATOR_REGISTRY) == {"comp", "case", "ia3", "pdpa", "cam"}


class TestIA3:
    def test_sensitivity(self, comp_only_set):
        assert cache_sensitivity(comp_only_set.task(1)) == Fraction(48, 100)

    def test_comp_only_set(self, comp_only_set):
        result = run_ia3(comp_only_set, NPFPTest())
        assert result.solution.task_alloc == ((0, 1), (2, 3))
        assert result.solution.cache_part == (2, 2)

    def test_gives_up_without_cache(self):
        task_set = make_task_set([(10, [9, 8]), (10, [9, 8]), (10, [9, 8])], n_cores=2)
        assert run_ia3(task_set, NPFPTest()).solution is None

    def test_deadline(self, comp_only_set):
        with pytest.raises(AllocationTimeout):
            run_ia3(comp_only_set, NPFPTest(), deadline=time.monotonic() - 1)


class TestPDPA:
    def test_critical_tasks(self, comp_only_set):
        critical = select_critical_tasks(comp_only_set, 50)
        assert [t.id for t in critical] == [2, 0]

    def test_comp_only_set(self, comp_only_set):
        result = run_pdpa(comp_only_set, NPFPTest())
        assert result.solution.task_alloc == ((2, 3), (0, 1))
        assert result.solution.cache_part == (2, 2)

    def test_rejects_overcommitted_grants(self):
        # each task alone needs the whole cache
        task_set = make_task_set([(10, [11, 11, 9]), (30, [31, 31, 20])], n_cores=2)
        assert run_pdpa(task_set, NPFPTest()).solution is None


class TestCaM:
    def test_proportional_split(self):
        assert proportional_split([Fraction(1), Fraction(1)], 4) == [2, 2]
        assert proportional_split([Fraction(1), Fraction(2)], 4) == [1, 3]
        assert proportional_split([Fraction(1)] * 3, 4) == [2, 1, 1]
        assert proportional_split([Fraction(0), Fraction(0)], 3) == [2, 1]

    def test_first_fit_prefers_home_core(self, comp_only_set):
        tasks = [comp_only_set.task(0), comp_only_set.task(1)]
        cores = first_fit(tasks, NPFPTest(), [2, 2], preferred={0: 1, 1: 1})
        assert [[t.id for t in core] for core in cores] == [[], [0, 1]]

    def test_first_fit_skips_cores_without_cache(self, comp_only_set):
        cores = first_fit([comp_only_set.task(0)], NPFPTest(), [0, 4])
        assert [[t.id for t in core] for core in cores] == [[], [0]]

    def test_first_fit_failure(self, case_only_set):
        assert first_fit(list(case_only_set.tasks), NPFPTest(), [1, 1]) is None

    def test_equal_split_first_fit(self, comp_only_set):
        test = NPFPTest()
        result = run_first_fit(comp_only_set, test)
        assert result.solution is not None
        assert result.solution.task_alloc == ((0, 1), (2, 3))
        assert result.solution.cache_part == (2, 2)
        assert_sound(result, comp_only_set, test)

    @pytest.mark.parametrize("policy", list(Policy))
    def test_cam_is_sound(self, comp_only_set, case_only_set, policy):
        test = get_test(policy)
        for task_set in (comp_only_set, case_only_set):
            result = run_cam(task_set, test)
            if result.solution is not None:
                assert_sound(result, task_set, test)

    def test_cam_gives_sensitive_cluster_more_cache(self, comp_only_set):
        test = get_test(Policy.PEDF)
        result = run_cam(comp_only_set, test)
        assert result.solution is not None
        assert result.solution.task_alloc == ((1, 2), (0, 3))
        assert result.solution.cache_part == (3, 1)
        assert_sound(result, comp_only_set, test)

    @pytest.mark.parametrize("policy", list(Policy))
    @pytest.mark.parametrize("rows,feasible", [
        ([(100, [40] * 4), (100, [40] * 4), (200, [60] * 4), (200, [50] * 4)], True),
        ([(10, [8] * 4), (10, [8] * 4), (10, [8] * 4)], False),
    ])
    def test_cam_flat_profiles_match_first_fit(self, rows, feasible, policy):
        task_set = make_task_set(rows, n_cores=2)
        test = get_test(policy)
        cam = run_cam(task_set, test)
        plain = run_first_fit(task_set, test)
        assert (cam.solution is not None) == (plain.solution is not None) == feasible
        assert cam.solution == plain.solution


class TestClustering:
    def test_separated_groups(self):
        labels = kmeans(np.array([[1.0], [1.1], [5.0], [5.1]]), k=2, seed=0)
        assert labels[0] == labels[1] == 0
        assert labels[2] == labels[3] == 1

    def test_fewer_distinct_points_than_clusters(self):
        assert kmeans(np.ones((4, 3)), k=3, seed=0) == [0, 0, 0, 0]

    def test_deterministic(self):
        features = np.random.default_rng(3).random((20, 4))
        assert kmeans(features, 3, seed=5) == kmeans(features, 3, seed=5)

    def test_empty(self):
        assert kmeans(np.zeros((0, 2)), 2) == []


class TestCacheMinimizer:
    def test_lowers_grants(self):
        task_set = make_task_set([(10, [4, 3, 2, 2]), (10, [4, 3, 2, 2])], n_cores=2)
        solution = Solution.build([[0], [1]], [3, 1], 2)
        minimized = minimize_cache(solution, task_set, NPFPTest())
        assert minimized.cache_part == (1, 1)
        assert minimized.task_alloc == solution.task_alloc

    def test_minimal_solution_unchanged(self, comp_only_set):
        solution = get_allocator("comp").allocate(comp_only_set, NPFPTest()).solution
        assert minimize_cache(solution, comp_only_set, NPFPTest()) == solution

    def test_failing_core_rejected(self, comp_only_set):
        solution = Solution.build([[0, 1], [2, 3]], [1, 3], 2)
        with pytest.raises(PreconditionViolation):
            minimize_cache(solution, comp_only_set, NPFPTest())

    def test_minimal_grant(self, comp_only_set):
        assert minimal_grant(NPFPTest(), [comp_only_set.task(0), comp_only_set.task(1)], 4) == 2
        assert minimal_grant(NPFPTest(), [comp_only_set.task(0), comp_only_set.task(1)], 1) is None


class TestAllocatorSoundness:
    @pytest.mark.parametrize("name", sorted(ALLOCATOR_REGISTRY))
    @pytest.mark.parametrize("policy", list(Policy))
    def test_results_repass(self, comp_only_set, case_only_set, name, policy):
        test = get_test(policy)
        for task_set in (comp_only_set, case_only_set):
            result = get_allocator(name).allocate(task_set, test)
            assert result.policy == policy
            if result.solution is not None:
                assert_sound(result, task_set, test)
