"""
Tests for the packing layer and the breadth-first co-allocation search.
"""
import time
from fractions import Fraction

import pytest

from app.core.exceptions import AllocationTimeout, PreconditionViolation
from app.analysis import NPFPTest, get_test
from app.models import AlgorithmName, Policy, SortCriterion
from app.optimizer import (
    PartialSolution,
    alloc_task,
    dominates,
    is_prospective,
    optimize,
    remove_dominated,
    sort_tasks,
)

from conftest import make_task_set


def node(cache_left, demand, alloc=((0,),)):
    return PartialSolution(
        task_alloc=alloc,
        cache_part=(1,) * len(alloc),
        tasks_left=frozenset({9}),
        cache_left=cache_left,
        rem_sched_demand=Fraction(demand),
    )


class TestSortTasks:
    def test_case_order_by_potential(self, comp_only_set):
        order = [t.id for t in sort_tasks(comp_only_set.tasks, SortCriterion.CASE, 2)]
        assert order == [0, 3, 2, 1]

    def test_comp_order_by_period_then_id(self, case_only_set):
        order = [t.id for t in sort_tasks(reversed(case_only_set.tasks), SortCriterion.COMP, 1)]
        assert order == [0, 1, 2, 3]

    def test_mu_out_of_range(self, comp_only_set):
        with pytest.raises(PreconditionViolation):
            sort_tasks(comp_only_set.tasks, SortCriterion.COMP, 5, comp_only_set.platform)
        with pytest.raises(PreconditionViolation):
            sort_tasks(comp_only_set.tasks, SortCriterion.COMP, 0)


class TestAllocTask:
    def test_case_packs_compatible_pair(self, comp_only_set):
        packed = alloc_task(comp_only_set.tasks, 2, SortCriterion.CASE, NPFPTest())
        assert [t.id for t in packed] == [0, 2]

    def test_comp_skips_overloading_tasks(self, case_only_set):
        packed = alloc_task(case_only_set.tasks, 1, SortCriterion.COMP, NPFPTest())
        assert [t.id for t in packed] == [0, 3]

    def test_empty_input(self):
        assert alloc_task([], 1, SortCriterion.COMP, NPFPTest()) == ()

    def test_nothing_fits(self, task_factory):
        task = task_factory(10, [12, 11])
        assert alloc_task([task], 1, SortCriterion.COMP, NPFPTest()) == ()


class TestDominance:
    def test_more_cache_and_no_more_demand(self):
        assert dominates(node(3, "0.5"), node(2, "0.5"))
        assert dominates(node(2, "0.4"), node(2, "0.5"))
        assert not dominates(node(3, "0.6"), node(2, "0.5"))
        assert not dominates(node(2, "0.5"), node(2, "0.5"))

    def test_remove_dominated_keeps_first_of_ties(self):
        first = node(2, "0.5", alloc=((0,),))
        twin = node(2, "0.5", alloc=((1,),))
        worse = node(1, "0.5")
        other = node(3, "0.9")
        kept = remove_dominated([first, twin, worse, other])
        assert kept == [first, other]

    def test_prospective(self):
        assert not is_prospective(node(0, "0.5"), 1, 4)
        assert not is_prospective(node(2, "0.5"), 4, 4)
        assert is_prospective(node(2, "0.5"), 1, 4)


class TestOptimize:
    def test_comp_solves_comp_only_set(self, comp_only_set):
        result = optimize(comp_only_set, SortCriterion.COMP, NPFPTest())
        assert result.algorithm == AlgorithmName.COMP
        assert result.solution.task_alloc == ((0, 1), (2, 3))
        assert result.solution.cache_part == (2, 2)
        assert result.best_rem_sched_demand == 0.0

    def test_case_fails_comp_only_set(self, comp_only_set):
        result = optimize(comp_only_set, SortCriterion.CASE, NPFPTest())
        assert result.solution is None
        assert result.best_rem_sched_demand > 0

    def test_case_solves_case_only_set(self, case_only_set):
        result = optimize(case_only_set, SortCriterion.CASE, NPFPTest())
        assert result.solution.task_alloc == ((0, 2, 3), (1,))
        assert result.solution.cache_part == (3, 1)

    def test_comp_fails_case_only_set(self, case_only_set):
        assert optimize(case_only_set, SortCriterion.COMP, NPFPTest()).solution is None

    @pytest.mark.parametrize("criterion", list(SortCriterion))
    def test_frontier_and_call_bounds(self, comp_only_set, case_only_set, criterion):
        for task_set in (comp_only_set, case_only_set):
            n_c, n_p = task_set.platform.n_cores, task_set.platform.n_partitions
            result = optimize(task_set, criterion, NPFPTest())
            for depth, size in enumerate(result.frontier_sizes, start=1):
                assert size <= n_p + 2 - depth
            assert result.alloc_calls <= n_c * n_p * n_p

    def test_solutions_repass_the_test(self, comp_only_set, case_only_set):
        test = NPFPTest()
        for task_set, criterion in ((comp_only_set, SortCriterion.COMP), (case_only_set, SortCriterion.CASE)):
            solution = optimize(task_set, criterion, test).solution
            for ids, mu in zip(solution.task_alloc, solution.cache_part):
                assert test.accepts([task_set.task(i) for i in ids], mu)
            assert solution.total_cache_used <= task_set.platform.n_partitions

    def test_single_task_uses_one_partition(self, task_factory):
        task_set = make_task_set([(10, [4, 3, 2])], n_cores=2)
        result = optimize(task_set, SortCriterion.COMP, NPFPTest())
        assert result.solution.cache_part == (1, 0)

    def test_infeasible_task(self):
        task_set = make_task_set([(10, [12, 11])], n_cores=1)
        assert optimize(task_set, SortCriterion.CASE, NPFPTest()).solution is None

    def test_policy_plugged_in(self, comp_only_set):
        result = optimize(comp_only_set, SortCriterion.COMP, get_test(Policy.PEDF))
        assert result.policy == Policy.PEDF
        assert result.schedulable

    def test_deadline_in_the_past(self, comp_only_set):
        with pytest.raises(AllocationTimeout):
            optimize(comp_only_set, SortCriterion.COMP, NPFPTest(), deadline=time.monotonic() - 1)
