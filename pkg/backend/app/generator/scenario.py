"""
Scenario task-set streams.

Each (u_tar, repetition) cell draws from its own generator seeded with
(rng_seed, u_tar index, repetition), so any cell can be regenerated alone and
the stream does not depend on iteration or worker order.
"""
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence

import numpy as np

from app.core.config import settings
from app.core.exceptions import PreconditionViolation
from app.core.logging import generator_logger
from app.models import (
    Architecture,
    PeriodSet,
    ProfileSet,
    ScenarioConfig,
    SlowdownCurve,
    TaskSet,
)
from app.generator.profiles import SD_S1_ALPHAS, SD_S2_ALPHAS, build_task, load_benchmark_curves, synthetic_curve
from app.generator.utilization import gen_utilizations

PERIODS_MS = {
    PeriodSet.WD: (5, 10, 20, 40, 60, 80, 100),
    PeriodSet.SH: (10, 15, 20, 25),
}
UTILIZATION_CAP = {
    PeriodSet.WD: None,
    PeriodSet.SH: 0.2,
}


class ScenarioInstance(NamedTuple):
    """A generated task set with its position in the scenario grid"""
    u_tar: float
    set_index: int
    task_set: TaskSet


def profile_collection(profile_set: ProfileSet, benchmark_curves: Optional[Dict[str, SlowdownCurve]] = None) -> List[SlowdownCurve]:
    """Curves a scenario draws task profiles from"""
    if profile_set == ProfileSet.SD_B:
        curves = benchmark_curves if benchmark_curves is not None else load_benchmark_curves()
        return [curves[name] for name in sorted(curves)]
    alphas = SD_S1_ALPHAS if profile_set == ProfileSet.SD_S1 else SD_S2_ALPHAS
    return [synthetic_curve(alpha) for alpha in alphas]


def cell_rng(seed: int, u_index: int, set_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, u_index, set_index]))


def gen_task_set(
    config: ScenarioConfig,
    u_tar: float,
    rng: np.random.Generator,
    curves: Sequence[SlowdownCurve],
) -> TaskSet:
    """One task set of the scenario at target utilization u_tar"""
    n = config.tasks_per_set
    periods = PERIODS_MS[config.period_set]
    retries = settings.UTILIZATION_MAX_RETRIES
    for _ in range(retries):
        utilizations = gen_utilizations(n, u_tar, UTILIZATION_CAP[config.period_set], rng)
        period_ticks = [periods[int(k)] * config.ticks_per_ms for k in rng.integers(len(periods), size=n)]
        if all(round(u * p, 9) >= 1 for u, p in zip(utilizations, period_ticks)):
            break
        generator_logger.debug(f"🔁 Redrawing u_tar={u_tar}: a task is shorter than one tick")
    else:
        raise PreconditionViolation(f"no task set with every task at least one tick after {retries} draws")
    curve_idx = rng.integers(len(curves), size=n)
    tasks = tuple(
        build_task(
            u_base=utilizations[i],
            period=period_ticks[i],
            curve=curves[int(curve_idx[i])],
            platform=config.platform,
            task_id=i,
        )
        for i in range(n)
    )
    tick_ns = 1_000_000 // config.ticks_per_ms
    return TaskSet(tick_ns=max(tick_ns, 1), tasks=tasks, platform=config.platform)


def gen_scenario_instances(
    config: ScenarioConfig,
    benchmark_curves: Optional[Dict[str, SlowdownCurve]] = None,
) -> Iterator[ScenarioInstance]:
    """Task sets of the scenario, u_tar-major, with their grid coordinates"""
    curves = profile_collection(config.profile_set, benchmark_curves)
    generator_logger.info(
        f"🎲 Generating {config.scenario_id}: {len(config.u_tar_grid)} points x "
        f"{config.sets_per_point} sets (seed {config.rng_seed})"
    )
    for u_index, u_tar in enumerate(config.u_tar_grid):
        for set_index in range(config.sets_per_point):
            rng = cell_rng(config.rng_seed, u_index, set_index)
            yield ScenarioInstance(u_tar, set_index, gen_task_set(config, u_tar, rng, curves))


def gen_scenario(
    config: ScenarioConfig,
    benchmark_curves: Optional[Dict[str, SlowdownCurve]] = None,
) -> Iterator[TaskSet]:
    """Stream of the scenario's task sets"""
    for instance in gen_scenario_instances(config, benchmark_curves):
        yield instance.task_set


def all_scenarios(**overrides) -> List[ScenarioConfig]:
    """The twelve architecture x period set x profile set combinations"""
    return [
        ScenarioConfig.preset(arch, period_set, profile_set, **overrides)
        for arch in Architecture
        for period_set in PeriodSet
        for profile_set in ProfileSet
    ]
