"""
Slowdown curves and task construction.

A curve gives the execution-time inflation at a cache amount relative to
the full cache. Synthetic curves decay exponentially with the number of
partitions; benchmark curves are sampled tables evaluated by linear
interpolation and renormalized to the platform's full cache.
"""
import csv
from math import ceil, exp
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.core.config import settings
from app.core.exceptions import PreconditionViolation
from app.core.logging import generator_logger
from app.models import CurveKind, ExecProfile, PlatformConfig, SlowdownCurve, Task

BENCHMARK_NAMES = ("kmeans", "sfm", "letter", "car")

SD_S1_ALPHAS = (0.0, 0.023, 0.036, 0.045, 0.052, 0.058)
SD_S2_ALPHAS = (0.0, 0.023, 0.045, 0.058, 0.067, 0.0743)
SYNTHETIC_ALPHAS = (0.0, 0.023, 0.036, 0.045, 0.052, 0.058, 0.067, 0.0743)


def synthetic_slowdown(alpha: float, mu: int, n_p: int) -> float:
    """exp((n_p - mu) * alpha): one at full cache, growing as partitions are taken away"""
    if not 1 <= mu <= n_p:
        raise PreconditionViolation(f"mu={mu} outside 1..{n_p}")
    return exp((n_p - mu) * alpha)


def synthetic_curve(alpha: float) -> SlowdownCurve:
    return SlowdownCurve(kind=CurveKind.SYNTHETIC, name=f"syn-{alpha:g}", alpha=alpha)


def _monotone_samples(samples: Sequence[Tuple[float, float]]) -> Tuple[Tuple[float, float], ...]:
    """Sort by cache amount and raise any entry lower than a larger-cache one"""
    ordered = sorted((float(kb), float(s)) for kb, s in samples)
    fixed = list(ordered)
    for k in range(len(fixed) - 2, -1, -1):
        if fixed[k][1] < fixed[k + 1][1]:
            fixed[k] = (fixed[k][0], fixed[k + 1][1])
    if fixed != ordered:
        generator_logger.warning(f"⚠️ Non-monotone slowdown samples clamped ({len(samples)} rows)")
    return tuple(fixed)


def benchmark_curve(name: str, samples: Sequence[Tuple[float, float]]) -> SlowdownCurve:
    return SlowdownCurve(kind=CurveKind.BENCHMARK, name=name, samples=_monotone_samples(samples))


def curve_slowdown(curve: SlowdownCurve, mu: int, platform: PlatformConfig) -> float:
    """Slowdown with mu partitions relative to all n_p partitions of the platform"""
    if not 1 <= mu <= platform.n_partitions:
        raise PreconditionViolation(f"mu={mu} outside 1..{platform.n_partitions}")
    if curve.kind == CurveKind.SYNTHETIC:
        return synthetic_slowdown(curve.alpha, mu, platform.n_partitions)
    xs = np.array([kb for kb, _ in curve.samples])
    ys = np.array([s for _, s in curve.samples])
    here = float(np.interp(mu * platform.partition_kb, xs, ys))
    full = float(np.interp(platform.total_cache_kb, xs, ys))
    return here / full


def load_curve(path: Union[str, Path], name: Optional[str] = None) -> SlowdownCurve:
    """Read a `cache_kb,slowdown` table"""
    path = Path(path)
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or not {"cache_kb", "slowdown"} <= set(reader.fieldnames):
            raise PreconditionViolation(f"{path}: expected header cache_kb,slowdown")
        samples = [(float(row["cache_kb"]), float(row["slowdown"])) for row in reader]
    return benchmark_curve(name or path.stem, samples)


def load_benchmark_curves(profile_dir: Optional[Union[str, Path]] = None) -> Dict[str, SlowdownCurve]:
    """The packaged benchmark curves keyed by name"""
    directory = Path(profile_dir) if profile_dir is not None else settings.profile_dir()
    curves = {name: load_curve(directory / f"{name}.csv", name) for name in BENCHMARK_NAMES}
    generator_logger.debug(f"📊 Loaded {len(curves)} benchmark curves from {directory}")
    return curves


def exec_time_model(
    instructions: float,
    d_hits: float,
    d_misses: float,
    cpi: float = 0.5,
    hit_penalty: float = 20,
    miss_penalty: float = 200,
) -> float:
    """Cycles spent: instructions * cpi + misses * miss penalty + hits * hit penalty"""
    if min(instructions, d_hits, d_misses) < 0:
        raise PreconditionViolation("instruction, hit and miss counts must be non-negative")
    return instructions * cpi + d_misses * miss_penalty + d_hits * hit_penalty


def curve_from_cache_stats(path: Union[str, Path], name: Optional[str] = None, **model_args: float) -> SlowdownCurve:
    """Benchmark curve from a `cache_kb,instructions,d_hits,d_misses` table"""
    path = Path(path)
    rows: List[Tuple[float, float]] = []
    with open(path, "r", encoding="utf-8", newline="") as f:
        for row in csv.DictReader(f):
            cycles = exec_time_model(
                float(row["instructions"]), float(row["d_hits"]), float(row["d_misses"]), **model_args
            )
            rows.append((float(row["cache_kb"]), cycles))
    if not rows:
        raise PreconditionViolation(f"{path}: no cache statistics rows")
    reference = max(rows)[1]
    if reference <= 0:
        raise PreconditionViolation(f"{path}: zero cycles at the largest cache")
    return benchmark_curve(name or path.stem, [(kb, cycles / reference) for kb, cycles in rows])


def _ticks_up(value: float) -> int:
    # rounding first keeps 0.34 * 100 at 34
    return ceil(round(value, 9))


def build_task(
    u_base: float,
    period: int,
    curve: SlowdownCurve,
    platform: PlatformConfig,
    task_id: int = 0,
) -> Task:
    """Task whose full-cache execution time realizes u_base, inflated per the curve"""
    if u_base <= 0 or period <= 0:
        raise PreconditionViolation(f"zero-tick execution: u_base={u_base}, period={period}")
    if round(u_base * period, 9) < 1:
        raise PreconditionViolation(f"u_base * period below one tick: u_base={u_base}, period={period}")
    eps_full = _ticks_up(u_base * period)
    eps = [_ticks_up(eps_full * curve_slowdown(curve, mu, platform)) for mu in range(1, platform.n_partitions + 1)]
    eps[-1] = eps_full
    return Task(id=task_id, period=period, profile=ExecProfile(eps=eps))
