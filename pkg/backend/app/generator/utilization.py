"""
Fixed-sum utilization vectors.

Stafford's randfixedsum draws uniformly from the part of the simplex
{sum x = s} that lies inside the unit cube. Scaling the cube to [0, cap]
gives the uniform distribution over capped vectors directly, the same one
whole-vector rejection would produce.
"""
from math import floor
from typing import List, Optional

import numpy as np

from app.core.config import settings
from app.core.exceptions import PreconditionViolation


def randfixedsum(n: int, total: float, rng: np.random.Generator) -> np.ndarray:
    """n values in [0, 1] summing to total, uniform over that polytope"""
    if n == 1:
        return np.array([total])
    if total >= n:
        return np.ones(n)

    k = min(floor(total), n - 1)
    s1 = total - np.arange(k, k - n, -1)
    s2 = np.arange(k + n, k, -1) - total

    tiny = np.finfo(float).tiny
    huge = np.finfo(float).max

    w = np.zeros((n, n + 1))
    w[0, 1] = huge
    t = np.zeros((n - 1, n))

    for i in range(2, n + 1):
        tmp1 = w[i - 2, 1:i + 1] * s1[:i] / i
        tmp2 = w[i - 2, :i] * s2[n - i:n] / i
        w[i - 1, 1:i + 1] = tmp1 + tmp2
        tmp3 = w[i - 1, 1:i + 1] + tiny
        tmp4 = s2[n - i:n] > s1[:i]
        t[i - 2, :i] = (tmp2 / tmp3) * tmp4 + (1 - tmp1 / tmp3) * np.logical_not(tmp4)

    x = np.zeros(n)
    rt = rng.random(n - 1)  # simplex type
    rs = rng.random(n - 1)  # position in simplex
    s = total
    j = k + 1
    sm = 0.0
    pr = 1.0
    for i in range(n - 1, 0, -1):
        e = int(rt[n - i - 1] <= t[i - 1, j - 1])
        sx = rs[n - i - 1] ** (1.0 / i)
        sm = sm + (1.0 - sx) * pr * s / (i + 1)
        pr = sx * pr
        x[n - i - 1] = sm + pr * e
        s = s - e
        j = j - e
    x[n - 1] = sm + pr * s

    # coordinates come out in a fixed dimension order
    return rng.permutation(x)


def gen_utilizations(
    n: int,
    u_tar: float,
    cap: Optional[float] = None,
    rng: Optional[np.random.Generator] = None,
    max_retries: Optional[int] = None,
) -> List[float]:
    """n utilizations in (0, cap] (cap defaults to 1) summing to u_tar"""
    if n < 1:
        raise PreconditionViolation(f"need at least one task, got n={n}")
    if u_tar <= 0:
        raise PreconditionViolation(f"target utilization must be positive, got {u_tar}")
    limit = 1.0 if cap is None else float(cap)
    if limit <= 0 or u_tar > n * limit + 1e-12:
        raise PreconditionViolation(f"u_tar={u_tar} infeasible for {n} tasks capped at {limit}")
    if n == 1:
        return [float(u_tar)]

    rng = rng if rng is not None else np.random.default_rng(settings.DEFAULT_SEED)
    retries = max_retries if max_retries is not None else settings.UTILIZATION_MAX_RETRIES
    for _ in range(retries):
        values = np.clip(randfixedsum(n, u_tar / limit, rng), 0.0, 1.0) * limit
        if values.min() > 0:
            return values.tolist()
    raise PreconditionViolation(f"no strictly positive utilization vector after {retries} draws")
