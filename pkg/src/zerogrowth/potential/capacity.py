"""
Logarithmic capacity as transfinite diameter, cap(disk of radius r) = r and
cap(segment of length L) = L/4, estimated from greedy Leja selections on point clouds.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Optional

import numpy as np

from zerogrowth.common.accel import jit, warn_if_interpreted
from zerogrowth.common.errors import DegenerateInputError, ParameterError
from zerogrowth.common.numerics import power_law_slope, trailing_window
from zerogrowth.potential.clouds import PointCloud

log = logging.getLogger(__name__)

# Exhaustive Fekete search refuses more subsets than this.
MAX_FEKETE_SUBSETS = 5_000_000

_FIT_MIN_POINTS = 8


@jit
def _leja_kernel(points: np.ndarray, n: int) -> np.ndarray:
    m = points.shape[0]
    centre = points.mean()
    chosen = np.empty(n, dtype=np.int64)

    best = 0
    best_dist = abs(points[0] - centre)
    for i in range(1, m):
        d = abs(points[i] - centre)
        if d > best_dist:
            best = i
            best_dist = d
    chosen[0] = best

    log_prod = np.zeros(m)
    alive = np.ones(m, dtype=np.bool_)
    alive[best] = False
    for k in range(1, n):
        last = points[chosen[k - 1]]
        nxt = -1
        top = -np.inf
        for i in range(m):
            if not alive[i]:
                continue
            d = abs(points[i] - last)
            if d > 0.0:
                log_prod[i] += np.log(d)
            else:
                log_prod[i] = -np.inf
            if log_prod[i] > top:
                top = log_prod[i]
                nxt = i
        chosen[k] = nxt
        alive[nxt] = False
    return chosen


def leja_indices(cloud: PointCloud, n: int) -> np.ndarray:
    """
    Greedy Leja selection of n points. The first point is the one farthest from the centroid
    (the max-modulus point of a centred cloud); each next point maximizes the sum of log
    distances to those already chosen. Ties go to the smallest index.
    """

    if n < 1 or n > len(cloud):
        raise ParameterError(f"cannot select {n} points from a cloud of {len(cloud)}")
    warn_if_interpreted("leja_selection")
    return np.asarray(_leja_kernel(cloud.points, n), dtype=np.int64)


def _pair_log_sums(points: np.ndarray) -> np.ndarray:
    """S_k = sum_{i<j<k} log|p_i - p_j| for k = 1..n (nested prefixes)."""

    n = points.size
    sums = np.zeros(n)
    for k in range(1, n):
        sums[k] = sums[k - 1] + float(np.sum(np.log(np.abs(points[k] - points[:k]))))
    return sums


def _prefix_diameters(points: np.ndarray) -> np.ndarray:
    """log d_k for k = 2..n."""

    sums = _pair_log_sums(points)
    k = np.arange(2, points.size + 1)
    return 2.0 * sums[1:] / (k * (k - 1))


@dataclass(frozen=True, eq=False)
class CapacityEstimate:
    n_used: int
    leja_points: np.ndarray
    diameter: float
    cap: float
    log_diameters: np.ndarray


def _extrapolate_log_cap(log_d: np.ndarray) -> float:
    # log d_k = log cap + a log k/(k-1) + b/(k-1) over k in [n/4, n]
    n = log_d.size + 1
    k = np.arange(2, n + 1, dtype=float)
    mask = k >= max(2.0, n / 4.0)
    if mask.sum() < _FIT_MIN_POINTS:
        return float(log_d[-1])
    kk = k[mask]
    design = np.column_stack([np.ones_like(kk), np.log(kk) / (kk - 1.0), 1.0 / (kk - 1.0)])
    coef, *_ = np.linalg.lstsq(design, log_d[mask], rcond=None)
    return float(coef[0])


def capacity_estimate(cloud: PointCloud, n: Optional[int] = None) -> CapacityEstimate:
    """
    Transfinite-diameter capacity of the set sampled by `cloud`.

    `diameter` is d_n of the n Leja points. `cap` extrapolates the nested diameters d_k,
    k in [n/4, n], to k -> infinity; below 8 fit points it equals d_n.
    """

    if len(cloud) < 2:
        raise DegenerateInputError(
            f"cloud {cloud.label!r} collapses to a single point", operation="capacity_estimate"
        )
    n = n if n is not None else max(2, min(64, len(cloud) // 4))
    if n < 2:
        raise ParameterError(f"n must be >= 2, got {n}")
    if n > len(cloud):
        raise ParameterError(f"n={n} exceeds the {len(cloud)} distinct points of {cloud.label!r}")

    idx = leja_indices(cloud, n)
    chosen = cloud.points[idx]
    log_d = _prefix_diameters(chosen)
    log_cap = _extrapolate_log_cap(log_d)
    estimate = CapacityEstimate(
        n_used=n,
        leja_points=chosen,
        diameter=math.exp(float(log_d[-1])),
        cap=math.exp(log_cap),
        log_diameters=log_d,
    )
    log.debug("capacity cloud=%s n=%s d_n=%.6g cap=%.6g", cloud.label, n, estimate.diameter, estimate.cap)
    return estimate


def fekete_bruteforce(cloud: PointCloud, n: int) -> float:
    """max over n-subsets of (prod_{i<j}|p_i - p_j|)^{2/(n(n-1))}, by exhaustion."""

    if n < 2 or n > len(cloud):
        raise ParameterError(f"cannot choose {n} of {len(cloud)} points")
    total = math.comb(len(cloud), n)
    if total > MAX_FEKETE_SUBSETS:
        raise ParameterError(f"{total} subsets exceed the exhaustive limit {MAX_FEKETE_SUBSETS}")

    pts = cloud.points
    with np.errstate(divide="ignore"):
        logdist = np.log(np.abs(pts[:, None] - pts[None, :]))
    pairs = list(itertools.combinations(range(n), 2))
    left = np.array([i for i, _ in pairs])
    right = np.array([j for _, j in pairs])

    best = -math.inf
    combos = itertools.combinations(range(len(cloud)), n)
    while True:
        block = np.array(list(itertools.islice(combos, 100_000)), dtype=np.int64)
        if block.size == 0:
            break
        scores = logdist[block[:, left], block[:, right]].sum(axis=1)
        best = max(best, float(scores.max()))
    return math.exp(2.0 * best / (n * (n - 1)))


@dataclass(frozen=True)
class BetaEstimate:
    beta: float
    ratio_limsup: float
    caps: dict[float, float]
    ratios: dict[float, float]
    skipped: tuple[float, ...]


def beta_exponent(family: Mapping[float, Optional[PointCloud]], n: int = 64) -> BetaEstimate:
    """
    beta = limsup_R log cap(E_R) / log R.

    `beta` is the least-squares slope of log cap(E_R) against log R; `ratio_limsup` is the max
    of log cap/log R over the trailing half of the radii. Empty or single-point E_R are skipped.
    """

    radii = sorted(family)
    if len(radii) < 4:
        raise ParameterError(f"beta needs >= 4 radii, got {len(radii)}")
    if radii[0] <= 1.0:
        raise ParameterError("beta radii must all exceed 1")

    caps: dict[float, float] = {}
    skipped: list[float] = []
    for R in radii:
        cloud = family[R]
        if cloud is None or len(cloud) < 2:
            log.warning("beta skipping empty E_R R=%s", R)
            skipped.append(R)
            continue
        caps[R] = capacity_estimate(cloud, min(n, len(cloud))).cap

    used = [R for R in radii if R in caps]
    if len(used) < 2:
        raise DegenerateInputError(f"only {len(used)} nonempty E_R", operation="beta_exponent")
    ratios = {R: math.log(caps[R]) / math.log(R) for R in used}
    tail = trailing_window(len(used))
    return BetaEstimate(
        beta=power_law_slope(used, [caps[R] for R in used]),
        ratio_limsup=max(ratios[used[i]] for i in tail),
        caps=caps,
        ratios=ratios,
        skipped=tuple(skipped),
    )
