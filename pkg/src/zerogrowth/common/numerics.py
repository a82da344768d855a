from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from zerogrowth.common.errors import ParameterError

TWO_PI = 2.0 * math.pi

# Largest real part of a log that is still exponentiated back to a value.
EXP_LIMIT = 700.0


def trailing_window(count: int, fraction: float = 0.5) -> range:
    """
    0-based indices of the trailing `fraction` of a sequence of length `count`.
    Used everywhere a limsup/liminf in n is replaced by a max/min over finitely many terms.
    """

    if count <= 0:
        raise ParameterError("trailing window of an empty sequence")
    if not 0.0 < fraction <= 1.0:
        raise ParameterError(f"window fraction must lie in (0, 1], got {fraction}")
    start = min(count - 1, int(math.floor(count * (1.0 - fraction))))
    return range(start, count)


def wrap_phase(delta: np.ndarray) -> np.ndarray:
    return (delta + math.pi) % TWO_PI - math.pi


def circle_nodes(count: int, *, shift: float = 0.0) -> np.ndarray:
    return shift + TWO_PI * np.arange(count) / count


@dataclass(frozen=True)
class CircleMax:
    theta: float
    value: float


def refine_circle_max(
    fun: Callable[[float], float],
    thetas: np.ndarray,
    values: np.ndarray,
    *,
    candidates: int = 8,
    xatol: float = 1e-10,
) -> CircleMax:
    """
    Polish the largest sampled values of a periodic function.

    Each of the best `candidates` samples is refined by bounded golden-section/Brent search
    on the bracket of its two neighbours; the best refined or sampled value wins.
    """

    finite = np.where(np.isfinite(values), values, -np.inf)
    order = np.argsort(-finite, kind="stable")[: max(1, candidates)]
    step = TWO_PI / len(thetas)

    best_theta = float(thetas[order[0]])
    best_value = float(finite[order[0]])
    for idx in order:
        centre = float(thetas[idx])
        res = minimize_scalar(
            lambda t: -fun(t),
            bounds=(centre - step, centre + step),
            method="bounded",
            options={"xatol": xatol},
        )
        value = -float(res.fun)
        if value > best_value:
            best_theta, best_value = float(res.x) % TWO_PI, value
    return CircleMax(theta=best_theta, value=best_value)


def power_law_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of log y against log x over the positive entries."""

    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    mask = (x > 0) & (y > 0) & np.isfinite(y)
    if mask.sum() < 2:
        return 0.0
    slope, _ = np.polyfit(np.log(x[mask]), np.log(y[mask]), 1)
    return float(slope)


def extrapolate_limit(ns: Sequence[float], values: Sequence[float]) -> float:
    """
    Finite-sample surrogate for lim/limsup of a sequence observed at indices `ns`.

    Nondecreasing sequences with power-law growth (log-log slope ≥ 1/2) read as +inf;
    otherwise the sequence is fitted by L + A/n and the clamped limit max(L, 0) returned.
    """

    n = np.asarray(ns, dtype=float)
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ParameterError("cannot extrapolate an empty sequence")
    if np.any(np.isposinf(v)):
        return math.inf
    if np.all(v == 0.0):
        return 0.0
    if v.size == 1:
        return float(max(v[0], 0.0))

    growing = bool(np.all(np.diff(v) >= 0.0)) and v[-1] > v[0] * (1.0 + 1e-9)
    if growing and power_law_slope(n, v) >= 0.5:
        return math.inf

    design = np.column_stack([np.ones_like(n), 1.0 / n])
    coef, *_ = np.linalg.lstsq(design, v, rcond=None)
    return float(max(coef[0], 0.0))
