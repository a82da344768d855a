from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

import numpy as np

from zerogrowth.common.errors import ParameterError
from zerogrowth.common.numerics import trailing_window
from zerogrowth.efun.hadamard import hadamard_degree, zero_count
from zerogrowth.growth.circle import CircleQuadrature, log_mean, sup_norm_estimate
from zerogrowth.seqlab.spec import SequenceSpec

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GrowthStats:
    C0_est: float
    C0_star_est: float
    eta_scaled: dict[float, float]
    note: str
    scaled_means: tuple[float, ...] = ()


@dataclass(frozen=True)
class TauEstimate:
    tau: float
    ratios: dict[float, float]
    eta_within_tau: dict[float, bool]


@dataclass(frozen=True)
class CollapseReport:
    C0_est: float
    degree_ok: bool
    norms: dict[float, tuple[float, ...]]
    monotone: dict[float, bool]
    collapses: bool


def scaled_log_mean(s: SequenceSpec, n: int, R: float, q: Optional[CircleQuadrature] = None) -> float:
    """log C(P_n, R)^{1/k_n}."""

    return log_mean(s.member(n), R, q) / s.k_of(n)


def scaled_log_sup(s: SequenceSpec, n: int, R: float, samples: int = 4096) -> float:
    """log ||P_n||_R^{1/k_n}."""

    return sup_norm_estimate(s.member(n), R, samples).log_value / s.k_of(n)


def _exp(x: float) -> float:
    return math.inf if x > 700.0 else math.exp(x)


def ring_constants(s: SequenceSpec, q: Optional[CircleQuadrature] = None) -> GrowthStats:
    """C_0, C_0* and eta(R) with limsup/liminf over n taken as max/min over the trailing window."""

    window = s.window
    means = tuple(_exp(scaled_log_mean(s, n, 1.0, q)) for n in window)
    eta_scaled = {R: max(zero_count(s.member(n), R) / s.k_of(n) for n in window) for R in s.R_grid}
    stats = GrowthStats(
        C0_est=max(means),
        C0_star_est=min(means),
        eta_scaled=eta_scaled,
        note=s.window_caveat(),
        scaled_means=means,
    )
    log.debug("ring constants C0=%.6g C0*=%.6g window=%s", stats.C0_est, stats.C0_star_est, window)
    return stats


def tau_estimate(
    s: SequenceSpec,
    q: Optional[CircleQuadrature] = None,
    *,
    radii: Optional[Sequence[float]] = None,
    slack: float = 1e-9,
) -> TauEstimate:
    """
    tau = liminf_R limsup_n log C(P_n, R)^{1/k_n} / log R over radii > 1, with the desk form of
    the bound eta(R) <= tau checked at every radius of the grid.
    """

    grid = [r for r in (radii or s.R_grid) if r > 1.0]
    if not grid:
        raise ParameterError("tau needs at least one radius > 1")
    window = s.window
    ratios = {R: max(scaled_log_mean(s, n, R, q) for n in window) / math.log(R) for R in grid}
    tail = trailing_window(len(grid))
    tau = min(ratios[grid[i]] for i in tail)
    eta = ring_constants(s, q).eta_scaled
    return TauEstimate(
        tau=tau,
        ratios=ratios,
        eta_within_tau={R: value <= tau + slack for R, value in eta.items()},
    )


def collapse_check(s: SequenceSpec, q: Optional[CircleQuadrature] = None, *, samples: int = 4096) -> CollapseReport:
    """
    Desk form of the collapse property: when C(P_n, 1)^{1/k_n} -> 0 and k_n >= d*(P_n), the sup
    norms ||P_n||_R^{1/k_n} fall monotonically towards 0 at every R of the grid.
    """

    stats = ring_constants(s, q)
    window = s.window
    degree_ok = all(hadamard_degree(s.member(n)) <= s.k_of(n) for n in window)

    norms: dict[float, tuple[float, ...]] = {}
    monotone: dict[float, bool] = {}
    for R in s.R_grid:
        values = tuple(_exp(scaled_log_sup(s, n, R, samples)) for n in window)
        norms[R] = values
        monotone[R] = bool(np.all(np.diff(values) <= 0.0)) and values[-1] < values[0]

    collapses = degree_ok and all(monotone.values()) and stats.scaled_means[-1] < stats.scaled_means[0]
    return CollapseReport(
        C0_est=stats.C0_est,
        degree_ok=degree_ok,
        norms=norms,
        monotone=monotone,
        collapses=collapses,
    )
