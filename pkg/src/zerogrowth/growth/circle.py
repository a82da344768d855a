"""
Circle growth indicators log C(f, R), ||f||_R and the contour oracles behind them.

Everything is sampled on |z| = R only; by the maximum principle the sup over the disk is
attained there.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from zerogrowth.common.errors import (
    BoundaryZeroError,
    NonConvergenceError,
    ParameterError,
    SingularNodeError,
)
from zerogrowth.common.numerics import EXP_LIMIT, TWO_PI, circle_nodes, refine_circle_max, wrap_phase
from zerogrowth.efun.hadamard import FiniteOrderFunction, log_modulus_phase, zero_count

log = logging.getLogger(__name__)

MAX_NODES = 2**20

# Grid offsets tried in turn, as fractions of one node spacing. A zero sitting on a node of the
# unrotated grid contributes log|1 - e^{i pi/3}| = 0 to the rotated trapezoid sum.
_ROTATIONS = (0.0, 1.0 / 6.0, 0.5, 5.0 / 6.0)

_ALIASING_TOL = 1e-13


@dataclass(frozen=True)
class CircleQuadrature:
    nodes: int = 4096
    rule: Literal["trapezoid"] = "trapezoid"

    def __post_init__(self) -> None:
        if self.nodes < 64 or self.nodes & (self.nodes - 1):
            raise ParameterError(f"nodes must be a power of two >= 64, got {self.nodes}")


@dataclass(frozen=True)
class LogMeanEstimate:
    value: float
    nodes: int
    rotation: float
    error: float


@dataclass(frozen=True)
class SupNorm:
    log_value: float
    theta: float
    log_error: float

    @property
    def value(self) -> float:
        if self.log_value > EXP_LIMIT:
            return math.inf
        return math.exp(self.log_value)


@dataclass(frozen=True)
class WindingCount:
    total: int
    eta_comparable: int
    nodes: int


@dataclass(frozen=True)
class GrowthIndicators:
    R: float
    log_mean: float
    sup_norm: float
    zero_count: int


def _check_radius(R: float) -> None:
    if not (R > 0 and math.isfinite(R)):
        raise ParameterError(f"R must be a positive finite real, got {R}")


def _circle_log_abs(f: FiniteOrderFunction, R: float, thetas: np.ndarray) -> np.ndarray:
    log_abs, _ = log_modulus_phase(f, R * np.exp(1j * thetas))
    return log_abs


def _aliasing_bound(f: FiniteOrderFunction, R: float, nodes: int) -> float:
    """
    Trapezoid error bound for the circle mean of log|f|.

    Harmonic parts (W, the primary-factor polynomials, z^m) are integrated exactly; each zero
    with rho = min(|z_j|/R, R/|z_j|) < 1 contributes at most -log(1 - rho^N)/N.
    """

    if not f.zeros:
        return 0.0
    rho = np.minimum(f.moduli / R, R / f.moduli)
    mults = f.multiplicities
    off = rho < 1.0
    with np.errstate(under="ignore"):
        terms = -np.log1p(-(rho[off] ** nodes)) / nodes
    on_circle = float(mults[~off].sum()) * math.log(2.0) / nodes
    return float(terms @ mults[off]) + on_circle


def _rotated_samples(f: FiniteOrderFunction, R: float, nodes: int) -> tuple[np.ndarray, float]:
    for attempt in Retrying(
        stop=stop_after_attempt(len(_ROTATIONS)),
        retry=retry_if_exception_type(SingularNodeError),
        reraise=True,
    ):
        with attempt:
            k = attempt.retry_state.attempt_number - 1
            rotation = _ROTATIONS[k]
            if k:
                log.debug("grid rotated attempt=%s nodes=%s R=%s", k + 1, nodes, R)
            thetas = circle_nodes(nodes, shift=rotation * TWO_PI / nodes)
            log_abs = _circle_log_abs(f, R, thetas)
            if np.any(np.isneginf(log_abs)):
                raise SingularNodeError(
                    f"log|f| = -inf at a quadrature node (R={R}, nodes={nodes})",
                    operation="log_mean",
                )
            return log_abs, rotation
    raise AssertionError("unreachable")


def log_mean_estimate(f: FiniteOrderFunction, R: float, q: CircleQuadrature | None = None) -> LogMeanEstimate:
    """
    Trapezoid estimate of (1/2pi) int log|f(Re^{it})| dt with its aliasing error bound.

    Nodes double (up to 2^20) while stored zeros close to the circle keep the bound above
    1e-13; nodes that land on a zero trigger a grid rotation.
    """

    _check_radius(R)
    q = q or CircleQuadrature()
    nodes = q.nodes
    bound = _aliasing_bound(f, R, nodes)
    while bound > _ALIASING_TOL and nodes < MAX_NODES:
        nodes *= 2
        bound = _aliasing_bound(f, R, nodes)
    if nodes != q.nodes:
        log.debug("log mean refined R=%s nodes=%s error=%.3g", R, nodes, bound)

    log_abs, rotation = _rotated_samples(f, R, nodes)
    return LogMeanEstimate(value=float(np.mean(log_abs)), nodes=nodes, rotation=rotation, error=bound)


def log_mean(f: FiniteOrderFunction, R: float, q: CircleQuadrature | None = None) -> float:
    return log_mean_estimate(f, R, q).value


def jensen_rhs(f: FiniteOrderFunction, R: float) -> float:
    """log|a| + m log R + sum_{|z_j| <= R} mult_j log(R/|z_j|)."""

    _check_radius(R)
    if f.identically_zero:
        return -math.inf
    total = math.log(abs(f.leading)) + f.origin_mult * math.log(R)
    if f.zeros:
        inside = f.moduli <= R
        total += float(np.log(R / f.moduli[inside]) @ f.multiplicities[inside])
    return total


def _log_derivative_bound(f: FiniteOrderFunction, R: float) -> float:
    """Upper bound for |z f'(z)/f(z)| on |z| = R from the Hadamard data."""

    bound = float(f.origin_mult)
    if f.expoly:
        bound += sum(k * abs(c) * R**k for k, c in enumerate(f.expoly, start=1))
    if f.zeros:
        gap = np.abs(f.moduli - R)
        if np.any(gap == 0.0):
            return math.inf
        per_zero = R / gap
        for k in range(1, f.p + 1):
            per_zero = per_zero + (R / f.moduli) ** k
        bound += float(per_zero @ f.multiplicities)
    return bound


def sup_norm_estimate(f: FiniteOrderFunction, R: float, samples: int = 4096) -> SupNorm:
    """
    log ||f||_R from dense sampling of the circle plus bounded-scalar refinement of the best
    samples. `log_error` is a one-sided bound from the node spacing and a bound on the angular
    derivative of log|f|.
    """

    _check_radius(R)
    if samples < 256:
        raise ParameterError(f"samples must be >= 256, got {samples}")
    thetas = circle_nodes(samples)
    values = _circle_log_abs(f, R, thetas)

    def circle_log_abs(t: float) -> float:
        return float(_circle_log_abs(f, R, np.array([t]))[0])

    best = refine_circle_max(circle_log_abs, thetas, values)
    spacing = TWO_PI / samples
    log_error = _log_derivative_bound(f, R) * spacing / 2.0
    return SupNorm(log_value=best.value, theta=best.theta, log_error=log_error)


def sup_norm(f: FiniteOrderFunction, R: float, samples: int = 4096) -> float:
    return sup_norm_estimate(f, R, samples).value


def argument_principle_count(
    f: FiniteOrderFunction, R: float, q: CircleQuadrature | None = None
) -> WindingCount:
    """
    Winding number of f along |z| = R by phase accrual; the grid doubles until every wrapped
    phase increment is below pi/2.
    """

    _check_radius(R)
    q = q or CircleQuadrature()
    nodes = q.nodes
    while True:
        thetas = circle_nodes(nodes)
        log_abs, phase = log_modulus_phase(f, R * np.exp(1j * thetas))
        if np.any(np.isneginf(log_abs)):
            raise BoundaryZeroError(f"f vanishes on the contour |z|={R}", operation="argument_principle_count")
        steps = wrap_phase(np.diff(np.append(phase, phase[0])))
        if np.all(np.abs(steps) < math.pi / 2):
            break
        if nodes >= MAX_NODES:
            raise NonConvergenceError(
                f"phase increments still >= pi/2 at {nodes} nodes", operation="argument_principle_count"
            )
        nodes *= 2

    total = int(round(float(steps.sum()) / TWO_PI))
    return WindingCount(total=total, eta_comparable=total - f.origin_mult, nodes=nodes)


def growth_indicators(f: FiniteOrderFunction, R: float, q: CircleQuadrature | None = None) -> GrowthIndicators:
    return GrowthIndicators(
        R=R,
        log_mean=log_mean(f, R, q),
        sup_norm=sup_norm(f, R),
        zero_count=zero_count(f, R),
    )
