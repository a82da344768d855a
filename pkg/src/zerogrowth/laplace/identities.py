from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

import numpy as np

from zerogrowth.common.errors import DegenerateInputError, ParameterError
from zerogrowth.common.numerics import trailing_window
from zerogrowth.laplace.kernel import Kernel, kernel_moment, support_params
from zerogrowth.laplace.zeros import TransformZeroData, zeros_in_disk

log = logging.getLogger(__name__)

# A trailing-window max above this multiple of the leading-window max reads as growth.
BOUNDED_FACTOR = 2.0
# cond2 decays when its last R value is at most this fraction of its first.
DECAY_FACTOR = 0.5


@dataclass(frozen=True)
class MomentIdentity:
    lhs: complex
    rhs: complex
    residual: float
    R_trunc: float
    zero_count: int


def moment_identity_residual(
    kernel: Kernel,
    R_trunc: float,
    *,
    n: Optional[float] = None,
    tol: float = 1e-8,
    zero_data: Optional[TransformZeroData] = None,
) -> MomentIdentity:
    """
    Compare sum_{|z_j| <= R_trunc} mult_j / z_j with (sigma + mu)/2 - int t phi / int phi.

    `n` defaults to the right end of the kernel's support, so Phi is the full transform.
    Zeros already found for the same (n, R_trunc) can be passed as `zero_data`.
    """

    n = n if n is not None else kernel.support_end
    if not n > 0:
        raise DegenerateInputError("kernel has empty support", operation="moment_identity_residual")
    m0 = kernel_moment(kernel, 0, n)
    if m0 == 0.0:
        raise DegenerateInputError("Phi(0) = int phi = 0", operation="moment_identity_residual")
    params = support_params(kernel, n)
    rhs = complex(0.5 * (params.sigma + params.mu_n) - kernel_moment(kernel, 1, n) / m0)

    data = zero_data if zero_data is not None else zeros_in_disk(kernel, n, R_trunc, tol)
    lhs = complex(sum(z.multiplicity / z.location for z in data.zeros))
    residual = abs(lhs - rhs)
    log.debug("moment identity R_trunc=%s zeros=%s residual=%.3e", R_trunc, len(data.zeros), residual)
    return MomentIdentity(lhs=lhs, rhs=rhs, residual=residual, R_trunc=R_trunc, zero_count=len(data.zeros))


def transform_degree(zero_data: TransformZeroData, q: float) -> float:
    """d*(Phi) = sigma + mu + alpha + sum mult |Re 1/z_j| + sum mult / |z_j|^q."""

    if not 1.0 < q < 2.0:
        raise ParameterError(f"q must lie in (1, 2), got {q}")
    total = zero_data.sigma + zero_data.mu + zero_data.alpha_n
    for z in zero_data.zeros:
        total += z.multiplicity * (abs((1.0 / z.location).real) + abs(z.location) ** (-q))
    return float(total)


@dataclass(frozen=True)
class ObstructionRow:
    n_index: int
    R: float
    cond1: float
    cond2: float
    cond3: float


@dataclass(frozen=True)
class ObstructionReport:
    rows: list[ObstructionRow]
    limits: dict[float, tuple[float, float, float]]
    cond1_bounded: bool
    cond2_decays: bool
    cond3_bounded: bool

    @property
    def pattern_holds(self) -> bool:
        """Hypothesis pattern (bounded, -> 0, bounded); evidence only, never a proof."""

        return self.cond1_bounded and self.cond2_decays and self.cond3_bounded


def _conditions(data: TransformZeroData, mu: float, R: float, q: float) -> tuple[float, float, float]:
    if not data.zeros:
        return 0.0, 0.0, 0.0
    locs = np.array([z.location for z in data.zeros], dtype=complex)
    mults = np.array([z.multiplicity for z in data.zeros], dtype=float)
    tail = np.abs(locs) >= R
    if not tail.any():
        return 0.0, 0.0, 0.0
    inv = 1.0 / locs[tail]
    m = mults[tail]
    cond1 = float(np.sum(m * np.abs(inv.real))) / mu
    cond2 = float(abs(np.sum(m * inv))) / mu
    cond3 = float(np.sum(m * np.abs(locs[tail]) ** (-q))) / mu
    return cond1, cond2, cond3


def _bounded(series: np.ndarray, window: range) -> bool:
    if not np.all(np.isfinite(series)):
        return False
    head = series[: window.start] if window.start else series[:1]
    return float(series[window.start :].max()) <= BOUNDED_FACTOR * float(head.max()) + 1e-12


def obstruction_conditions(
    seq: Sequence[TransformZeroData],
    mu: Sequence[float],
    q: float,
    R_grid: Sequence[float],
    *,
    window_fraction: float = 0.5,
) -> ObstructionReport:
    """
    Tail conditions over the zeros of Phi_n, per (n, R):

        cond1 = (1/mu_n) sum_{|z| >= R} |Re 1/z|
        cond2 = (1/mu_n) |sum_{|z| >= R} 1/z|
        cond3 = (1/mu_n) sum_{|z| >= R} 1/|z|^q

    The limit in n is read as the max over the trailing window. The expected pattern is
    cond1 and cond3 bounded in n, cond2 decaying in R.
    """

    if len(seq) != len(mu):
        raise ParameterError(f"{len(seq)} zero sets but {len(mu)} mu values")
    if not seq:
        raise ParameterError("obstruction conditions need at least one zero set")
    if not 1.0 < q < 2.0:
        raise ParameterError(f"q must lie in (1, 2), got {q}")
    if not R_grid or any(R <= 0 for R in R_grid):
        raise ParameterError("R_grid must be a nonempty list of positive radii")
    if any(m <= 0 for m in mu):
        raise ParameterError("mu_n must be positive")

    radii = sorted(float(R) for R in R_grid)
    window = trailing_window(len(seq), window_fraction)
    rows: list[ObstructionRow] = []
    limits: dict[float, tuple[float, float, float]] = {}
    cond1_ok = cond3_ok = True
    for R in radii:
        table = np.array([_conditions(data, m, R, q) for data, m in zip(seq, mu)])
        rows.extend(
            ObstructionRow(n_index=i + 1, R=R, cond1=float(c1), cond2=float(c2), cond3=float(c3))
            for i, (c1, c2, c3) in enumerate(table)
        )
        tail = table[window.start :]
        limits[R] = (float(tail[:, 0].max()), float(tail[:, 1].max()), float(tail[:, 2].max()))
        cond1_ok = cond1_ok and _bounded(table[:, 0], window)
        cond3_ok = cond3_ok and _bounded(table[:, 2], window)

    decay = np.array([limits[R][1] for R in radii])
    if decay.size == 1:
        cond2_ok = bool(decay[0] == 0.0)
    else:
        cond2_ok = bool(np.all(np.diff(decay) <= 1e-15) and decay[-1] <= DECAY_FACTOR * decay[0] + 1e-15)
    log.debug("obstruction flags cond1=%s cond2=%s cond3=%s", cond1_ok, cond2_ok, cond3_ok)
    return ObstructionReport(
        rows=rows,
        limits=limits,
        cond1_bounded=cond1_ok,
        cond2_decays=cond2_ok,
        cond3_bounded=cond3_ok,
    )
