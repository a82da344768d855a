from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from zerogrowth.common.errors import ParameterError
from zerogrowth.common.numerics import extrapolate_limit
from zerogrowth.seqlab.spec import SequenceSpec

log = logging.getLogger(__name__)

Alternative = Literal["one", "two", "inconclusive"]

TAIL_COLUMNS = ("n", "R", "m", "S_value")


def _tail(s: SequenceSpec, n: int, R: float) -> tuple[np.ndarray, np.ndarray]:
    if not R > 0:
        raise ParameterError(f"R must be positive, got {R}")
    f = s.member(n)
    if not f.zeros:
        return np.empty(0, dtype=complex), np.empty(0)
    mask = f.moduli >= R
    return f.locations[mask], f.multiplicities[mask]


def tail_powersum_abs(s: SequenceSpec, n: int, R: float, m: int) -> float:
    """(1/k_n) sum_{|z_{n,j}| >= R} mult_j / |z_{n,j}|^m."""

    if m < 1:
        raise ParameterError(f"m must be >= 1, got {m}")
    locs, mults = _tail(s, n, R)
    if not locs.size:
        return 0.0
    return float((np.abs(locs) ** (-float(m))) @ mults) / s.k_of(n)


def _signed_sum(s: SequenceSpec, n: int, R: float, l: int) -> complex:
    if l < 1:
        raise ParameterError(f"l must be >= 1, got {l}")
    locs, mults = _tail(s, n, R)
    if not locs.size:
        return 0j
    return complex(np.sum(mults * locs ** (-l)))


def tail_powersum_signed(s: SequenceSpec, n: int, R: float, l: int) -> float:
    """(1/k_n) |sum_{|z_{n,j}| >= R} mult_j / z_{n,j}^l|."""

    return abs(_signed_sum(s, n, R, l)) / s.k_of(n)


def beta_coefficient(s: SequenceSpec, n: int, R: float, l: int) -> complex:
    """beta_{n,l} = -(1/k_n) sum_{|z_{n,j}| >= R} 1/(l z_{n,j}^l)."""

    return -_signed_sum(s, n, R, l) / (l * s.k_of(n))


@dataclass(frozen=True)
class TailSums:
    S: dict[tuple[int, float, int], float]
    T: dict[tuple[int, float, int], float]
    beta_nl: dict[tuple[int, int], tuple[float, float]]


def tail_sums(s: SequenceSpec, m_max: int, *, radii: Optional[list[float]] = None) -> TailSums:
    """
    S(n, R, m) and T(n, R, l) for every n, R and m, l <= m_max, and beta_{n,l} as
    (magnitude, argument in [0, 2pi)). beta is cut at the witness radius R_n when the sequence
    carries one, else at the smallest grid radius.
    """

    if m_max < 1:
        raise ParameterError(f"m_max must be >= 1, got {m_max}")
    grid = list(radii or s.R_grid)
    S: dict[tuple[int, float, int], float] = {}
    T: dict[tuple[int, float, int], float] = {}
    beta: dict[tuple[int, int], tuple[float, float]] = {}
    for n in range(1, s.N + 1):
        for R in grid:
            for m in range(1, m_max + 1):
                S[(n, R, m)] = tail_powersum_abs(s, n, R, m)
                T[(n, R, m)] = tail_powersum_signed(s, n, R, m)
        cut = s.witness_radius(n) or grid[0]
        for l in range(1, m_max + 1):
            b = beta_coefficient(s, n, cut, l)
            beta[(n, l)] = (abs(b), cmath.phase(b) % (2.0 * math.pi))
    return TailSums(S=S, T=T, beta_nl=beta)


@dataclass(frozen=True)
class DichotomyVerdict:
    alternative: Alternative
    witness_m: Optional[int]
    evidence: list[tuple[int, float, int, float]]
    limits: dict[tuple[int, float], float]
    caveat: str
    signed_decay: dict[int, bool] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.alternative == "two" and self.witness_m is None:
            raise ParameterError("alternative two needs a witness m")


def _window_limit(s: SequenceSpec, R: float, order: int, *, signed: bool) -> tuple[float, list[float]]:
    ns = list(s.window)
    if signed:
        values = [tail_powersum_signed(s, n, R, order) for n in ns]
    else:
        values = [tail_powersum_abs(s, n, R, order) for n in ns]
    return extrapolate_limit(ns, values), values


def dichotomy_classify(
    s: SequenceSpec,
    m_max: int,
    *,
    tol_zero: float = 1e-3,
    tol_inf: float = 1e3,
) -> DichotomyVerdict:
    """
    Decide between the two alternatives for the tails (1/k_n) sum_{|z| >= R} 1/|z|^m.

    For each m the limit in n is extrapolated per R (fit L + A/n over the trailing window, or
    +inf for a growing sequence), then the R-trend is read off the largest radii. Alternative
    two takes the smallest m whose limits at the two largest radii are below `tol_zero`;
    alternative one needs the limit at the largest radius to be +inf or above `tol_inf` for
    every m <= m_max.
    """

    if m_max < 1:
        raise ParameterError(f"m_max must be >= 1, got {m_max}")
    if len(s.R_grid) < 4:
        raise ParameterError(f"dichotomy needs >= 4 radii, got {len(s.R_grid)}")
    if s.N < 8:
        raise ParameterError(f"dichotomy needs N >= 8 functions, got {s.N}")

    evidence: list[tuple[int, float, int, float]] = []
    limits: dict[tuple[int, float], float] = {}
    for m in range(1, m_max + 1):
        for R in s.R_grid:
            limit, values = _window_limit(s, R, m, signed=False)
            limits[(m, R)] = limit
            evidence.extend((n, R, m, v) for n, v in zip(s.window, values))

    top = s.R_grid[-2:]
    witness = next(
        (m for m in range(1, m_max + 1) if all(limits[(m, R)] < tol_zero for R in top)),
        None,
    )

    caveat = s.window_caveat() + f"; R-trend read at R={top[0]:g},{top[1]:g}"
    if witness is not None:
        signed_decay = {}
        for l in range(1, witness):
            limit, _ = _window_limit(s, s.R_grid[-1], l, signed=True)
            signed_decay[l] = limit < tol_zero
        log.info("dichotomy verdict=two witness_m=%s", witness)
        return DichotomyVerdict(
            alternative="two",
            witness_m=witness,
            evidence=evidence,
            limits=limits,
            caveat=caveat,
            signed_decay=signed_decay,
        )

    largest = s.R_grid[-1]
    if all(limits[(m, largest)] > tol_inf for m in range(1, m_max + 1)):
        log.info("dichotomy verdict=one m_max=%s", m_max)
        return DichotomyVerdict(
            alternative="one", witness_m=None, evidence=evidence, limits=limits, caveat=caveat
        )

    log.info("dichotomy verdict=inconclusive m_max=%s", m_max)
    return DichotomyVerdict(
        alternative="inconclusive", witness_m=None, evidence=evidence, limits=limits, caveat=caveat
    )
