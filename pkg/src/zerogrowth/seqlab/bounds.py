from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from zerogrowth.common.errors import ParameterError
from zerogrowth.common.numerics import extrapolate_limit
from zerogrowth.efun.hadamard import hadamard_degree, zero_count
from zerogrowth.seqlab.constants import scaled_log_sup
from zerogrowth.seqlab.spec import RegionParams, SequenceSpec
from zerogrowth.seqlab.tails import tail_powersum_signed

log = logging.getLogger(__name__)

HypothesisSet = Literal["degree", "tail_decay"]


@dataclass(frozen=True)
class BoundRow:
    R: float
    bound: float
    empirical: float
    margin: float


@dataclass(frozen=True)
class GrowthBoundReport:
    rows: list[BoundRow]
    hypotheses: HypothesisSet
    holds: bool


def growth_bound_check(
    s: SequenceSpec,
    params: RegionParams,
    C0: float,
    *,
    hypotheses: HypothesisSet = "degree",
    samples: int = 4096,
) -> GrowthBoundReport:
    """
    Compare C0 (1+R)^{gamma/beta} with max over the trailing window of ||P_n||_R^{1/k_n}.

    `hypotheses` records which condition set the caller relies on: k_n >= d*(P_n) with the
    signed tail condition, or the tail-decay pair of the dichotomy's second alternative.
    """

    if not C0 >= 0:
        raise ParameterError(f"C0 must be nonnegative, got {C0}")
    exponent = params.gamma / params.beta
    rows: list[BoundRow] = []
    for R in s.R_grid:
        bound = C0 * (1.0 + R) ** exponent
        top = max(scaled_log_sup(s, n, R, samples) for n in s.window)
        empirical = math.inf if top > 700.0 else math.exp(top)
        rows.append(BoundRow(R=R, bound=bound, empirical=empirical, margin=bound - empirical))
    holds = all(row.margin >= -1e-9 * max(1.0, row.bound) for row in rows)
    log.debug("growth bound exponent=%.6g holds=%s", exponent, holds)
    return GrowthBoundReport(rows=rows, hypotheses=hypotheses, holds=holds)


@dataclass(frozen=True)
class HypothesisReport:
    signed_tail_order: int
    signed_tail_limits: dict[float, float]
    signed_tail_decays: bool
    witness_ratios: Optional[tuple[float, ...]]
    witness_bounded: Optional[bool]
    degrees: tuple[float, ...]
    degree_ok: bool
    degree_ratio: float


def hypothesis_conditions(s: SequenceSpec, *, tol_zero: float = 1e-3, tol_inf: float = 1e3) -> HypothesisReport:
    """
    Finite-sample evidence for the standing hypotheses over the trailing window:

    - signed tail (1/k_n)|sum_{|z| >= R} 1/z^l| -> 0 as R grows, with l = 1 for genus-zero
      members and l = p+1 when some member has positive factor genus;
    - eta(P_n, R_n)/k_n bounded along the witness radii;
    - k_n >= d*(P_n).
    """

    window = list(s.window)
    order = 1 + max(s.member(n).p for n in window)
    limits: dict[float, float] = {}
    for R in s.R_grid:
        values = [tail_powersum_signed(s, n, R, order) for n in window]
        limits[R] = extrapolate_limit(window, values)
    grid_limits = [limits[R] for R in s.R_grid]
    decays = grid_limits[-1] < tol_zero and bool(np.all(np.diff(grid_limits) <= 1e-12))

    witness_ratios: Optional[tuple[float, ...]] = None
    witness_bounded: Optional[bool] = None
    if s.R_witness is not None:
        witness_ratios = tuple(zero_count(s.member(n), s.R_witness[n - 1]) / s.k_of(n) for n in window)
        witness_bounded = extrapolate_limit(window, witness_ratios) <= tol_inf

    degrees = tuple(hadamard_degree(s.member(n)) for n in window)
    ks = [s.k_of(n) for n in window]
    degree_ok = all(d <= k for d, k in zip(degrees, ks))
    return HypothesisReport(
        signed_tail_order=order,
        signed_tail_limits=limits,
        signed_tail_decays=decays,
        witness_ratios=witness_ratios,
        witness_bounded=witness_bounded,
        degrees=degrees,
        degree_ok=degree_ok,
        degree_ratio=max(d / k for d, k in zip(degrees, ks)),
    )
