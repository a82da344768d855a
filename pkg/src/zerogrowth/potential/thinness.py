from __future__ import annotations

import logging
import math
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from zerogrowth.common.errors import ParameterError
from zerogrowth.common.numerics import power_law_slope
from zerogrowth.potential.capacity import capacity_estimate
from zerogrowth.potential.clouds import PointCloud

log = logging.getLogger(__name__)

Verdict = Literal["nonthin_trend", "thin_trend", "inconclusive"]

EPSILON = 1e-12
TREND_START = 8
SUPERLINEAR_SLOPE = 1.2
GEOMETRIC_RATIO = 0.9


@dataclass(frozen=True)
class ThinnessReport:
    partial_sums: list[tuple[int, float, float]]
    verdict: Verdict
    caps: dict[int, float]


def _scaled_capacity(piece: Optional[PointCloud], k: int, n: int) -> float:
    if piece is None or len(piece) < 2:
        return 0.0
    scaled = PointCloud(piece.points / 2.0**k, piece.label)
    return capacity_estimate(scaled, min(n, len(scaled))).cap


def _verdict(depths: np.ndarray, terms: np.ndarray, cumulative: np.ndarray) -> Verdict:
    start = min(TREND_START, max(1, int(depths[-1]) // 2))
    tail = depths >= start
    tail_terms = terms[tail]

    if np.all(tail_terms == 0.0):
        return "thin_trend"

    positive = tail & (cumulative > 0)
    if positive.sum() >= 3 and depths[-1] > TREND_START:
        slope = power_law_slope(depths[positive], cumulative[positive])
        if slope > SUPERLINEAR_SLOPE:
            return "nonthin_trend"

    nonzero = tail_terms[tail_terms > 0]
    if nonzero.size >= 3 and np.all(nonzero[1:] <= GEOMETRIC_RATIO * nonzero[:-1]):
        return "thin_trend"
    return "inconclusive"


def wiener_partial_sums(
    family: Mapping[int, Optional[PointCloud]], depth_max: int, *, n: int = 64
) -> ThinnessReport:
    """
    Wiener-type series at infinity over dyadic annuli A_k = {2^k <= |z| <= 2^{k+1}}.

    Each piece is brought to unit scale by z -> z/2^k and contributes
    k / max(log(1/cap_k), 1e-12); missing or single-point pieces contribute 0. The verdict is a
    trend reading: superlinear growth of the cumulative sum (log-log slope above 1.2 past depth
    8) reads as non-thin; vanishing or geometrically decaying terms read as thin.
    """

    if depth_max < 1:
        raise ParameterError(f"depth_max must be >= 1, got {depth_max}")

    rows: list[tuple[int, float, float]] = []
    caps: dict[int, float] = {}
    cumulative = 0.0
    for k in range(1, depth_max + 1):
        cap_k = _scaled_capacity(family.get(k), k, n)
        caps[k] = cap_k
        term = 0.0 if cap_k == 0.0 else k / max(math.log(1.0 / cap_k), EPSILON)
        cumulative += term
        rows.append((k, term, cumulative))

    arr = np.array(rows, dtype=float)
    verdict = _verdict(arr[:, 0], arr[:, 1], arr[:, 2])
    log.debug("wiener sums depth_max=%s cumulative=%.6g verdict=%s", depth_max, cumulative, verdict)
    return ThinnessReport(partial_sums=rows, verdict=verdict, caps=caps)
