"""
Grouped power series s(z) = sum_n z^{k_n} P_n(z) and the desk-scale checks that go with them:
partial sums, the uniform-convergence region of a sequence with known growth constants, and
the pointwise-to-uniform argument run on the pair (Q_n, 2k_n), Q_n = z^{k_n} P_n.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from zerogrowth.common.errors import ParameterError
from zerogrowth.common.numerics import EXP_LIMIT
from zerogrowth.efun.hadamard import FiniteOrderFunction, hadamard_degree, log_modulus_phase, with_origin_factor
from zerogrowth.growth.circle import sup_norm_estimate
from zerogrowth.potential.clouds import PointCloud, annulus_pieces
from zerogrowth.potential.thinness import ThinnessReport, wiener_partial_sums
from zerogrowth.seqlab.bounds import HypothesisReport, hypothesis_conditions
from zerogrowth.seqlab.spec import SequenceSpec

log = logging.getLogger(__name__)

TREND_TERMS = 10
CAUCHY_TOL = 1e-8
STAGE_TOL = 0.05
MIN_TERMS = 8


@dataclass(frozen=True)
class GroupedSeries:
    terms: SequenceSpec

    def __post_init__(self) -> None:
        ks = self.terms.k
        if any(k != int(k) or k < 1 for k in ks):
            raise ParameterError("grouped series exponents k_n must be integers >= 1")
        if any(b <= a for a, b in zip(ks, ks[1:])):
            raise ParameterError("grouped series exponents k_n must be strictly increasing")

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(int(k) for k in self.terms.k)

    @property
    def N(self) -> int:
        return self.terms.N

    def q_term(self, n: int) -> FiniteOrderFunction:
        """Q_n = z^{k_n} P_n."""

        return with_origin_factor(self.terms.member(n), self.exponents[n - 1])


def q_sequence(s: GroupedSeries) -> SequenceSpec:
    """The pair (Q_n, 2k_n) as a sequence in its own right."""

    t = s.terms
    return SequenceSpec(
        functions=tuple(s.q_term(n) for n in range(1, s.N + 1)),
        k=tuple(2.0 * k for k in t.k),
        R_grid=t.R_grid,
        R_witness=t.R_witness,
        window_fraction=t.window_fraction,
    )


@dataclass(frozen=True)
class PartialSum:
    value: Optional[complex]
    log_magnitudes: tuple[float, ...]
    tail_trend: tuple[float, ...]
    overflow: bool
    diverging: bool


def _term_logs(s: GroupedSeries, z: complex, N: int) -> tuple[np.ndarray, np.ndarray]:
    log_abs = np.empty(N)
    phase = np.empty(N)
    point = np.array([complex(z)])
    for n in range(1, N + 1):
        la, ph = log_modulus_phase(s.q_term(n), point)
        log_abs[n - 1] = la[0]
        phase[n - 1] = ph[0]
    return log_abs, phase


def _terms(log_abs: np.ndarray, phase: np.ndarray) -> np.ndarray:
    with np.errstate(under="ignore"):
        return np.exp(log_abs) * np.exp(1j * phase)


def partial_sum(s: GroupedSeries, z: complex, N: Optional[int] = None) -> PartialSum:
    """
    sum_{n <= N} z^{k_n} P_n(z) with per-term magnitudes.

    A term with log-magnitude above 700 sets `overflow` and leaves `value` unset. `diverging`
    flags trailing terms of magnitude >= 1 that keep growing.
    """

    N = s.N if N is None else N
    if not 1 <= N <= s.N:
        raise ParameterError(f"N={N} outside 1..{s.N}")

    log_abs, phase = _term_logs(s, z, N)
    overflow = bool(np.any(log_abs > EXP_LIMIT))
    magnitudes = tuple(float(v) for v in log_abs)
    trend = log_abs[-TREND_TERMS:]
    diverging = bool(trend.size >= 2 and np.all(np.diff(trend) > 0) and trend[-1] >= 0.0)

    value: Optional[complex] = None
    if not overflow:
        value = complex(np.sum(_terms(log_abs, phase)))
    else:
        log.debug("partial sum overflow z=%s N=%s", z, N)
    tail = tuple(math.exp(v) if v <= EXP_LIMIT else math.inf for v in trend)
    return PartialSum(value=value, log_magnitudes=magnitudes, tail_trend=tail, overflow=overflow, diverging=diverging)


@dataclass(frozen=True)
class ConvergenceRegion:
    center: complex
    radius: float
    empty: bool = False


def convergence_region(C: float, beta: float, gamma: float, z0: complex = 0j, rho0: float = 1.0) -> ConvergenceRegion:
    """
    Disk |z - z0| < rho0 (C^{-beta/gamma} - 1) of uniform convergence; the whole plane when
    gamma = 0 and C < 1, empty when C >= 1.
    """

    if not (C >= 0 and math.isfinite(C)):
        raise ParameterError(f"C must be finite and >= 0, got {C}")
    if not rho0 > 0:
        raise ParameterError(f"rho0 must be positive, got {rho0}")
    if not beta > 0:
        raise ParameterError(f"beta must be positive, got {beta}")
    if gamma < 0:
        raise ParameterError(f"gamma must be >= 0, got {gamma}")

    center = complex(z0)
    if C >= 1.0:
        return ConvergenceRegion(center=center, radius=0.0, empty=True)
    if gamma == 0.0 or C == 0.0:
        return ConvergenceRegion(center=center, radius=math.inf)
    return ConvergenceRegion(center=center, radius=rho0 * (C ** (-beta / gamma) - 1.0))


@dataclass(frozen=True)
class StageResult:
    passed: bool
    rows: list[dict[str, float]] = field(default_factory=list)
    note: str = ""


@dataclass(frozen=True)
class UniformityReport:
    hypothesis: StageResult
    degree: StageResult
    conclusion: StageResult
    samples_sufficient: bool
    sample_note: str
    q_hypotheses: HypothesisReport
    thinness: Optional[ThinnessReport] = None

    @property
    def all_passed(self) -> bool:
        return self.hypothesis.passed and self.degree.passed and self.conclusion.passed


def _cauchy_settled(log_abs: np.ndarray, phase: np.ndarray) -> tuple[bool, float]:
    if np.any(log_abs > EXP_LIMIT):
        return False, math.inf
    sums = np.cumsum(_terms(log_abs, phase))
    start = len(sums) - max(1, len(sums) // 4)
    spread = float(np.max(np.abs(sums[start:] - sums[-1])))
    return spread <= CAUCHY_TOL * max(1.0, abs(complex(sums[-1]))), spread


def _hypothesis_stage(s: GroupedSeries, samples: Sequence[complex], window: range, tol: float) -> StageResult:
    rows: list[dict[str, float]] = []
    passed = True
    limit = math.log1p(tol)
    for z in samples:
        log_abs, phase = _term_logs(s, z, s.N)
        for n in window:
            scaled = float(log_abs[n - 1]) / (2.0 * s.exponents[n - 1])
            ok = scaled <= limit
            passed = passed and ok
            rows.append({"re": z.real, "im": z.imag, "n": n, "power": _exp_or_inf(scaled)})
        settled, spread = _cauchy_settled(log_abs, phase)
        passed = passed and settled
        rows.append({"re": z.real, "im": z.imag, "n": 0, "cauchy_spread": spread})
    return StageResult(passed=passed, rows=rows)


def _degree_stage(s: GroupedSeries) -> StageResult:
    rows = []
    passed = True
    for n in range(1, s.N + 1):
        d = hadamard_degree(s.terms.member(n))
        k = s.exponents[n - 1]
        passed = passed and d <= k
        rows.append({"n": n, "k": k, "degree": d})
    return StageResult(passed=passed, rows=rows, note="" if passed else "k_n < d*(P_n) for some n")


def _conclusion_stage(
    s: GroupedSeries, R_grid: Sequence[float], window: range, tol: float, samples: int
) -> StageResult:
    rows: list[dict[str, float]] = []
    passed = True
    for R in R_grid:
        q_powers = []
        for n in window:
            k = s.exponents[n - 1]
            log_norm = sup_norm_estimate(s.terms.member(n), R, samples).log_value
            half = log_norm / (2.0 * k)
            p_power = _exp_or_inf(half)
            q_power = _exp_or_inf(0.5 * math.log(R) + half)
            q_powers.append(q_power)
            passed = passed and p_power <= R ** -0.5 + tol
            rows.append(
                {
                    "R": R,
                    "n": n,
                    "p_power": p_power,
                    "p_power_single": _exp_or_inf(log_norm / k),
                    "q_power": q_power,
                }
            )
        decays = bool(np.all(np.diff(q_powers) <= 1e-15)) and q_powers[-1] <= tol
        passed = passed and decays
    return StageResult(passed=passed, rows=rows)


def _exp_or_inf(x: float) -> float:
    return math.inf if x > EXP_LIMIT else math.exp(x)


def pointwise_to_uniform_check(
    s: GroupedSeries,
    E_samples: Sequence[complex],
    R_grid: Sequence[float],
    *,
    tol: float = STAGE_TOL,
    samples: int = 4096,
    cloud: Optional[PointCloud] = None,
    depth_max: int = 12,
) -> UniformityReport:
    """
    Desk-scale run of the pointwise-to-uniform argument on E_samples.

    (a) |Q_n(z)|^{1/(2k_n)} <= 1 + tol on the samples over the trailing window, and partial
        sums settle (Cauchy spread <= 1e-8 over the last quarter of terms) at every sample;
    (b) k_n >= d*(P_n);
    (c) ||P_n||_R^{1/(2k_n)} <= R^{-1/2} + tol and ||Q_n||_R^{1/(2k_n)} decreasing to below tol
        on every R of the grid.

    Finitely many samples never witness non-thinness of E. With a `cloud`, its dyadic Wiener
    sums are attached and a non-thin trend marks the samples sufficient.
    """

    points = [complex(z) for z in E_samples]
    if not points:
        raise ParameterError("E_samples must be nonempty")
    if s.N < MIN_TERMS:
        raise ParameterError(f"pointwise-to-uniform check needs >= {MIN_TERMS} terms, got {s.N}")
    if not R_grid or any(R <= 0 for R in R_grid):
        raise ParameterError("R_grid must be a nonempty list of positive radii")

    window = s.terms.window
    stage_a = _hypothesis_stage(s, points, window, tol)
    stage_b = _degree_stage(s)
    stage_c = _conclusion_stage(s, sorted(R_grid), window, tol, samples)
    q_report = hypothesis_conditions(q_sequence(s))

    thinness: Optional[ThinnessReport] = None
    sufficient = False
    note = f"{len(points)} bounded samples cannot witness non-thinness at infinity"
    if cloud is not None:
        thinness = wiener_partial_sums(annulus_pieces(cloud, depth_max), depth_max)
        sufficient = thinness.verdict == "nonthin_trend"
        note = f"cloud {cloud.label!r} reads {thinness.verdict}"
    log.info(
        "pointwise-to-uniform stages a=%s b=%s c=%s sufficient=%s",
        stage_a.passed,
        stage_b.passed,
        stage_c.passed,
        sufficient,
    )
    return UniformityReport(
        hypothesis=stage_a,
        degree=stage_b,
        conclusion=stage_c,
        samples_sufficient=sufficient,
        sample_note=note,
        q_hypotheses=q_report,
        thinness=thinness,
    )
