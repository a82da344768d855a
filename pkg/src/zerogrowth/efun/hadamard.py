"""
Entire functions of finite order presented by their Hadamard data.

    f(z) = a z^m exp(W(z)) prod_j G(z/z_j, p)^{mult_j},   G(w, p) = (1 - w) exp(w + ... + w^p/p)

A FiniteOrderFunction stores a finite truncation of the zero multiset; every quantity computed
here is exact for that truncation. All products are accumulated in log space.
"""

from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Optional

import numpy as np

from zerogrowth.common.errors import ParameterError, RangeError
from zerogrowth.common.numerics import EXP_LIMIT, circle_nodes, power_law_slope, refine_circle_max

log = logging.getLogger(__name__)

# Ratio-matrix size above which log_modulus_phase evaluates in chunks.
_CHUNK_ELEMENTS = 4_000_000


@dataclass(frozen=True)
class ZeroEntry:
    location: complex
    multiplicity: int = 1

    def __post_init__(self) -> None:
        loc = complex(self.location)
        if not (math.isfinite(loc.real) and math.isfinite(loc.imag)):
            raise ParameterError(f"zero location must be finite, got {loc}")
        if loc == 0:
            raise ParameterError("zeros at the origin belong in origin_mult")
        if int(self.multiplicity) < 1:
            raise ParameterError(f"multiplicity must be >= 1, got {self.multiplicity}")
        object.__setattr__(self, "location", loc)
        object.__setattr__(self, "multiplicity", int(self.multiplicity))


@dataclass(frozen=True)
class HarmonicConstant:
    p: int
    lambda_p: float


def harmonic_constant(p: int) -> HarmonicConstant:
    """lambda_p = 1 + 1 + 1/2 + ... + 1/p, with lambda_0 = 1."""

    if p < 0:
        raise ParameterError(f"p must be >= 0, got {p}")
    return HarmonicConstant(p=p, lambda_p=1.0 + math.fsum(1.0 / j for j in range(1, p + 1)))


@dataclass(frozen=True)
class FiniteOrderFunction:
    leading: complex = 1.0
    origin_mult: int = 0
    expoly: tuple[complex, ...] = ()
    genus: int = 0
    zeros: tuple[ZeroEntry, ...] = ()
    # Order of the primary factors in the product; defaults to `genus`. Reduced forms keep
    # the declared genus but multiply plain (1 - z/z_j) factors.
    factor_genus: Optional[int] = None
    identically_zero: bool = field(default=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "leading", complex(self.leading))
        object.__setattr__(self, "expoly", tuple(complex(c) for c in self.expoly))
        object.__setattr__(self, "zeros", tuple(self.zeros))
        if self.origin_mult < 0:
            raise ParameterError(f"origin_mult must be >= 0, got {self.origin_mult}")
        if self.genus < 0:
            raise ParameterError(f"genus must be >= 0, got {self.genus}")
        if len(self.expoly) > self.genus + 1:
            raise ParameterError(
                f"exponential polynomial of degree {len(self.expoly)} exceeds genus+1={self.genus + 1}"
            )
        if self.genus == 0 and self.expoly:
            raise ParameterError("genus 0 functions carry no exponential polynomial")
        fg = self.genus if self.factor_genus is None else int(self.factor_genus)
        if not 0 <= fg <= self.genus:
            raise ParameterError(f"factor_genus must lie in [0, genus], got {fg}")
        object.__setattr__(self, "factor_genus", fg)
        if not self.identically_zero and self.leading == 0:
            raise ParameterError("leading coefficient is zero; use identically_zero=True")

    @classmethod
    def from_roots(
        cls, roots: Iterable[complex], *, leading: complex = 1.0, origin_mult: int = 0
    ) -> FiniteOrderFunction:
        """Genus-zero product a z^m prod(1 - z/r) over the nonzero `roots`."""

        values = [complex(r) for r in roots]
        zeros = tuple(ZeroEntry(r) for r in values if r != 0)
        at_origin = sum(1 for r in values if r == 0)
        return cls(leading=leading, origin_mult=origin_mult + at_origin, zeros=zeros)

    @classmethod
    def zero(cls) -> FiniteOrderFunction:
        return cls(leading=0.0, identically_zero=True)

    @property
    def p(self) -> int:
        return int(self.factor_genus)  # type: ignore[arg-type]

    @cached_property
    def locations(self) -> np.ndarray:
        return np.array([z.location for z in self.zeros], dtype=complex)

    @cached_property
    def multiplicities(self) -> np.ndarray:
        return np.array([z.multiplicity for z in self.zeros], dtype=float)

    @cached_property
    def moduli(self) -> np.ndarray:
        return np.abs(self.locations)

    @property
    def total_multiplicity(self) -> int:
        return int(sum(z.multiplicity for z in self.zeros))

    @property
    def polynomial_degree(self) -> Optional[int]:
        """Degree when f is a polynomial: plain linear factors and no exponential part."""

        if self.identically_zero or self.p or self.expoly:
            return None
        return self.origin_mult + self.total_multiplicity


@dataclass(frozen=True)
class Evaluation:
    value: Optional[complex]
    log_abs: float
    phase: float
    overflow: bool = False


def log_primary_factor(z: np.ndarray | complex, p: int) -> np.ndarray:
    """Principal-branch log G(z, p) = log(1 - z) + z + z^2/2 + ... + z^p/p."""

    if p < 0:
        raise ParameterError(f"p must be >= 0, got {p}")
    w = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.log1p(-w)
    if p:
        power = np.ones_like(w)
        for k in range(1, p + 1):
            power = power * w
            out = out + power / k
    return out


def primary_factor(z: np.ndarray | complex, p: int) -> np.ndarray | complex:
    """Weierstrass primary factor G(z, p); G(z, 0) = 1 - z."""

    logs = log_primary_factor(z, p)
    re = np.real(logs)
    finite_re = re[np.isfinite(re)]
    if finite_re.size and float(finite_re.max()) > EXP_LIMIT:
        worst = float(finite_re.max())
        raise RangeError(
            f"exponent real part {worst:.6g} exceeds {EXP_LIMIT}",
            operation="primary_factor",
            real_part=worst,
        )
    with np.errstate(invalid="ignore"):
        value = np.where(np.isneginf(re), 0.0 + 0.0j, np.exp(logs))
    if np.ndim(z) == 0:
        return complex(value)
    return value


def _exp_polynomial(coeffs: Sequence[complex], z: np.ndarray) -> np.ndarray:
    if not coeffs:
        return np.zeros_like(z)
    return np.polynomial.polynomial.polyval(z, np.concatenate([[0.0], np.asarray(coeffs)]))


def log_modulus_phase(f: FiniteOrderFunction, z: np.ndarray | complex) -> tuple[np.ndarray, np.ndarray]:
    """
    log|f(z)| and an (unwrapped-by-construction) argument of f(z) for an array of points.

    The modulus is a sum of log|.| terms; -inf marks an exact zero.
    """

    pts = np.asarray(z, dtype=complex)
    if f.identically_zero:
        return np.full(pts.shape, -np.inf), np.zeros(pts.shape)

    log_abs = np.full(pts.shape, math.log(abs(f.leading)))
    phase = np.full(pts.shape, cmath.phase(f.leading))

    if f.origin_mult:
        with np.errstate(divide="ignore"):
            log_abs = log_abs + f.origin_mult * np.log(np.abs(pts))
        phase = phase + f.origin_mult * np.angle(pts)

    if f.expoly:
        w = _exp_polynomial(f.expoly, pts)
        log_abs = log_abs + w.real
        phase = phase + w.imag

    if f.zeros:
        flat = pts.reshape(-1)
        locs = f.locations
        mults = f.multiplicities
        acc_abs = np.zeros(flat.shape)
        acc_phase = np.zeros(flat.shape)
        chunk = max(1, _CHUNK_ELEMENTS // max(1, locs.size))
        for start in range(0, flat.size, chunk):
            block = flat[start : start + chunk]
            terms = log_primary_factor(block[:, None] / locs[None, :], f.p)
            acc_abs[start : start + chunk] = (terms.real * mults).sum(axis=1)
            acc_phase[start : start + chunk] = (np.nan_to_num(terms.imag) * mults).sum(axis=1)
        log_abs = log_abs + acc_abs.reshape(pts.shape)
        phase = phase + acc_phase.reshape(pts.shape)

    return log_abs, phase


def evaluate(f: FiniteOrderFunction, z: complex) -> Evaluation:
    """
    Value and log-modulus of f at a single point.

    The value is reconstructed only while log|f| <= 700; above that the log form is returned
    with `overflow` set.
    """

    la, ph = log_modulus_phase(f, np.array([complex(z)]))
    log_abs, phase = float(la[0]), float(ph[0])
    if math.isinf(log_abs) and log_abs < 0:
        return Evaluation(value=0j, log_abs=log_abs, phase=phase)
    if log_abs > EXP_LIMIT:
        log.debug("evaluation overflow z=%s log_abs=%.6g", z, log_abs)
        return Evaluation(value=None, log_abs=log_abs, phase=phase, overflow=True)
    return Evaluation(value=cmath.rect(math.exp(log_abs), phase), log_abs=log_abs, phase=phase)


def zero_count(f: FiniteOrderFunction, R: float) -> int:
    """eta(f, R): stored zeros with 0 < |z_j| <= R, counted with multiplicity."""

    if not R > 0:
        raise ParameterError(f"R must be positive, got {R}")
    if not f.zeros:
        return 0
    return int(f.multiplicities[f.moduli <= R].sum())


def expoly_sup_on_unit_disk(coeffs: Sequence[complex], *, samples: int = 1024) -> float:
    """sup_{|z|<=1} |W(z)|, attained on the circle."""

    if not coeffs:
        return 0.0
    thetas = circle_nodes(samples)
    values = np.abs(_exp_polynomial(coeffs, np.exp(1j * thetas)))

    def modulus(t: float) -> float:
        return float(abs(_exp_polynomial(coeffs, np.array([cmath.exp(1j * t)]))[0]))

    return refine_circle_max(modulus, thetas, values).value


def hadamard_degree(f: FiniteOrderFunction) -> float:
    """
    d*(f) = m + sup_{|z|<=1}|W| + sum_{|z_j|<=1} mult/|z_j|^p + sum_{|z_j|>1} mult/|z_j|^{p+1}.

    The stored zero list is taken as the full zero set.
    """

    degree = float(f.origin_mult) + expoly_sup_on_unit_disk(f.expoly)
    if f.zeros:
        r = f.moduli
        inner = r <= 1.0
        weights = np.where(inner, r ** (-float(f.p)), r ** (-float(f.p + 1)))
        degree += float(weights @ f.multiplicities)
    return degree


def with_origin_factor(f: FiniteOrderFunction, k: int) -> FiniteOrderFunction:
    """z^k f(z)."""

    if k < 0:
        raise ParameterError(f"origin factor exponent must be >= 0, got {k}")
    return replace(f, origin_mult=f.origin_mult + k)


def _exp_series(coeffs: np.ndarray, length: int) -> np.ndarray:
    """Taylor coefficients of exp(c_1 z + c_2 z^2 + ...), truncated to `length`."""

    c = np.zeros(length, dtype=complex)
    c[1 : min(length, coeffs.size + 1)] = coeffs[: length - 1]
    out = np.zeros(length, dtype=complex)
    out[0] = 1.0
    k = np.arange(length)
    for n in range(1, length):
        out[n] = np.dot(k[1 : n + 1] * c[1 : n + 1], out[n - 1 :: -1][:n]) / n
    return out


def taylor_coefficients(f: FiniteOrderFunction, length: int) -> np.ndarray:
    """
    Taylor coefficients a_0 .. a_{length-1} of f at the origin, multiplied out from the zero
    data (linear factors by convolution, exponential parts by the exp-series recursion).
    """

    if length < 1:
        raise ParameterError(f"length must be >= 1, got {length}")
    if f.identically_zero:
        return np.zeros(length, dtype=complex)

    exponent = np.zeros(max(len(f.expoly), f.p), dtype=complex)
    exponent[: len(f.expoly)] += np.asarray(f.expoly, dtype=complex)
    for entry in f.zeros:
        for ell in range(1, f.p + 1):
            exponent[ell - 1] += entry.multiplicity / (ell * entry.location**ell)

    series = f.leading * _exp_series(exponent, length)
    for entry in f.zeros:
        factor = np.array([1.0, -1.0 / entry.location], dtype=complex)
        for _ in range(entry.multiplicity):
            series = np.convolve(series, factor)[:length]

    if f.origin_mult:
        series = np.concatenate([np.zeros(f.origin_mult, dtype=complex), series])[:length]
    return series


def counting_order(f: FiniteOrderFunction, radii: Sequence[float]) -> float:
    """
    Order of the counting function, log eta(f, r) / log r as r grows, estimated by the
    least-squares slope over the radii with eta > 0.
    """

    counts = [zero_count(f, r) for r in radii]
    return power_law_slope(radii, counts)
