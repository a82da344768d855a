from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

import numpy as np

from zerogrowth.common.errors import DegenerateInputError, ParameterError
from zerogrowth.common.numerics import trailing_window

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CoefficientWindow:
    """
    Taylor coefficients a_0..a_M at the origin, held as log-moduli so that coefficients
    like 1/n! stay representable far beyond the float range. The complex coefficients are
    kept alongside when they were given.
    """

    log_abs: np.ndarray
    coeffs: Optional[np.ndarray] = None
    # Known polynomial degree, when the coefficients come from a finite product.
    degree: Optional[int] = None

    def __post_init__(self) -> None:
        arr = np.asarray(self.log_abs, dtype=float)
        if arr.ndim != 1 or arr.size < 3:
            raise ParameterError("a coefficient window needs a_0..a_M with M >= 2")
        if np.any(np.isnan(arr)) or np.any(np.isposinf(arr)):
            raise ParameterError("coefficient log-moduli must be finite or -inf")
        object.__setattr__(self, "log_abs", arr)
        if self.coeffs is not None:
            object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=complex))
        if self.degree is not None and self.degree < 0:
            raise ParameterError(f"polynomial degree must be >= 0, got {self.degree}")

    @classmethod
    def from_coeffs(
        cls, coeffs: Sequence[complex] | np.ndarray, *, degree: Optional[int] = None
    ) -> CoefficientWindow:
        mags = np.abs(np.asarray(coeffs, dtype=complex))
        with np.errstate(divide="ignore"):
            return cls(np.log(mags), coeffs=np.asarray(coeffs, dtype=complex), degree=degree)

    @classmethod
    def from_log_abs(cls, values: Sequence[float] | np.ndarray) -> CoefficientWindow:
        return cls(np.asarray(values, dtype=float))

    @property
    def M(self) -> int:
        return int(self.log_abs.size - 1)


@dataclass(frozen=True)
class OrderEstimate:
    rho: float
    raw_ratio: float
    polynomial: bool
    indices_used: int
    degree: Optional[int] = None


def _polynomial_degree(w: CoefficientWindow, window: range) -> Optional[int]:
    """
    Degree of the window read as a polynomial, or None when the coefficients look entire.

    Exact zeros after the last nonzero coefficient mark a polynomial when that run is longer
    than every run of zeros between nonzero coefficients, so lacunary series like sin z or
    exp(z^3) are not mistaken for one.
    """

    if w.degree is not None:
        return w.degree
    nonzero = np.flatnonzero(np.isfinite(w.log_abs))
    if nonzero.size == 0:
        return 0
    last = int(nonzero[-1])
    if last < window.start or nonzero.size == 1:
        return last
    trailing = w.M - last
    inner = int(np.max(np.diff(nonzero))) - 1
    if trailing > inner:
        return last
    return None


def order_estimate(w: CoefficientWindow, *, window_fraction: float = 0.5) -> OrderEstimate:
    """
    Finite-sample order rho = limsup n log n / log(1/|a_n|).

    Over the trailing window the model log(1/|a_n|) = (1/rho) n log n + c n is fitted by least
    squares; the slope absorbs the type term that makes the plain ratio creep towards rho like
    1/log n. The plain ratio maximum is kept as `raw_ratio`. Polynomials have order 0.
    """

    window = trailing_window(w.log_abs.size, window_fraction)
    degree = _polynomial_degree(w, window)
    if degree is not None:
        log.debug("order estimate polynomial degree=%s", degree)
        return OrderEstimate(rho=0.0, raw_ratio=0.0, polynomial=True, indices_used=0, degree=degree)

    n = np.arange(window.start, window.stop)
    y = -w.log_abs[window.start : window.stop]
    mask = (n >= 2) & np.isfinite(y) & (y > 0)
    if mask.sum() < 3:
        raise DegenerateInputError(
            f"only {int(mask.sum())} qualifying coefficients in the trailing window",
            operation="order_estimate",
        )
    n = n[mask].astype(float)
    y = y[mask]
    nlogn = n * np.log(n)

    raw_ratio = float(np.max(nlogn / y))
    design = np.column_stack([nlogn, n])
    (slope, _), *_ = np.linalg.lstsq(design, y, rcond=None)
    rho = math.inf if slope <= 0 else float(1.0 / slope)
    return OrderEstimate(rho=rho, raw_ratio=raw_ratio, polynomial=False, indices_used=int(n.size))
