"""
Zero power sums s_l = sum_j mult_j / z_j^l from Taylor data at the origin.

For f = a exp(W) prod (1 - z/z_j) the series log f(z) = log a + W(z) - sum_l s_l z^l / l, so
the power sums follow from the coefficients of log f, which in turn follow from those of f by
the recursion behind f' = f (log f)'.
"""

from __future__ import annotations

import logging

import numpy as np

from zerogrowth.common.errors import OriginZeroError, ParameterError
from zerogrowth.efun.hadamard import FiniteOrderFunction, taylor_coefficients
from zerogrowth.efun.order import CoefficientWindow

log = logging.getLogger(__name__)

_PRECISION_FLOOR = 1e-12


def log_series(coeffs: np.ndarray, length: int) -> np.ndarray:
    """
    Coefficients g_1..g_{length} of log(f/f(0)) from a_0..a_{length}:
    g_k = (k a_k - sum_{j<k} j g_j a_{k-j}) / (k a_0).
    """

    a = np.asarray(coeffs, dtype=complex)
    if a.size < length + 1:
        raise ParameterError(f"need {length + 1} coefficients, got {a.size}")
    g = np.zeros(length + 1, dtype=complex)
    for k in range(1, length + 1):
        j = np.arange(1, k)
        correction = np.sum(j * g[1:k] * a[k - j]) if k > 1 else 0j
        g[k] = (k * a[k] - correction) / (k * a[0])
    return g[1:]


def powersums_from_logderiv(f: FiniteOrderFunction | CoefficientWindow, l_max: int) -> np.ndarray:
    """
    s_1..s_{l_max} recovered from Taylor coefficients at 0.

    A FiniteOrderFunction must be in plain-product form (factor genus 0); its coefficients are
    multiplied out from the zero data and its exponential polynomial is subtracted from log f.
    A CoefficientWindow is read as a pure product a prod(1 - z/z_j).
    """

    if l_max < 1:
        raise ParameterError(f"l_max must be >= 1, got {l_max}")

    expoly = np.zeros(l_max, dtype=complex)
    if isinstance(f, FiniteOrderFunction):
        if f.identically_zero or f.origin_mult >= 1:
            raise OriginZeroError(
                f"f vanishes at the origin (m={f.origin_mult})", operation="powersums_from_logderiv"
            )
        if f.p != 0:
            raise ParameterError(
                f"power sums need plain linear factors; factor genus is {f.p} (reduce the function first)"
            )
        coeffs = taylor_coefficients(f, 4 * l_max)
        head = np.asarray(f.expoly[:l_max], dtype=complex)
        expoly[: head.size] = head
    else:
        if f.coeffs is None:
            raise ParameterError("coefficient window carries moduli only; complex coefficients are required")
        coeffs = np.asarray(f.coeffs, dtype=complex)
        if coeffs.size < l_max + 1:
            raise ParameterError(f"window holds {coeffs.size} coefficients, need {l_max + 1}")
        if coeffs[0] == 0:
            raise OriginZeroError("a_0 = 0", operation="powersums_from_logderiv")

    if abs(coeffs[0]) < _PRECISION_FLOOR:
        log.warning("power sums lose precision |f(0)|=%.3g", abs(coeffs[0]))

    g = log_series(coeffs, l_max)
    ell = np.arange(1, l_max + 1)
    return -ell * (g - expoly)


def powersums_direct(f: FiniteOrderFunction, l_max: int) -> np.ndarray:
    """s_l by summing mult_j / z_j^l over the stored zeros."""

    if l_max < 1:
        raise ParameterError(f"l_max must be >= 1, got {l_max}")
    if not f.zeros:
        return np.zeros(l_max, dtype=complex)
    inv = 1.0 / f.locations
    return np.array([np.sum(f.multiplicities * inv**l) for l in range(1, l_max + 1)], dtype=complex)


def log_derivative_at_origin(f: FiniteOrderFunction) -> complex:
    """-f'(0)/f(0), which equals s_1 for a plain product."""

    a = taylor_coefficients(f, 2)
    if a[0] == 0:
        raise OriginZeroError("f(0) = 0", operation="log_derivative_at_origin")
    return complex(-a[1] / a[0])
