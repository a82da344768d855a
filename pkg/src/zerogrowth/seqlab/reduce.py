from __future__ import annotations

import cmath
import math
from collections.abc import Sequence
from dataclasses import dataclass, replace
from typing import Literal, Optional

import numpy as np

from zerogrowth.common.errors import ParameterError
from zerogrowth.efun.hadamard import FiniteOrderFunction

RayGrowth = Literal["plus_infinity", "minus_infinity", "bounded"]

# (2k+1)! grows fast; k = 4 already gives 362880 rotations.
MAX_LINE_FAMILY_K = 4


def finite_order_reduce(f: FiniteOrderFunction, R_cut: float) -> FiniteOrderFunction:
    """
    Q(z) = a z^m exp(W(z) + sum_{|z_j| <= R_cut} mult_j (z/z_j + ... + z^p/(p z_j^p)))
           * prod_{|z_j| <= R_cut} (1 - z/z_j)^{mult_j}

    The result keeps the declared genus and multiplies plain linear factors (factor genus 0).
    """

    if not R_cut > 0:
        raise ParameterError(f"R_cut must be positive, got {R_cut}")
    kept = tuple(z for z in f.zeros if abs(z.location) <= R_cut)
    p = f.p
    expoly = np.zeros(max(len(f.expoly), p), dtype=complex)
    expoly[: len(f.expoly)] = f.expoly
    for entry in kept:
        for ell in range(1, p + 1):
            expoly[ell - 1] += entry.multiplicity / (ell * entry.location**ell)
    return replace(f, zeros=kept, expoly=tuple(complex(c) for c in expoly), factor_genus=0)


@dataclass(frozen=True)
class LineGrowth:
    theta: float
    positive_ray: RayGrowth
    negative_ray: RayGrowth
    zero_polynomial: bool = False


def _ray_growth(coeffs: Sequence[complex], theta: float, tol: float) -> RayGrowth:
    # Re W(r e^{i theta}) = sum_l Re(c_l e^{i l theta}) r^l; the top nonvanishing term decides.
    for ell in range(len(coeffs), 0, -1):
        lead = (complex(coeffs[ell - 1]) * cmath.exp(1j * ell * theta)).real
        if abs(lead) > tol:
            return "plus_infinity" if lead > 0 else "minus_infinity"
    return "bounded"


def line_growth_sign(W: Sequence[complex], theta: float, *, rtol: float = 1e-12) -> LineGrowth:
    """
    Behaviour of Re W along the line through 0 at angle theta, per ray (theta and theta + pi).
    `W` holds c_1..c_q of W(z) = c_1 z + ... + c_q z^q.
    """

    coeffs = [complex(c) for c in W]
    scale = max((abs(c) for c in coeffs), default=0.0)
    if scale == 0.0:
        return LineGrowth(theta=theta, positive_ray="bounded", negative_ray="bounded", zero_polynomial=True)
    tol = rtol * scale
    return LineGrowth(
        theta=theta,
        positive_ray=_ray_growth(coeffs, theta, tol),
        negative_ray=_ray_growth(coeffs, theta + math.pi, tol),
    )


def line_family(theta0: float, k: int) -> np.ndarray:
    """Directions in [0, pi) of the lines zeta L, zeta^{(2k+1)!} = 1, L the line at angle theta0."""

    if not 0 <= k <= MAX_LINE_FAMILY_K:
        raise ParameterError(f"k must lie in 0..{MAX_LINE_FAMILY_K}, got {k}")
    count = math.factorial(2 * k + 1)
    angles = np.mod(theta0 + 2.0 * math.pi * np.arange(count) / count, math.pi)
    return np.unique(np.round(angles, 12))


def find_divergent_line(W: Sequence[complex], thetas: Sequence[float] | np.ndarray) -> Optional[LineGrowth]:
    """First line of the family along which Re W -> +inf on at least one ray."""

    for theta in thetas:
        growth = line_growth_sign(W, float(theta))
        if "plus_infinity" in (growth.positive_ray, growth.negative_ray):
            return growth
    return None
