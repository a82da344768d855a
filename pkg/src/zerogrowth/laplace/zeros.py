"""
Zeros of Phi_n in a disk by argument-principle subdivision of the disk's bounding box.

Rectangle counts are (1/2 pi i) of the contour integral of Phi_n'/Phi_n, taken with composite
Gauss-Legendre on each edge. Rectangles holding a single zero are polished by Newton from
their centre; clusters stop subdividing once their diameter drops to `tol`.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from zerogrowth.common.errors import BoundaryZeroError, NonConvergenceError, ParameterError
from zerogrowth.efun.hadamard import FiniteOrderFunction, ZeroEntry
from zerogrowth.laplace.kernel import (
    Kernel,
    kernel_moment,
    support_params,
    transform_derivative,
    transform_eval,
)

log = logging.getLogger(__name__)

GAUSS_ORDER = 16
MAX_PANELS = 4096
MAX_DEPTH = 60
NEWTON_STEPS = 50
NEWTON_TOL = 1e-12
ORIGIN_TOL = 1e-12
CONJUGATE_TOL = 1e-8

# Split points along the longer side, as fractions of its length; off-centre so that split
# lines avoid the symmetric positions (real axis, imaginary axis) where zeros often sit.
_SPLITS = (0.4771, 0.5381, 0.4219)

# R is scaled by 1 + k * 0.0025 on retry k, so at most by 1%.
_PERTURB_STEP = 0.0025
_PERTURB_ATTEMPTS = 5

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GAUSS_ORDER)


@dataclass(frozen=True)
class Rect:
    x0: float
    x1: float
    y0: float
    y1: float

    @property
    def centre(self) -> complex:
        return complex(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))

    @property
    def diameter(self) -> float:
        return math.hypot(self.x1 - self.x0, self.y1 - self.y0)

    def contains(self, z: complex) -> bool:
        return self.x0 <= z.real <= self.x1 and self.y0 <= z.imag <= self.y1

    def split(self, fraction: float) -> tuple[Rect, Rect]:
        if self.x1 - self.x0 >= self.y1 - self.y0:
            cut = self.x0 + fraction * (self.x1 - self.x0)
            return Rect(self.x0, cut, self.y0, self.y1), Rect(cut, self.x1, self.y0, self.y1)
        cut = self.y0 + fraction * (self.y1 - self.y0)
        return Rect(self.x0, self.x1, self.y0, cut), Rect(self.x0, self.x1, cut, self.y1)


@dataclass(frozen=True)
class TransformZeroData:
    zeros: tuple[ZeroEntry, ...]
    C_n: complex
    alpha_n: int
    sigma: float
    mu: float
    n: float
    R: float

    def to_function(self) -> FiniteOrderFunction:
        """Phi_n(z) = C_n z^alpha e^{z(sigma+mu)/2} prod(1 - z/z_j), truncated to the zeros found."""

        return FiniteOrderFunction(
            leading=self.C_n,
            origin_mult=self.alpha_n,
            expoly=(0.5 * (self.sigma + self.mu),),
            genus=1,
            zeros=self.zeros,
            factor_genus=0,
        )


class _Counter:
    def __init__(self, kernel: Kernel, n: float, mu: float) -> None:
        self.kernel = kernel
        self.n = n
        self.mu = max(mu, 1.0)

    def _edge_integral(self, a: complex, b: complex, panels: int) -> complex:
        s = (np.arange(panels)[:, None] + 0.5 * (_NODES[None, :] + 1.0)) / panels
        z = a + (b - a) * s.reshape(-1)
        phi = np.asarray(transform_eval(self.kernel, z, self.n))
        dphi = np.asarray(transform_derivative(self.kernel, z, self.n))
        if np.any(phi == 0):
            raise BoundaryZeroError(f"Phi_n vanishes on the contour near {a}..{b}", operation="zeros_in_disk")
        ratio = dphi / phi
        if not np.all(np.isfinite(ratio)):
            raise BoundaryZeroError(f"Phi_n'/Phi_n not finite on {a}..{b}", operation="zeros_in_disk")
        weights = np.tile(_WEIGHTS, panels) / (2.0 * panels)
        return (b - a) * complex(np.sum(weights * ratio))

    def _raw(self, rect: Rect, panels: int) -> complex:
        corners = (
            complex(rect.x0, rect.y0),
            complex(rect.x1, rect.y0),
            complex(rect.x1, rect.y1),
            complex(rect.x0, rect.y1),
        )
        total = sum(self._edge_integral(corners[i], corners[(i + 1) % 4], panels) for i in range(4))
        return total / (2j * math.pi)

    def count(self, rect: Rect) -> int:
        side = max(rect.x1 - rect.x0, rect.y1 - rect.y0)
        panels = int(math.ceil(self.mu * side / 2.0)) + 4
        previous = self._raw(rect, panels)
        while panels < MAX_PANELS:
            panels *= 2
            current = self._raw(rect, panels)
            nearest = round(current.real)
            if abs(current - previous) < 1e-4 and abs(current - nearest) < 1e-3:
                if nearest < 0:
                    break
                return int(nearest)
            previous = current
        raise BoundaryZeroError(
            f"count did not settle on {rect} (last {previous:.6g})", operation="zeros_in_disk"
        )


def _newton(kernel: Kernel, n: float, start: complex, multiplicity: int) -> Optional[complex]:
    z = start
    for _ in range(NEWTON_STEPS):
        value = complex(transform_eval(kernel, z, n))
        slope = complex(transform_derivative(kernel, z, n))
        if value == 0:
            return z
        if slope == 0:
            return None
        step = multiplicity * value / slope
        z -= step
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            return None
        if abs(step) <= NEWTON_TOL * max(1.0, abs(z)):
            return z
    return None


def _split_counted(counter: _Counter, rect: Rect, count: int) -> list[tuple[Rect, int]]:
    last: Optional[BoundaryZeroError] = None
    for fraction in _SPLITS:
        try:
            children = rect.split(fraction)
            counts = [counter.count(child) for child in children]
        except BoundaryZeroError as exc:
            last = exc
            continue
        if sum(counts) == count:
            return [(c, k) for c, k in zip(children, counts) if k > 0]
        log.debug("split count mismatch rect=%s parent=%s children=%s", rect, count, counts)
    raise BoundaryZeroError(
        f"no split of {rect} gave consistent counts", operation="zeros_in_disk"
    ) from last


def _isolate(kernel: Kernel, n: float, box: Rect, counter: _Counter, tol: float) -> list[tuple[complex, int]]:
    found: list[tuple[complex, int]] = []
    total = counter.count(box)
    work = [(box, total, 0)] if total > 0 else []
    while work:
        rect, count, depth = work.pop()
        if depth > MAX_DEPTH:
            raise NonConvergenceError(f"subdivision depth exceeded {MAX_DEPTH}", operation="zeros_in_disk")
        if rect.diameter <= tol:
            z = _newton(kernel, n, rect.centre, count)
            found.append((z if z is not None and rect.contains(z) else rect.centre, count))
            continue
        if count == 1:
            z = _newton(kernel, n, rect.centre, 1)
            if z is not None and rect.contains(z):
                found.append((z, 1))
                continue
        work.extend((child, k, depth + 1) for child, k in _split_counted(counter, rect, count))
    log.debug("zeros isolated box=%s count=%s", box, total)
    return found


def _symmetrize(found: list[tuple[complex, int]]) -> list[tuple[complex, int]]:
    real, upper, lower = [], [], 0
    for z, m in found:
        if abs(z.imag) <= CONJUGATE_TOL * max(1.0, abs(z)):
            real.append((complex(z.real, 0.0), m))
        elif z.imag > 0:
            upper.append((z, m))
        else:
            lower += m
    if lower != sum(m for _, m in upper):
        log.warning("conjugate mismatch upper=%s lower=%s", sum(m for _, m in upper), lower)
    out = real + upper + [(z.conjugate(), m) for z, m in upper]
    return sorted(out, key=lambda zm: (abs(zm[0]), zm[0].imag))


def zeros_in_disk(kernel: Kernel, n: float, R: float, tol: float = 1e-8) -> TransformZeroData:
    """
    Zeros of Phi_n with |z| <= R, with multiplicities, conjugate-symmetrized.

    The search box is [-R, R]^2. A zero on the box contour is escaped by enlarging the box by
    0.25% steps (up to 1%); results are filtered back to |z| <= R.
    """

    if not R > 0 or not tol > 0:
        raise ParameterError(f"zeros_in_disk needs R > 0 and tol > 0, got R={R} tol={tol}")
    params = support_params(kernel, n)
    counter = _Counter(kernel, n, params.mu_n)

    found: list[tuple[complex, int]] = []
    for attempt in Retrying(
        stop=stop_after_attempt(_PERTURB_ATTEMPTS),
        retry=retry_if_exception_type(BoundaryZeroError),
        reraise=True,
    ):
        with attempt:
            k = attempt.retry_state.attempt_number - 1
            half = R * (1.0 + k * _PERTURB_STEP)
            if k:
                log.info("contour perturbed attempt=%s R=%s", k + 1, half)
            found = _isolate(kernel, n, Rect(-half, half, -half, half), counter, tol)

    alpha = sum(m for z, m in found if abs(z) <= ORIGIN_TOL)
    kept = [(z, m) for z, m in found if ORIGIN_TOL < abs(z) <= R]
    zeros = tuple(ZeroEntry(z, m) for z, m in _symmetrize(kept))

    if alpha:
        c_n = complex(kernel_moment(kernel, alpha, n) / math.factorial(alpha))
    else:
        c_n = complex(transform_eval(kernel, 0.0, n))
    log.debug("zeros_in_disk n=%s R=%s zeros=%s alpha=%s", n, R, len(zeros), alpha)
    return TransformZeroData(
        zeros=zeros,
        C_n=c_n,
        alpha_n=alpha,
        sigma=params.sigma,
        mu=params.mu_n,
        n=n,
        R=R,
    )
