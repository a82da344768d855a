"""
Truncated Laplace transforms Phi_n(z) = int_0^n e^{zt} phi(t) dt of kernels that are
piecewise constant or piecewise linear (trapezoid interpolation of samples).

On a piece phi(a + s) = c + d s, 0 <= s <= w, every transform integral reduces to
J_j(x) = int_0^1 u^j e^{xu} du with x = z w, so the quadrature is exact per piece.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from zerogrowth.common.errors import DegenerateInputError, ParameterError, RangeError
from zerogrowth.common.numerics import EXP_LIMIT

KernelKind = Literal["piecewise_const", "samples"]

_SERIES_RADIUS = 1.0
_SERIES_TERMS = 28

# (points x pieces) matrix size above which transforms are evaluated in chunks.
_CHUNK_ELEMENTS = 2_000_000


@dataclass(frozen=True)
class Pieces:
    starts: np.ndarray
    widths: np.ndarray
    values: np.ndarray
    slopes: np.ndarray

    @property
    def ends(self) -> np.ndarray:
        return self.starts + self.widths


@dataclass(frozen=True, eq=False)
class Kernel:
    """A real kernel phi, zero for t <= 0, stored as constant-or-linear pieces."""

    kind: KernelKind
    pieces: Pieces
    support_hint: Optional[tuple[float, float]] = None

    @classmethod
    def piecewise_constant(
        cls,
        breaks: Sequence[float],
        values: Sequence[float],
        *,
        support_hint: Optional[tuple[float, float]] = None,
    ) -> Kernel:
        b = np.asarray(breaks, dtype=float)
        v = np.asarray(values, dtype=float)
        if b.ndim != 1 or b.size < 2 or v.size != b.size - 1:
            raise ParameterError("piecewise-constant kernel needs len(values) == len(breaks) - 1 >= 1")
        _check_axis(b, "breaks")
        if not np.all(np.isfinite(v)):
            raise ParameterError("kernel values must be finite")
        pieces = Pieces(starts=b[:-1], widths=np.diff(b), values=v, slopes=np.zeros_like(v))
        return cls(kind="piecewise_const", pieces=pieces, support_hint=support_hint)

    @classmethod
    def samples(
        cls,
        t: Sequence[float],
        phi: Sequence[float],
        *,
        support_hint: Optional[tuple[float, float]] = None,
    ) -> Kernel:
        tt = np.asarray(t, dtype=float)
        ff = np.asarray(phi, dtype=float)
        if tt.ndim != 1 or tt.size < 2 or ff.size != tt.size:
            raise ParameterError("sampled kernel needs matching t and phi with at least 2 samples")
        _check_axis(tt, "t")
        if not np.all(np.isfinite(ff)):
            raise ParameterError("kernel samples must be finite")
        widths = np.diff(tt)
        pieces = Pieces(starts=tt[:-1], widths=widths, values=ff[:-1], slopes=np.diff(ff) / widths)
        return cls(kind="samples", pieces=pieces, support_hint=support_hint)

    @property
    def support_end(self) -> float:
        """Right end of the last piece on which phi is not identically zero."""

        p = self.pieces
        live = (p.values != 0) | (p.slopes != 0)
        if not np.any(live):
            return 0.0
        return float(p.ends[np.flatnonzero(live)[-1]])

    def truncated(self, n: float) -> Pieces:
        """Pieces restricted to [0, n]."""

        if not n > 0:
            raise ParameterError(f"truncation n must be positive, got {n}")
        p = self.pieces
        ends = np.minimum(p.ends, n)
        keep = ends > p.starts
        return Pieces(
            starts=p.starts[keep],
            widths=(ends - p.starts)[keep],
            values=p.values[keep],
            slopes=p.slopes[keep],
        )

    def abs_pieces(self, n: float) -> Pieces:
        """Pieces of |phi| on [0, n], linear pieces split where they change sign."""

        p = self.truncated(n)
        starts, widths, values, slopes = [], [], [], []
        for a, w, c, d in zip(p.starts, p.widths, p.values, p.slopes):
            root = -c / d if d != 0 else -1.0
            if 0.0 < root < w:
                starts += [a, a + root]
                widths += [root, w - root]
                values += [abs(c), 0.0]
                slopes += [-abs(d), abs(d)]
            else:
                sign = 1.0 if (c + d * w / 2.0) >= 0 else -1.0
                starts.append(a)
                widths.append(w)
                values.append(sign * c)
                slopes.append(sign * d)
        return Pieces(
            starts=np.asarray(starts, dtype=float),
            widths=np.asarray(widths, dtype=float),
            values=np.asarray(values, dtype=float),
            slopes=np.asarray(slopes, dtype=float),
        )


def _check_axis(axis: np.ndarray, name: str) -> None:
    if not np.all(np.isfinite(axis)):
        raise ParameterError(f"{name} must be finite")
    if axis[0] < 0:
        raise ParameterError(f"{name} must start at t >= 0 (phi vanishes for t <= 0)")
    if np.any(np.diff(axis) <= 0):
        raise ParameterError(f"{name} must be strictly increasing")


def exp_moment(j: int, x: np.ndarray) -> np.ndarray:
    """J_j(x) = int_0^1 u^j e^{xu} du; power series for |x| < 1, upward recursion beyond."""

    x = np.asarray(x, dtype=complex)
    out = np.empty_like(x)
    small = np.abs(x) < _SERIES_RADIUS

    if np.any(small):
        xs = x[small]
        acc = np.zeros_like(xs)
        power = np.ones_like(xs)
        for k in range(_SERIES_TERMS):
            acc = acc + power / (math.factorial(k) * (k + j + 1))
            power = power * xs
        out[small] = acc

    if np.any(~small):
        xl = x[~small]
        ex = np.exp(xl)
        value = np.expm1(xl) / xl
        for i in range(1, j + 1):
            value = (ex - i * value) / xl
        out[~small] = value
    return out


def _check_overflow(z: np.ndarray, pieces: Pieces, operation: str) -> None:
    if not pieces.starts.size or not z.size:
        return
    top = float(np.max(z.real)) * float(pieces.ends.max())
    if top > EXP_LIMIT:
        raise RangeError(f"Re(z)*mu = {top:.6g} exceeds {EXP_LIMIT}", operation=operation, real_part=top)


def _piece_sum(
    z: np.ndarray | complex,
    p: Pieces,
    inner: Callable[[np.ndarray, Pieces], np.ndarray],
    operation: str,
) -> np.ndarray | complex:
    zz = np.asarray(z, dtype=complex)
    _check_overflow(zz, p, operation)
    flat = zz.reshape(-1)
    out = np.zeros(flat.shape, dtype=complex)
    if p.starts.size:
        chunk = max(1, _CHUNK_ELEMENTS // p.starts.size)
        for start in range(0, flat.size, chunk):
            zc = flat[start : start + chunk, None]
            out[start : start + chunk] = (np.exp(zc * p.starts) * inner(zc * p.widths, p)).sum(axis=1)
    if np.ndim(z) == 0:
        return complex(out[0])
    return out.reshape(zz.shape)


def _value_inner(x: np.ndarray, p: Pieces) -> np.ndarray:
    w, c, d = p.widths, p.values, p.slopes
    return c * w * exp_moment(0, x) + d * w**2 * exp_moment(1, x)


def _derivative_inner(x: np.ndarray, p: Pieces) -> np.ndarray:
    a, w, c, d = p.starts, p.widths, p.values, p.slopes
    return a * c * w * exp_moment(0, x) + (c + a * d) * w**2 * exp_moment(1, x) + d * w**3 * exp_moment(2, x)


def transform_eval(kernel: Kernel, z: np.ndarray | complex, n: float) -> np.ndarray | complex:
    """Phi_n(z) = int_0^n e^{zt} phi(t) dt."""

    return _piece_sum(z, kernel.truncated(n), _value_inner, "transform_eval")


def transform_derivative(kernel: Kernel, z: np.ndarray | complex, n: float) -> np.ndarray | complex:
    """Phi_n'(z) = int_0^n t e^{zt} phi(t) dt."""

    return _piece_sum(z, kernel.truncated(n), _derivative_inner, "transform_derivative")


def kernel_moment(kernel: Kernel, k: int, n: float) -> float:
    """int_0^n t^k phi(t) dt, exact per piece."""

    if k < 0:
        raise ParameterError(f"moment order must be >= 0, got {k}")
    p = kernel.truncated(n)
    a, b, c, d = p.starts, p.ends, p.values, p.slopes
    first = (b ** (k + 1) - a ** (k + 1)) / (k + 1)
    second = (b ** (k + 2) - a ** (k + 2)) / (k + 2) - a * first
    return float(np.sum(c * first + d * second))


def exponential_moment(kernel: Kernel, s_grid: Sequence[float], n: float, *, order: int = 32) -> dict[float, float]:
    """int_0^n e^{|t| s} |phi(t)| dt for each s, by Gauss-Legendre on the pieces of |phi|."""

    nodes, weights = np.polynomial.legendre.leggauss(order)
    p = kernel.abs_pieces(n)
    u = (nodes + 1.0) / 2.0
    t = p.starts[:, None] + p.widths[:, None] * u[None, :]
    phi_abs = p.values[:, None] + p.slopes[:, None] * p.widths[:, None] * u[None, :]
    scale = (p.widths / 2.0)[:, None] * weights[None, :]
    out: dict[float, float] = {}
    for s in s_grid:
        out[float(s)] = float(np.sum(scale * np.exp(abs(s) * t) * phi_abs))
    return out


def _abs_cumulative(p: Pieces, x: float) -> float:
    u = np.clip(x - p.starts, 0.0, p.widths)
    return float(np.sum(np.abs(p.values * u + p.slopes * u**2 / 2.0)))


@dataclass(frozen=True)
class SupportParams:
    sigma: float
    mu_n: float


def support_params(kernel: Kernel, n: float, tol: float = 1e-12) -> SupportParams:
    """
    sigma = largest a with int_0^a |phi| < tol * int_0^n |phi|, and mu_n = smallest a with
    int_a^n |phi| < tol * int_0^n |phi|, located by bisection on the cumulative integral.
    """

    if not tol > 0:
        raise ParameterError(f"tol must be positive, got {tol}")
    p = kernel.abs_pieces(n)
    total = _abs_cumulative(p, n)
    if total == 0.0:
        raise DegenerateInputError(f"phi vanishes a.e. on [0, {n}]", operation="support_params")

    def crossing(level: float) -> float:
        lo, hi = 0.0, float(n)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if _abs_cumulative(p, mid) < level:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-15 * max(1.0, n):
                break
        return 0.5 * (lo + hi)

    sigma = crossing(tol * total)
    mu = crossing((1.0 - tol) * total)
    return SupportParams(sigma=min(sigma, mu), mu_n=mu)
