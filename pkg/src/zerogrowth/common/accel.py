from __future__ import annotations

import logging
import warnings
from collections.abc import Callable
from typing import Any, TypeVar

log = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., Any])


class PerformanceWarning(UserWarning):
    """Raised once when a kernel falls back to the interpreted implementation."""


try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - depends on the optional `accel` extra
    numba = None
    HAS_NUMBA = False


def jit(func: F) -> F:
    """
    Compile `func` in nopython mode when numba is installed, else return it unchanged.

    Kernels decorated here are written in the numpy subset numba understands, so both paths
    run the same code.
    """

    if HAS_NUMBA:
        return numba.njit(cache=True, nogil=True)(func)  # type: ignore[union-attr]
    return func


_warned = False


def warn_if_interpreted(kernel: str) -> None:
    global _warned
    if HAS_NUMBA or _warned:
        return
    _warned = True
    log.warning("numba unavailable kernel=%s falling back to interpreted loop", kernel)
    warnings.warn(
        f"numba is not available; {kernel} runs interpreted. Install the `accel` extra.",
        PerformanceWarning,
        stacklevel=3,
    )
