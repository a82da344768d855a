from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Optional

from zerogrowth.common.errors import ParameterError
from zerogrowth.common.numerics import trailing_window
from zerogrowth.efun.hadamard import FiniteOrderFunction


def _strictly_increasing(values: Sequence[float]) -> bool:
    return all(b > a for a, b in zip(values, values[1:]))


@dataclass(frozen=True)
class SequenceSpec:
    """
    A finite family P_1..P_N with normalizers k_1..k_N and the radii the analysis runs on.
    Indices `n` used by the seqlab operations are 1-based, as in the formulas.
    """

    functions: tuple[FiniteOrderFunction, ...]
    k: tuple[float, ...]
    R_grid: tuple[float, ...]
    R_witness: Optional[tuple[float, ...]] = None
    window_fraction: float = field(default=0.5, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "functions", tuple(self.functions))
        object.__setattr__(self, "k", tuple(float(v) for v in self.k))
        object.__setattr__(self, "R_grid", tuple(float(v) for v in self.R_grid))
        if self.R_witness is not None:
            object.__setattr__(self, "R_witness", tuple(float(v) for v in self.R_witness))

        if not self.functions:
            raise ParameterError("a sequence needs at least one function")
        if len(self.functions) != len(self.k):
            raise ParameterError(f"{len(self.functions)} functions but {len(self.k)} normalizers")
        if any(not (v > 0 and math.isfinite(v)) for v in self.k):
            raise ParameterError("normalizers k_n must be positive and finite")
        if not self.R_grid or any(not r > 0 for r in self.R_grid):
            raise ParameterError("R_grid must be a nonempty list of positive radii")
        if not _strictly_increasing(self.R_grid):
            raise ParameterError("R_grid must be strictly increasing")
        if self.R_witness is not None:
            if len(self.R_witness) != len(self.functions):
                raise ParameterError("R_witness must have one radius per function")
            if not _strictly_increasing(self.R_witness):
                raise ParameterError("R_witness must be strictly increasing")

    @property
    def N(self) -> int:
        return len(self.functions)

    @property
    def window(self) -> range:
        """1-based indices of the trailing window."""

        w = trailing_window(self.N, self.window_fraction)
        return range(w.start + 1, w.stop + 1)

    def member(self, n: int) -> FiniteOrderFunction:
        self._check_index(n)
        return self.functions[n - 1]

    def k_of(self, n: int) -> float:
        self._check_index(n)
        return self.k[n - 1]

    def witness_radius(self, n: int) -> Optional[float]:
        self._check_index(n)
        return None if self.R_witness is None else self.R_witness[n - 1]

    def window_caveat(self) -> str:
        w = self.window
        return (
            f"finite-sample estimate: limsup/liminf over n replaced by max/min over "
            f"n={w.start}..{w.stop - 1} of N={self.N}"
        )

    def _check_index(self, n: int) -> None:
        if not 1 <= n <= self.N:
            raise ParameterError(f"index n={n} outside 1..{self.N}")


@dataclass(frozen=True)
class RegionParams:
    beta: float
    gamma: float
    tau: float = 0.0

    def __post_init__(self) -> None:
        for name in ("beta", "gamma", "tau"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ParameterError(f"{name} must be finite and nonnegative, got {value}")
        if not self.beta > 0:
            raise ParameterError(f"beta must be positive, got {self.beta}")
