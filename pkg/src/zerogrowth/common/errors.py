from __future__ import annotations

from typing import Optional


class ZeroGrowthError(Exception):
    """Base class for every error raised by the package."""


class InputError(ZeroGrowthError):
    """A document failed to parse or validate; `field` names the offending location."""

    def __init__(self, message: str, *, field: Optional[str] = None) -> None:
        super().__init__(message)
        self.field = field


class ParameterError(ZeroGrowthError, ValueError):
    pass


class NumericError(ZeroGrowthError):
    def __init__(self, message: str, *, operation: str) -> None:
        super().__init__(f"{operation}: {message}")
        self.operation = operation


class RangeError(NumericError):
    def __init__(self, message: str, *, operation: str, real_part: float) -> None:
        super().__init__(message, operation=operation)
        self.real_part = real_part


class SingularNodeError(NumericError):
    pass


class NonConvergenceError(NumericError):
    pass


class DegenerateInputError(NumericError):
    pass


class BoundaryZeroError(NumericError):
    pass


class OriginZeroError(NumericError):
    pass
