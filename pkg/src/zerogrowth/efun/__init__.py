from zerogrowth.efun.hadamard import (
    Evaluation,
    FiniteOrderFunction,
    HarmonicConstant,
    ZeroEntry,
    counting_order,
    evaluate,
    hadamard_degree,
    harmonic_constant,
    log_modulus_phase,
    log_primary_factor,
    primary_factor,
    taylor_coefficients,
    with_origin_factor,
    zero_count,
)
from zerogrowth.efun.order import CoefficientWindow, OrderEstimate, order_estimate

__all__ = [
    "CoefficientWindow",
    "Evaluation",
    "FiniteOrderFunction",
    "HarmonicConstant",
    "OrderEstimate",
    "ZeroEntry",
    "counting_order",
    "evaluate",
    "hadamard_degree",
    "harmonic_constant",
    "log_modulus_phase",
    "log_primary_factor",
    "order_estimate",
    "primary_factor",
    "taylor_coefficients",
    "with_origin_factor",
    "zero_count",
]
