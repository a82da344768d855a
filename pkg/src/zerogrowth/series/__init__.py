from zerogrowth.series.grouped import (
    ConvergenceRegion,
    GroupedSeries,
    PartialSum,
    StageResult,
    UniformityReport,
    convergence_region,
    partial_sum,
    pointwise_to_uniform_check,
    q_sequence,
)

__all__ = [
    "ConvergenceRegion",
    "GroupedSeries",
    "PartialSum",
    "StageResult",
    "UniformityReport",
    "convergence_region",
    "partial_sum",
    "pointwise_to_uniform_check",
    "q_sequence",
]
