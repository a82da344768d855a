from zerogrowth.growth.circle import (
    MAX_NODES,
    CircleQuadrature,
    GrowthIndicators,
    LogMeanEstimate,
    SupNorm,
    WindingCount,
    argument_principle_count,
    growth_indicators,
    jensen_rhs,
    log_mean,
    log_mean_estimate,
    sup_norm,
    sup_norm_estimate,
)

__all__ = [
    "MAX_NODES",
    "CircleQuadrature",
    "GrowthIndicators",
    "LogMeanEstimate",
    "SupNorm",
    "WindingCount",
    "argument_principle_count",
    "growth_indicators",
    "jensen_rhs",
    "log_mean",
    "log_mean_estimate",
    "sup_norm",
    "sup_norm_estimate",
]
