from zerogrowth.seqlab.bounds import (
    BoundRow,
    GrowthBoundReport,
    HypothesisReport,
    growth_bound_check,
    hypothesis_conditions,
)
from zerogrowth.seqlab.constants import (
    CollapseReport,
    GrowthStats,
    TauEstimate,
    collapse_check,
    ring_constants,
    tau_estimate,
)
from zerogrowth.seqlab.powersums import (
    log_derivative_at_origin,
    powersums_direct,
    powersums_from_logderiv,
)
from zerogrowth.seqlab.reduce import (
    LineGrowth,
    finite_order_reduce,
    find_divergent_line,
    line_family,
    line_growth_sign,
)
from zerogrowth.seqlab.spec import RegionParams, SequenceSpec
from zerogrowth.seqlab.tails import (
    TAIL_COLUMNS,
    DichotomyVerdict,
    TailSums,
    beta_coefficient,
    dichotomy_classify,
    tail_powersum_abs,
    tail_powersum_signed,
    tail_sums,
)

__all__ = [
    "TAIL_COLUMNS",
    "BoundRow",
    "CollapseReport",
    "DichotomyVerdict",
    "GrowthBoundReport",
    "GrowthStats",
    "HypothesisReport",
    "LineGrowth",
    "RegionParams",
    "SequenceSpec",
    "TailSums",
    "TauEstimate",
    "beta_coefficient",
    "collapse_check",
    "dichotomy_classify",
    "find_divergent_line",
    "finite_order_reduce",
    "growth_bound_check",
    "hypothesis_conditions",
    "line_family",
    "line_growth_sign",
    "log_derivative_at_origin",
    "powersums_direct",
    "powersums_from_logderiv",
    "ring_constants",
    "tail_powersum_abs",
    "tail_powersum_signed",
    "tail_sums",
    "tau_estimate",
]
