from zerogrowth.laplace.identities import (
    MomentIdentity,
    ObstructionReport,
    ObstructionRow,
    moment_identity_residual,
    obstruction_conditions,
    transform_degree,
)
from zerogrowth.laplace.kernel import (
    Kernel,
    SupportParams,
    exponential_moment,
    kernel_moment,
    support_params,
    transform_derivative,
    transform_eval,
)
from zerogrowth.laplace.zeros import TransformZeroData, zeros_in_disk

__all__ = [
    "Kernel",
    "MomentIdentity",
    "ObstructionReport",
    "ObstructionRow",
    "SupportParams",
    "TransformZeroData",
    "exponential_moment",
    "kernel_moment",
    "moment_identity_residual",
    "obstruction_conditions",
    "support_params",
    "transform_degree",
    "transform_derivative",
    "transform_eval",
    "zeros_in_disk",
]
