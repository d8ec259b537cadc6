from ._readout import CalibrationMatrix, calibrate, mitigate_counts
from ._zne import (
    DEFAULT_SCALES,
    DEFAULT_ORDERS,
    fold,
    FoldingPlan,
    ZneFit,
    ZneResult,
    extrapolate,
    bootstrap_std,
    linear_intercept_se,
    zne,
)

__all__ = [
    CalibrationMatrix,
    calibrate,
    mitigate_counts,
    DEFAULT_SCALES,
    DEFAULT_ORDERS,
    fold,
    FoldingPlan,
    ZneFit,
    ZneResult,
    extrapolate,
    bootstrap_std,
    linear_intercept_se,
    zne,
]
