"""Floating-point validation layer."""
from .integrate import DP3Params, NumericSolution, PathSpec, dp3_residual, dp3_rhs, integrate_dp3
from .jacobi import JacobiValue, jacobi_eval, jacobi_series, track_sqrt
from .series_eval import (TrigGridSeries, TruncatedSeries, Theta, bind_truncated, eval_series,
                          prefactor)
from .validation import (DecayReport, asymptotic_validation, elliptic_residual,
                         elliptic_residual_profile)

__all__ = [
    "DP3Params", "NumericSolution", "PathSpec", "dp3_residual", "dp3_rhs", "integrate_dp3",
    "JacobiValue", "jacobi_eval", "jacobi_series", "track_sqrt", "TrigGridSeries",
    "TruncatedSeries", "Theta", "bind_truncated", "eval_series", "prefactor", "DecayReport",
    "asymptotic_validation", "elliptic_residual", "elliptic_residual_profile",
]
