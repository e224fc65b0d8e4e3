"""Numerical toolkit for a four-type X-linked inheritance evolution operator.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports its surface.
"""

from ._core import (
    Params,
    __version__,
    apply,
    apply_general,
    axis_trajectory,
    char_coeffs,
    classical_params,
    classify,
    classify_region,
    eigenvalues_closed_form,
    eigenvalues_numeric,
    embed_params,
    fixed_points,
    iterate,
    jacobian,
    params_from_json,
    predict_limit,
    predict_limit_general,
    preset_names,
    preset_params,
    residual,
    simulate_until,
    w0_params,
)

__all__ = [
    "Params",
    "__version__",
    "apply",
    "apply_general",
    "axis_trajectory",
    "char_coeffs",
    "classical_params",
    "classify",
    "classify_region",
    "eigenvalues_closed_form",
    "eigenvalues_numeric",
    "embed_params",
    "fixed_points",
    "iterate",
    "jacobian",
    "params_from_json",
    "predict_limit",
    "predict_limit_general",
    "preset_names",
    "preset_params",
    "residual",
    "simulate_until",
    "w0_params",
]
