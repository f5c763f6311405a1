"""Fire front propagation and parameter estimation."""

from ._firefront import (
    GridSpec,
    NumericalError,
    Scenario,
    ValidationError,
    __version__,
    estimate,
    evaluate,
    extract_contours,
    forecast,
    generate_measurements,
    load_scenario,
    minimize,
    relative_error,
    signed_distance_from_mask,
    similarity,
    simulate,
)

__all__ = [
    "GridSpec",
    "NumericalError",
    "Scenario",
    "ValidationError",
    "__version__",
    "estimate",
    "evaluate",
    "extract_contours",
    "forecast",
    "generate_measurements",
    "load_scenario",
    "minimize",
    "relative_error",
    "signed_distance_from_mask",
    "similarity",
    "simulate",
]
