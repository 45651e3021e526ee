"""Oscillator spectra in flat, hyperbolic and spherical space."""

from ._core import (
    ConfigurationError,
    Error,
    NoBoundStateError,
    NoClassicalRegionError,
    QuadratureFailure,
    bound_state_count,
    contour_term,
    exact_epsilon,
    naive_wkb_epsilon,
    oracle_solve,
    solve_epsilon,
)

__all__ = [
    "ConfigurationError",
    "Error",
    "NoBoundStateError",
    "NoClassicalRegionError",
    "QuadratureFailure",
    "bound_state_count",
    "contour_term",
    "exact_epsilon",
    "naive_wkb_epsilon",
    "oracle_solve",
    "solve_epsilon",
]
