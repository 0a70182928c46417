"""Random walks on growing graphs: exact and simulated unvisited-vertex counts."""

from ._core import (
    ConfigError,
    Model,
    NumericalError,
    analyze,
    complete_closed_form,
    exact,
    fit_scaling,
    run_case,
    simulate,
    theorem_ids,
    trajectory,
)

__all__ = [
    "ConfigError",
    "Model",
    "NumericalError",
    "analyze",
    "complete_closed_form",
    "exact",
    "fit_scaling",
    "run_case",
    "simulate",
    "theorem_ids",
    "trajectory",
]
