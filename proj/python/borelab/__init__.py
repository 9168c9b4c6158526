"""Traveling bores of the dissipative Peregrine system."""

from ._core import (
    BoreLabError,
    InvalidArgument,
    NumericalFailure,
    alpha,
    bore_speed_t1994,
    classify,
    critical_epsilon,
    equilibria,
    evolve_preset,
    froude_from_tail,
    potential,
    presets,
    profile,
    solitary_amplitude,
    speed_from_amplitude,
)

__all__ = [
    "BoreLabError",
    "InvalidArgument",
    "NumericalFailure",
    "alpha",
    "bore_speed_t1994",
    "classify",
    "critical_epsilon",
    "equilibria",
    "evolve_preset",
    "froude_from_tail",
    "potential",
    "presets",
    "profile",
    "solitary_amplitude",
    "speed_from_amplitude",
]
