"""Spectral solver for the damped-driven 2D Navier-Stokes equations.

Coefficient arrays are full n x n complex arrays in FFT order (row index j1,
column index j2, both 0..n/2-1 then -n/2..-1) holding true Fourier
coefficients of a real field on [0, L)^2.
"""

from ._gvns import (
    CheckpointError,
    ConfigError,
    GvnsError,
    ValidationError,
    advect,
    bounds,
    count_modes,
    dealias_cutoff,
    dimensionless,
    estimate_radius,
    fit_scaling,
    forcing,
    la_thm32,
    load_checkpoint,
    norm,
    save_checkpoint,
    shell_spectrum,
    simulate,
    step,
    to_physical,
    to_spectral,
    velocity,
)

__all__ = [
    "CheckpointError",
    "ConfigError",
    "GvnsError",
    "ValidationError",
    "advect",
    "bounds",
    "count_modes",
    "dealias_cutoff",
    "dimensionless",
    "estimate_radius",
    "fit_scaling",
    "forcing",
    "la_thm32",
    "load_checkpoint",
    "norm",
    "save_checkpoint",
    "shell_spectrum",
    "simulate",
    "step",
    "to_physical",
    "to_spectral",
    "velocity",
]
