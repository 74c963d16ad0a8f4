"""The Lorenz-96 and Kuramoto-Sivashinsky reference systems and data generation."""

from __future__ import annotations

from attractr.dynsys._types import (
    EnvironmentParam,
    SystemKind,
    SystemSpec,
    Trajectory,
)
from attractr.dynsys.environments import sample_environments
from attractr.dynsys.generate import (
    derive_seed,
    generate_trajectories,
    generate_trajectory,
    initial_condition,
    reference_step,
    simulate,
)
from attractr.dynsys.ks import (
    etdrk4_coefficients,
    integrate_ks,
    ks_step,
    wavenumbers,
)
from attractr.dynsys.lorenz96 import (
    integrate_lorenz96,
    lorenz96_advection,
    lorenz96_rhs,
    rk4_step,
)
from attractr.dynsys.noise import add_noise

__all__ = [
    "EnvironmentParam",
    "SystemKind",
    "SystemSpec",
    "Trajectory",
    "add_noise",
    "derive_seed",
    "etdrk4_coefficients",
    "generate_trajectories",
    "generate_trajectory",
    "initial_condition",
    "integrate_ks",
    "integrate_lorenz96",
    "ks_step",
    "lorenz96_advection",
    "lorenz96_rhs",
    "reference_step",
    "rk4_step",
    "sample_environments",
    "simulate",
    "wavenumbers",
]
