from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from attractr.error.exc import ConfigurationError, IntegrationDivergedError

if TYPE_CHECKING:
    from numpy.typing import ArrayLike


def lorenz96_advection(u: np.ndarray) -> np.ndarray:
    """Return (u[i+1] - u[i-2]) * u[i-1] with cyclic indices, along the last axis."""
    return (np.roll(u, -1, axis=-1) - np.roll(u, 2, axis=-1)) * np.roll(u, 1, axis=-1)


def lorenz96_rhs(u: ArrayLike, F: float) -> np.ndarray:
    """Return du/dt of the Lorenz-96 system for the state(s) u.

    The last axis is the cyclic component axis, leading axes are batch axes.

    >>> lorenz96_rhs([1.0, 1.0, 1.0, 1.0, 1.0], 0.0)
    array([-1., -1., -1., -1., -1.])
    """
    u = np.asarray(u, dtype=np.float64)

    if u.ndim == 0 or u.shape[-1] < 4:
        raise ConfigurationError(
            f"lorenz96 requires dimension >= 4, got shape {list(u.shape)}"
        )

    return lorenz96_advection(u) - u + F


def rk4_step(u: ArrayLike, F: float, dt: float, *, step: int = 0) -> np.ndarray:
    """Advance the Lorenz-96 state by one classical Runge-Kutta step.

    `step` is only used to attribute an `IntegrationDivergedError`.
    """
    if dt <= 0:
        raise ConfigurationError(f"dt must be positive, got {dt}")

    u = np.asarray(u, dtype=np.float64)

    k1 = lorenz96_rhs(u, F)
    k2 = lorenz96_rhs(u + 0.5 * dt * k1, F)
    k3 = lorenz96_rhs(u + 0.5 * dt * k2, F)
    k4 = lorenz96_rhs(u + dt * k3, F)

    u_next = u + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    if not np.all(np.isfinite(u_next)):
        raise IntegrationDivergedError(step)

    return u_next


def integrate_lorenz96(u0: ArrayLike, F: float, dt: float, steps: int) -> np.ndarray:
    """Return the `[steps+1, d]` trajectory of rk4 steps starting at u0."""
    u = np.asarray(u0, dtype=np.float64)
    states = np.empty((steps + 1, *u.shape), dtype=np.float64)
    states[0] = u

    for i in range(1, steps + 1):
        u = rk4_step(u, F, dt, step=i)
        states[i] = u

    return states
