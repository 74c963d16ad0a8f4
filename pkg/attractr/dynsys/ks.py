"""Kuramoto-Sivashinsky on a periodic domain, integrated with ETDRK4.

u_t + u u_x + phi u_xx + u_xxxx = 0 on [0, L), in real FFT space the linear
symbol is phi k^2 - k^4 with k = 2 pi m / L and the nonlinearity is
-1/2 i k FFT(u^2), dealiased with the 2/3 rule.
"""

from __future__ import annotations

from functools import lru_cache
from typing import TYPE_CHECKING

import attrs
import numpy as np

from attractr.error.exc import ConfigurationError, IntegrationDivergedError

if TYPE_CHECKING:
    from numpy.typing import ArrayLike

CONTOUR_POINTS = 16


def wavenumbers(d: int, L: float) -> np.ndarray:
    """Return k = 2 pi m / L for the real FFT modes m = 0, ..., d/2."""
    return 2.0 * np.pi * np.arange(d // 2 + 1) / L


def odd_derivative_wavenumbers(d: int, L: float) -> np.ndarray:
    """As `wavenumbers`, with the Nyquist mode zeroed for odd derivatives."""
    k = wavenumbers(d, L)
    if d % 2 == 0:
        k[-1] = 0.0
    return k


def dealias_mask(d: int) -> np.ndarray:
    """Return the 2/3 rule mask, False for the modes with |m| > d/3."""
    m = np.arange(d // 2 + 1)
    return m <= d / 3


@attrs.frozen(eq=False)
class ETDRK4Coefficients:
    """The per-mode ETDRK4 coefficients for a fixed (d, L, phi, dt)."""

    k: np.ndarray
    mask: np.ndarray
    exp_full: np.ndarray
    exp_half: np.ndarray
    f0: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    f3: np.ndarray


@lru_cache(maxsize=64)
def etdrk4_coefficients(d: int, L: float, phi: float, dt: float) -> ETDRK4Coefficients:
    """Return the ETDRK4 coefficients, computed by contour quadrature.

    The contour is the upper half of a unit circle about each dt * lambda, which
    suffices as the symbol is real.
    """
    if dt <= 0:
        raise ConfigurationError(f"dt must be positive, got {dt}")

    k = wavenumbers(d, L)
    linear = phi * k**2 - k**4

    roots = np.exp(1j * np.pi * (np.arange(CONTOUR_POINTS) + 0.5) / CONTOUR_POINTS)
    lr = dt * linear[:, None] + roots[None, :]
    exp_lr = np.exp(lr)

    f0 = dt * ((np.exp(lr / 2.0) - 1.0) / lr).mean(axis=1).real
    f1 = dt * ((-4.0 - lr + exp_lr * (4.0 - 3.0 * lr + lr**2)) / lr**3).mean(axis=1)
    f2 = dt * ((2.0 + lr + exp_lr * (lr - 2.0)) / lr**3).mean(axis=1)
    f3 = dt * ((-4.0 - 3.0 * lr - lr**2 + exp_lr * (4.0 - lr)) / lr**3).mean(axis=1)

    return ETDRK4Coefficients(
        k=odd_derivative_wavenumbers(d, L),
        mask=dealias_mask(d),
        exp_full=np.exp(dt * linear),
        exp_half=np.exp(0.5 * dt * linear),
        f0=f0,
        f1=f1.real,
        f2=f2.real,
        f3=f3.real,
    )


def ks_nonlinear(u_hat: np.ndarray, k: np.ndarray, mask: np.ndarray, d: int):
    """Return the dealiased spectrum of -u u_x = -1/2 (u^2)_x."""
    u = np.fft.irfft(u_hat * mask, n=d)
    return -0.5j * k * np.fft.rfft(u * u) * mask


def ks_step(
    u_hat: ArrayLike,
    phi: float,
    dt: float,
    L: float,
    *,
    step: int = 0,
) -> np.ndarray:
    """Advance the real FFT spectrum (length d/2+1) by one ETDRK4 step."""
    u_hat = np.asarray(u_hat, dtype=np.complex128)
    d = 2 * (u_hat.shape[-1] - 1)

    c = etdrk4_coefficients(d, float(L), float(phi), float(dt))

    n_u = ks_nonlinear(u_hat, c.k, c.mask, d)
    a = c.exp_half * u_hat + c.f0 * n_u
    n_a = ks_nonlinear(a, c.k, c.mask, d)
    b = c.exp_half * u_hat + c.f0 * n_a
    n_b = ks_nonlinear(b, c.k, c.mask, d)
    e = c.exp_half * a + c.f0 * (2.0 * n_b - n_u)
    n_e = ks_nonlinear(e, c.k, c.mask, d)

    u_hat_next = (
        c.exp_full * u_hat + c.f1 * n_u + 2.0 * c.f2 * (n_a + n_b) + c.f3 * n_e
    )

    if not np.all(np.isfinite(u_hat_next)):
        raise IntegrationDivergedError(step)

    return u_hat_next


def integrate_ks(
    u0: ArrayLike,
    phi: float,
    dt: float,
    L: float,
    steps: int,
) -> np.ndarray:
    """Return the `[steps+1, d]` physical-space trajectory starting at u0."""
    u0 = np.asarray(u0, dtype=np.float64)
    d = u0.shape[-1]

    states = np.empty((steps + 1, *u0.shape), dtype=np.float64)
    states[0] = u0

    u_hat = np.fft.rfft(u0)
    for i in range(1, steps + 1):
        u_hat = ks_step(u_hat, phi, dt, L, step=i)
        states[i] = np.fft.irfft(u_hat, n=d)

    return states
