from __future__ import annotations

import numpy as np

from attractr.error.exc import PrimitiveShapeError


def energy_spectrum(rollout: np.ndarray) -> np.ndarray:
    """Time-averaged energy E_k = mean_t |FFT(u_t)_k|^2 of all d modes.

    The FFT is unnormalised, so sum_k E_k = d^2 * mean(u^2).
    """
    rollout = np.asarray(rollout, dtype=np.float64)

    if rollout.ndim != 2:
        raise PrimitiveShapeError("energy_spectrum", rollout.shape)

    return np.mean(np.abs(np.fft.fft(rollout, axis=-1)) ** 2, axis=0)


def energy_spectrum_error(reference: np.ndarray, candidate: np.ndarray) -> float:
    """L1 distance between the energy spectra of two `[T, d]` rollouts."""
    reference = np.asarray(reference)
    candidate = np.asarray(candidate)

    if reference.ndim != 2 or candidate.ndim != 2:
        raise PrimitiveShapeError(
            "energy_spectrum_error", reference.shape, candidate.shape
        )
    if reference.shape[-1] != candidate.shape[-1]:
        raise PrimitiveShapeError(
            "energy_spectrum_error", reference.shape, candidate.shape
        )

    return float(
        np.abs(energy_spectrum(reference) - energy_spectrum(candidate)).sum()
    )
