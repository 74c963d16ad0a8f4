from __future__ import annotations

import numpy as np

from attractr.error.exc import ConfigurationError


def add_noise(states: np.ndarray, r: float, seed: int) -> np.ndarray:
    """Return the states plus i.i.d. Gaussian noise of standard deviation r * sigma.

    sigma is the scalar standard deviation over every entry of `states`, so r is
    comparable across environments. The input is never modified.
    """
    if r < 0:
        raise ConfigurationError(f"noise scale must be >= 0, got {r}")

    states = np.asarray(states, dtype=np.float64)

    if r == 0:
        return states.copy()

    sigma = float(np.std(states))
    rng = np.random.default_rng(seed)

    return states + rng.normal(0.0, r * sigma, size=states.shape)
