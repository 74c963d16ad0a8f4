from __future__ import annotations

import numpy as np
from scipy.ndimage import gaussian_filter1d

from attractr.error.exc import ConfigurationError


def gaussian_blur(states: np.ndarray, std: float) -> np.ndarray:
    """Blur every frame along the periodic spatial axis, `std` in grid units."""
    if std < 0:
        raise ConfigurationError(f"blur std must be >= 0, got {std}")

    states = np.asarray(states, dtype=np.float64)

    if std == 0:
        return states.copy()

    return gaussian_filter1d(states, sigma=std, axis=-1, mode="wrap")
