from __future__ import annotations

import numpy as np

from attractr.dynsys._types import EnvironmentParam
from attractr.error.exc import ConfigurationError


def sample_environments(
    count: int,
    phi_range: tuple[float, float],
    seed: int,
) -> list[EnvironmentParam]:
    """Return `count` environments with phi i.i.d. uniform in `phi_range`.

    Environment ids are assigned 0, ..., count - 1 in sampling order.
    """
    lo, hi = phi_range

    if not lo < hi:
        raise ConfigurationError(f"phi range must satisfy lo < hi, got [{lo}, {hi}]")
    if count < 0:
        raise ConfigurationError(f"environment count must be >= 0, got {count}")

    rng = np.random.default_rng(seed)
    phis = rng.uniform(lo, hi, size=count)

    return [EnvironmentParam(env_id=i, phi=float(phi)) for i, phi in enumerate(phis)]
