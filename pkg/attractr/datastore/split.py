from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
from frozendict import frozendict

from attractr.datastore._types import Split
from attractr.error.exc import ConfigurationError

if TYPE_CHECKING:
    from collections.abc import Sequence


def split_by_environment(
    env_ids: Sequence[int],
    fractions: tuple[float, float, float] = (0.8, 0.1, 0.1),
    seed: int = 0,
) -> frozendict[int, Split]:
    """Assign each environment to train, val or test so held-out phi are unseen.

    Counts are rounded with train taking the remainder.
    """
    if len(fractions) != 3 or any(f < 0 for f in fractions):
        raise ConfigurationError(
            f"split must be three non-negative fractions, got {fractions}"
        )
    if not np.isclose(sum(fractions), 1.0):
        raise ConfigurationError(f"split fractions must sum to 1, got {sum(fractions)}")

    n = len(env_ids)
    n_val = int(round(fractions[1] * n))
    n_test = int(round(fractions[2] * n))
    n_train = n - n_val - n_test

    if n_train < 0:
        raise ConfigurationError(
            f"split {fractions} is not realisable for {n} environments"
        )

    order = np.random.default_rng(seed).permutation(n)
    tags = [Split.train] * n_train + [Split.val] * n_val + [Split.test] * n_test

    return frozendict(
        {int(env_ids[i]): tag for i, tag in zip(order, tags)},
    )
