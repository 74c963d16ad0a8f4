from __future__ import annotations

from enum import Enum

import attrs
import numpy as np
from attrs import field

from attractr.error.exc import ConfigurationError


class SystemKind(Enum):
    lorenz96 = "lorenz96"
    kuramoto_sivashinsky = "kuramoto-sivashinsky"

    def __str__(self) -> str:
        return self.value


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


@attrs.frozen
class SystemSpec:
    """The governing system and its discretisation.

    `dimension` is the number of L96 components or the number of KS grid points,
    `domain_length` is only meaningful for KS.
    """

    kind: SystemKind
    dimension: int
    dt: float
    spinup_steps: int = 50
    domain_length: float | None = None

    def __attrs_post_init__(self) -> None:
        if self.dt <= 0:
            raise ConfigurationError(f"dt must be positive, got {self.dt}")

        if self.spinup_steps < 0:
            raise ConfigurationError(
                f"spinup_steps must be non-negative, got {self.spinup_steps}"
            )

        if self.kind == SystemKind.lorenz96 and self.dimension < 4:
            raise ConfigurationError(
                f"lorenz96 requires dimension >= 4, got {self.dimension}"
            )

        if self.kind == SystemKind.kuramoto_sivashinsky:
            if not _is_power_of_two(self.dimension):
                raise ConfigurationError(
                    "kuramoto-sivashinsky requires a power of two dimension, "
                    f"got {self.dimension}"
                )
            if self.domain_length is None or self.domain_length <= 0:
                raise ConfigurationError(
                    "kuramoto-sivashinsky requires a positive domain_length, "
                    f"got {self.domain_length}"
                )

    @property
    def is_lorenz96(self) -> bool:
        return self.kind == SystemKind.lorenz96


@attrs.frozen(order=True)
class EnvironmentParam:
    """The governing parameter of one environment.

    `phi` is the forcing F for L96 and the viscosity coefficient for KS.
    """

    env_id: int
    phi: float


def _array_eq(a: np.ndarray | None, b: np.ndarray | None) -> bool:
    if a is None or b is None:
        return a is b
    return a.dtype == b.dtype and np.array_equal(a, b)


@attrs.frozen(hash=False)
class Trajectory:
    """One environment's states after spin-up, shape `[T+1, d]`, float64.

    `states` are the observed (noisy) states, `clean_states` the states of the
    reference integrator before noise was added.
    """

    env: EnvironmentParam
    states: np.ndarray = field(eq=attrs.cmp_using(eq=_array_eq))
    clean_states: np.ndarray | None = field(
        default=None,
        eq=attrs.cmp_using(eq=_array_eq),
    )
    noise_scale: float = 0.0
    seed: int = 0

    @property
    def env_id(self) -> int:
        return self.env.env_id

    @property
    def phi(self) -> float:
        return self.env.phi

    @property
    def length(self) -> int:
        """The post spin-up length T, i.e. the trajectory holds T+1 states."""
        return self.states.shape[0] - 1

    @property
    def dimension(self) -> int:
        return self.states.shape[1]

    @property
    def targets(self) -> np.ndarray:
        """The clean states if recorded, otherwise the observed states."""
        return self.clean_states if self.clean_states is not None else self.states
