from __future__ import annotations

from enum import Enum
from typing import TYPE_CHECKING

import attrs
import numpy as np
from attrs import field
from frozendict import frozendict

from attractr.dynsys import SystemSpec, Trajectory
from attractr.error.exc import ConfigurationError

if TYPE_CHECKING:
    from collections.abc import Iterator


class Split(Enum):
    train = "train"
    val = "val"
    test = "test"

    def __str__(self) -> str:
        return self.value


@attrs.frozen
class CreationMetadata:
    env_seed: int
    data_seed: int
    phi_range: tuple[float, float]
    noise_scale: float
    length: int
    tool_version: str


@attrs.frozen(hash=False)
class Dataset:
    """An immutable collection of equally shaped trajectories, one per environment."""

    spec: SystemSpec
    trajectories: tuple[Trajectory, ...] = field(converter=tuple)
    splits: frozendict[int, Split] = field(converter=frozendict)
    metadata: CreationMetadata

    def __attrs_post_init__(self) -> None:
        env_ids = [t.env_id for t in self.trajectories]

        if len(set(env_ids)) != len(env_ids):
            raise ConfigurationError("dataset environment ids must be unique")

        shapes = {t.states.shape for t in self.trajectories}
        if len(shapes) > 1:
            raise ConfigurationError(
                f"dataset trajectories must share a shape, got {sorted(shapes)}"
            )

        if shapes and next(iter(shapes))[1] != self.spec.dimension:
            raise ConfigurationError(
                "dataset trajectories do not match the system dimension "
                f"{self.spec.dimension}"
            )

        if missing := set(env_ids) - set(self.splits):
            raise ConfigurationError(f"environments without a split: {sorted(missing)}")

    def __len__(self) -> int:
        return len(self.trajectories)

    def __iter__(self) -> Iterator[Trajectory]:
        return iter(self.trajectories)

    @property
    def env_ids(self) -> list[int]:
        return [t.env_id for t in self.trajectories]

    @property
    def length(self) -> int:
        """The post spin-up length T shared by every trajectory."""
        if not self.trajectories:
            return self.metadata.length
        return self.trajectories[0].length

    def trajectory(self, env_id: int) -> Trajectory:
        for trajectory in self.trajectories:
            if trajectory.env_id == env_id:
                return trajectory
        raise KeyError(env_id)

    def subset(self, split: Split) -> Dataset:
        """Return the dataset restricted to the environments of the given split."""
        trajectories = [t for t in self.trajectories if self.splits[t.env_id] == split]
        return attrs.evolve(
            self,
            trajectories=trajectories,
            splits={t.env_id: split for t in trajectories},
        )


@attrs.frozen(eq=False)
class Window:
    """K+1 consecutive states of one trajectory, starting at index `start`.

    `states` and `targets` are read-only views into the trajectory, `targets` are
    the clean states when recorded.
    """

    env_id: int
    phi: float
    start: int
    states: np.ndarray
    targets: np.ndarray

    @property
    def K(self) -> int:
        return self.states.shape[0] - 1


def window_of(trajectory: Trajectory, start: int, K: int) -> Window:
    stop = start + K + 1

    if start < 0 or stop > trajectory.states.shape[0]:
        raise ConfigurationError(
            f"window [{start}, {stop}) is outside a trajectory of length "
            f"{trajectory.length}"
        )

    states = trajectory.states[start:stop]
    targets = trajectory.targets[start:stop]
    states.flags.writeable = False
    targets.flags.writeable = False

    return Window(
        env_id=trajectory.env_id,
        phi=trajectory.phi,
        start=start,
        states=states,
        targets=targets,
    )


def stack_windows(windows: list[Window]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (states [B, K+1, d], targets [B, K+1, d], phis [B]) of the windows."""
    states = np.stack([w.states for w in windows])
    targets = np.stack([w.targets for w in windows])
    phis = np.array([w.phi for w in windows], dtype=np.float64)
    return states, targets, phis
