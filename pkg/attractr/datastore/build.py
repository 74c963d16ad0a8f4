from __future__ import annotations

from typing import TYPE_CHECKING

from attractr import _version
from attractr.datastore._types import CreationMetadata, Dataset
from attractr.datastore.split import split_by_environment
from attractr.dynsys import generate_trajectories, sample_environments

if TYPE_CHECKING:
    from attractr.dynsys import SystemSpec


def generate_dataset(
    spec: SystemSpec,
    *,
    count: int,
    phi_range: tuple[float, float],
    T: int,
    r: float,
    env_seed: int,
    data_seed: int,
    split: tuple[float, float, float] = (0.8, 0.1, 0.1),
    workers: int = 1,
) -> Dataset:
    """Sample environments, integrate them and tag the train / val / test split."""
    envs = sample_environments(count, phi_range, env_seed)
    trajectories = generate_trajectories(spec, envs, T, r, data_seed, workers=workers)

    return Dataset(
        spec=spec,
        trajectories=trajectories,
        splits=split_by_environment([e.env_id for e in envs], split, seed=env_seed),
        metadata=CreationMetadata(
            env_seed=env_seed,
            data_seed=data_seed,
            phi_range=(float(phi_range[0]), float(phi_range[1])),
            noise_scale=r,
            length=T,
            tool_version=_version.version,
        ),
    )
