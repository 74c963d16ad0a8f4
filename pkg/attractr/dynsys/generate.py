from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import TYPE_CHECKING

import numpy as np

from attractr.dynsys._types import SystemKind, Trajectory
from attractr.dynsys.ks import integrate_ks, ks_step
from attractr.dynsys.lorenz96 import integrate_lorenz96, rk4_step
from attractr.dynsys.noise import add_noise
from attractr.error.exc import ConfigurationError, IntegrationDivergedError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from attractr.dynsys._types import EnvironmentParam, SystemSpec


def derive_seed(*entropy: int) -> int:
    """Return a 32 bit seed derived from the given integers, e.g. (seed, env_id)."""
    return int(np.random.SeedSequence(list(entropy)).generate_state(1)[0])


def initial_condition(spec: SystemSpec, rng: np.random.Generator) -> np.ndarray:
    """Return a random initial state, standard normal (L96) or U[-pi, pi] (KS)."""
    if spec.kind == SystemKind.lorenz96:
        return rng.standard_normal(spec.dimension)

    return rng.uniform(-np.pi, np.pi, size=spec.dimension)


def simulate(spec: SystemSpec, phi: float, u0: np.ndarray, steps: int) -> np.ndarray:
    """Return the `[steps+1, d]` reference trajectory from u0, spin-up not applied."""
    if spec.kind == SystemKind.lorenz96:
        return integrate_lorenz96(u0, phi, spec.dt, steps)

    return integrate_ks(u0, phi, spec.dt, spec.domain_length, steps)


def reference_step(spec: SystemSpec, u: np.ndarray, phi: float) -> np.ndarray:
    """Advance the state(s) u, shape `[..., d]`, by one reference integrator step."""
    if spec.kind == SystemKind.lorenz96:
        return rk4_step(u, phi, spec.dt)

    u_hat = ks_step(np.fft.rfft(u, axis=-1), phi, spec.dt, spec.domain_length)
    return np.fft.irfft(u_hat, n=spec.dimension, axis=-1)


def generate_trajectory(
    spec: SystemSpec,
    env: EnvironmentParam,
    T: int,
    r: float,
    seed: int,
) -> Trajectory:
    """Integrate one environment and return its T+1 post spin-up states.

    The initial condition and the measurement noise are drawn from independent
    streams spawned from `seed`.
    """
    if T < 1:
        raise ConfigurationError(f"trajectory length must be >= 1, got {T}")

    init_sequence, noise_sequence = np.random.SeedSequence(seed).spawn(2)
    u0 = initial_condition(spec, np.random.default_rng(init_sequence))

    try:
        states = simulate(spec, env.phi, u0, spec.spinup_steps + T)
    except IntegrationDivergedError as exc:
        raise exc.with_env_id(env.env_id) from exc

    clean = np.ascontiguousarray(states[spec.spinup_steps :])
    noise_seed = int(noise_sequence.generate_state(1)[0])

    return Trajectory(
        env=env,
        states=add_noise(clean, r, noise_seed),
        clean_states=clean,
        noise_scale=r,
        seed=seed,
    )


def _generate_environment(
    env: EnvironmentParam,
    *,
    spec: SystemSpec,
    T: int,
    r: float,
    seed: int,
) -> Trajectory:
    return generate_trajectory(spec, env, T, r, derive_seed(seed, env.env_id))


def generate_trajectories(
    spec: SystemSpec,
    envs: Sequence[EnvironmentParam],
    T: int,
    r: float,
    seed: int,
    *,
    workers: int = 1,
) -> list[Trajectory]:
    """Generate one trajectory per environment, in environment order.

    Each environment is seeded from (seed, env_id) so the result does not depend
    on `workers`.
    """
    generate = partial(_generate_environment, spec=spec, T=T, r=r, seed=seed)

    if workers <= 1 or len(envs) <= 1:
        return [generate(env) for env in envs]

    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(generate, envs))
