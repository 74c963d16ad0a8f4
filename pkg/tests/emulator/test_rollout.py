from __future__ import annotations

import numpy as np
import pytest
import torch

from attractr.diffcore import finite_difference_check, seed_everything
from attractr.dynsys import simulate
from attractr.emulator import (
    EmulatorConfig,
    EmulatorModel,
    SimulatorStepper,
    ZeroStepper,
    identity_init,
    rollout,
    rollout_concat,
)
from attractr.error.exc import ConfigurationError, RolloutDivergedError


class _Affine:
    """u -> a * u + phi, enough to check how a rollout composes steps."""

    def __init__(self, a: float = 0.5) -> None:
        self.a = a

    def step(self, u, phi):
        phi = torch.as_tensor(phi, dtype=u.dtype)
        if phi.ndim == 1 and u.ndim == 2:
            phi = phi[:, None]
        return self.a * u + phi


class _Exploding:
    def __init__(self, at: int) -> None:
        self.at = at
        self.calls = 0

    def step(self, u, phi):
        self.calls += 1
        if self.calls == self.at:
            return torch.full_like(u, float("inf"))
        return u


class TestRollout:
    def test_zero_steps_is_the_initial_state(self):
        u0 = torch.arange(4.0)
        out = rollout(_Affine(), u0, 1.0, 0)

        assert out.shape == (1, 4)
        assert torch.equal(out[0], u0)

    def test_identity_model_is_constant(self):
        config = EmulatorConfig(dimension=8, width=4, modes=4, activation="identity")
        model = identity_init(EmulatorModel(config))
        u0 = torch.linspace(-1.0, 1.0, 8)

        with torch.no_grad():
            out = rollout(model, u0, 10.0, 5)

        assert out.shape == (6, 8)
        assert torch.allclose(out, u0.expand(6, 8), atol=1e-6)

    def test_equals_sequential_steps(self):
        stepper = _Affine(0.3)
        u0 = torch.tensor([1.0, -2.0, 0.5])

        expected = [u0]
        for _ in range(4):
            expected.append(stepper.step(expected[-1], 2.0))

        assert torch.allclose(rollout(stepper, u0, 2.0, 4), torch.stack(expected))

    def test_batched_shape(self):
        u0 = torch.zeros(3, 5)
        out = rollout(_Affine(), u0, torch.tensor([1.0, 2.0, 3.0]), 2)

        assert out.shape == (3, 3, 5)
        assert torch.allclose(out[:, 1, 0], torch.tensor([1.0, 2.0, 3.0]))

    def test_negative_length(self):
        with pytest.raises(ConfigurationError):
            rollout(_Affine(), torch.zeros(3), 1.0, -1)

    def test_divergence(self):
        with pytest.raises(RolloutDivergedError) as exc:
            rollout(_Exploding(at=3), torch.zeros(3), 1.0, 5)

        assert exc.value.step == 3

    def test_gradient_flows_through_every_step(self):
        u0 = torch.tensor([1.0, 2.0], requires_grad=True)
        out = rollout(_Affine(0.5), u0, 0.0, 3)

        out[-1].sum().backward()

        assert u0.grad is not None
        assert torch.allclose(u0.grad, torch.full((2,), 0.125))

    def test_gradient_of_a_model_rollout_matches_finite_differences(self, float64):
        seed_everything(0)
        model = EmulatorModel(EmulatorConfig(dimension=8, width=4, blocks=1, modes=2))
        u0 = torch.randn(2, 8, generator=torch.Generator().manual_seed(1))
        phi = torch.tensor([8.0, 12.0])

        check = finite_difference_check(
            lambda u: (rollout(model, u, phi, 3)[:, 1:] ** 2).sum(), [u0]
        )

        assert check.probes >= 20
        assert check.passes(1e-4)


class TestRolloutConcat:
    def test_full_window_equals_rollout(self):
        stepper = _Affine(0.7)
        window = torch.randn(8, 4, generator=torch.Generator().manual_seed(0))

        out = rollout_concat(stepper, window, 1.5, 7)

        assert torch.allclose(out, rollout(stepper, window[0], 1.5, 7))

    def test_zero_length_returns_the_window(self):
        window = torch.randn(6, 3, generator=torch.Generator().manual_seed(1))

        assert torch.equal(rollout_concat(_Affine(), window, 1.0, 0), window)

    def test_restarts_at_segment_starts(self):
        stepper = _Affine(0.5)
        window = torch.tensor([[1.0], [10.0], [2.0], [20.0]])

        out = rollout_concat(stepper, window, 1.0, 1)

        expected = torch.tensor([[1.0], [1.5], [2.0], [2.0]])
        assert torch.allclose(out, expected)

    def test_batched_uses_each_window_phi(self):
        window = torch.zeros(2, 4, 3)
        out = rollout_concat(_Affine(), window, torch.tensor([1.0, -1.0]), 1)

        assert out.shape == (2, 4, 3)
        assert torch.allclose(out[0, 1], torch.ones(3))
        assert torch.allclose(out[1, 3], -torch.ones(3))

    def test_not_divisible(self):
        with pytest.raises(ConfigurationError):
            rollout_concat(_Affine(), torch.zeros(5, 3), 1.0, 1)


class TestBaselineSteppers:
    def test_simulator_matches_reference(self, l96_spec):
        u0 = np.random.default_rng(0).standard_normal(l96_spec.dimension)

        out = rollout(SimulatorStepper(l96_spec), torch.as_tensor(u0), 10.0, 3)

        assert np.allclose(out.numpy(), simulate(l96_spec, 10.0, u0, 3))

    def test_simulator_batched(self, l96_spec):
        u = torch.as_tensor(
            np.random.default_rng(1).standard_normal((2, l96_spec.dimension))
        )
        out = SimulatorStepper(l96_spec).step(u, torch.tensor([8.0, 12.0]))

        assert out.shape == u.shape
        assert np.allclose(
            out[1].numpy(), simulate(l96_spec, 12.0, u[1].numpy(), 1)[1]
        )

    def test_zero(self):
        assert torch.equal(ZeroStepper().step(torch.ones(2, 3), 1.0), torch.zeros(2, 3))
