from __future__ import annotations

import pytest
import torch

from attractr.diffcore import finite_difference_check, seed_everything
from attractr.emulator import (
    EmulatorConfig,
    EmulatorModel,
    RolloutPlan,
    Stepper,
    expand_modes,
    identity_init,
    load_emulator,
    parameter_count,
    save_emulator,
    step,
)
from attractr.error.exc import ConfigurationError, PrimitiveShapeError


def _model(**kwargs) -> EmulatorModel:
    seed_everything(0)
    settings = {"dimension": 16, "width": 6, "blocks": 2, "modes": 4, **kwargs}
    return EmulatorModel(EmulatorConfig(**settings))


def _state(*shape: int, seed: int = 1) -> torch.Tensor:
    generator = torch.Generator().manual_seed(seed)
    return torch.randn(*shape, generator=generator, dtype=torch.get_default_dtype())


class TestEmulatorConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"dimension": 1},
            {"dimension": 16, "modes": 9},
            {"dimension": 16, "width": 0},
            {"dimension": 16, "activation": "relu"},
        ],
        ids=["dimension", "modes", "width", "activation"],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ConfigurationError):
            EmulatorConfig(**kwargs)


class TestRolloutPlan:
    def test_valid(self):
        assert RolloutPlan(K=31, h=3, h_rmse=1).K == 31

    @pytest.mark.parametrize(
        "kwargs",
        [{"K": 30, "h": 1}, {"K": 31, "h": 2}, {"K": 31, "h_rmse": 0}, {"K": 0}],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ConfigurationError):
            RolloutPlan(**kwargs)


class TestEmulatorModel:
    def test_is_a_stepper(self):
        assert isinstance(_model(), Stepper)

    def test_zero_projection_predicts_zero(self):
        model = _model(zero_init_projection=True)

        with torch.no_grad():
            out = model(_state(5, 16), torch.linspace(10, 18, 5))

        assert torch.equal(out, torch.zeros(5, 16))

    def test_batched_and_unbatched_agree(self, float64):
        model = _model()
        u = _state(3, 16)
        phis = torch.tensor([10.0, 12.0, 14.0])

        with torch.no_grad():
            batched = model(u, phis)
            single = torch.stack([step(model, u[i], phis[i]) for i in range(3)])

        assert torch.allclose(batched, single, atol=1e-12)

    def test_wrong_dimension(self):
        with pytest.raises(PrimitiveShapeError, match="emulator step"):
            _model()(_state(2, 15), 10.0)

    def test_highest_modes_at_zero_match_truncation(self, float64):
        full = _model(modes=8)
        with torch.no_grad():
            for block in full.blocks:
                block.spectral.weight[5:] = 0

        truncated = _model(modes=4)
        state = {
            name: tensor[:5] if name.endswith("spectral.weight") else tensor
            for name, tensor in full.state_dict().items()
        }
        truncated.load_state_dict(state)

        u = _state(4, 16)
        with torch.no_grad():
            assert torch.allclose(full(u, 11.0), truncated(u, 11.0), atol=1e-12)

    def test_expand_modes_keeps_outputs(self, float64):
        model = _model(modes=4)
        expanded = expand_modes(model, 8)
        u = _state(2, 16)

        assert expanded.config.modes == 8
        with torch.no_grad():
            assert torch.allclose(model(u, 12.0), expanded(u, 12.0), atol=1e-12)

    def test_expand_modes_cannot_shrink(self):
        with pytest.raises(PrimitiveShapeError):
            expand_modes(_model(modes=4), 2)

    def test_identity_init(self):
        model = identity_init(_model(activation="identity"))
        u = _state(3, 16)

        with torch.no_grad():
            assert torch.allclose(model(u, 15.0), u, atol=1e-6)

    def test_parameter_count_counts_complex_twice(self):
        model = _model()
        real = sum(p.numel() for p in model.parameters() if not p.is_complex())
        complex_ = sum(p.numel() for p in model.parameters() if p.is_complex())

        assert parameter_count(model) == real + 2 * complex_

    def test_gradient_matches_finite_differences(self, float64):
        model = _model(width=4, blocks=1)
        u = _state(16)
        named = dict(model.named_parameters())
        is_complex = {name: p.is_complex() for name, p in named.items()}
        values = [
            torch.view_as_real(p.detach()).clone() if p.is_complex() else p.detach()
            for p in named.values()
        ]

        def fn(*parameters):
            parameters = {
                name: torch.view_as_complex(p) if is_complex[name] else p
                for name, p in zip(named, parameters)
            }
            out = torch.func.functional_call(model, parameters, (u, 12.0))
            return (out**2).sum()

        assert finite_difference_check(fn, values).passes(1e-5)

    def test_save_and_load(self, tmp_path):
        model = _model()
        save_emulator(model, tmp_path)
        loaded = load_emulator(tmp_path)
        u = _state(2, 16)

        assert loaded.config == model.config
        with torch.no_grad():
            assert torch.equal(loaded(u, 10.0), model(u, 10.0))
