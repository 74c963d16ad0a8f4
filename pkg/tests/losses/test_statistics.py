from __future__ import annotations

import math

import numpy as np
import pytest
import torch

from attractr.dynsys import lorenz96_advection
from attractr.error.exc import ConfigurationError
from attractr.losses import StatNormaliser, StatSpec, subsample, summary_stats


@pytest.mark.usefixtures("float64")
class TestSummaryStats:
    def test_lorenz96_channels(self, l96_spec):
        spec = StatSpec.for_system(l96_spec)
        window = np.random.default_rng(0).standard_normal((5, 8))

        stats = summary_stats(torch.as_tensor(window), spec, dt=0.05)

        assert spec.channels == ("du/dt", "advection", "u")
        assert stats.shape == (4 * 8, 3)

        expected = np.stack(
            [
                (window[1:] - window[:-1]) / 0.05,
                lorenz96_advection(window[:-1]),
                window[:-1],
            ],
            axis=-1,
        ).reshape(-1, 3)
        assert np.allclose(stats.numpy(), expected)

    def test_kuramoto_sivashinsky_derivatives(self, ks_spec):
        spec = StatSpec.for_system(ks_spec)
        L = ks_spec.domain_length
        x = L * np.arange(32) / 32
        k = 2.0 * math.pi / L
        window = np.stack([np.sin(k * x), np.sin(k * x)])

        stats = summary_stats(torch.as_tensor(window), spec, dt=0.25)

        assert stats.shape == (32, 3)
        assert np.allclose(stats[:, 0].numpy(), 0.0)
        assert np.allclose(stats[:, 1].numpy(), k * np.cos(k * x))
        assert np.allclose(stats[:, 2].numpy(), -(k**2) * np.sin(k * x))

    def test_batched(self, l96_spec):
        spec = StatSpec.for_system(l96_spec)
        windows = torch.randn(3, 6, 8)

        stats = summary_stats(windows, spec, dt=0.05)

        assert stats.shape == (3, 5 * 8, 3)
        assert torch.allclose(stats[1], summary_stats(windows[1], spec, dt=0.05))

    @pytest.mark.parametrize("shape", [(1, 8), (8,)])
    def test_invalid_windows(self, l96_spec, shape):
        with pytest.raises(ConfigurationError):
            summary_stats(torch.zeros(shape), StatSpec.for_system(l96_spec), 0.05)


class TestStatNormaliser:
    def test_identity(self):
        samples = torch.randn(10, 3)
        assert torch.equal(StatNormaliser.identity()(samples), samples)

    def test_fit_standardises_its_windows(self, l96_spec):
        spec = StatSpec.for_system(l96_spec)
        rng = np.random.default_rng(0)
        windows = [3.0 + 2.0 * rng.standard_normal((6, 8)) for _ in range(4)]

        normaliser = StatNormaliser.fit(windows, spec, dt=0.05)
        samples = torch.cat(
            [summary_stats(torch.as_tensor(w), spec, 0.05) for w in windows]
        )
        standardised = normaliser(samples).float()

        assert torch.allclose(standardised.mean(dim=0), torch.zeros(3), atol=1e-5)
        assert torch.allclose(standardised.std(dim=0), torch.ones(3), atol=1e-5)

    def test_constant_channel_keeps_unit_std(self, l96_spec):
        normaliser = StatNormaliser.fit(
            [np.ones((4, 8))], StatSpec.for_system(l96_spec), dt=0.05
        )
        assert torch.equal(normaliser.std, torch.ones(3))

    def test_fit_without_windows(self, l96_spec):
        with pytest.raises(ConfigurationError):
            StatNormaliser.fit([], StatSpec.for_system(l96_spec), dt=0.05)


class TestSubsample:
    def test_below_cap_is_unchanged(self):
        samples = torch.randn(5, 3)
        assert subsample(samples, 5, torch.Generator()) is samples

    def test_cap(self):
        samples = torch.arange(40.0).reshape(20, 2)
        picked = subsample(samples, 7, torch.Generator().manual_seed(0))

        assert picked.shape == (7, 2)
        assert len({int(row[0]) for row in picked}) == 7

    def test_same_positions_across_a_stack(self):
        samples = torch.arange(20.0).reshape(1, 20, 1).repeat(2, 1, 1)
        picked = subsample(samples, 4, torch.Generator().manual_seed(3))

        assert torch.equal(picked[0], picked[1])
