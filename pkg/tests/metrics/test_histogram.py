from __future__ import annotations

import numpy as np
import pytest

from attractr.error.exc import ConfigurationError, PrimitiveShapeError
from attractr.metrics import (
    bin_count,
    energy_spectrum,
    energy_spectrum_error,
    gaussian_blur,
    histogram,
    histogram_error,
    reference_edges,
)


@pytest.mark.parametrize(("samples", "bins"), [(1, 1), (16, 4), (17, 5), (100, 10)])
def test_bin_count(samples, bins):
    assert bin_count(samples) == bins


class TestHistogram:
    def test_frequencies_sum_to_one(self):
        samples = np.random.default_rng(0).standard_normal((100, 3))

        binned = histogram(samples)

        assert binned.channels == 3
        assert binned.bins == 10
        for frequencies in binned.frequencies:
            assert frequencies.sum() == pytest.approx(1.0)

    def test_constant_channel(self):
        edges = reference_edges(np.full((4, 1), 2.0))
        assert edges[0][0] == 1.5
        assert edges[0][-1] == 2.5

    def test_values_beyond_the_edges_are_clipped(self):
        edges = (np.array([0.0, 1.0, 2.0]),)

        binned = histogram(np.array([-5.0, 0.5, 1.5, 9.0]), edges)

        assert np.allclose(binned.frequencies[0], [0.5, 0.5])

    def test_channel_mismatch(self):
        with pytest.raises(ConfigurationError):
            histogram(np.zeros((4, 2)), (np.array([0.0, 1.0]),))

    def test_empty(self):
        with pytest.raises(ConfigurationError):
            histogram(np.zeros((0, 2)))


class TestHistogramError:
    def test_identical_samples(self):
        samples = np.random.default_rng(0).standard_normal((50, 2))
        assert histogram_error(samples, samples.copy()) == 0.0

    def test_disjoint_samples(self):
        reference = np.random.default_rng(0).uniform(0.0, 1.0, (64, 1))
        shared = histogram(reference).frequencies[0][-1]

        assert histogram_error(reference, reference + 10.0) == pytest.approx(
            2.0 * (1.0 - shared)
        )

    def test_reference_sets_the_edges(self):
        reference = np.linspace(0.0, 1.0, 16)[:, None]
        candidate = np.linspace(0.0, 0.5, 16)[:, None]

        assert histogram_error(reference, candidate) != pytest.approx(
            histogram_error(candidate, reference)
        )

    def test_bounds(self):
        rng = np.random.default_rng(1)
        value = histogram_error(rng.standard_normal((40, 3)), rng.normal(1, 2, (40, 3)))
        assert 0.0 <= value <= 2.0


class TestEnergySpectrum:
    def test_parseval(self):
        rollout = np.random.default_rng(0).standard_normal((5, 8))
        spectrum = energy_spectrum(rollout)

        assert spectrum.shape == (8,)
        assert spectrum.sum() == pytest.approx(64 * np.mean(rollout**2))

    def test_single_mode(self):
        x = np.arange(8)
        rollout = np.stack([np.cos(2 * np.pi * x / 8)] * 3)

        spectrum = energy_spectrum(rollout)

        assert np.allclose(spectrum[[1, 7]], 16.0)
        assert np.allclose(np.delete(spectrum, [1, 7]), 0.0)

    def test_error(self):
        a = np.random.default_rng(0).standard_normal((5, 8))

        assert energy_spectrum_error(a, a) == 0.0
        assert energy_spectrum_error(a, np.zeros_like(a)) == pytest.approx(
            energy_spectrum(a).sum()
        )

    def test_shapes(self):
        with pytest.raises(PrimitiveShapeError):
            energy_spectrum_error(np.zeros((4, 8)), np.zeros((4, 6)))
        with pytest.raises(PrimitiveShapeError):
            energy_spectrum(np.zeros(8))


class TestGaussianBlur:
    def test_zero_std_copies(self):
        states = np.random.default_rng(0).standard_normal((3, 8))
        blurred = gaussian_blur(states, 0.0)

        assert np.array_equal(blurred, states)
        assert blurred is not states

    def test_preserves_the_mean_of_each_frame(self):
        states = np.random.default_rng(0).standard_normal((3, 16))
        blurred = gaussian_blur(states, 2.0)

        assert np.allclose(blurred.mean(axis=-1), states.mean(axis=-1))
        assert blurred.std() < states.std()

    def test_periodic(self):
        states = np.zeros((1, 8))
        states[0, 0] = 1.0

        blurred = gaussian_blur(states, 1.0)

        assert blurred[0, 1] == pytest.approx(blurred[0, 7])

    def test_negative_std(self):
        with pytest.raises(ConfigurationError):
            gaussian_blur(np.zeros((2, 4)), -1.0)
