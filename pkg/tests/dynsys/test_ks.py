from __future__ import annotations

import numpy as np
import pytest

from attractr.dynsys import integrate_ks, ks_step, wavenumbers


class TestKsStep:
    def test_constant_field_is_unchanged(self):
        u = np.full(32, 0.7)
        u_hat = np.fft.rfft(u)

        np.testing.assert_allclose(
            np.fft.irfft(ks_step(u_hat, 1.5, 0.25, 22.0), n=32), u, atol=1e-12
        )

    @pytest.mark.parametrize("phi", [1.0, 2.6])
    def test_small_mode_grows_at_the_linear_rate(self, phi):
        d, L, dt, steps, m, a = 64, 22.0, 0.05, 10, 2, 1e-6
        x = np.arange(d) * L / d
        u0 = a * np.sin(2 * np.pi * m * x / L)

        states = integrate_ks(u0, phi, dt, L, steps)

        k = wavenumbers(d, L)[m]
        expected = a * np.exp((phi * k**2 - k**4) * dt * steps)
        amplitude = 2 * np.abs(np.fft.rfft(states[-1])[m]) / d

        assert amplitude == pytest.approx(expected, rel=1e-2)

    def test_mean_is_conserved(self):
        u0 = np.random.default_rng(0).uniform(-np.pi, np.pi, 32)
        u0 += 0.3

        states = integrate_ks(u0, 2.0, 0.25, 22.0, 1000)

        np.testing.assert_allclose(states.mean(axis=1), u0.mean(), atol=1e-10)
