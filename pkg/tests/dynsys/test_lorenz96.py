from __future__ import annotations

import numpy as np
import pytest

from attractr.dynsys import integrate_lorenz96, lorenz96_rhs, rk4_step
from attractr.error.exc import ConfigurationError, IntegrationDivergedError


def _rhs_oracle(u: np.ndarray, F: float) -> np.ndarray:
    d = len(u)
    return np.array(
        [
            (u[(i + 1) % d] - u[(i - 2) % d]) * u[(i - 1) % d] - u[i] + F
            for i in range(d)
        ]
    )


class TestLorenz96Rhs:
    @pytest.mark.parametrize("d", [4, 5, 40])
    @pytest.mark.parametrize("F", [0.0, 8.0, 17.5])
    def test_constant_state_at_forcing_is_fixed(self, d, F):
        assert np.array_equal(lorenz96_rhs(np.full(d, F), F), np.zeros(d))

    def test_ones_without_forcing(self):
        assert np.array_equal(lorenz96_rhs([1.0] * 5, 0.0), np.full(5, -1.0))

    def test_matches_index_loop(self):
        u = np.random.default_rng(0).standard_normal(40)

        np.testing.assert_allclose(
            lorenz96_rhs(u, 10.0), _rhs_oracle(u, 10.0), rtol=0, atol=1e-12
        )

    def test_batch_axes(self):
        u = np.random.default_rng(1).standard_normal((3, 7))
        expected = np.stack([_rhs_oracle(row, 9.0) for row in u])

        np.testing.assert_allclose(lorenz96_rhs(u, 9.0), expected, atol=1e-12)

    def test_too_few_components(self):
        with pytest.raises(ConfigurationError):
            lorenz96_rhs([1.0, 2.0, 3.0], 8.0)


class TestRk4Step:
    def test_fixed_point(self):
        u = np.full(40, 8.0)
        assert np.allclose(rk4_step(u, 8.0, 0.1), u, rtol=0, atol=1e-12)

    def test_dt_must_be_positive(self):
        with pytest.raises(ConfigurationError):
            rk4_step(np.ones(8), 8.0, 0.0)

    def test_fourth_order_convergence(self):
        u0 = np.full(8, 8.0)
        u0[0] += 0.5
        t = 0.4

        def solve(dt: float) -> np.ndarray:
            return integrate_lorenz96(u0, 8.0, dt, round(t / dt))[-1]

        reference = solve(0.02 / 16)
        coarse = np.linalg.norm(solve(0.02) - reference)
        fine = np.linalg.norm(solve(0.01) - reference)

        assert 12 <= coarse / fine <= 20

    def test_long_run_is_bounded(self):
        u0 = np.full(40, 8.0)
        u0[19] += 0.01

        states = integrate_lorenz96(u0, 8.0, 0.1, 1000)

        assert states.shape == (1001, 40)
        assert np.abs(states).max() < 20

    def test_divergence_is_attributed_to_the_step(self):
        # opposite signs at i+1 and i-2 make the advection term overflow
        u0 = np.tile([1e200, -1e200], 4)

        with np.errstate(over="ignore", invalid="ignore"):
            with pytest.raises(IntegrationDivergedError) as exc_info:
                integrate_lorenz96(u0, 8.0, 0.1, 3)

        assert exc_info.value.step == 1
