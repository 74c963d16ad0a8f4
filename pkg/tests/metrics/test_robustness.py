from __future__ import annotations

import numpy as np
import pytest

from attractr.dynsys import SystemKind, SystemSpec
from attractr.error.exc import ConfigurationError
from attractr.metrics import (
    RobustnessRow,
    noise_robustness_sweep,
    perturbed_run_metrics,
    relative_rmse,
)
from attractr.util import fieldnames_of, read_rows


def test_relative_rmse():
    reference = np.array([[9.0, 9.0], [1.0, 0.0], [0.0, 2.0]])
    candidate = np.array([[0.0, 0.0], [0.0, 0.0], [0.0, 1.0]])

    assert relative_rmse(reference, candidate) == pytest.approx((1.0 + 0.25) / 2)


class TestPerturbedRunMetrics:
    def test_zero_noise_is_exact(self, l96_spec):
        row = perturbed_run_metrics(l96_spec, 10.0, 0.0, 50, seed=0)

        assert row.rmse == 0.0
        assert row.histogram_error == 0.0
        assert row.spectrum_error == 0.0

    def test_noise_separates_the_runs(self, l96_spec):
        row = perturbed_run_metrics(l96_spec, 10.0, 0.1, 50, seed=0)

        assert row.rmse > 0
        assert row.histogram_error > 0

    def test_measurement_noise(self, l96_spec):
        row = perturbed_run_metrics(
            l96_spec, 10.0, 0.1, 50, seed=0, measurement_noise=True
        )
        plain = perturbed_run_metrics(l96_spec, 10.0, 0.1, 50, seed=0)

        assert row.rmse != plain.rmse

    def test_seeded(self, l96_spec):
        a = perturbed_run_metrics(l96_spec, 10.0, 0.05, 20, seed=3)
        b = perturbed_run_metrics(l96_spec, 10.0, 0.05, 20, seed=3)

        assert a == b


class TestNoiseRobustnessSweep:
    def test_rows(self, l96_spec, tmp_path):
        path = tmp_path / "robustness.csv"

        rows = noise_robustness_sweep(
            l96_spec, 10.0, [0.0, 0.01, 0.1], 20, seeds=2, path=path
        )

        assert [(row.r, i % 2) for i, row in enumerate(rows)] == [
            (0.0, 0),
            (0.0, 1),
            (0.01, 0),
            (0.01, 1),
            (0.1, 0),
            (0.1, 1),
        ]
        assert all(row.rmse == 0.0 for row in rows[:2])

        written = read_rows(path)
        assert len(written) == 6
        assert list(written[0]) == fieldnames_of(RobustnessRow)

    @pytest.mark.parametrize(
        ("r_grid", "seeds", "horizons"),
        [
            ([], 1, 10),
            ([0.1, 0.2], 1, 10),
            ([0.0, 0.2, 0.1], 1, 10),
            ([0.0], 0, 10),
            ([0.0], 1, []),
            ([0.0], 1, [0, 10]),
        ],
    )
    def test_invalid(self, l96_spec, r_grid, seeds, horizons):
        with pytest.raises(ConfigurationError):
            noise_robustness_sweep(l96_spec, 10.0, r_grid, horizons, seeds=seeds)

    def test_several_horizons_score_prefixes_of_one_run(self, l96_spec):
        rows = noise_robustness_sweep(l96_spec, 10.0, [0.0, 0.1], [40, 5, 20])

        assert [(row.r, row.horizon) for row in rows] == [
            (0.0, 5),
            (0.0, 20),
            (0.0, 40),
            (0.1, 5),
            (0.1, 20),
            (0.1, 40),
        ]
        assert rows[-1] == perturbed_run_metrics(
            l96_spec, 10.0, 0.1, 40, seed=rows[-1].seed
        )
        assert rows[3].rmse < rows[5].rmse

    def test_a_single_horizon(self, l96_spec):
        rows = noise_robustness_sweep(l96_spec, 10.0, [0.0, 0.1], 20)

        assert [row.horizon for row in rows] == [20, 20]

    @pytest.mark.slow
    def test_pointwise_error_saturates_while_statistics_agree(self):
        spec = SystemSpec(
            kind=SystemKind.lorenz96, dimension=40, dt=0.1, spinup_steps=500
        )

        rows = noise_robustness_sweep(spec, 10.0, [0.0, 0.1], 1500, seeds=3)
        perturbed = [row for row in rows if row.r == 0.1]

        assert np.mean([row.rmse for row in perturbed]) > 0.5
        assert np.mean([row.histogram_error for row in perturbed]) < 0.2
