from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np
import pytest

from attractr.datastore import generate_dataset
from attractr.emulator import SimulatorStepper, ZeroStepper
from attractr.error.exc import ConfigurationError
from attractr.metrics import (
    AGGREGATE_ENV_ID,
    HISTOGRAM_ERROR,
    NOISY_HISTOGRAM_ERROR,
    REPORT_FILE,
    REPORT_META_FILE,
    RMSE,
    SPECTRUM_ERROR,
    SPECTRUM_ERROR_STD,
    EvalMetadata,
    eval_rmse,
    eval_rmse_per_env,
    evaluate,
    export_histograms,
    long_rollout,
    statistic_samples,
    write_eval_report,
)
from attractr.util import read_json, read_rows

if TYPE_CHECKING:
    from attractr.datastore import Dataset


@pytest.fixture(scope="module")
def clean_dataset(l96_spec) -> Dataset:
    return generate_dataset(
        l96_spec,
        count=4,
        phi_range=(8.0, 12.0),
        T=40,
        r=0.0,
        env_seed=1,
        data_seed=1,
        split=(0.5, 0.25, 0.25),
    )


def _metadata(stepper: str = "simulator") -> EvalMetadata:
    return EvalMetadata(
        stepper=stepper, horizon=40, rmse_horizon=3, dataset=Path("data")
    )


def test_statistic_samples(l96_spec, clean_dataset: Dataset):
    samples = statistic_samples(clean_dataset.trajectories[0].states, l96_spec)
    assert samples.shape == (40 * 8, 3)


@pytest.mark.usefixtures("float64", "quiet")
class TestEvalRmse:
    def test_simulator_is_exact(self, clean_dataset: Dataset):
        stepper = SimulatorStepper(clean_dataset.spec)
        per_env = eval_rmse_per_env(stepper, clean_dataset, 3)

        assert set(per_env) == set(clean_dataset.env_ids)
        assert all(v == pytest.approx(0.0, abs=1e-12) for v in per_env.values())

    def test_zero_stepper_scores_one(self, clean_dataset: Dataset):
        rmse = eval_rmse(ZeroStepper(), clean_dataset, 5, stride=4)
        assert rmse == pytest.approx(1.0)

    def test_mean_over_environments(self, clean_dataset: Dataset):
        stepper = SimulatorStepper(clean_dataset.spec)
        noisy = generate_dataset(
            clean_dataset.spec,
            count=4,
            phi_range=(8.0, 12.0),
            T=20,
            r=0.2,
            env_seed=1,
            data_seed=1,
            split=(0.5, 0.25, 0.25),
        )

        per_env = eval_rmse_per_env(stepper, noisy, 2)

        mean = np.mean(list(per_env.values()))
        assert eval_rmse(stepper, noisy, 2) == pytest.approx(mean)
        assert all(value > 0 for value in per_env.values())

    @pytest.mark.parametrize(("horizon", "stride"), [(0, 1), (1, 0), (41, 1)])
    def test_invalid(self, clean_dataset: Dataset, horizon, stride):
        with pytest.raises(ConfigurationError):
            eval_rmse_per_env(ZeroStepper(), clean_dataset, horizon, stride)


@pytest.mark.usefixtures("float64", "quiet")
class TestEvaluate:
    def test_simulator(self, clean_dataset: Dataset):
        stepper = SimulatorStepper(clean_dataset.spec)
        report = evaluate(stepper, clean_dataset, _metadata())

        assert report.value(RMSE) == pytest.approx(0.0, abs=1e-12)
        assert report.value(HISTOGRAM_ERROR) == pytest.approx(0.0, abs=1e-12)
        assert report.value(SPECTRUM_ERROR) == pytest.approx(0.0, abs=1e-9)
        assert report.value(NOISY_HISTOGRAM_ERROR) == 0.0

    def test_zero_stepper(self, clean_dataset: Dataset):
        report = evaluate(ZeroStepper(), clean_dataset, _metadata("zero"))

        assert report.value(RMSE) == pytest.approx(1.0)
        assert report.value(HISTOGRAM_ERROR) > 0
        assert report.value(SPECTRUM_ERROR) > 0

    def test_aggregate_is_the_mean(self, clean_dataset: Dataset):
        report = evaluate(ZeroStepper(), clean_dataset, _metadata("zero"))

        for metric in (RMSE, HISTOGRAM_ERROR, SPECTRUM_ERROR):
            values = list(report.per_env(metric).values())
            assert len(values) == len(clean_dataset)
            assert report.value(metric) == pytest.approx(np.mean(values))

        spectrum = list(report.per_env(SPECTRUM_ERROR).values())
        assert report.value(SPECTRUM_ERROR_STD) == pytest.approx(np.std(spectrum))

    def test_rows_end_with_the_aggregate(self, clean_dataset: Dataset):
        report = evaluate(ZeroStepper(), clean_dataset, _metadata("zero"))
        envs = [row.env_id for row in report.rows]

        assert envs[-1] == AGGREGATE_ENV_ID
        assert envs.index(AGGREGATE_ENV_ID) == len(clean_dataset) * 4

    def test_long_rollout_starts_from_the_observed_state(self, clean_dataset):
        trajectory = clean_dataset.trajectories[0]
        predicted = long_rollout(ZeroStepper(), trajectory, 5)

        assert predicted.shape == (6, 8)
        assert np.array_equal(predicted[0], trajectory.states[0])

    def test_horizon_beyond_the_trajectory(self, clean_dataset: Dataset):
        with pytest.raises(ConfigurationError):
            long_rollout(ZeroStepper(), clean_dataset.trajectories[0], 41)

    def test_write(self, clean_dataset: Dataset, tmp_path: Path):
        report = evaluate(ZeroStepper(), clean_dataset, _metadata("zero"))

        write_eval_report(report, tmp_path)

        rows = read_rows(tmp_path / REPORT_FILE)
        assert len(rows) == len(report.rows)
        assert list(rows[0]) == ["env_id", "metric", "value"]
        assert read_json(tmp_path / REPORT_META_FILE, type=EvalMetadata) == (
            report.metadata
        )

    def test_export_histograms(self, clean_dataset: Dataset, tmp_path: Path):
        path = tmp_path / "histograms.csv"

        export_histograms(ZeroStepper(), clean_dataset, 40, path)

        rows = read_rows(path)
        bins = 18  # ceil(sqrt(40 * 8))
        assert len(rows) == len(clean_dataset) * 2 * 3 * bins
        assert {row["source"] for row in rows} == {"reference", "model"}
