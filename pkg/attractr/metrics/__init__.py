"""Histogram, energy spectrum and rMSE metrics, noise robustness and blurring."""

from __future__ import annotations

from attractr.metrics._types import (
    AGGREGATE_ENV_ID,
    EvalMetadata,
    EvalReport,
    EvalRow,
    Histogram,
    RobustnessRow,
)
from attractr.metrics.blur import gaussian_blur
from attractr.metrics.evaluate import (
    HISTOGRAM_ERROR,
    HISTOGRAM_FILE,
    NOISY_HISTOGRAM_ERROR,
    REPORT_FILE,
    REPORT_META_FILE,
    RMSE,
    SPECTRUM_ERROR,
    SPECTRUM_ERROR_STD,
    eval_rmse,
    eval_rmse_per_env,
    evaluate,
    export_histograms,
    long_horizon_metrics,
    long_rollout,
    statistic_samples,
    write_eval_report,
)
from attractr.metrics.histogram import (
    bin_count,
    histogram,
    histogram_error,
    reference_edges,
)
from attractr.metrics.robustness import (
    noise_robustness_sweep,
    perturbed_run_metrics,
    relative_rmse,
)
from attractr.metrics.spectrum import energy_spectrum, energy_spectrum_error

__all__ = [
    "AGGREGATE_ENV_ID",
    "HISTOGRAM_ERROR",
    "HISTOGRAM_FILE",
    "NOISY_HISTOGRAM_ERROR",
    "REPORT_FILE",
    "REPORT_META_FILE",
    "RMSE",
    "SPECTRUM_ERROR",
    "SPECTRUM_ERROR_STD",
    "EvalMetadata",
    "EvalReport",
    "EvalRow",
    "Histogram",
    "RobustnessRow",
    "bin_count",
    "energy_spectrum",
    "energy_spectrum_error",
    "eval_rmse",
    "eval_rmse_per_env",
    "evaluate",
    "export_histograms",
    "gaussian_blur",
    "histogram",
    "histogram_error",
    "long_horizon_metrics",
    "long_rollout",
    "noise_robustness_sweep",
    "perturbed_run_metrics",
    "reference_edges",
    "relative_rmse",
    "statistic_samples",
    "write_eval_report",
]
