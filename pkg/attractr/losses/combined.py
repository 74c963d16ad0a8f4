"""The two training objectives.

Both add a structural term to the short-horizon rMSE. The data window is the
observed window of the batch, the emulator never sees clean states in training.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import torch

from attractr.emulator import rollout_concat
from attractr.error.exc import ConfigurationError
from attractr.losses._types import LossTerms
from attractr.losses.feature import feature_loss
from attractr.losses.rmse import rmse_loss, rollout_frames
from attractr.losses.sinkhorn import sinkhorn_divergence
from attractr.losses.statistics import StatNormaliser, subsample, summary_stats

if TYPE_CHECKING:
    from attractr.diffcore import DiffArray
    from attractr.emulator import RolloutPlan, Stepper
    from attractr.losses._types import (
        FeatureLossConfig,
        SinkhornConfig,
        StatSpec,
        WindowBatch,
    )
    from attractr.losses.feature import FeatureExtractor


def _check_plan(batch: WindowBatch, plan: RolloutPlan) -> None:
    if batch.K != plan.K:
        raise ConfigurationError(
            f"batch windows hold K={batch.K} steps, the rollout plan {plan.K}"
        )


def rollout_rmse(batch: WindowBatch, model: Stepper, plan: RolloutPlan) -> DiffArray:
    """rMSE of the h_rmse teacher-reset rollout over its predicted frames."""
    _check_plan(batch, plan)

    predicted = rollout_concat(model, batch.states, batch.phis, plan.h_rmse)
    frames = rollout_frames(plan.K, plan.h_rmse)

    return rmse_loss(batch.states, predicted, frames)


def _predicted_window(
    batch: WindowBatch,
    model: Stepper,
    plan: RolloutPlan,
) -> DiffArray:
    return rollout_concat(model, batch.states, batch.phis, plan.h)


def combined_loss_sinkhorn(
    batch: WindowBatch,
    model: Stepper,
    config: SinkhornConfig,
    plan: RolloutPlan,
    *,
    stat_spec: StatSpec,
    dt: float,
    normaliser: StatNormaliser | None = None,
    generator: torch.Generator | None = None,
    warn: bool = True,
) -> LossTerms:
    """rMSE plus alpha times the mean Sinkhorn divergence over the batch windows.

    Statistics of each window and of its rollout are standardised, subsampled to
    the same `sample_cap` positions and compared. The structural term is skipped
    entirely when alpha is zero.
    """
    rmse = rollout_rmse(batch, model, plan)

    if config.alpha == 0:
        return LossTerms(total=rmse, rmse=rmse, structural=None)

    normaliser = normaliser or StatNormaliser.identity()
    if generator is None:
        generator = torch.Generator().manual_seed(0)

    predicted = _predicted_window(batch, model, plan)

    stats = normaliser(summary_stats(batch.states, stat_spec, dt))
    predicted_stats = normaliser(summary_stats(predicted, stat_spec, dt))

    divergences = []
    unconverged = 0

    for S, S_hat in zip(stats, predicted_stats):
        paired = subsample(torch.stack([S, S_hat]), config.sample_cap, generator)

        result = sinkhorn_divergence(paired[0], paired[1], config, warn=warn)
        unconverged += not result.converged
        divergences.append(result.value)

    structural = torch.stack(divergences).mean()

    return LossTerms(
        total=rmse + config.alpha * structural,
        rmse=rmse,
        structural=structural,
        unconverged=unconverged,
    )


def combined_loss_feature(
    batch: WindowBatch,
    model: Stepper,
    encoder: FeatureExtractor,
    config: FeatureLossConfig,
    plan: RolloutPlan,
) -> LossTerms:
    """rMSE plus lambda times the feature loss of the batch against its rollout."""
    rmse = rollout_rmse(batch, model, plan)

    if config.lambda_ == 0:
        return LossTerms(total=rmse, rmse=rmse, structural=None)

    predicted = _predicted_window(batch, model, plan)
    structural = feature_loss(batch.states, predicted, encoder)

    return LossTerms(
        total=rmse + config.lambda_ * structural,
        rmse=rmse,
        structural=structural,
    )
