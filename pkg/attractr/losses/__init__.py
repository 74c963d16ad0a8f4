"""Summary statistics, the Sinkhorn divergence, the feature loss and the rMSE."""

from __future__ import annotations

from attractr.losses._types import (
    KURAMOTO_SIVASHINSKY_CHANNELS,
    LORENZ96_CHANNELS,
    FeatureLossConfig,
    LossTerms,
    Objective,
    SinkhornConfig,
    SinkhornResult,
    StatSpec,
    WindowBatch,
)
from attractr.losses.combined import (
    combined_loss_feature,
    combined_loss_sinkhorn,
    rollout_rmse,
)
from attractr.losses.feature import (
    FeatureExtractor,
    feature_loss,
    frozen,
    layer_distance,
)
from attractr.losses.rmse import rmse_loss, rollout_frames
from attractr.losses.sinkhorn import (
    cost_matrix,
    entropic_ot,
    sinkhorn_divergence,
    solve_potentials,
)
from attractr.losses.statistics import StatNormaliser, subsample, summary_stats

__all__ = [
    "KURAMOTO_SIVASHINSKY_CHANNELS",
    "LORENZ96_CHANNELS",
    "FeatureExtractor",
    "FeatureLossConfig",
    "LossTerms",
    "Objective",
    "SinkhornConfig",
    "SinkhornResult",
    "StatNormaliser",
    "StatSpec",
    "WindowBatch",
    "combined_loss_feature",
    "combined_loss_sinkhorn",
    "cost_matrix",
    "entropic_ot",
    "feature_loss",
    "frozen",
    "layer_distance",
    "rmse_loss",
    "rollout_frames",
    "rollout_rmse",
    "sinkhorn_divergence",
    "solve_potentials",
    "subsample",
    "summary_stats",
]
