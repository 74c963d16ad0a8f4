"""Training the emulator with the rMSE, Sinkhorn or feature objective.

Each epoch draws `steps_per_epoch` batches of windows from the training split,
then scores a fixed set of validation windows. The parameters with the lowest
validation objective are kept as the run's checkpoint.
"""

from __future__ import annotations

import math
from contextlib import nullcontext
from typing import TYPE_CHECKING

import attrs
import numpy as np
import torch
from tqdm import tqdm

from attractr import error
from attractr.config import Config
from attractr.config.util import enter_epoch
from attractr.datastore import sample_windows
from attractr.diffcore import (
    OptimizerConfig,
    adamw_step,
    make_optimizer,
    seed_everything,
)
from attractr.dynsys import derive_seed
from attractr.emulator._types import EmulatorConfig, RunSummary, TrainingLogRow
from attractr.emulator.model import EmulatorModel
from attractr.emulator.persist import save_emulator
from attractr.emulator.rollout import rollout_concat
from attractr.error.exc import (
    ConfigurationError,
    RolloutDivergedError,
    TrainingDivergedError,
)
from attractr.losses import (
    FeatureLossConfig,
    LossTerms,
    Objective,
    SinkhornConfig,
    StatNormaliser,
    StatSpec,
    WindowBatch,
    combined_loss_feature,
    combined_loss_sinkhorn,
    feature_loss,
    rollout_rmse,
)
from attractr.metrics import gaussian_blur
from attractr.util import CsvLog, fieldnames_of, write_json

if TYPE_CHECKING:
    from pathlib import Path

    from attractr.datastore import Dataset, Window
    from attractr.emulator._types import RolloutPlan
    from attractr.losses import FeatureExtractor


_TRAIN_STREAM = 0
_VALIDATION_STREAM = 1
_SUBSAMPLE_STREAM = 2
_NORMALISER_STREAM = 3

NORMALISER_WINDOWS = 64


@attrs.frozen
class EmulatorTrainingConfig:
    objective: Objective
    plan: RolloutPlan
    epochs: int = 500
    batch_size: int = 16
    steps_per_epoch: int = 20
    validation_windows: int = 16
    seed: int = 0
    blur_std: float = 0.0
    standardise: bool = True
    optimizer: OptimizerConfig = OptimizerConfig()
    sinkhorn: SinkhornConfig | None = None
    feature: FeatureLossConfig | None = None

    def __attrs_post_init__(self) -> None:
        if min(self.epochs, self.batch_size, self.steps_per_epoch) < 1:
            raise ConfigurationError(
                "epochs, batch_size and steps_per_epoch must be >= 1"
            )
        if self.validation_windows < 1:
            raise ConfigurationError(
                f"validation_windows must be >= 1, got {self.validation_windows}"
            )
        if self.objective == Objective.sinkhorn and self.sinkhorn is None:
            raise ConfigurationError("the sinkhorn objective needs sinkhorn settings")
        if self.objective == Objective.feature and self.feature is None:
            raise ConfigurationError("the feature objective needs feature settings")

    @property
    def weight(self) -> float | None:
        """alpha or lambda of the selected objective, None for plain rMSE."""
        if self.objective == Objective.sinkhorn and self.sinkhorn is not None:
            return self.sinkhorn.alpha
        if self.objective == Objective.feature and self.feature is not None:
            return self.feature.lambda_
        return None


@attrs.frozen
class TrainingResult:
    model: EmulatorModel
    log: tuple[TrainingLogRow, ...]
    summary: RunSummary


def blurred(dataset: Dataset, std: float) -> Dataset:
    """Return the dataset with every observed trajectory blurred in space."""
    if std == 0:
        return dataset

    trajectories = [
        attrs.evolve(t, states=gaussian_blur(t.states, std)) for t in dataset
    ]
    return attrs.evolve(dataset, trajectories=trajectories)


def _batch(windows: list[Window]) -> WindowBatch:
    return WindowBatch.from_windows(windows, torch.get_default_dtype())


class _Objective:
    """Evaluates the configured objective on window batches."""

    def __init__(
        self,
        training: EmulatorTrainingConfig,
        dataset: Dataset,
        encoder: FeatureExtractor | None,
    ) -> None:
        self.training = training
        self.encoder = encoder
        self.stat_spec = StatSpec.for_system(dataset.spec)
        self.dt = dataset.spec.dt
        self.generator = torch.Generator().manual_seed(
            derive_seed(training.seed, _SUBSAMPLE_STREAM)
        )

        self.normaliser = StatNormaliser.identity()
        if training.sinkhorn is not None and training.standardise:
            windows = sample_windows(
                dataset,
                training.plan.K,
                NORMALISER_WINDOWS,
                derive_seed(training.seed, _NORMALISER_STREAM),
            )
            self.normaliser = StatNormaliser.fit(
                (w.states for w in windows), self.stat_spec, self.dt
            )

        if training.objective == Objective.feature and encoder is None:
            raise ConfigurationError("the feature objective needs a trained encoder")

    def _sinkhorn(
        self,
        batch: WindowBatch,
        model: EmulatorModel,
        config: SinkhornConfig,
    ) -> LossTerms:
        return combined_loss_sinkhorn(
            batch,
            model,
            config,
            self.training.plan,
            stat_spec=self.stat_spec,
            dt=self.dt,
            normaliser=self.normaliser,
            generator=self.generator,
            warn=False,
        )

    def train_terms(self, batch: WindowBatch, model: EmulatorModel) -> LossTerms:
        training = self.training

        if training.objective == Objective.sinkhorn and training.sinkhorn is not None:
            return self._sinkhorn(batch, model, training.sinkhorn)

        if training.objective == Objective.feature and training.feature is not None:
            assert self.encoder is not None
            return combined_loss_feature(
                batch, model, self.encoder, training.feature, training.plan
            )

        rmse = rollout_rmse(batch, model, training.plan)
        return LossTerms(total=rmse, rmse=rmse, structural=None)

    @torch.no_grad()
    def validation_terms(
        self,
        batch: WindowBatch,
        model: EmulatorModel,
    ) -> tuple[float, float | None, float | None]:
        """Return the validation rMSE, feature loss and Sinkhorn term."""
        rmse = float(rollout_rmse(batch, model, self.training.plan))

        feature = None
        if self.encoder is not None:
            predicted = _rollout_window(batch, model, self.training.plan)
            feature = float(feature_loss(batch.states, predicted, self.encoder))

        sinkhorn = None
        if self.training.sinkhorn is not None:
            config = attrs.evolve(self.training.sinkhorn, alpha=1.0)
            structural = self._sinkhorn(batch, model, config).structural
            sinkhorn = float(structural) if structural is not None else None

        return rmse, feature, sinkhorn

    def total(
        self,
        rmse: float,
        feature: float | None,
        sinkhorn: float | None,
    ) -> float:
        weight = self.training.weight or 0.0

        if self.training.objective == Objective.sinkhorn and sinkhorn is not None:
            return rmse + weight * sinkhorn
        if self.training.objective == Objective.feature and feature is not None:
            return rmse + weight * feature
        return rmse


def _rollout_window(
    batch: WindowBatch,
    model: EmulatorModel,
    plan: RolloutPlan,
) -> torch.Tensor:
    return rollout_concat(model, batch.states, batch.phis, plan.h)


def _check_parameters(model: EmulatorModel, epoch: int) -> None:
    for parameter in model.parameters():
        if not bool(torch.isfinite(parameter).all()):
            raise TrainingDivergedError(epoch)


def train_emulator(
    dataset: Dataset,
    model_config: EmulatorConfig,
    training: EmulatorTrainingConfig,
    *,
    output: Path,
    validation: Dataset | None = None,
    encoder: FeatureExtractor | None = None,
) -> TrainingResult:
    """Train an emulator on `dataset` and write its run directory `output`.

    `output` receives the per-epoch CSV log, the best checkpoint and `run.json`,
    the returned model holds the parameters after the last epoch.
    The validation windows come from `validation` when it holds environments and
    from `dataset` otherwise, always unblurred.
    """
    if len(dataset) == 0:
        raise ConfigurationError("cannot train on a dataset without environments")
    if model_config.dimension != dataset.spec.dimension:
        raise ConfigurationError(
            f"emulator dimension {model_config.dimension} does not match the "
            f"dataset's {dataset.spec.dimension}"
        )

    config = Config()
    plan = training.plan

    seed_everything(training.seed)
    model = EmulatorModel(model_config)
    optimizer = make_optimizer(model.parameters(), training.optimizer)

    train_set = blurred(dataset, training.blur_std)
    validation = validation if validation is not None and len(validation) else dataset
    objective = _Objective(training, train_set, encoder)

    validation_batch = _batch(
        sample_windows(
            validation,
            plan.K,
            training.validation_windows,
            derive_seed(training.seed, _VALIDATION_STREAM),
        )
    )

    output.mkdir(parents=True, exist_ok=True)
    log_rows: list[TrainingLogRow] = []
    best: tuple[float, int, tuple[float, float | None, float | None]] | None = None

    with CsvLog(
        output / config.TRAINING_LOG_FILE, fieldnames_of(TrainingLogRow)
    ) as log:
        progress = tqdm(
            range(training.epochs),
            desc=f"train {training.objective}",
            unit="epoch",
            disable=not config.show_progress,
        )

        for epoch in progress:
            with enter_epoch(epoch):
                model.train()
                totals, rmses, structurals = [], [], []
                unconverged = 0

                for step in range(training.steps_per_epoch):
                    windows = sample_windows(
                        train_set,
                        plan.K,
                        training.batch_size,
                        derive_seed(training.seed, _TRAIN_STREAM, epoch, step),
                    )

                    try:
                        terms = objective.train_terms(_batch(windows), model)
                    except RolloutDivergedError as exc:
                        raise TrainingDivergedError(epoch) from exc

                    if not math.isfinite(float(terms.total)):
                        raise TrainingDivergedError(epoch)

                    optimizer.zero_grad()
                    terms.total.backward()
                    adamw_step(model.named_parameters(), optimizer)
                    _check_parameters(model, epoch)

                    totals.append(float(terms.total))
                    rmses.append(float(terms.rmse))
                    if terms.structural is not None:
                        structurals.append(float(terms.structural))
                    unconverged += terms.unconverged

                if unconverged:
                    error.warning(
                        f"{unconverged} sinkhorn solves did not converge within "
                        "the iteration limit"
                    )

                model.eval()
                try:
                    val = objective.validation_terms(validation_batch, model)
                except RolloutDivergedError as exc:
                    raise TrainingDivergedError(epoch) from exc

                row = TrainingLogRow(
                    epoch=epoch,
                    train_loss=float(np.mean(totals)),
                    train_rmse=float(np.mean(rmses)),
                    train_structural=(
                        float(np.mean(structurals)) if structurals else None
                    ),
                    val_rmse=val[0],
                    val_feature=val[1],
                    val_sinkhorn=val[2],
                )
                log.write(row)
                log_rows.append(row)

                val_total = objective.total(*val)
                if best is None or val_total < best[0]:
                    best = (val_total, epoch, val)
                    save_emulator(model, output / config.CHECKPOINT_DIR)
                    error.info(f"new best validation objective {val_total:.6g}")

                progress.set_postfix(
                    loss=f"{row.train_loss:.4g}", val_rmse=f"{row.val_rmse:.4g}"
                )

    assert best is not None
    val_total, best_epoch, (val_rmse, val_feature, val_sinkhorn) = best

    summary = RunSummary(
        objective=str(training.objective),
        alpha=training.sinkhorn.alpha if training.sinkhorn is not None else None,
        gamma=training.sinkhorn.gamma if training.sinkhorn is not None else None,
        lambda_=training.feature.lambda_ if training.feature is not None else None,
        seed=training.seed,
        epochs=training.epochs,
        best_epoch=best_epoch,
        val_total=val_total,
        val_rmse=val_rmse,
        val_feature=val_feature,
        val_sinkhorn=val_sinkhorn,
    )
    write_json(output / config.RUN_SUMMARY_FILE, summary)

    return TrainingResult(model=model, log=tuple(log_rows), summary=summary)
