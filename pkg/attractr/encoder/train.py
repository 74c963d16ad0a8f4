"""Contrastive training of the window encoder."""

from __future__ import annotations

import math
from contextlib import nullcontext
from typing import TYPE_CHECKING

import numpy as np
import torch
from tqdm import tqdm

from attractr import error
from attractr.config import Config
from attractr.config.util import enter_epoch
from attractr.datastore import sample_contrastive_batch, sample_eval_pairs
from attractr.diffcore import adamw_step, make_optimizer, seed_everything
from attractr.dynsys import derive_seed
from attractr.encoder._types import EncoderLogRow
from attractr.encoder.contrastive import infonce_loss, top1_accuracy
from attractr.encoder.model import EncoderModel
from attractr.error.exc import ConfigurationError, TrainingDivergedError
from attractr.util import CsvLog, fieldnames_of

if TYPE_CHECKING:
    from pathlib import Path

    from attractr.datastore import Dataset, Window
    from attractr.encoder._types import EncoderConfig, EncoderTrainingConfig


def _stack(windows: list[Window]) -> torch.Tensor:
    return torch.as_tensor(
        np.stack([w.states for w in windows]), dtype=torch.get_default_dtype()
    )


def _evaluate(
    model: EncoderModel,
    dataset: Dataset,
    K: int,
    seed: int,
) -> float:
    model.eval()
    try:
        return top1_accuracy(model, sample_eval_pairs(dataset, K, seed))
    finally:
        model.train()


def train_encoder(
    dataset: Dataset,
    config: EncoderConfig,
    training: EncoderTrainingConfig,
    *,
    validation: Dataset | None = None,
    log_path: Path | None = None,
) -> tuple[EncoderModel, list[EncoderLogRow]]:
    """Minimise InfoNCE over contrastive batches of `dataset`'s trajectories.

    Top-1 accuracy is measured on `validation` (the training set if not given)
    every `eval_interval` epochs and after the last one.
    """
    if len(dataset) < 2:
        raise ConfigurationError(
            "contrastive training needs at least 2 environments for negatives, "
            f"got {len(dataset)}"
        )
    if config.dimension != dataset.spec.dimension:
        raise ConfigurationError(
            f"encoder dimension {config.dimension} does not match the dataset's "
            f"{dataset.spec.dimension}"
        )

    seed_everything(training.seed)

    K = config.window_length - 1
    batch_size = min(training.batch_size, len(dataset))
    validation = validation if validation is not None and len(validation) else dataset

    model = EncoderModel(config)
    states = np.concatenate([t.states for t in dataset])
    model.set_input_normalisation(float(states.mean()), float(states.std()))

    optimizer = make_optimizer(model.parameters(), training.optimizer)
    rows: list[EncoderLogRow] = []

    log_context = (
        CsvLog(log_path, fieldnames_of(EncoderLogRow)) if log_path else nullcontext()
    )

    with log_context as log:
        progress = tqdm(
            range(training.epochs),
            desc="encoder",
            unit="epoch",
            disable=not Config().show_progress,
        )

        for epoch in progress:
            with enter_epoch(epoch):
                tau = training.schedule.tau(epoch)
                losses: list[float] = []

                for step in range(training.steps_per_epoch):
                    batch_seed = derive_seed(training.seed, epoch, step)
                    pairs = sample_contrastive_batch(dataset, K, batch_size, batch_seed)
                    anchors = model(_stack([a for a, _ in pairs]))
                    positives = model(_stack([p for _, p in pairs]))

                    loss = infonce_loss(anchors, positives, tau)
                    if not math.isfinite(float(loss)):
                        raise TrainingDivergedError(epoch)

                    optimizer.zero_grad()
                    loss.backward()
                    adamw_step(model.named_parameters(), optimizer)
                    losses.append(float(loss))

                top1 = None
                is_last = epoch == training.epochs - 1
                if (epoch + 1) % training.eval_interval == 0 or is_last:
                    top1 = _evaluate(
                        model, validation, K, derive_seed(training.seed, epoch)
                    )
                    error.info(f"tau {tau:.3f}, top1 accuracy {top1:.3f}")

                row = EncoderLogRow(
                    epoch=epoch, tau=tau, loss=float(np.mean(losses)), top1=top1
                )
                rows.append(row)
                if log is not None:
                    log.write(row)

                progress.set_postfix(loss=f"{row.loss:.4f}", tau=f"{tau:.2f}")

    model.eval()
    return model, rows
