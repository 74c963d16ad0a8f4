from __future__ import annotations

import math
from typing import TYPE_CHECKING, Protocol

import numpy as np
import torch

from attractr.diffcore import primitives
from attractr.error.exc import ConfigurationError, PrimitiveShapeError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from attractr.datastore import Window
    from attractr.diffcore import DiffArray


class Embedder(Protocol):
    def embed(self, window: DiffArray) -> DiffArray:
        """Return unit-norm embeddings `[B, p]` of windows `[B, K+1, d]`."""
        ...


def infonce_loss(anchors: DiffArray, positives: DiffArray, tau: float) -> DiffArray:
    """InfoNCE over in-batch negatives, the positive excluded from the denominator.

    loss = mean_n [ -<a_n, p_n> / tau + log mean_{m != n} exp(<a_n, p_m> / tau) ]

    A batch of one has no negatives and its denominator is taken as 1.
    """
    if tau <= 0:
        raise ConfigurationError(f"temperature must be positive, got {tau}")
    if anchors.ndim != 2 or anchors.shape != positives.shape or len(anchors) < 1:
        raise PrimitiveShapeError("infonce_loss", anchors.shape, positives.shape)

    similarity = primitives.matmul(anchors, positives.T) / tau
    positive = torch.diagonal(similarity)

    batch = similarity.shape[0]
    if batch == 1:
        return -positive.mean()

    off_diagonal = torch.eye(batch, dtype=torch.bool, device=similarity.device)
    negatives = similarity.masked_fill(off_diagonal, float("-inf"))
    log_mean = torch.logsumexp(negatives, dim=1) - math.log(batch - 1)

    return primitives.mean(log_mean - positive)


def top1_from_embeddings(queries: DiffArray, candidates: DiffArray) -> float:
    """Fraction of queries whose most similar candidate is their own.

    Row n of both arrays belongs to the same environment. Ties go to the lower
    index.
    """
    if len(queries) == 0:
        return float("nan")

    similarity = primitives.matmul(queries, candidates.T).detach().cpu().numpy()
    nearest = np.argmax(similarity, axis=1)

    return float(np.mean(nearest == np.arange(len(queries))))


@torch.no_grad()
def top1_accuracy(
    encoder: Embedder,
    eval_pairs: Sequence[tuple[Window, Window]],
    dtype: torch.dtype | None = None,
) -> float:
    """Top-1 retrieval accuracy of one (query, candidate) pair per environment."""
    if not eval_pairs:
        return float("nan")

    dtype = dtype or torch.get_default_dtype()

    queries = torch.as_tensor(np.stack([q.states for q, _ in eval_pairs]), dtype=dtype)
    candidates = torch.as_tensor(
        np.stack([c.states for _, c in eval_pairs]), dtype=dtype
    )

    return top1_from_embeddings(encoder.embed(queries), encoder.embed(candidates))
