from __future__ import annotations

import math

import numpy as np
import pytest
import torch

from attractr.datastore import sample_eval_pairs
from attractr.diffcore import finite_difference_check
from attractr.encoder import (
    TemperatureSchedule,
    infonce_loss,
    top1_accuracy,
    top1_from_embeddings,
)
from attractr.error.exc import ConfigurationError, PrimitiveShapeError


def _unit(n: int, p: int, seed: int) -> torch.Tensor:
    x = torch.randn(n, p, generator=torch.Generator().manual_seed(seed))
    return x / x.norm(dim=1, keepdim=True)


def _infonce_by_loops(anchors: torch.Tensor, positives: torch.Tensor, tau: float):
    total = 0.0
    n = len(anchors)

    for i in range(n):
        positive = float(anchors[i] @ positives[i]) / tau
        negatives = [
            math.exp(float(anchors[i] @ positives[j]) / tau)
            for j in range(n)
            if j != i
        ]
        total += -positive + math.log(sum(negatives) / (n - 1))

    return total / n


class TestInfoNCE:
    def test_single_pair(self):
        a = torch.tensor([[1.0, 0.0]])
        assert float(infonce_loss(a, a, tau=0.5)) == pytest.approx(-2.0)

    def test_indistinguishable_batch(self):
        a = torch.tensor([[1.0, 0.0]]).repeat(3, 1)
        assert float(infonce_loss(a, a, tau=0.3)) == pytest.approx(0.0, abs=1e-6)

    @pytest.mark.usefixtures("float64")
    def test_matches_explicit_sum(self):
        anchors, positives = _unit(5, 4, seed=0), _unit(5, 4, seed=1)

        loss = infonce_loss(anchors, positives, tau=0.7)

        assert float(loss) == pytest.approx(_infonce_by_loops(anchors, positives, 0.7))

    def test_gradient(self):
        anchors = _unit(4, 3, seed=0).requires_grad_(True)

        infonce_loss(anchors, _unit(4, 3, seed=1), tau=0.5).backward()

        assert anchors.grad is not None
        assert bool(torch.isfinite(anchors.grad).all())

    def test_gradient_matches_finite_differences(self, float64):
        anchors, positives = _unit(6, 4, seed=0), _unit(6, 4, seed=1)

        check = finite_difference_check(
            lambda a, p: infonce_loss(a, p, tau=0.5), [anchors, positives]
        )

        assert check.probes >= 20
        assert check.passes(1e-4)

    def test_invalid_temperature(self):
        a = _unit(2, 3, seed=0)
        with pytest.raises(ConfigurationError):
            infonce_loss(a, a, tau=0.0)

    def test_invalid_shapes(self):
        with pytest.raises(PrimitiveShapeError):
            infonce_loss(_unit(2, 3, seed=0), _unit(3, 3, seed=0), tau=0.5)


class TestTop1:
    def test_one_hot_embeddings(self):
        eye = torch.eye(4)
        assert top1_from_embeddings(eye, eye) == 1.0

    def test_shuffled_candidates(self):
        eye = torch.eye(4)
        assert top1_from_embeddings(eye, eye.roll(1, dims=0)) == 0.0

    def test_ties_go_to_the_lower_index(self):
        queries = torch.ones(2, 2)
        assert top1_from_embeddings(queries, queries) == 0.5

    def test_empty(self):
        assert math.isnan(top1_from_embeddings(torch.zeros(0, 3), torch.zeros(0, 3)))

    def test_accuracy_of_an_environment_embedder(self, tiny_dataset):
        class _Phi:
            """Embeds a window by its normalised first state."""

            def embed(self, window):
                first = window[:, 0, :]
                return first / first.norm(dim=1, keepdim=True)

        pairs = sample_eval_pairs(tiny_dataset, 0, seed=0)
        same = [(q, q) for q, _ in pairs]

        assert top1_accuracy(_Phi(), same) == 1.0
        assert math.isnan(top1_accuracy(_Phi(), []))


class TestTemperatureSchedule:
    def test_warmup_then_step(self):
        schedule = TemperatureSchedule(total_epochs=10)

        taus = [schedule.tau(epoch) for epoch in range(10)]

        assert taus[:5] == [0.3] * 5
        assert taus[5:] == pytest.approx([0.7] * 5)

    def test_linear_ramp(self):
        schedule = TemperatureSchedule(total_epochs=10, ramp_epochs=4)

        assert np.allclose(
            [schedule.tau(epoch) for epoch in range(4, 10)],
            [0.3, 0.4, 0.5, 0.6, 0.7, 0.7],
        )

    def test_explicit_warmup(self):
        schedule = TemperatureSchedule(total_epochs=10, warmup_epochs=0)
        assert schedule.tau(0) == pytest.approx(0.7)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"tau_start": 0.0},
            {"tau_start": 0.8, "tau_end": 0.7},
            {"ramp_epochs": 0},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ConfigurationError):
            TemperatureSchedule(total_epochs=10, **kwargs)
