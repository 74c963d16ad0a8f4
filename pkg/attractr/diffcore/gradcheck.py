from __future__ import annotations

from typing import TYPE_CHECKING

import attrs
import torch

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from attractr.diffcore._types import DiffArray


@attrs.frozen
class GradientCheck:
    max_relative_error: float
    probes: int

    def passes(self, tolerance: float) -> bool:
        return self.max_relative_error < tolerance


def finite_difference_check(
    fn: Callable[..., DiffArray],
    inputs: Sequence[DiffArray],
    *,
    probes: int = 20,
    step: float = 1e-6,
    seed: int = 0,
) -> GradientCheck:
    """Compare reverse-mode directional derivatives against central differences.

    Each probe draws a random unit direction v over all inputs and compares
    <grad fn, v> with (fn(x + h v) - fn(x - h v)) / 2h, where h is `step` scaled by
    the largest input magnitude. Directional derivatives far below the gradient norm
    are compared on an absolute scale of 1e-6 times that norm. `fn` must return a real
    scalar.
    """
    generator = torch.Generator().manual_seed(seed)

    base = [x.detach().clone() for x in inputs]
    leaves = [x.clone().requires_grad_(True) for x in base]

    output = fn(*leaves)
    grads = torch.autograd.grad(output, leaves, allow_unused=True)
    grads = [torch.zeros_like(x) if g is None else g for x, g in zip(leaves, grads)]

    grad_norm = float(torch.sqrt(sum((g**2).sum() for g in grads)))
    scale = max(1.0, *(float(x.abs().max()) for x in base if x.numel()))
    h = step * scale

    worst = 0.0
    with torch.no_grad():
        for _ in range(probes):
            directions = [
                torch.randn(x.shape, generator=generator, dtype=x.dtype) for x in base
            ]
            norm = torch.sqrt(sum((v**2).sum() for v in directions))
            directions = [v / norm for v in directions]

            analytic = float(sum((g * v).sum() for g, v in zip(grads, directions)))

            plus = fn(*(x + h * v for x, v in zip(base, directions)))
            minus = fn(*(x - h * v for x, v in zip(base, directions)))
            numeric = float((plus - minus) / (2.0 * h))

            denominator = max(abs(analytic), abs(numeric), 1e-6 * grad_norm, 1e-300)
            worst = max(worst, abs(analytic - numeric) / denominator)

    return GradientCheck(max_relative_error=worst, probes=probes)
