"""Debiased entropic optimal transport between two equally sized sample sets.

The ground cost is C_ij = 1/2 |s_i - t_j|^2, the marginals are uniform and the
kernel is exp(-C / gamma). Dual potentials are found by log-domain Sinkhorn
iterations (symmetric, averaged updates) with optional epsilon scaling from the
cost diameter down to gamma, then used as constants: the returned value is a
differentiable function of the cost whose gradient is the transport plan.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import torch

from attractr import error
from attractr.error.exc import ConfigurationError, SinkhornNaNError
from attractr.losses._types import SinkhornResult

if TYPE_CHECKING:
    from attractr.diffcore import DiffArray
    from attractr.losses._types import SinkhornConfig


def cost_matrix(x: DiffArray, y: DiffArray) -> DiffArray:
    """Return C_ij = 1/2 |x_i - y_j|^2 for samples `[n, k]` and `[m, k]`."""
    centre = torch.cat([x, y], dim=0).mean(dim=0).detach()
    x = x - centre
    y = y - centre

    squared = (
        (x**2).sum(dim=-1)[:, None] + (y**2).sum(dim=-1)[None, :] - 2.0 * x @ y.T
    )
    return 0.5 * squared.clamp_min(0.0)


def _softmin(
    epsilon: float,
    cost: DiffArray,
    log_weights: DiffArray,
    potential: DiffArray,
) -> DiffArray:
    """Return -eps * logsumexp_j(log w_j + (potential_j - C_ij) / eps), per row i."""
    return -epsilon * torch.logsumexp(
        log_weights[None, :] + (potential[None, :] - cost) / epsilon, dim=1
    )


def _marginal_errors(
    cost: DiffArray,
    f: DiffArray,
    g: DiffArray,
    log_a: DiffArray,
    log_b: DiffArray,
    gamma: float,
) -> tuple[float, float]:
    log_plan = (
        log_a[:, None] + log_b[None, :] + (f[:, None] + g[None, :] - cost) / gamma
    )
    plan = torch.exp(log_plan)

    row_error = float((plan.sum(dim=1) - torch.exp(log_a)).abs().sum())
    column_error = float((plan.sum(dim=0) - torch.exp(log_b)).abs().sum())

    return row_error, column_error


def _epsilon_schedule(cost: DiffArray, config: SinkhornConfig) -> list[float]:
    if not config.epsilon_scaling:
        return []

    epsilon = float(cost.max())
    schedule: list[float] = []

    while epsilon > config.gamma:
        schedule.append(epsilon)
        epsilon *= config.scaling_factor

    return schedule


@torch.no_grad()
def solve_potentials(
    cost: DiffArray,
    config: SinkhornConfig,
) -> tuple[DiffArray, DiffArray, bool, int]:
    """Return the dual potentials (f, g), whether they converged and the iterations.

    Convergence means both marginal L1 errors are below the tolerance.
    """
    n, m = cost.shape
    log_a = torch.full((n,), -math.log(n), dtype=cost.dtype)
    log_b = torch.full((m,), -math.log(m), dtype=cost.dtype)

    f = torch.zeros(n, dtype=cost.dtype)
    g = torch.zeros(m, dtype=cost.dtype)

    for epsilon in _epsilon_schedule(cost, config):
        f_next = _softmin(epsilon, cost, log_b, g)
        g_next = _softmin(epsilon, cost.T, log_a, f)
        f, g = 0.5 * (f + f_next), 0.5 * (g + g_next)

    gamma = config.gamma
    for iteration in range(1, config.max_iterations + 1):
        f_next = _softmin(gamma, cost, log_b, g)
        g_next = _softmin(gamma, cost.T, log_a, f)
        f, g = 0.5 * (f + f_next), 0.5 * (g + g_next)

        row_error, column_error = _marginal_errors(cost, f, g, log_a, log_b, gamma)
        if row_error < config.tolerance and column_error < config.tolerance:
            return f, g, True, iteration

    return f, g, False, config.max_iterations


def entropic_ot(
    x: DiffArray,
    y: DiffArray,
    config: SinkhornConfig,
) -> tuple[DiffArray, bool, int]:
    """Return the entropic OT value between the uniform measures on x and y."""
    cost = cost_matrix(x, y)

    if not torch.isfinite(cost).all():
        raise SinkhornNaNError("the transport cost matrix is not finite")

    f, g, converged, iterations = solve_potentials(cost.detach(), config)

    n, m = cost.shape
    log_a = torch.full((n,), -math.log(n), dtype=cost.dtype)
    log_b = torch.full((m,), -math.log(m), dtype=cost.dtype)

    f_of_cost = _softmin(config.gamma, cost, log_b, g)
    g_of_cost = _softmin(config.gamma, cost.T, log_a, f)

    value = 0.5 * (f_of_cost.mean() + g.mean() + f.mean() + g_of_cost.mean())
    return value, converged, iterations


def sinkhorn_divergence(
    S: DiffArray,
    S_hat: DiffArray,
    config: SinkhornConfig,
    *,
    warn: bool = True,
) -> SinkhornResult:
    """Return OT(S, S_hat) - (OT(S, S) + OT(S_hat, S_hat)) / 2.

    For singletons this is exactly 1/2 |s - s_hat|^2. Samples are `[n, k]`, both
    sets must be of the same size.
    """
    if S.ndim != 2 or S_hat.ndim != 2 or S.shape != S_hat.shape or S.shape[0] < 1:
        raise ConfigurationError(
            "sinkhorn divergence expects equal [n, k] sample sets, "
            f"got {list(S.shape)} and {list(S_hat.shape)}"
        )

    cross, cross_converged, cross_iterations = entropic_ot(S, S_hat, config)
    self_s, s_converged, s_iterations = entropic_ot(S, S, config)
    self_hat, hat_converged, hat_iterations = entropic_ot(S_hat, S_hat, config)

    converged = cross_converged and s_converged and hat_converged
    iterations = max(cross_iterations, s_iterations, hat_iterations)

    if warn and not cross_converged:
        error.warning(
            f"sinkhorn did not converge within {config.max_iterations} iterations "
            f"(gamma={config.gamma}, tolerance={config.tolerance})"
        )
    elif warn and not converged:
        # self terms have near-diagonal plans which stall at small gamma
        error.info(
            f"sinkhorn self terms did not converge within {config.max_iterations} "
            f"iterations (gamma={config.gamma})"
        )

    return SinkhornResult(
        value=cross - 0.5 * (self_s + self_hat),
        converged=converged,
        iterations=iterations,
    )
