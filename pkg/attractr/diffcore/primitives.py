"""The differentiable primitives the emulator, encoder and losses are built from.

Each primitive checks its operand shapes and raises `PrimitiveShapeError` naming
itself and the offending shapes, then defers to torch for the value and adjoint.

FFT convention: the forward transform is unnormalised and the inverse carries the
1/d factor, so ||x||^2 = (1/d) sum_k |X_k|^2 over the full spectrum.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import torch
import torch.nn.functional as F

from attractr.error.exc import PrimitiveShapeError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from attractr.diffcore._types import DiffArray


def _broadcastable(name: str, a: DiffArray, b: DiffArray) -> None:
    try:
        torch.broadcast_shapes(a.shape, b.shape)
    except RuntimeError:
        raise PrimitiveShapeError(name, a.shape, b.shape) from None


def add(a: DiffArray, b: DiffArray) -> DiffArray:
    _broadcastable("add", a, b)
    return a + b


def multiply(a: DiffArray, b: DiffArray) -> DiffArray:
    _broadcastable("multiply", a, b)
    return a * b


def matmul(a: DiffArray, b: DiffArray) -> DiffArray:
    if a.ndim == 0 or b.ndim == 0:
        raise PrimitiveShapeError("matmul", a.shape, b.shape)

    inner_a = a.shape[-1]
    inner_b = b.shape[0] if b.ndim == 1 else b.shape[-2]

    if inner_a != inner_b:
        raise PrimitiveShapeError("matmul", a.shape, b.shape)

    try:
        return torch.matmul(a, b)
    except RuntimeError:
        raise PrimitiveShapeError("matmul", a.shape, b.shape) from None


def conv1d(
    x: DiffArray,
    weight: DiffArray,
    bias: DiffArray | None = None,
    *,
    stride: int = 1,
    padding: int | str = 0,
) -> DiffArray:
    """x [B, C_in, d], weight [C_out, C_in, k]."""
    if x.ndim != 3 or weight.ndim != 3 or x.shape[1] != weight.shape[1]:
        raise PrimitiveShapeError("conv1d", x.shape, weight.shape)
    return F.conv1d(x, weight, bias, stride=stride, padding=padding)


def conv2d(
    x: DiffArray,
    weight: DiffArray,
    bias: DiffArray | None = None,
    *,
    stride: int | tuple[int, int] = 1,
    padding: int | tuple[int, int] = 0,
) -> DiffArray:
    """x [B, C_in, H, W], weight [C_out, C_in, kH, kW]."""
    if x.ndim != 4 or weight.ndim != 4 or x.shape[1] != weight.shape[1]:
        raise PrimitiveShapeError("conv2d", x.shape, weight.shape)
    return F.conv2d(x, weight, bias, stride=stride, padding=padding)


def rfft(x: DiffArray) -> DiffArray:
    """Unnormalised real FFT along the last axis, d -> d/2+1 modes."""
    if x.ndim == 0 or torch.is_complex(x):
        raise PrimitiveShapeError("rfft", x.shape)
    return torch.fft.rfft(x, dim=-1, norm="backward")


def irfft(x_hat: DiffArray, n: int) -> DiffArray:
    """Inverse of `rfft` with the 1/d factor, d/2+1 modes -> n = d samples."""
    if x_hat.ndim == 0 or x_hat.shape[-1] != n // 2 + 1:
        raise PrimitiveShapeError("irfft", x_hat.shape, (n,))
    return torch.fft.irfft(x_hat, n=n, dim=-1, norm="backward")


def gelu(x: DiffArray) -> DiffArray:
    return F.gelu(x)


def sum(x: DiffArray, dim: int | tuple[int, ...] | None = None) -> DiffArray:
    return x.sum() if dim is None else x.sum(dim=dim)


def mean(x: DiffArray, dim: int | tuple[int, ...] | None = None) -> DiffArray:
    return x.mean() if dim is None else x.mean(dim=dim)


def l2_norm(x: DiffArray, dim: int | tuple[int, ...] | None = None) -> DiffArray:
    return torch.linalg.vector_norm(x, ord=2, dim=dim)


def softmax(x: DiffArray, dim: int = -1) -> DiffArray:
    if x.ndim == 0:
        raise PrimitiveShapeError("softmax", x.shape)
    return torch.softmax(x, dim=dim)


def log(x: DiffArray) -> DiffArray:
    return torch.log(x)


def exp(x: DiffArray) -> DiffArray:
    return torch.exp(x)


def cosine_similarity(
    a: DiffArray,
    b: DiffArray,
    dim: int = -1,
    eps: float = 1e-12,
) -> DiffArray:
    """Cosine similarity along `dim`, operands of equal shape."""
    if a.shape != b.shape:
        raise PrimitiveShapeError("cosine_similarity", a.shape, b.shape)

    a_norm = l2_norm(a, dim=dim).clamp_min(eps)
    b_norm = l2_norm(b, dim=dim).clamp_min(eps)
    return (a * b).sum(dim=dim) / (a_norm * b_norm)


def gather(x: DiffArray, dim: int, index: DiffArray) -> DiffArray:
    if index.ndim != x.ndim:
        raise PrimitiveShapeError("gather", x.shape, index.shape)
    return torch.gather(x, dim, index)


def take(x: DiffArray, index: DiffArray, dim: int = 0) -> DiffArray:
    """Select whole slices of `x` along `dim` by integer index."""
    if x.ndim == 0 or index.ndim != 1:
        raise PrimitiveShapeError("take", x.shape, index.shape)
    return torch.index_select(x, dim, index)


def slice(x: DiffArray, dim: int, start: int, stop: int) -> DiffArray:
    if not 0 <= start <= stop <= x.shape[dim]:
        raise PrimitiveShapeError("slice", x.shape, (start, stop))
    return x.narrow(dim, start, stop - start)


def concatenate(xs: Sequence[DiffArray], dim: int = 0) -> DiffArray:
    if not xs:
        raise PrimitiveShapeError("concatenate")

    axis = dim % xs[0].ndim if xs[0].ndim else 0
    reference = [s for i, s in enumerate(xs[0].shape) if i != axis]

    for x in xs[1:]:
        other = [s for i, s in enumerate(x.shape) if i != axis]
        if x.ndim != xs[0].ndim or other != reference:
            raise PrimitiveShapeError("concatenate", *(x.shape for x in xs))

    return torch.cat(list(xs), dim=dim)
