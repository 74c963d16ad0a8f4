"""The Fourier spectral emulator u_{t+dt} = g(u_t, phi).

States are lifted together with a constant phi channel to `width` channels,
passed through spectral blocks (FFT, complex channel mixing of modes 0..M,
inverse FFT, plus a pointwise bypass, then the activation) and projected back
to one channel.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import attrs
import torch
import torch.nn.functional as F
from torch import nn

from attractr.diffcore import primitives
from attractr.emulator._types import EmulatorConfig
from attractr.error.exc import PrimitiveShapeError

if TYPE_CHECKING:
    from attractr.diffcore import DiffArray


MODEL_KIND = "emulator"


def _complex_dtype(dtype: torch.dtype) -> torch.dtype:
    return torch.complex128 if dtype == torch.float64 else torch.complex64


class SpectralMixing(nn.Module):
    """Per-mode complex linear map over channels for the retained modes 0..M."""

    def __init__(self, width: int, modes: int) -> None:
        super().__init__()
        self.width = width
        self.modes = modes

        scale = 1.0 / (width * width)
        dtype = _complex_dtype(torch.get_default_dtype())
        self.weight = nn.Parameter(
            scale * torch.randn(modes + 1, width, width, dtype=dtype)
        )

    def forward(self, x: DiffArray) -> DiffArray:
        d = x.shape[-1]
        x_hat = primitives.rfft(x)  # [B, C, d/2+1]

        retained = primitives.slice(x_hat, -1, 0, self.modes + 1)
        mixed = primitives.matmul(retained.permute(2, 0, 1), self.weight)
        mixed = mixed.permute(1, 2, 0)  # [B, C, M+1]

        padding = x_hat.shape[-1] - (self.modes + 1)
        out_hat = F.pad(mixed, (0, padding))

        return primitives.irfft(out_hat, d)


class SpectralBlock(nn.Module):
    def __init__(self, width: int, modes: int, activation: str) -> None:
        super().__init__()
        self.spectral = SpectralMixing(width, modes)
        self.bypass = nn.Conv1d(width, width, kernel_size=1)
        self.activation = activation

    def forward(self, x: DiffArray) -> DiffArray:
        y = primitives.add(
            self.spectral(x),
            primitives.conv1d(x, self.bypass.weight, self.bypass.bias),
        )

        if self.activation == "gelu":
            return primitives.gelu(y)

        return y


class EmulatorModel(nn.Module):
    """Learned stepper conditioned on the environment parameter phi."""

    def __init__(self, config: EmulatorConfig) -> None:
        super().__init__()
        self.config = config

        self.lifting = nn.Conv1d(2, config.width, kernel_size=1)
        self.blocks = nn.ModuleList(
            SpectralBlock(config.width, config.modes, config.activation)
            for _ in range(config.blocks)
        )
        self.projection = nn.Conv1d(config.width, 1, kernel_size=1)

        if config.zero_init_projection:
            nn.init.zeros_(self.projection.weight)
            nn.init.zeros_(self.projection.bias)

    @property
    def dimension(self) -> int:
        return self.config.dimension

    def forward(self, u: DiffArray, phi: DiffArray | float) -> DiffArray:
        """Advance `u` of shape `[d]` or `[B, d]` by one time step."""
        if u.ndim not in (1, 2) or u.shape[-1] != self.dimension:
            raise PrimitiveShapeError("emulator step", u.shape, (self.dimension,))

        unbatched = u.ndim == 1
        if unbatched:
            u = u[None]

        phi = torch.as_tensor(phi, dtype=u.dtype, device=u.device)
        phi_channel = phi.reshape(-1, 1, 1).expand(u.shape[0], 1, u.shape[-1])

        x = primitives.concatenate([u[:, None, :], phi_channel], dim=1)
        x = primitives.conv1d(x, self.lifting.weight, self.lifting.bias)

        for block in self.blocks:
            x = block(x)

        out = primitives.conv1d(x, self.projection.weight, self.projection.bias)
        out = out[:, 0, :]

        return out[0] if unbatched else out

    def step(self, u: DiffArray, phi: DiffArray | float) -> DiffArray:
        return self(u, phi)


def step(model: EmulatorModel, u: DiffArray, phi: DiffArray | float) -> DiffArray:
    """One differentiable forward pass of the emulator."""
    return model(u, phi)


def expand_modes(model: EmulatorModel, modes: int) -> EmulatorModel:
    """Return a copy of `model` retaining `modes` modes, new mode weights at zero.

    Outputs are unchanged since the added modes contribute nothing.
    """
    if modes < model.config.modes:
        raise PrimitiveShapeError("expand_modes", (model.config.modes,), (modes,))

    expanded = EmulatorModel(attrs.evolve(model.config, modes=modes))

    state = dict(model.state_dict())
    for name, tensor in list(state.items()):
        if name.endswith("spectral.weight"):
            padded = torch.zeros((modes + 1, *tensor.shape[1:]), dtype=tensor.dtype)
            padded[: tensor.shape[0]] = tensor
            state[name] = padded

    expanded.load_state_dict(state)
    return expanded


def parameter_count(model: nn.Module) -> int:
    """Number of real scalars, complex parameters counting twice."""
    return sum(
        p.numel() * (2 if torch.is_complex(p) else 1) for p in model.parameters()
    )


def identity_init(model: EmulatorModel) -> EmulatorModel:
    """Make `model` the identity stepper given the identity activation.

    The lifting copies u into channel 0, every bypass is the identity, spectral
    weights are zero and the projection reads channel 0.
    """
    with torch.no_grad():
        for parameter in model.parameters():
            parameter.zero_()

        model.lifting.weight[0, 0, 0] = 1.0
        for block in model.blocks:
            block.bypass.weight[:, :, 0].copy_(
                torch.eye(model.config.width, dtype=block.bypass.weight.dtype)
            )
        model.projection.weight[0, 0, 0] = 1.0

    return model
