"""The Fourier spectral emulator and its rollouts.

The training loop lives in `attractr.emulator.train`, import it from there.
"""

from __future__ import annotations

from attractr.emulator._types import (
    EmulatorConfig,
    RolloutPlan,
    RunSummary,
    Stepper,
    TrainingLogRow,
)
from attractr.emulator.model import (
    MODEL_KIND,
    EmulatorModel,
    expand_modes,
    identity_init,
    parameter_count,
    step,
)
from attractr.emulator.persist import load_emulator, save_emulator
from attractr.emulator.rollout import (
    SimulatorStepper,
    ZeroStepper,
    rollout,
    rollout_concat,
)

__all__ = [
    "MODEL_KIND",
    "EmulatorConfig",
    "EmulatorModel",
    "RolloutPlan",
    "RunSummary",
    "SimulatorStepper",
    "Stepper",
    "TrainingLogRow",
    "ZeroStepper",
    "expand_modes",
    "identity_init",
    "load_emulator",
    "parameter_count",
    "rollout",
    "rollout_concat",
    "save_emulator",
    "step",
]
