from __future__ import annotations

import random

import numpy as np
import torch

from attractr.diffcore._types import Precision


def set_precision(precision: Precision | str) -> torch.dtype:
    """Set the default floating point type of new arrays and parameters."""
    dtype = Precision(precision).dtype
    torch.set_default_dtype(dtype)
    return dtype


def seed_everything(seed: int) -> torch.Generator:
    """Seed the global generators and return a torch generator seeded alike."""
    random.seed(seed)
    np.random.seed(seed % 2**32)
    torch.manual_seed(seed)

    generator = torch.Generator()
    generator.manual_seed(seed)
    return generator
