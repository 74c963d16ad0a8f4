from __future__ import annotations

import pytest
import torch

from attractr.diffcore import (
    Precision,
    load_checkpoint,
    read_model_kind,
    save_checkpoint,
    seed_everything,
    set_precision,
)
from attractr.diffcore.checkpoint import PARAMS_FILE
from attractr.emulator import EmulatorConfig, EmulatorModel
from attractr.error.exc import DatasetFormatError, TruncatedFileError


@pytest.fixture
def model(float64) -> EmulatorModel:
    seed_everything(0)
    return EmulatorModel(EmulatorConfig(dimension=16, width=8, blocks=2, modes=4))


class TestCheckpoint:
    def test_round_trip(self, model, tmp_path):
        save_checkpoint(tmp_path, kind="emulator", config=model.config, module=model)
        config, state = load_checkpoint(tmp_path, config_type=EmulatorConfig)

        assert config == model.config
        assert read_model_kind(tmp_path) == "emulator"
        for name, parameter in model.state_dict().items():
            assert torch.equal(state[name], parameter), name

    def test_complex_parameters_keep_their_imaginary_part(self, model, tmp_path):
        save_checkpoint(tmp_path, kind="emulator", config=model.config, module=model)
        _, state = load_checkpoint(tmp_path, config_type=EmulatorConfig)

        complex_names = [n for n, p in state.items() if p.is_complex()]
        assert complex_names
        assert all(state[n].imag.abs().sum() > 0 for n in complex_names)

    def test_truncated_parameters(self, model, tmp_path):
        save_checkpoint(tmp_path, kind="emulator", config=model.config, module=model)
        params = tmp_path / PARAMS_FILE
        params.write_bytes(params.read_bytes()[:-4])

        with pytest.raises(TruncatedFileError):
            load_checkpoint(tmp_path, config_type=EmulatorConfig)

    def test_missing_checkpoint(self, tmp_path):
        with pytest.raises(DatasetFormatError):
            read_model_kind(tmp_path)


class TestPrecision:
    @pytest.mark.parametrize("precision", list(Precision), ids=str)
    def test_set_precision(self, precision):
        assert set_precision(precision) == precision.dtype
        assert torch.get_default_dtype() == precision.dtype
        assert torch.zeros(1).dtype == precision.dtype

    def test_seed_everything(self):
        seed_everything(3)
        a = torch.rand(4)
        seed_everything(3)

        assert torch.equal(torch.rand(4), a)
