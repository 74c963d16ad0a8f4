from __future__ import annotations

import pytest

from attractr.commands._util import prepare_run_directory, resolve_checkpoint
from attractr.config import Config
from attractr.error.exc import ConfigurationError, RunDirectoryExistsError


class TestPrepareRunDirectory:
    def test_creates_missing_directories(self, tmp_path):
        path = tmp_path / "runs" / "l96"

        assert prepare_run_directory(path) == path
        assert path.is_dir()

    def test_empty_directory(self, tmp_path):
        assert prepare_run_directory(tmp_path) == tmp_path

    def test_populated_directory(self, tmp_path):
        (tmp_path / "log.csv").write_text("epoch\n")

        with pytest.raises(RunDirectoryExistsError):
            prepare_run_directory(tmp_path)

    def test_populated_directory_with_force(self, tmp_path):
        (tmp_path / "log.csv").write_text("epoch\n")

        assert prepare_run_directory(tmp_path, force=True) == tmp_path

    def test_file(self, tmp_path):
        path = tmp_path / "run"
        path.write_text("")

        with pytest.raises(RunDirectoryExistsError):
            prepare_run_directory(path, force=True)


class TestResolveCheckpoint:
    def test_run_directory(self, tmp_path):
        (tmp_path / Config.CHECKPOINT_DIR).mkdir()
        assert resolve_checkpoint(tmp_path) == tmp_path / Config.CHECKPOINT_DIR

    def test_checkpoint_directory(self, tmp_path):
        assert resolve_checkpoint(tmp_path) == tmp_path

    def test_missing(self, tmp_path):
        with pytest.raises(ConfigurationError):
            resolve_checkpoint(tmp_path / "missing")
