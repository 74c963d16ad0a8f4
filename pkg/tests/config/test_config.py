from __future__ import annotations

import pytest

from attractr.config import Arguments, Config, ShowWarnings
from attractr.config.util import enter_environment, enter_epoch


class TestArguments:
    @pytest.mark.parametrize(
        ("level", "expected"),
        [
            ("none", ShowWarnings(0)),
            ("default", ShowWarnings.high_priority),
            ("all", ShowWarnings.high_priority | ShowWarnings.low_priority),
        ],
    )
    def test_show_warnings(self, level, expected):
        assert Arguments(_warning_level=level).show_warnings == expected

    def test_settings(self):
        arguments = Arguments(_warning_level="all", seed=3, window=None, alpha=0.5)
        assert arguments.settings() == {"seed": 3, "alpha": 0.5}


class TestConfig:
    def test_is_a_singleton(self, config):
        assert Config() is config

    def test_progress_follows_the_warning_level(self, config, arguments):
        with arguments(_warning_level="none"):
            assert config.do_not_show_warnings
            assert not config.show_progress

        with arguments(_warning_level="default"):
            assert config.show_progress


class TestContext:
    def test_context_description(self, config):
        assert config.context_description is None

        with enter_environment(12):
            assert config.context_description == "env 12"

            with enter_epoch(3):
                assert config.context_description == "env 12, epoch 3"

        assert config.state.current_env is None
        assert config.context_description is None

    def test_restored_on_error(self, config):
        with pytest.raises(RuntimeError), enter_epoch(4):
            raise RuntimeError

        assert config.state.current_epoch is None
