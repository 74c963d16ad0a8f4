from __future__ import annotations

import argparse
from pathlib import Path
from unittest import mock

import pytest

from attractr.cli.parser import (
    _parse_experiment_config,
    _translate_toml_conf_to_sys_args,
    parse_arguments,
)
from attractr.cli.toml import (
    DuplicateTomlKeyError,
    flatten_experiment_toml,
    parse_experiment_toml,
)
from attractr.config import Command
from attractr.config.experiment import ExperimentConfig
from attractr.dynsys import SystemKind
from attractr.losses import Objective


class TestFlatten:
    def test_sections_are_merged(self, toml_experiment):
        flat = flatten_experiment_toml(toml_experiment)

        assert flat["kind"] == "kuramoto-sivashinsky"
        assert flat["phi-range"] == [1.0, 2.0]
        assert flat["warning-level"] == "all"
        assert "system" not in flat

    def test_duplicate_key(self, toml_duplicate_path):
        with pytest.raises(DuplicateTomlKeyError, match="'seed'"):
            parse_experiment_toml(toml_duplicate_path)

    def test_no_toml(self):
        assert parse_experiment_toml(None) == {}


class TestTranslate:
    def test_values(self):
        assert _translate_toml_conf_to_sys_args(
            {"seed": 1, "alpha": 0.5, "kind": "lorenz96", "split": [0.8, 0.1, 0.1]}
        ) == [
            "--seed",
            "1",
            "--alpha",
            "0.5",
            "--kind",
            "lorenz96",
            "--split",
            "0.8",
            "0.1",
            "0.1",
        ]

    def test_flags(self):
        assert _translate_toml_conf_to_sys_args(
            {"strict": True, "force": False, "standardise": False}
        ) == ["--strict", "--no-standardise"]


class TestToml:
    def test_illegal_field(self, toml_with_illegal_field, illegal_field_name):
        with pytest.raises(argparse.ArgumentError, match=illegal_field_name):
            parse_arguments(
                sys_args=["train"],
                experiment_toml_conf=toml_with_illegal_field,
                exit_on_error=False,
            )

    def test_illegal_field_is_fatal(self, toml_with_illegal_field):
        with mock.patch("sys.exit") as _exit, pytest.raises(argparse.ArgumentError):
            _parse_experiment_config(toml_with_illegal_field, None)

        assert _exit.called
        assert _exit.call_args.args == (2,)

    def test_wrong_type(self):
        with pytest.raises(argparse.ArgumentError, match="'epochs' expects type int"):
            parse_arguments(
                sys_args=["train"],
                experiment_toml_conf={"training": {"epochs": "ten"}},
                exit_on_error=False,
            )

    def test_bad_choice(self):
        with pytest.raises(argparse.ArgumentError):
            parse_arguments(
                sys_args=["train"],
                experiment_toml_conf={"kind": "lorenz63"},
                exit_on_error=False,
            )

    def test_valid_toml(self, toml_experiment):
        arguments = parse_arguments(
            sys_args=["train"],
            experiment_toml_conf=toml_experiment,
            exit_on_error=False,
        )

        assert arguments.command == Command.train
        assert arguments._warning_level == "all"
        assert arguments.kind == SystemKind.kuramoto_sivashinsky
        assert arguments.dimension == 64
        assert arguments.phi_range == [1.0, 2.0]
        assert arguments.objective == Objective.feature
        assert arguments.lambda_ == 0.4
        assert arguments.standardise is False
        assert arguments.output == Path("runs/ks")
        assert not hasattr(arguments, "alpha")

    def test_toml_from_file(self, toml_experiment_path):
        arguments = parse_arguments(
            sys_args=["generate", "-c", str(toml_experiment_path)],
            exit_on_error=False,
        )

        assert arguments.command == Command.generate
        assert arguments.experiment_toml == toml_experiment_path
        assert arguments.environments == 20

    def test_toml_is_overwritten_by_sys_args(self, toml_experiment):
        arguments = parse_arguments(
            sys_args=["train", "--seed", "7", "--standardise", "--lambda", "1.2"],
            experiment_toml_conf=toml_experiment,
            exit_on_error=False,
        )

        assert arguments.seed == 7
        assert arguments.standardise is True
        assert arguments.lambda_ == 1.2
        assert arguments.epochs == 10

    def test_resolves_to_an_experiment(self, toml_experiment):
        arguments = parse_arguments(
            sys_args=["train"],
            experiment_toml_conf=toml_experiment,
            exit_on_error=False,
        )

        experiment = ExperimentConfig.from_arguments(arguments)

        assert experiment.system.kind == SystemKind.kuramoto_sivashinsky
        assert experiment.system.domain_length == 50.0
        assert experiment.environments.count == 20
        assert experiment.loss.standardise is False
        assert experiment.feature_config().lambda_ == 0.4


class TestSubcommands:
    def test_command_is_required(self):
        with pytest.raises(argparse.ArgumentError):
            parse_arguments(sys_args=[], exit_on_error=False)

    def test_eval(self):
        arguments = parse_arguments(
            sys_args=["eval", "--stepper", "zero", "--checkpoint", "runs/a"],
            exit_on_error=False,
        )

        assert arguments.command == Command.eval
        assert arguments.stepper == "zero"
        assert arguments.checkpoint == Path("runs/a")

    def test_sweep_needs_a_grid(self):
        with pytest.raises(argparse.ArgumentError):
            parse_arguments(sys_args=["sweep"], exit_on_error=False)

    def test_sweep(self):
        arguments = parse_arguments(
            sys_args=["sweep", "--grid", "lambda=0,0.4", "--workers", "2"],
            exit_on_error=False,
        )

        assert arguments.command == Command.sweep
        assert arguments.grid == "lambda=0,0.4"
        assert arguments.workers == 2

    def test_select_lambda(self):
        arguments = parse_arguments(
            sys_args=["select-lambda", "runs/sweep"], exit_on_error=False
        )

        assert arguments.command == Command.select_lambda
        assert arguments.sweep_dir == Path("runs/sweep")

    def test_subcommand_arguments_are_not_shared(self):
        with pytest.raises(argparse.ArgumentError):
            parse_arguments(
                sys_args=["train", "--stepper", "zero"], exit_on_error=False
            )

    def test_strict(self):
        arguments = parse_arguments(
            sys_args=["robustness", "--strict"], exit_on_error=False
        )
        assert arguments.is_strict is True
