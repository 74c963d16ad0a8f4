from __future__ import annotations

import argparse
from typing import TYPE_CHECKING

from attractr import error
from attractr.cli import _arguments
from attractr.cli._argparse import ArgumentParser
from attractr.cli._types import TomlArgumentType
from attractr.cli._util import get_type_name, multi_paragraph_wrap
from attractr.cli.exit_codes import EXIT_CONFIG_ERROR
from attractr.cli.toml import (
    DuplicateTomlKeyError,
    TOMLDecodeError,
    flatten_experiment_toml,
    parse_experiment_toml,
)
from attractr.config import Arguments, Command

if TYPE_CHECKING:
    from pathlib import Path
    from typing import Any, Callable, NoReturn


TOML_ARGUMENT_TYPE_MAP: dict[str, TomlArgumentType] = {
    # common
    "warning-level": TomlArgumentType.string,
    "strict": TomlArgumentType.flag,
    "workers": TomlArgumentType.int,
    # system
    "kind": TomlArgumentType.string,
    "dimension": TomlArgumentType.int,
    "domain-length": TomlArgumentType.float,
    "dt": TomlArgumentType.float,
    "spinup-steps": TomlArgumentType.int,
    # environments
    "environments": TomlArgumentType.int,
    "phi-range": TomlArgumentType.list_of_floats,
    "env-seed": TomlArgumentType.int,
    "split": TomlArgumentType.list_of_floats,
    # data
    "length": TomlArgumentType.int,
    "noise": TomlArgumentType.float,
    "data-seed": TomlArgumentType.int,
    "dataset": TomlArgumentType.string,
    # model
    "width": TomlArgumentType.int,
    "blocks": TomlArgumentType.int,
    "modes": TomlArgumentType.int,
    "precision": TomlArgumentType.string,
    "activation": TomlArgumentType.string,
    # loss
    "objective": TomlArgumentType.string,
    "alpha": TomlArgumentType.float,
    "gamma": TomlArgumentType.float,
    "lambda": TomlArgumentType.float,
    "sinkhorn-iterations": TomlArgumentType.int,
    "sinkhorn-tolerance": TomlArgumentType.float,
    "epsilon-scaling": TomlArgumentType.flag,
    "standardise": TomlArgumentType.flag,
    "sample-cap": TomlArgumentType.int,
    "rollout": TomlArgumentType.int,
    "rollout-rmse": TomlArgumentType.int,
    "window": TomlArgumentType.int,
    # encoder
    "encoder": TomlArgumentType.string,
    "encoder-blocks": TomlArgumentType.int,
    "encoder-channels": TomlArgumentType.int,
    "embedding-dim": TomlArgumentType.int,
    "tau-start": TomlArgumentType.float,
    "tau-end": TomlArgumentType.float,
    "encoder-epochs": TomlArgumentType.int,
    "crop-fraction": TomlArgumentType.float,
    "eval-interval": TomlArgumentType.int,
    # optimizer
    "lr": TomlArgumentType.float,
    "weight-decay": TomlArgumentType.float,
    # training
    "epochs": TomlArgumentType.int,
    "batch-size": TomlArgumentType.int,
    "steps-per-epoch": TomlArgumentType.int,
    "seed": TomlArgumentType.int,
    "blur-std": TomlArgumentType.float,
    # evaluation
    "horizon": TomlArgumentType.int,
    "rmse-horizon": TomlArgumentType.int,
    "eval-stride": TomlArgumentType.int,
    "r-grid": TomlArgumentType.list_of_floats,
    "robustness-horizons": TomlArgumentType.list_of_ints,
    "robustness-seeds": TomlArgumentType.int,
    "measurement-noise": TomlArgumentType.flag,
    # output
    "output": TomlArgumentType.string,
    "force": TomlArgumentType.flag,
}
"""The expected type of the settings in the experiment toml.

This is used for:
1. Type checking the provided toml settings;
2. Correctly converting toml settings to sys arguments (see TomlArgumentType docs).
"""

NEGATABLE_TOML_ARGUMENTS: frozenset[str] = frozenset(
    {"epsilon-scaling", "standardise", "measurement-noise"}
)
"""Flags which are on by default or may be switched off, `x=false` is `--no-x`."""

SUBCOMMAND_ARGUMENTS: dict[Command, Callable[[ArgumentParser], ArgumentParser]] = {
    Command.eval: _arguments.add_eval_arguments,
    Command.sweep: _arguments.add_sweep_arguments,
    Command.select_lambda: _arguments.add_select_lambda_arguments,
}

SUBCOMMAND_HELP: dict[Command, str] = {
    Command.generate: "generate the environments and the noisy trajectories",
    Command.train_encoder: "train the contrastive encoder",
    Command.train: "train an emulator with the configured objective",
    Command.eval: "evaluate an emulator (or a baseline) on the test split",
    Command.sweep: "run the train command for each value of a setting",
    Command.select_lambda: "select lambda from a sweep of the feature objective",
    Command.robustness: "measure the reference system's sensitivity to noise",
}


def parse_arguments(
    *,
    sys_args: list[str] | None = None,
    experiment_toml_conf: dict[str, Any] | None = None,
    exit_on_error: bool = True,
) -> Arguments:
    cli_parser = make_cli_parser(exit_on_error=exit_on_error)
    toml_parser = make_toml_parser()

    experiment_toml_conf = _parse_experiment_config(
        experiment_toml_conf,
        _get_experiment_toml(cli_parser, sys_args=sys_args),
        exit_on_error=exit_on_error,
    )
    toml_arguments = _translate_toml_conf_to_sys_args(experiment_toml_conf)

    # Parse the settings from the experiment toml
    # Then add/override with the arguments from the cli
    arguments = Arguments()
    try:
        toml_parser.parse_args(args=toml_arguments, namespace=arguments)
    except argparse.ArgumentError as argument_error:
        _toml_error(argument_error, exit_on_error=exit_on_error)
    cli_parser.parse_args(args=sys_args, namespace=arguments)

    return arguments


def make_cli_parser(exit_on_error: bool = True) -> ArgumentParser:
    parser = ArgumentParser(
        prog="attractr",
        description=multi_paragraph_wrap(
            """\
            Train neural emulators of chaotic systems which keep the invariant
            statistics of the attractor, from noisy trajectories of many
            environments.

            Every setting may be given in an experiment TOML (-c), flags given on the
            command line take precedence.
            """
        ),
        formatter_class=argparse.RawTextHelpFormatter,
        exit_on_error=exit_on_error,
    )
    parser = _arguments.add_version_argument(parser)

    common = ArgumentParser(add_help=False, exit_on_error=exit_on_error)
    common = _arguments.add_experiment_config_argument(common)
    common = _arguments.add_common_arguments(common)
    common = _arguments.add_experiment_arguments(common)

    subparsers = parser.add_subparsers(
        title="commands",
        dest="_command_name",
        required=True,
        metavar="COMMAND",
        parser_class=ArgumentParser,
    )
    for command in Command:
        subparser = subparsers.add_parser(
            command.value,
            parents=[common],
            help=SUBCOMMAND_HELP[command],
            description=SUBCOMMAND_HELP[command],
            formatter_class=argparse.RawTextHelpFormatter,
            exit_on_error=exit_on_error,
        )
        if (add_subcommand_arguments := SUBCOMMAND_ARGUMENTS.get(command)) is not None:
            subparser = add_subcommand_arguments(subparser)
        subparser.set_defaults(command=command)

    return parser


def make_toml_parser() -> ArgumentParser:
    parser = ArgumentParser(exit_on_error=False)
    parser = _arguments.add_common_arguments(parser)
    parser = _arguments.add_experiment_arguments(parser)

    return parser


def _get_experiment_toml(
    cli_parser: ArgumentParser,
    *,
    sys_args: list[str] | None = None,
) -> Path | None:
    """Return the experiment toml from the CLI if given, otherwise `None`."""
    cli_arguments = cli_parser.parse_args(args=sys_args, namespace=Arguments())
    experiment_toml = cli_arguments.experiment_toml

    if experiment_toml and experiment_toml.is_file():
        return experiment_toml

    return None


def _toml_error(exc: Exception, *, exit_on_error: bool) -> NoReturn:
    if exit_on_error:
        error.fatal(f"error parsing experiment toml: {exc}", EXIT_CONFIG_ERROR)
    raise exc


def _parse_experiment_config(
    input_config: dict[str, Any] | None,
    experiment_toml: Path | None,
    *,
    exit_on_error: bool = True,
) -> dict[str, Any]:
    # Allow the use of an explicit config, helpful for testing and for sweeps
    try:
        if input_config is None:
            conf = parse_experiment_toml(experiment_toml)
        else:
            conf = flatten_experiment_toml(input_config)
    except (TOMLDecodeError, DuplicateTomlKeyError) as toml_error:
        _toml_error(toml_error, exit_on_error=exit_on_error)

    try:
        conf = _validate_toml_config(conf)
    except argparse.ArgumentError as argument_error:
        _toml_error(argument_error, exit_on_error=exit_on_error)

    return conf


def _validate_toml_config(conf: dict[str, Any]) -> dict[str, Any]:
    _type_error: str = (
        "{arg!r} expects type {expected_type}, got {value!r} of type {actual_type}"
    )

    unrecognised = sorted(k for k in conf if k not in TOML_ARGUMENT_TYPE_MAP)
    if unrecognised:
        raise argparse.ArgumentError(
            None, f"unrecognised settings: {', '.join(map(repr, unrecognised))}"
        )

    for arg, value in conf.items():
        expected_type = TOML_ARGUMENT_TYPE_MAP[arg]

        if not expected_type.is_valid(value):
            _error = _type_error.format(
                arg=arg,
                value=value,
                expected_type=str(expected_type),
                actual_type=get_type_name(value),
            )
            raise argparse.ArgumentError(None, _error)

    return conf


def _translate_toml_conf_to_sys_args(toml_conf: dict[str, Any]) -> list[str]:
    """Return the toml conf translated to `sys.argv` style list.

    >>> _translate_toml_conf_to_sys_args(
    ...     {"seed": 1, "standardise": False, "phi-range": [10.0, 18.0]}
    ... )
    ['--seed', '1', '--no-standardise', '--phi-range', '10.0', '18.0']
    """
    toml_sys_args: list[str] = []

    for k, v in toml_conf.items():
        arg_name = f"--{k}"

        if isinstance(v, bool):
            if v:
                toml_sys_args += [arg_name]
            elif k in NEGATABLE_TOML_ARGUMENTS:
                toml_sys_args += [f"--no-{k}"]
        elif isinstance(v, (str, int, float)):
            toml_sys_args += [arg_name, f"{v}"]
        elif isinstance(v, list):
            toml_sys_args += [arg_name, *(f"{arg_value}" for arg_value in v)]

    return toml_sys_args
