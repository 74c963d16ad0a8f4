"""The command line arguments.

Experiment settings default to `argparse.SUPPRESS`: an unset flag leaves the value
from the experiment TOML (or the system default) alone.
"""

from __future__ import annotations

import argparse
from pathlib import Path
from typing import TYPE_CHECKING

from attractr import _version
from attractr.cli._util import multi_paragraph_wrap
from attractr.diffcore import Precision
from attractr.dynsys import SystemKind
from attractr.losses import Objective

if TYPE_CHECKING:
    from attractr.cli._argparse import ArgumentParser


_B = "\033[1m"
_R = "\033[0m"

SUPPRESS = argparse.SUPPRESS


def add_version_argument(parser: ArgumentParser) -> ArgumentParser:
    version_group = parser.add_argument_group()
    version_group.add_argument(
        "-v",
        "--version",
        action="version",
        version=f"%(prog)s {_version.version}",
    )

    return parser


def add_experiment_config_argument(parser: ArgumentParser) -> ArgumentParser:
    parser.add_argument(
        "-c",
        "--config",
        default=SUPPRESS,
        type=Path,
        required=False,
        help=multi_paragraph_wrap(
            """\
            read the experiment settings from the given TOML file, flags given on
            the command line take precedence
            """
        ),
        metavar="TOML",
        dest="experiment_toml",
    )

    return parser


def add_common_arguments(parser: ArgumentParser) -> ArgumentParser:
    """Apply the arguments common to the cli and toml."""
    parser = add_warning_level_argument(parser)
    parser = add_strict_argument(parser)
    parser = add_workers_argument(parser)

    return parser


def add_experiment_arguments(parser: ArgumentParser) -> ArgumentParser:
    """Apply the experiment settings, each also a key of the experiment TOML."""
    parser = add_system_arguments(parser)
    parser = add_environment_arguments(parser)
    parser = add_data_arguments(parser)
    parser = add_model_arguments(parser)
    parser = add_loss_arguments(parser)
    parser = add_encoder_arguments(parser)
    parser = add_optimizer_arguments(parser)
    parser = add_training_arguments(parser)
    parser = add_evaluation_arguments(parser)
    parser = add_output_arguments(parser)

    return parser


def add_warning_level_argument(parser: ArgumentParser) -> ArgumentParser:
    warning_level_group = parser.add_argument_group()
    warning_level_group.add_argument(
        "-w",
        "--warning-level",
        default=SUPPRESS,
        type=str,
        choices=["none", "default", "all"],
        help=multi_paragraph_wrap(
            f"""\
            >warnings level meaning:
            >    none    - do not show warnings or progress bars
            >    default - show warnings {_B}(default){_R}
            >    all     - show warnings and per-epoch information

            >NB: errors and fatal errors are always shown

            >TOML example: warning-level='all'
            """
        ),
        dest="_warning_level",
    )

    return parser


def add_strict_argument(parser: ArgumentParser) -> ArgumentParser:
    strict_group = parser.add_argument_group()
    strict_group.add_argument(
        "--strict",
        action="store_true",
        default=SUPPRESS,
        help=multi_paragraph_wrap(
            """\
            >make recoverable errors fatal, e.g. a diverged evaluation rollout or
            >a sweep run without its summary

            >TOML example: strict=true
            """
        ),
        dest="is_strict",
    )

    return parser


def add_workers_argument(parser: ArgumentParser) -> ArgumentParser:
    workers_group = parser.add_argument_group()
    workers_group.add_argument(
        "--workers",
        default=SUPPRESS,
        type=int,
        help=multi_paragraph_wrap(
            """\
            >number of processes for data generation and sweeps (default 1)

            >TOML example: workers=4
            """
        ),
        metavar="N",
    )

    return parser


def add_system_arguments(parser: ArgumentParser) -> ArgumentParser:
    group = parser.add_argument_group("system")
    group.add_argument(
        "--kind",
        default=SUPPRESS,
        type=SystemKind,
        choices=list(SystemKind),
        help=multi_paragraph_wrap(
            f"""\
            >the reference system, {_B}lorenz96{_R} (default) or
            >kuramoto-sivashinsky; most defaults depend on it

            >TOML example: kind='kuramoto-sivashinsky'
            """
        ),
    )
    group.add_argument(
        "--dimension",
        default=SUPPRESS,
        type=int,
        help="state dimension d (L96: 40, KS: 256)",
        metavar="D",
    )
    group.add_argument(
        "--domain-length",
        default=SUPPRESS,
        type=float,
        help="KS domain length L (50)",
        metavar="L",
    )
    group.add_argument(
        "--dt",
        default=SUPPRESS,
        type=float,
        help="time step of the data (L96: 0.1, KS: 0.25)",
    )
    group.add_argument(
        "--spinup-steps",
        default=SUPPRESS,
        type=int,
        help="steps integrated and discarded before recording (50)",
        metavar="N",
    )

    return parser


def add_environment_arguments(parser: ArgumentParser) -> ArgumentParser:
    group = parser.add_argument_group("environments")
    group.add_argument(
        "--environments",
        default=SUPPRESS,
        type=int,
        help="number of environments, i.e. trajectories (200)",
        metavar="N",
    )
    group.add_argument(
        "--phi-range",
        default=SUPPRESS,
        type=float,
        nargs=2,
        help=multi_paragraph_wrap(
            """\
            >range of the environment parameter phi, F for L96 (10 18) and the
            >anti-diffusion coefficient for KS (1.0 2.6)

            >TOML example: phi-range=[10.0, 18.0]
            """
        ),
        metavar=("LO", "HI"),
    )
    group.add_argument(
        "--env-seed",
        default=SUPPRESS,
        type=int,
        help="seed of the environment parameters and the split (0)",
        metavar="SEED",
    )
    group.add_argument(
        "--split",
        default=SUPPRESS,
        type=float,
        nargs=3,
        help="train, validation and test fractions of the environments (0.8 0.1 0.1)",
        metavar=("TRAIN", "VAL", "TEST"),
    )

    return parser


def add_data_arguments(parser: ArgumentParser) -> ArgumentParser:
    group = parser.add_argument_group("data")
    group.add_argument(
        "--length",
        default=SUPPRESS,
        type=int,
        help="recorded steps T per trajectory (2000)",
        metavar="T",
    )
    group.add_argument(
        "--noise",
        default=SUPPRESS,
        type=float,
        help="relative measurement noise r (0.3)",
        metavar="R",
    )
    group.add_argument(
        "--data-seed",
        default=SUPPRESS,
        type=int,
        help="seed of the initial conditions and the noise (0)",
        metavar="SEED",
    )
    group.add_argument(
        "--dataset",
        default=SUPPRESS,
        type=Path,
        help="dataset directory written by generate and read by the others (data)",
        metavar="PATH",
    )

    return parser


def add_model_arguments(parser: ArgumentParser) -> ArgumentParser:
    group = parser.add_argument_group("model")
    group.add_argument(
        "--width",
        default=SUPPRESS,
        type=int,
        help="channels of the spectral blocks (64)",
    )
    group.add_argument(
        "--blocks",
        default=SUPPRESS,
        type=int,
        help="number of spectral blocks (4)",
    )
    group.add_argument(
        "--modes",
        default=SUPPRESS,
        type=int,
        help="highest retained Fourier mode M (L96: 16, KS: 32)",
        metavar="M",
    )
    group.add_argument(
        "--precision",
        default=SUPPRESS,
        type=Precision,
        choices=list(Precision),
        help="floating point precision of training (float32)",
    )
    group.add_argument(
        "--activation",
        default=SUPPRESS,
        type=str,
        choices=["gelu", "identity"],
        help="activation of the spectral blocks (gelu)",
    )

    return parser


def add_loss_arguments(parser: ArgumentParser) -> ArgumentParser:
    group = parser.add_argument_group("loss")
    group.add_argument(
        "--objective",
        default=SUPPRESS,
        type=Objective,
        choices=list(Objective),
        help=multi_paragraph_wrap(
            f"""\
            >training objective:
            >    rmse     - rMSE only {_B}(default){_R}
            >    sinkhorn - rMSE plus alpha times the Sinkhorn divergence
            >    feature  - rMSE plus lambda times the encoder feature loss

            >TOML example: objective='sinkhorn'
            """
        ),
    )
    group.add_argument(
        "--alpha",
        default=SUPPRESS,
        type=float,
        help="weight of the Sinkhorn term (L96: 0.01, KS: 1)",
    )
    group.add_argument(
        "--gamma",
        default=SUPPRESS,
        type=float,
        help="entropic regularisation of the Sinkhorn term (L96: 0.02, KS: 0.05)",
    )
    group.add_argument(
        "--lambda",
        default=SUPPRESS,
        type=float,
        help="weight of the feature loss (0.8)",
        dest="lambda_",
    )
    group.add_argument(
        "--sinkhorn-iterations",
        default=SUPPRESS,
        type=int,
        help="iteration limit of the Sinkhorn solver (500)",
        metavar="N",
    )
    group.add_argument(
        "--sinkhorn-tolerance",
        default=SUPPRESS,
        type=float,
        help="marginal L1 error at which Sinkhorn stops (1e-6)",
        metavar="TOL",
    )
    group.add_argument(
        "--epsilon-scaling",
        default=SUPPRESS,
        action=argparse.BooleanOptionalAction,
        help="anneal the regularisation down to gamma first (on)",
    )
    group.add_argument(
        "--standardise",
        default=SUPPRESS,
        action=argparse.BooleanOptionalAction,
        help="standardise statistics per channel before the transport cost (on)",
    )
    group.add_argument(
        "--sample-cap",
        default=SUPPRESS,
        type=int,
        help="statistic samples per window compared by Sinkhorn (2048)",
        metavar="N",
    )
    group.add_argument(
        "--rollout",
        default=SUPPRESS,
        type=int,
        help="autonomous rollout length h of the structural term (1)",
        metavar="H",
    )
    group.add_argument(
        "--rollout-rmse",
        default=SUPPRESS,
        type=int,
        help="autonomous rollout length of the rMSE term (1)",
        metavar="H",
    )
    group.add_argument(
        "--window",
        default=SUPPRESS,
        type=int,
        help=multi_paragraph_wrap(
            """\
            >training window K, i.e. K+1 states (31, for the feature objective
            >the encoder's crop length)

            >TOML example: window=31
            """
        ),
        metavar="K",
    )

    return parser


def add_encoder_arguments(parser: ArgumentParser) -> ArgumentParser:
    group = parser.add_argument_group("encoder")
    group.add_argument(
        "--encoder",
        default=SUPPRESS,
        type=Path,
        help="trained encoder (run directory or checkpoint) for the feature objective",
        metavar="PATH",
    )
    group.add_argument(
        "--encoder-blocks",
        default=SUPPRESS,
        type=int,
        help="convolution blocks of the encoder, at least 3 (3)",
        metavar="E",
    )
    group.add_argument(
        "--encoder-channels",
        default=SUPPRESS,
        type=int,
        help="channels of the first encoder block, doubled per block (16)",
        metavar="C",
    )
    group.add_argument(
        "--embedding-dim",
        default=SUPPRESS,
        type=int,
        help="dimension of the encoder embedding (64)",
        metavar="P",
    )
    group.add_argument(
        "--tau-start",
        default=SUPPRESS,
        type=float,
        help="InfoNCE temperature of the first half of training (0.3)",
        metavar="TAU",
    )
    group.add_argument(
        "--tau-end",
        default=SUPPRESS,
        type=float,
        help="InfoNCE temperature of the second half of training (0.7)",
        metavar="TAU",
    )
    group.add_argument(
        "--encoder-epochs",
        default=SUPPRESS,
        type=int,
        help="epochs of contrastive training (500)",
        metavar="N",
    )
    group.add_argument(
        "--crop-fraction",
        default=SUPPRESS,
        type=float,
        help="encoder window as a fraction of the trajectory length (0.05)",
    )
    group.add_argument(
        "--eval-interval",
        default=SUPPRESS,
        type=int,
        help="epochs between Top-1 accuracy evaluations (10)",
        metavar="N",
    )

    return parser


def add_optimizer_arguments(parser: ArgumentParser) -> ArgumentParser:
    group = parser.add_argument_group("optimizer")
    group.add_argument(
        "--lr",
        default=SUPPRESS,
        type=float,
        help="AdamW learning rate (1e-3)",
    )
    group.add_argument(
        "--weight-decay",
        default=SUPPRESS,
        type=float,
        help="AdamW decoupled weight decay (1e-5)",
    )

    return parser


def add_training_arguments(parser: ArgumentParser) -> ArgumentParser:
    group = parser.add_argument_group("training")
    group.add_argument(
        "--epochs",
        default=SUPPRESS,
        type=int,
        help="training epochs of the emulator (500)",
        metavar="N",
    )
    group.add_argument(
        "--batch-size",
        default=SUPPRESS,
        type=int,
        help="windows per batch (16)",
        metavar="B",
    )
    group.add_argument(
        "--steps-per-epoch",
        default=SUPPRESS,
        type=int,
        help="optimiser steps per epoch (20)",
        metavar="N",
    )
    group.add_argument(
        "--seed",
        default=SUPPRESS,
        type=int,
        help="seed of initialisation and batch sampling (0)",
    )
    group.add_argument(
        "--blur-std",
        default=SUPPRESS,
        type=float,
        help="std of the spatial Gaussian blur of the training data, 0 is off (0)",
        metavar="STD",
    )

    return parser


def add_evaluation_arguments(parser: ArgumentParser) -> ArgumentParser:
    group = parser.add_argument_group("evaluation")
    group.add_argument(
        "--horizon",
        default=SUPPRESS,
        type=int,
        help="long rollout steps for the statistics (L96: 1500, KS: 1000)",
        metavar="N",
    )
    group.add_argument(
        "--rmse-horizon",
        default=SUPPRESS,
        type=int,
        help="rollout steps of the evaluation rMSE (1)",
        metavar="N",
    )
    group.add_argument(
        "--eval-stride",
        default=SUPPRESS,
        type=int,
        help="stride between the rMSE windows of a trajectory (1)",
        metavar="N",
    )
    group.add_argument(
        "--r-grid",
        default=SUPPRESS,
        type=float,
        nargs="+",
        help=multi_paragraph_wrap(
            """\
            >noise levels of the robustness sweep, ascending from 0

            >TOML example: r-grid=[0.0, 0.1, 0.3]
            """
        ),
        metavar="R",
    )
    group.add_argument(
        "--robustness-horizons",
        default=SUPPRESS,
        type=int,
        nargs="+",
        help=multi_paragraph_wrap(
            """\
            >rollout steps the robustness sweep scores the runs at (--horizon)

            >TOML example: robustness-horizons=[100, 1500]
            """
        ),
        metavar="N",
    )
    group.add_argument(
        "--robustness-seeds",
        default=SUPPRESS,
        type=int,
        help="perturbations per noise level of the robustness sweep (1)",
        metavar="N",
    )
    group.add_argument(
        "--measurement-noise",
        default=SUPPRESS,
        action=argparse.BooleanOptionalAction,
        help="also add noise to the perturbed run of the robustness sweep (off)",
    )

    return parser


def add_output_arguments(parser: ArgumentParser) -> ArgumentParser:
    group = parser.add_argument_group("output")
    group.add_argument(
        "-o",
        "--output",
        default=SUPPRESS,
        type=Path,
        help="run directory (runs/default)",
        metavar="PATH",
    )
    group.add_argument(
        "--force",
        action="store_true",
        default=SUPPRESS,
        help="overwrite a populated run directory",
    )

    return parser


def add_eval_arguments(parser: ArgumentParser) -> ArgumentParser:
    group = parser.add_argument_group("eval")
    group.add_argument(
        "--checkpoint",
        default=SUPPRESS,
        type=Path,
        help="emulator to evaluate (run directory or checkpoint)",
        metavar="PATH",
    )
    group.add_argument(
        "--stepper",
        default=SUPPRESS,
        type=str,
        choices=["emulator", "simulator", "zero"],
        help=multi_paragraph_wrap(
            f"""\
            >what to roll out:
            >    emulator  - the emulator of --checkpoint {_B}(default){_R}
            >    simulator - the reference integrator, a self-comparison
            >    zero      - the zero state, a baseline
            """
        ),
    )

    return parser


def add_sweep_arguments(parser: ArgumentParser) -> ArgumentParser:
    group = parser.add_argument_group("sweep")
    group.add_argument(
        "--grid",
        required=True,
        type=str,
        help=multi_paragraph_wrap(
            """\
            >the setting and values to sweep, one run directory per value, e.g.
            >--grid lambda=0,0.2,0.4,0.6,0.8,1.0,1.2
            """
        ),
        metavar="KEY=V1,V2,...",
    )

    return parser


def add_select_lambda_arguments(parser: ArgumentParser) -> ArgumentParser:
    parser.add_argument(
        "sweep_dir",
        type=Path,
        help="output directory of a lambda sweep",
        metavar="SWEEP_DIR",
    )

    return parser
