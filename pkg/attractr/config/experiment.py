"""The experiment settings, resolved from the arguments and the system defaults.

Every setting is a flag (and a TOML key of the same name). Settings which are not
given fall back to the defaults of the chosen system, then to the common ones.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import TYPE_CHECKING

import attrs
from frozendict import frozendict

from attractr.datastore import compatible_window, crop_length
from attractr.diffcore import OptimizerConfig, Precision
from attractr.dynsys import SystemKind, SystemSpec
from attractr.emulator import EmulatorConfig, RolloutPlan
from attractr.emulator.train import EmulatorTrainingConfig
from attractr.encoder import EncoderConfig, EncoderTrainingConfig, TemperatureSchedule
from attractr.error.exc import ConfigurationError
from attractr.losses import FeatureLossConfig, Objective, SinkhornConfig

if TYPE_CHECKING:
    from typing import Any

    from attractr.config._types import Arguments


SYSTEM_DEFAULTS: frozendict[SystemKind, frozendict[str, Any]] = frozendict(
    {
        SystemKind.lorenz96: frozendict(
            {
                "dimension": 40,
                "domain_length": None,
                "dt": 0.1,
                "phi_range": (10.0, 18.0),
                "modes": 16,
                "alpha": 0.01,
                "gamma": 0.02,
                "horizon": 1500,
            }
        ),
        SystemKind.kuramoto_sivashinsky: frozendict(
            {
                "dimension": 256,
                "domain_length": 50.0,
                "dt": 0.25,
                "phi_range": (1.0, 2.6),
                "modes": 32,
                "alpha": 1.0,
                "gamma": 0.05,
                "horizon": 1000,
            }
        ),
    }
)
"""Defaults which depend on the system, e.g. the time step and the loss weights."""

COMMON_DEFAULTS: frozendict[str, Any] = frozendict(
    {
        "kind": SystemKind.lorenz96,
        "spinup_steps": 50,
        "environments": 200,
        "env_seed": 0,
        "split": (0.8, 0.1, 0.1),
        "length": 2000,
        "noise": 0.3,
        "data_seed": 0,
        "dataset": Path("data"),
        "width": 64,
        "blocks": 4,
        "precision": Precision.float32,
        "activation": "gelu",
        "objective": Objective.rmse,
        "lambda_": 0.8,
        "sinkhorn_iterations": 500,
        "sinkhorn_tolerance": 1e-6,
        "epsilon_scaling": True,
        "standardise": True,
        "sample_cap": 2048,
        "rollout": 1,
        "rollout_rmse": 1,
        "window": None,
        "encoder": None,
        "encoder_blocks": 3,
        "encoder_channels": 16,
        "embedding_dim": 64,
        "tau_start": 0.3,
        "tau_end": 0.7,
        "encoder_epochs": 500,
        "crop_fraction": 0.05,
        "eval_interval": 10,
        "lr": 1e-3,
        "weight_decay": 1e-5,
        "epochs": 500,
        "batch_size": 16,
        "steps_per_epoch": 20,
        "seed": 0,
        "blur_std": 0.0,
        "rmse_horizon": 1,
        "eval_stride": 1,
        "r_grid": (0.0, 0.05, 0.1, 0.2, 0.3, 0.5),
        "robustness_horizons": None,
        "robustness_seeds": 1,
        "measurement_noise": False,
        "output": Path("runs/default"),
        "force": False,
    }
)

DEFAULT_WINDOW = 31
"""Training window K of the rMSE and Sinkhorn objectives."""


@attrs.frozen
class SystemSection:
    kind: SystemKind
    dimension: int
    domain_length: float | None
    dt: float
    spinup_steps: int


@attrs.frozen
class EnvironmentSection:
    count: int
    phi_range: tuple[float, float]
    env_seed: int
    split: tuple[float, float, float]


@attrs.frozen
class DataSection:
    length: int
    noise: float
    data_seed: int
    dataset: Path


@attrs.frozen
class ModelSection:
    width: int
    blocks: int
    modes: int
    precision: Precision
    activation: str


@attrs.frozen
class LossSection:
    objective: Objective
    alpha: float
    gamma: float
    lambda_: float
    sinkhorn_iterations: int
    sinkhorn_tolerance: float
    epsilon_scaling: bool
    standardise: bool
    sample_cap: int
    rollout: int
    rollout_rmse: int
    window: int


@attrs.frozen
class EncoderSection:
    encoder: Path | None
    blocks: int
    channels: int
    embedding_dim: int
    tau_start: float
    tau_end: float
    epochs: int
    crop_fraction: float
    eval_interval: int


@attrs.frozen
class OptimizerSection:
    lr: float
    weight_decay: float


@attrs.frozen
class TrainingSection:
    epochs: int
    batch_size: int
    steps_per_epoch: int
    seed: int
    blur_std: float


@attrs.frozen
class EvaluationSection:
    horizon: int
    rmse_horizon: int
    stride: int
    r_grid: tuple[float, ...]
    robustness_horizons: tuple[int, ...]
    robustness_seeds: int
    measurement_noise: bool


@attrs.frozen
class OutputSection:
    output: Path
    force: bool


def _resolve(settings: dict[str, Any], kind: SystemKind) -> dict[str, Any]:
    return {**COMMON_DEFAULTS, **SYSTEM_DEFAULTS[kind], **settings, "kind": kind}


def _optional_float(value: Any) -> float | None:
    return float(value) if value is not None else None


def _encoder_window(length: int, crop_fraction: float, rollout: int) -> int:
    return compatible_window(crop_length(length, crop_fraction), rollout)


@attrs.frozen
class ExperimentConfig:
    """Every setting of an experiment, grouped as in the experiment TOML."""

    system: SystemSection
    environments: EnvironmentSection
    data: DataSection
    model: ModelSection
    loss: LossSection
    encoder: EncoderSection
    optimizer: OptimizerSection
    training: TrainingSection
    evaluation: EvaluationSection
    output: OutputSection

    @classmethod
    def from_arguments(cls, arguments: Arguments) -> ExperimentConfig:
        settings = arguments.settings()
        kind = SystemKind(settings.get("kind", COMMON_DEFAULTS["kind"]))
        s = _resolve(settings, kind)

        objective = Objective(s["objective"])
        encoder_window = _encoder_window(s["length"], s["crop_fraction"], s["rollout"])

        window = s["window"]
        if window is None:
            base = encoder_window if objective == Objective.feature else DEFAULT_WINDOW
            segment = math.lcm(s["rollout"] + 1, s["rollout_rmse"] + 1)
            window = compatible_window(base, segment - 1)

        config = cls(
            system=SystemSection(
                kind=kind,
                dimension=int(s["dimension"]),
                domain_length=_optional_float(s["domain_length"]),
                dt=float(s["dt"]),
                spinup_steps=int(s["spinup_steps"]),
            ),
            environments=EnvironmentSection(
                count=int(s["environments"]),
                phi_range=(float(s["phi_range"][0]), float(s["phi_range"][1])),
                env_seed=int(s["env_seed"]),
                split=tuple(float(f) for f in s["split"]),  # type: ignore[arg-type]
            ),
            data=DataSection(
                length=int(s["length"]),
                noise=float(s["noise"]),
                data_seed=int(s["data_seed"]),
                dataset=Path(s["dataset"]),
            ),
            model=ModelSection(
                width=int(s["width"]),
                blocks=int(s["blocks"]),
                modes=int(s["modes"]),
                precision=Precision(s["precision"]),
                activation=str(s["activation"]),
            ),
            loss=LossSection(
                objective=objective,
                alpha=float(s["alpha"]),
                gamma=float(s["gamma"]),
                lambda_=float(s["lambda_"]),
                sinkhorn_iterations=int(s["sinkhorn_iterations"]),
                sinkhorn_tolerance=float(s["sinkhorn_tolerance"]),
                epsilon_scaling=bool(s["epsilon_scaling"]),
                standardise=bool(s["standardise"]),
                sample_cap=int(s["sample_cap"]),
                rollout=int(s["rollout"]),
                rollout_rmse=int(s["rollout_rmse"]),
                window=int(window),
            ),
            encoder=EncoderSection(
                encoder=Path(s["encoder"]) if s["encoder"] is not None else None,
                blocks=int(s["encoder_blocks"]),
                channels=int(s["encoder_channels"]),
                embedding_dim=int(s["embedding_dim"]),
                tau_start=float(s["tau_start"]),
                tau_end=float(s["tau_end"]),
                epochs=int(s["encoder_epochs"]),
                crop_fraction=float(s["crop_fraction"]),
                eval_interval=int(s["eval_interval"]),
            ),
            optimizer=OptimizerSection(
                lr=float(s["lr"]),
                weight_decay=float(s["weight_decay"]),
            ),
            training=TrainingSection(
                epochs=int(s["epochs"]),
                batch_size=int(s["batch_size"]),
                steps_per_epoch=int(s["steps_per_epoch"]),
                seed=int(s["seed"]),
                blur_std=float(s["blur_std"]),
            ),
            evaluation=EvaluationSection(
                horizon=int(s["horizon"]),
                rmse_horizon=int(s["rmse_horizon"]),
                stride=int(s["eval_stride"]),
                r_grid=tuple(float(r) for r in s["r_grid"]),
                robustness_horizons=tuple(
                    int(h) for h in s["robustness_horizons"] or (s["horizon"],)
                ),
                robustness_seeds=int(s["robustness_seeds"]),
                measurement_noise=bool(s["measurement_noise"]),
            ),
            output=OutputSection(output=Path(s["output"]), force=bool(s["force"])),
        )
        config.validate()

        return config

    def validate(self) -> None:
        """Raise `ConfigurationError` for settings no command could run with."""
        lo, hi = self.environments.phi_range
        if lo >= hi:
            raise ConfigurationError(f"phi range must have lo < hi, got [{lo}, {hi}]")

        if self.environments.count < 1:
            raise ConfigurationError(
                f"environments must be >= 1, got {self.environments.count}"
            )

        if self.data.length < 1 or self.data.noise < 0:
            raise ConfigurationError(
                f"length must be >= 1 and noise >= 0, got {self.data.length}, "
                f"{self.data.noise}"
            )

        if self.training.blur_std < 0:
            raise ConfigurationError(
                f"blur std must be >= 0, got {self.training.blur_std}"
            )

        if min(self.evaluation.robustness_horizons) < 1:
            raise ConfigurationError(
                "robustness horizons must be >= 1, got "
                f"{list(self.evaluation.robustness_horizons)}"
            )

        if self.loss.window > self.data.length:
            raise ConfigurationError(
                f"window K={self.loss.window} exceeds the trajectory length "
                f"T={self.data.length}"
            )

        # Constructed for their own validation
        self.system_spec()
        self.emulator_config()
        self.rollout_plan()
        self.sinkhorn_config()
        self.feature_config()
        self.optimizer_config()
        self.temperature_schedule()

    def system_spec(self) -> SystemSpec:
        return SystemSpec(
            kind=self.system.kind,
            dimension=self.system.dimension,
            dt=self.system.dt,
            spinup_steps=self.system.spinup_steps,
            domain_length=self.system.domain_length,
        )

    def emulator_config(self) -> EmulatorConfig:
        return EmulatorConfig(
            dimension=self.system.dimension,
            width=self.model.width,
            blocks=self.model.blocks,
            modes=self.model.modes,
            activation=self.model.activation,
        )

    def rollout_plan(self) -> RolloutPlan:
        return RolloutPlan(
            K=self.loss.window, h=self.loss.rollout, h_rmse=self.loss.rollout_rmse
        )

    def sinkhorn_config(self) -> SinkhornConfig:
        return SinkhornConfig(
            gamma=self.loss.gamma,
            alpha=self.loss.alpha,
            max_iterations=self.loss.sinkhorn_iterations,
            tolerance=self.loss.sinkhorn_tolerance,
            epsilon_scaling=self.loss.epsilon_scaling,
            sample_cap=self.loss.sample_cap,
        )

    def feature_config(self) -> FeatureLossConfig:
        return FeatureLossConfig(lambda_=self.loss.lambda_)

    def optimizer_config(self) -> OptimizerConfig:
        return OptimizerConfig(
            lr=self.optimizer.lr, weight_decay=self.optimizer.weight_decay
        )

    @property
    def encoder_window(self) -> int:
        """Encoder crop K, a window of K+1 states compatible with the rollout."""
        return _encoder_window(
            self.data.length, self.encoder.crop_fraction, self.loss.rollout
        )

    def encoder_config(self) -> EncoderConfig:
        return EncoderConfig(
            dimension=self.system.dimension,
            window_length=self.encoder_window + 1,
            blocks=self.encoder.blocks,
            channels=self.encoder.channels,
            embedding_dim=self.encoder.embedding_dim,
        )

    def temperature_schedule(self) -> TemperatureSchedule:
        return TemperatureSchedule(
            total_epochs=self.encoder.epochs,
            tau_start=self.encoder.tau_start,
            tau_end=self.encoder.tau_end,
        )

    def encoder_training(self) -> EncoderTrainingConfig:
        return EncoderTrainingConfig(
            epochs=self.encoder.epochs,
            schedule=self.temperature_schedule(),
            batch_size=self.training.batch_size * 4,
            steps_per_epoch=self.training.steps_per_epoch,
            eval_interval=self.encoder.eval_interval,
            seed=self.training.seed,
            optimizer=self.optimizer_config(),
        )

    def emulator_training(self) -> EmulatorTrainingConfig:
        objective = self.loss.objective

        return EmulatorTrainingConfig(
            objective=objective,
            plan=self.rollout_plan(),
            epochs=self.training.epochs,
            batch_size=self.training.batch_size,
            steps_per_epoch=self.training.steps_per_epoch,
            seed=self.training.seed,
            blur_std=self.training.blur_std,
            standardise=self.loss.standardise,
            optimizer=self.optimizer_config(),
            sinkhorn=(
                self.sinkhorn_config() if objective == Objective.sinkhorn else None
            ),
            feature=self.feature_config() if objective == Objective.feature else None,
        )
