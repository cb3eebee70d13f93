"""Run configuration: strict schema, validation, and round-trip serialization.

Configs are structured key/value documents (YAML, which accepts JSON).
Unknown keys are errors and every parameter is checked against the
owning module's invariants before anything is computed.
"""

from __future__ import annotations

from typing import Literal, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .disc import DiscExperiment
from .errors import ConfigError, ContractViolationError
from .measurement import SHAPE_RAISED_COSINE, SHAPES
from .weighing import MIN_SAMPLES, ShellExperiment

EXPERIMENTS = ("internal-measurement", "weighing", "disc")

ALLOWED_AXES = {
    "internal-measurement": ("tau0", "delta_z"),
    "weighing": ("delta_z", "v0"),
    "disc": ("delta_r", "T"),
}

# an axis spanning at least this ratio defaults to log spacing
LOG_SPACING_RATIO = 100.0


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class InternalMeasurementParams(_Strict):
    """Clock-pointer measurement parameters (defaults: 1024-point clock
    grid, raised-cosine window)."""

    box_energy: float = 0.0
    total_energy: float = 0.5
    shape: str = SHAPE_RAISED_COSINE
    n_tau: int = 1024
    n_z: int = 256
    pointer_center: float = 0.0
    hbar: float = 1.0
    tau0: float = 1.0
    delta_z: float = 0.1

    @model_validator(mode="after")
    def _check(self):
        if self.shape not in SHAPES:
            raise ValueError(f"shape must be one of {SHAPES}, got {self.shape!r}")
        if self.n_tau < 8 or self.n_tau % 8:
            raise ValueError(f"n_tau must be a multiple of 8 and >= 8, got {self.n_tau}")
        if self.n_z < 8 or self.n_z % 2:
            raise ValueError(f"n_z must be even and >= 8, got {self.n_z}")
        if self.hbar <= 0:
            raise ValueError(f"hbar must be > 0, got {self.hbar}")
        if self.tau0 <= 0:
            raise ValueError(f"tau0 must be > 0, got {self.tau0}")
        if self.delta_z <= 0:
            raise ValueError(f"delta_z must be > 0, got {self.delta_z}")
        return self


class WeighingParams(_Strict):
    """Shell-weighing parameters; mirrors the experiment type plus the
    launch packet width and Monte Carlo size."""

    M: float
    R: float
    m: float
    v0: float
    G: float = 1.0
    c: float = 1.0
    hbar: float = 1.0
    delta_z: float = 1.0
    n_samples: int = 10000

    @model_validator(mode="after")
    def _check(self):
        if self.v0 <= 0:
            raise ValueError(f"v0 must be > 0 for a timed run, got {self.v0}")
        if self.delta_z <= 0:
            raise ValueError(f"delta_z must be > 0, got {self.delta_z}")
        if self.n_samples < MIN_SAMPLES:
            raise ValueError(f"n_samples must be >= {MIN_SAMPLES}, got {self.n_samples}")
        try:
            self.experiment()
        except ContractViolationError as err:  # named-invariant message
            raise ValueError(str(err)) from err
        return self

    def experiment(self, **overrides) -> ShellExperiment:
        values = {"M": self.M, "R": self.R, "m": self.m, "v0": self.v0,
                  "G": self.G, "c": self.c, "hbar": self.hbar}
        values.update(overrides)
        return ShellExperiment(**values)


class DiscParams(_Strict):
    """Rotating-disc parameters; mirrors the experiment type plus the
    radial packet width and Monte Carlo size."""

    I: float
    omega: float
    m: float
    r: float
    T: float
    hbar: float = 1.0
    delta_r: float = 0.1
    n_samples: int = 10000

    @model_validator(mode="after")
    def _check(self):
        if self.delta_r <= 0:
            raise ValueError(f"delta_r must be > 0, got {self.delta_r}")
        if self.n_samples < MIN_SAMPLES:
            raise ValueError(f"n_samples must be >= {MIN_SAMPLES}, got {self.n_samples}")
        try:
            self.experiment()
        except ContractViolationError as err:
            raise ValueError(str(err)) from err
        return self

    def experiment(self, **overrides) -> DiscExperiment:
        values = {"I": self.I, "omega": self.omega, "m": self.m,
                  "r": self.r, "T": self.T, "hbar": self.hbar}
        values.update(overrides)
        return DiscExperiment(**values)


_PARAM_MODELS = {
    "internal-measurement": InternalMeasurementParams,
    "weighing": WeighingParams,
    "disc": DiscParams,
}


class SweepAxis(_Strict):
    """One swept parameter. Spacing defaults to log when the axis spans
    at least two decades, linear otherwise."""

    name: str
    min: float
    max: float
    n: int
    spacing: Optional[Literal["linear", "log"]] = None

    @model_validator(mode="after")
    def _check(self):
        if self.n < 1:
            raise ValueError(f"axis n must be >= 1, got {self.n}")
        if self.min > self.max:
            raise ValueError(f"axis min {self.min} exceeds max {self.max}")
        if self.spacing is None:
            wide = self.min > 0 and self.max / self.min >= LOG_SPACING_RATIO
            self.spacing = "log" if wide else "linear"
        if self.spacing == "log" and self.min <= 0:
            raise ValueError(f"log spacing needs min > 0, got {self.min}")
        return self

    def values(self) -> list[float]:
        import numpy as np
        if self.n == 1:
            return [self.min]
        if self.spacing == "log":
            return [float(v) for v in np.geomspace(self.min, self.max, self.n)]
        return [float(v) for v in np.linspace(self.min, self.max, self.n)]


class OutputOptions(_Strict):
    path: str = "results.csv"
    format: Literal["csv", "json"] = "csv"


class RunConfig(_Strict):
    """Complete description of one CLI/service run."""

    experiment: Literal["internal-measurement", "weighing", "disc"]
    parameters: Union[InternalMeasurementParams, WeighingParams, DiscParams]
    sweep: list[SweepAxis] = Field(default_factory=list)
    seed: int = 0
    output: OutputOptions = Field(default_factory=OutputOptions)

    @model_validator(mode="before")
    @classmethod
    def _typed_parameters(cls, data):
        if isinstance(data, dict):
            experiment = data.get("experiment")
            model = _PARAM_MODELS.get(experiment)
            if model is not None and isinstance(data.get("parameters"), dict):
                data = dict(data)
                data["parameters"] = model.model_validate(data["parameters"])
        return data

    @model_validator(mode="after")
    def _check(self):
        expected = _PARAM_MODELS[self.experiment]
        if type(self.parameters) is not expected:
            raise ValueError(
                f"parameters block does not match experiment {self.experiment!r}")
        if len(self.sweep) > 2:
            raise ValueError(f"at most 2 sweep axes, got {len(self.sweep)}")
        allowed = ALLOWED_AXES[self.experiment]
        names = [axis.name for axis in self.sweep]
        for name in names:
            if name not in allowed:
                raise ValueError(
                    f"axis {name!r} not sweepable for {self.experiment}; "
                    f"allowed: {allowed}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate sweep axis {names}")
        return self


def _validation_message(err: ValidationError) -> str:
    parts = []
    for item in err.errors():
        location = ".".join(str(p) for p in item["loc"])
        message = item["msg"]
        parts.append(f"{location}: {message}" if location else message)
    return "; ".join(parts)


def parse_config(text: str) -> RunConfig:
    """Parse and fully validate a config document."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as err:
        mark = getattr(err, "problem_mark", None)
        if mark is not None:
            raise ConfigError(str(getattr(err, "problem", err)),
                              line=mark.line + 1, column=mark.column + 1) from err
        raise ConfigError(str(err)) from err
    if not isinstance(data, dict):
        raise ConfigError(f"config must be a mapping, got {type(data).__name__}")
    try:
        return RunConfig.model_validate(data)
    except ValidationError as err:
        raise ConfigError(_validation_message(err)) from err


def serialize_config(config: RunConfig) -> str:
    """Config back as a document; parse_config returns an equal value."""
    return yaml.safe_dump(config.model_dump(mode="json"), sort_keys=True)


def config_echo(config: RunConfig) -> dict:
    """The portion of the config echoed into result files: everything
    that determines the computed numbers (the output block does not)."""
    echo = config.model_dump(mode="json")
    echo.pop("output")
    return echo
