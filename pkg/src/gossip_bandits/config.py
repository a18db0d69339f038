"""Experiment configuration: defaults, file loading, CLI overrides."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path

from .policies import (
    DEFAULT_DECAY,
    DEFAULT_EPSILON,
    DEFAULT_MEAN_FLOOR,
    INIT_ORDERS,
    POLICY_NAMES,
)

OUTPUT_FORMATS = ("csv", "json")

# Desk-scale mean vectors: one with widely spread arms, one with two
# tight clusters of nearly interchangeable arms.
SPREAD_MEANS = (0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1, 0.01)
CLUSTERED_MEANS = (0.7, 0.68, 0.66, 0.64, 0.62, 0.4, 0.38, 0.36, 0.34, 0.32)

DEFAULT_ALPHAS = tuple(round(0.1 * i, 1) for i in range(11))


class ConfigError(ValueError):
    """Invalid experiment configuration; reported before any turn runs."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to re-run an experiment bit-identically."""

    means: tuple[float, ...] = SPREAD_MEANS
    n_players: int = 5
    algorithm: str = "thompson"
    alphas: tuple[float, ...] = DEFAULT_ALPHAS
    turns: int = 5000
    repetitions: int = 50
    base_seed: int = 0
    epsilon0: float = DEFAULT_EPSILON
    decay: float = DEFAULT_DECAY
    mean_floor: float = DEFAULT_MEAN_FLOOR
    init_order: str = "sequential"
    checkpoints: tuple[int, ...] = ()
    out_path: str | None = None
    out_format: str = "csv"

    def __post_init__(self) -> None:
        object.__setattr__(self, "means", tuple(float(m) for m in self.means))
        object.__setattr__(self, "alphas", tuple(float(a) for a in self.alphas))
        object.__setattr__(self, "checkpoints", tuple(int(t) for t in self.checkpoints))
        self._validate()

    def _validate(self) -> None:
        n_arms = len(self.means)
        if n_arms < 2:
            raise ConfigError(f"need at least 2 arms, got {n_arms}")
        if any(not 0.0 <= m <= 1.0 for m in self.means):
            raise ConfigError(f"arm means must lie in [0, 1], got {list(self.means)}")
        if self.algorithm not in POLICY_NAMES:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}, expected one of {POLICY_NAMES}")
        min_players = 2 if self.algorithm == "asympopt" else 1
        if not min_players <= self.n_players < n_arms:
            raise ConfigError(
                f"n_players must satisfy {min_players} <= N < {n_arms} arms, got {self.n_players}"
            )
        if not self.alphas:
            raise ConfigError("need at least one connectivity value")
        if any(not 0.0 <= a <= 1.0 for a in self.alphas):
            raise ConfigError(f"connectivity values must lie in [0, 1], got {list(self.alphas)}")
        if self.turns < n_arms:
            raise ConfigError(
                f"turns must be >= {n_arms} so the pull-each-arm-once phase fits, got {self.turns}"
            )
        if self.repetitions < 1:
            raise ConfigError(f"repetitions must be >= 1, got {self.repetitions}")
        if not 0.0 <= self.epsilon0 <= 1.0:
            raise ConfigError(f"epsilon0 {self.epsilon0} outside [0, 1]")
        if not 0.0 < self.decay < 1.0:
            raise ConfigError(f"decay {self.decay} outside (0, 1)")
        if self.mean_floor <= 0.0:
            raise ConfigError(f"mean_floor must be positive, got {self.mean_floor}")
        if self.init_order not in INIT_ORDERS:
            raise ConfigError(f"unknown init_order {self.init_order!r}, expected one of {INIT_ORDERS}")
        if any(not 1 <= t <= self.turns for t in self.checkpoints):
            raise ConfigError(f"checkpoints must lie in [1, {self.turns}], got {list(self.checkpoints)}")
        if any(b <= a for a, b in zip(self.checkpoints, self.checkpoints[1:])):
            raise ConfigError(f"checkpoints must be strictly increasing, got {list(self.checkpoints)}")
        if self.out_format not in OUTPUT_FORMATS:
            raise ConfigError(f"unknown format {self.out_format!r}, expected one of {OUTPUT_FORMATS}")

    @property
    def n_arms(self) -> int:
        return len(self.means)

    def echo(self) -> dict:
        """JSON-safe dict of every knob, embedded in outputs for re-runs."""
        out = dataclasses.asdict(self)
        for key, value in out.items():
            if isinstance(value, tuple):
                out[key] = list(value)
        return out


def config_from_file(path: str | Path) -> ExperimentConfig:
    """Load a JSON config file; unknown keys are rejected."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    return config_from_dict(raw, source=str(path))


def config_from_dict(raw: dict, source: str = "config") -> ExperimentConfig:
    known = {f.name for f in dataclasses.fields(ExperimentConfig)}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"{source} has unknown fields: {sorted(unknown)}")
    return ExperimentConfig(**raw)


def apply_overrides(config: ExperimentConfig, **overrides) -> ExperimentConfig:
    """Replace any non-None fields, re-running validation."""
    changes = {k: v for k, v in overrides.items() if v is not None}
    return dataclasses.replace(config, **changes)
