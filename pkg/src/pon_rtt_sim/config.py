"""Experiment configuration: defaults, validation, file and flag loading.

Config files are flat UTF-8 ``key=value`` lines with ``#`` comments. Flags
override file values. All durations are decimal microseconds in the config
and converted once to integer ticks for the engine.
"""
from __future__ import annotations

from dataclasses import dataclass, fields, replace
from typing import Optional

from .model import us_to_ticks
from .scheduler import BASELINE, COMPLEMENT, IDEAL, POLICY_KINDS, SchedulerPolicy
from .stochastic import ComplementModel, DeviationModel, TrafficModel


class ConfigError(ValueError):
    """Invalid configuration; message names the offending key."""


@dataclass(frozen=True)
class ExperimentConfig:
    onus: int = 64
    cycles: int = 20
    delta_x_us: float = 1.0
    scheduler: str = BASELINE
    complement_mode: str = "uniform"
    complement_max_us: Optional[float] = None  # None -> delta_x_us (pad range [0, delta_x])
    complement_value_us: float = 0.0
    traffic: str = "uniform"
    traffic_min_us: float = 1.0
    traffic_max_us: float = 11.8  # mean 6.4 us
    traffic_length_us: float = 6.4
    base_rtt_min_us: float = 50.0
    base_rtt_max_us: float = 200.0
    guard_time_us: float = 0.0
    seed: int = 1
    output: str = "csv"
    sort: str = "cycle"

    def validate(self) -> "ExperimentConfig":
        if self.onus < 1:
            raise ConfigError("onus: must be >= 1")
        if self.cycles < 1:
            raise ConfigError("cycles: must be >= 1")
        if self.delta_x_us < 0:
            raise ConfigError("delta_x_us: must be >= 0")
        if self.scheduler not in POLICY_KINDS:
            raise ConfigError(f"scheduler: must be one of {'|'.join(POLICY_KINDS)}")
        if self.complement_mode not in ("uniform", "constant"):
            raise ConfigError("complement_mode: must be uniform or constant")
        if self.complement_max_us is not None and self.complement_max_us < 0:
            raise ConfigError("complement_max_us: must be >= 0")
        if self.complement_value_us < 0:
            raise ConfigError("complement_value_us: must be >= 0")
        if self.traffic not in ("uniform", "constant"):
            raise ConfigError("traffic: must be uniform or constant")
        if self.traffic == "uniform":
            if self.traffic_min_us <= 0 or self.traffic_max_us < self.traffic_min_us:
                raise ConfigError("traffic_min_us/traffic_max_us: need 0 < min <= max")
        elif self.traffic_length_us <= 0:
            raise ConfigError("traffic_length_us: must be > 0")
        if self.base_rtt_min_us <= 0 or self.base_rtt_max_us < self.base_rtt_min_us:
            raise ConfigError("base_rtt_min_us/base_rtt_max_us: need 0 < min <= max")
        if self.base_rtt_min_us <= self.delta_x_us:
            raise ConfigError("base_rtt_min_us: must exceed delta_x_us (RTTs must stay positive)")
        if self.guard_time_us < 0:
            raise ConfigError("guard_time_us: must be >= 0")
        if self.output not in ("csv", "json"):
            raise ConfigError("output: must be csv or json")
        if self.sort not in ("cycle", "waste"):
            raise ConfigError("sort: must be cycle or waste")
        return self

    # tick-domain views -------------------------------------------------

    @property
    def delta_x(self) -> int:
        return us_to_ticks(self.delta_x_us)

    @property
    def guard_time(self) -> int:
        return us_to_ticks(self.guard_time_us)

    def deviation_model(self) -> DeviationModel:
        return DeviationModel(self.delta_x)

    def complement_model(self) -> ComplementModel:
        if self.complement_mode == "constant":
            return ComplementModel.constant(us_to_ticks(self.complement_value_us))
        max_us = self.delta_x_us if self.complement_max_us is None else self.complement_max_us
        return ComplementModel.uniform(us_to_ticks(max_us))

    def traffic_model(self) -> TrafficModel:
        if self.traffic == "constant":
            return TrafficModel.constant(us_to_ticks(self.traffic_length_us))
        return TrafficModel.uniform(us_to_ticks(self.traffic_min_us), us_to_ticks(self.traffic_max_us))

    def policy(self) -> SchedulerPolicy:
        if self.scheduler == COMPLEMENT:
            return SchedulerPolicy(COMPLEMENT, self.complement_model())
        return SchedulerPolicy(self.scheduler)

    def mean_length(self) -> float:
        return self.traffic_model().mean

    # serialization ------------------------------------------------------

    def to_mapping(self) -> dict:
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if value is None:
                continue
            out[f.name] = value
        return out

    def dump(self) -> str:
        return "".join(f"{k}={v}\n" for k, v in self.to_mapping().items())


_INT_KEYS = {"onus", "cycles", "seed"}
_FLOAT_KEYS = {
    "delta_x_us", "complement_max_us", "complement_value_us",
    "traffic_min_us", "traffic_max_us", "traffic_length_us",
    "base_rtt_min_us", "base_rtt_max_us", "guard_time_us",
}
_STR_KEYS = {"scheduler", "complement_mode", "traffic", "output", "sort"}
_ALL_KEYS = _INT_KEYS | _FLOAT_KEYS | _STR_KEYS


def _parse_value(key: str, raw: str):
    raw = raw.strip()
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {raw!r}") from None
    return raw


def config_from_mapping(values: dict) -> ExperimentConfig:
    unknown = set(values) - _ALL_KEYS
    if unknown:
        raise ConfigError(f"unknown key: {sorted(unknown)[0]}")
    return ExperimentConfig(**values).validate()


def parse_config_text(text: str) -> dict:
    """Parse flat key=value lines into a typed mapping (no validation)."""
    values: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        key, raw = line.split("=", 1)
        key = key.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(f"unknown key: {key}")
        values[key] = _parse_value(key, raw)
    return values


def load_config(path: Optional[str] = None, overrides: Optional[dict] = None) -> ExperimentConfig:
    """Build a validated config from an optional file plus flag overrides."""
    values: dict = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                values.update(parse_config_text(fh.read()))
        except OSError as exc:
            raise ConfigError(f"config: cannot read {path}: {exc}") from exc
    if overrides:
        unknown = set(overrides) - _ALL_KEYS
        if unknown:
            raise ConfigError(f"unknown key: {sorted(unknown)[0]}")
        values.update(overrides)
    return config_from_mapping(values)


def with_updates(config: ExperimentConfig, **changes) -> ExperimentConfig:
    return replace(config, **changes).validate()
