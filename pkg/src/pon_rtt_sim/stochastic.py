"""Seeded, reproducible sampling for RTT deviations, complements, and lengths.

Every draw is a pure function of a (seed, cycle, purpose, index) coordinate:
each (seed, cycle, purpose) triple keys its own Philox counter-based
substream, and sample i is mapped from the i-th raw 64-bit word of that
substream by a modulo reduction. This makes sampling independent of
iteration order (the value for ONU 5 never depends on whether ONU 3 was
sampled) and lets baseline and complement policies share identical deviation
and length streams for paired comparisons.

The modulo reduction carries a bias below span/2^64, which is negligible for
the tick-scale spans used here and keeps element i a function of raw word i
alone (no per-element rejection).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1
# arbitrary fixed salt so plain seeds do not collide with other Philox users
_KEY_SALT = 0x9E3779B97F4A7C15

# purpose codes (fourth stream coordinate)
DEVIATION = 1
COMPLEMENT = 2
LENGTH = 3


@dataclass(frozen=True)
class StreamKey:
    seed: int
    cycle: int
    onu: int
    purpose: int


@dataclass(frozen=True)
class DeviationModel:
    """Uniform integer deviation on the closed interval [-half_range, +half_range]."""

    half_range: int

    def __post_init__(self):
        if self.half_range < 0:
            raise ValueError(f"deviation half_range must be >= 0, got {self.half_range}")


@dataclass(frozen=True)
class ComplementModel:
    """Scheduling pad: disabled (always 0), uniform on [0, max], or constant."""

    mode: str  # "disabled" | "uniform" | "constant"
    value: int = 0  # max for uniform, the pad itself for constant

    def __post_init__(self):
        if self.mode not in ("disabled", "uniform", "constant"):
            raise ValueError(f"unknown complement mode {self.mode!r}")
        if self.value < 0:
            raise ValueError("complement value must be >= 0")

    @classmethod
    def disabled(cls) -> "ComplementModel":
        return cls("disabled")

    @classmethod
    def uniform(cls, max_value: int) -> "ComplementModel":
        return cls("uniform", max_value)

    @classmethod
    def constant(cls, value: int) -> "ComplementModel":
        return cls("constant", value)


@dataclass(frozen=True)
class TrafficModel:
    """Grant length model: constant, or uniform integer on [min, max]."""

    kind: str  # "constant" | "uniform"
    low: int
    high: int

    def __post_init__(self):
        if self.kind not in ("constant", "uniform"):
            raise ValueError(f"unknown traffic kind {self.kind!r}")
        if self.low <= 0 or self.high < self.low:
            raise ValueError("traffic lengths require 0 < min <= max")

    @classmethod
    def constant(cls, length: int) -> "TrafficModel":
        return cls("constant", length, length)

    @classmethod
    def uniform(cls, low: int, high: int) -> "TrafficModel":
        return cls("uniform", low, high)

    @property
    def mean(self) -> float:
        return (self.low + self.high) / 2


def _substream(seed: int, cycle: int, purpose: int) -> np.random.Generator:
    # Philox keys are 2x64 bits: seed in one word, (cycle, purpose) packed
    # into the other (purpose < 8, so the packing is injective).
    word = (((cycle << 3) | purpose) ^ _KEY_SALT) & _MASK64
    key = np.array([seed & _MASK64, word], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _uniform_ints(seed: int, cycle: int, purpose: int, low: int, high: int, count: int) -> np.ndarray:
    """count uniform integers on the closed interval [low, high]."""
    if count < 0:
        raise ValueError("count must be >= 0")
    if low == high:
        return np.full(count, low, dtype=np.int64)
    raw = _substream(seed, cycle, purpose).integers(0, 1 << 64, size=count, dtype=np.uint64)
    span = np.uint64(high - low + 1)
    return low + (raw % span).astype(np.int64)


def deviations(model: DeviationModel, seed: int, cycle: int, count: int) -> np.ndarray:
    """Deviation samples for ONUs 0..count-1 of one cycle."""
    return _uniform_ints(seed, cycle, DEVIATION, -model.half_range, model.half_range, count)


def complements(model: ComplementModel, seed: int, cycle: int, count: int) -> np.ndarray:
    """Complement samples for ONUs 0..count-1 of one cycle."""
    if model.mode == "disabled":
        return np.zeros(count, dtype=np.int64)
    if model.mode == "constant":
        return np.full(count, model.value, dtype=np.int64)
    return _uniform_ints(seed, cycle, COMPLEMENT, 0, model.value, count)


def lengths(model: TrafficModel, seed: int, cycle: int, count: int) -> np.ndarray:
    """Grant length samples for ONUs 0..count-1 of one cycle."""
    if model.kind == "constant":
        return np.full(count, model.low, dtype=np.int64)
    return _uniform_ints(seed, cycle, LENGTH, model.low, model.high, count)


def sample_deviation(model: DeviationModel, key: StreamKey) -> int:
    if key.purpose != DEVIATION:
        raise ValueError("sample_deviation requires a DEVIATION key")
    return int(deviations(model, key.seed, key.cycle, key.onu + 1)[key.onu])


def sample_complement(model: ComplementModel, key: StreamKey) -> int:
    if key.purpose != COMPLEMENT:
        raise ValueError("sample_complement requires a COMPLEMENT key")
    return int(complements(model, key.seed, key.cycle, key.onu + 1)[key.onu])


def sample_length(model: TrafficModel, key: StreamKey) -> int:
    if key.purpose != LENGTH:
        raise ValueError("sample_length requires a LENGTH key")
    return int(lengths(model, key.seed, key.cycle, key.onu + 1)[key.onu])
