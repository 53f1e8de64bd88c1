"""Core domain types for the upstream grant-scheduling timeline.

All times are integer nanoseconds ("ticks"); 1 microsecond = 1000 ticks.
Timeline arithmetic is exact integer arithmetic, so the only floating-point
values in the model are the derived ratios (collision rate, utilization).
"""
from __future__ import annotations

from typing import NamedTuple, Optional

TICKS_PER_US = 1000


def us_to_ticks(us: float) -> int:
    """Convert (possibly fractional) microseconds to integer ticks."""
    return round(us * TICKS_PER_US)


def ticks_to_us(ticks: float) -> float:
    return ticks / TICKS_PER_US


class OnuProfile(NamedTuple):
    """Per-ONU identity and round-trip times for one cycle.

    ``rtt_estimate`` is the OLT's (possibly stale) value; ``rtt_true`` is the
    realized round-trip time for the current cycle; ``base_rtt`` is the nominal
    value both derive from.
    """

    onu: int
    rtt_estimate: int
    rtt_true: int
    base_rtt: int


class GrantEntry(NamedTuple):
    """One ONU's grant as the OLT believes it: send time, open/close window."""

    onu: int
    grant_send: int
    believed_open: int
    believed_close: int
    length: int
    complement: int


class GrantSchedule(NamedTuple):
    """The OLT's believed timeline for one cycle, in fixed ONU index order."""

    cycle: int
    entries: tuple[GrantEntry, ...]


class OnuOutcome(NamedTuple):
    """Realized window for one ONU.

    ``gap`` is actual_open minus the predecessor's actual_close (0 for the
    first ONU of a cycle). A strictly negative gap means the burst overlaps
    its predecessor and the ONU is marked collided.
    """

    onu: int
    actual_open: int
    actual_close: int
    gap: int
    collided: bool

    @property
    def length(self) -> int:
        return self.actual_close - self.actual_open


class CycleOutcome(NamedTuple):
    """The realized timeline of one cycle, same ONU order as its schedule."""

    cycle: int
    outcomes: tuple[OnuOutcome, ...]


class CycleMetrics(NamedTuple):
    """Per-cycle performance metrics.

    waste (W) sums the positive gaps of successful ONUs, busy (H) sums their
    transmission lengths, both in ticks. ``utilization`` is H/(H+W), or None
    when H+W = 0 (undefined, distinct from 0).
    """

    n: int
    k: int
    collision_rate: float
    waste: int
    busy: int
    utilization: Optional[float]


def collision_rate(n: int, k: int) -> float:
    """Fraction of failed ONUs, (n - k) / n."""
    if n <= 0:
        raise ValueError(f"collision_rate: n must be positive, got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"collision_rate: k={k} outside [0, {n}]")
    return (n - k) / n


def utilization(busy: int, waste: int) -> float:
    """Line utilization H / (H + W)."""
    if busy < 0 or waste < 0:
        raise ValueError("utilization: busy and waste must be non-negative")
    if busy + waste == 0:
        raise ValueError("utilization: undefined for an empty cycle (H + W = 0)")
    return busy / (busy + waste)
