"""Realize believed schedules against true RTTs and measure each cycle.

The realized open time of ONU i is grant_send[i] + rtt_true(i): the believed
timeline is correct only when the estimate matches the truth, so for the
baseline policy the gap between adjacent ONUs collapses to
dev(i) - dev(i-1), where dev = rtt_true - rtt_estimate. A strictly negative
gap marks ONU i (the late-scheduled one) as collided; its burst still
occupies the line, so successor gaps are measured against its actual close
regardless of status.
"""
from __future__ import annotations

from typing import Iterator, Sequence

from . import stochastic
from .config import ExperimentConfig
from .model import (
    CycleMetrics,
    CycleOutcome,
    GrantSchedule,
    OnuOutcome,
    OnuProfile,
    collision_rate,
)
from .scheduler import COMPLEMENT, schedule_cycle


def realize_cycle(schedule: GrantSchedule, profiles: Sequence[OnuProfile]) -> CycleOutcome:
    """Replay a believed schedule with the true RTTs."""
    if len(schedule.entries) != len(profiles):
        raise ValueError("schedule and profiles must align by index")
    outcomes = []
    prev_close = 0
    for i, entry in enumerate(schedule.entries):
        open_t = entry.grant_send + profiles[i].rtt_true
        close_t = open_t + entry.length
        gap = 0 if i == 0 else open_t - prev_close
        outcomes.append(OnuOutcome(i, open_t, close_t, gap, gap < 0))
        prev_close = close_t
    return CycleOutcome(schedule.cycle, tuple(outcomes))


def measure_cycle(outcome: CycleOutcome, guard: int = 0) -> CycleMetrics:
    """Per-cycle k, collision rate, waste, busy, utilization.

    Only successful ONUs contribute to waste and busy; guard time between
    grants is deliberate spacing, not waste, so each successful gap counts
    max(gap - guard, 0).
    """
    n = len(outcome.outcomes)
    if n == 0:
        raise ValueError("measure_cycle: empty cycle")
    k = 0
    waste = 0
    busy = 0
    for i, o in enumerate(outcome.outcomes):
        if o.collided:
            continue
        k += 1
        busy += o.actual_close - o.actual_open
        if i > 0:
            waste += max(o.gap - guard, 0)
    total = busy + waste
    util = busy / total if total > 0 else None
    return CycleMetrics(n, k, collision_rate(n, k), waste, busy, util)


def base_rtts(config: ExperimentConfig) -> list[int]:
    """Nominal per-ONU RTTs, spread evenly across the configured range.

    Gaps and metrics are invariant to these values (they cancel out of the
    gap arithmetic), so a deterministic spread keeps runs reproducible
    without spending a random stream on them.
    """
    lo = round(config.base_rtt_min_us * 1000)
    hi = round(config.base_rtt_max_us * 1000)
    n = config.onus
    if n == 1:
        return [lo]
    return [lo + (hi - lo) * i // (n - 1) for i in range(n)]


def iter_cycles(config: ExperimentConfig) -> Iterator[tuple[CycleOutcome, CycleMetrics]]:
    """Generate (outcome, metrics) for each cycle of the experiment."""
    n = config.onus
    policy = config.policy()
    deviation_model = config.deviation_model()
    traffic_model = config.traffic_model()
    complement_model = policy.complement
    guard = config.guard_time
    bases = base_rtts(config)
    # worst case over every cycle, so the whole run shares one origin
    origin = max(bases) + config.delta_x + policy.complement_max + 1000

    for cycle in range(config.cycles):
        devs = stochastic.deviations(deviation_model, config.seed, cycle, n)
        lens = stochastic.lengths(traffic_model, config.seed, cycle, n)
        if policy.kind == COMPLEMENT:
            comps = stochastic.complements(complement_model, config.seed, cycle, n)
        else:
            comps = [0] * n
        profiles = [
            OnuProfile(i, bases[i], bases[i] + int(devs[i]), bases[i]) for i in range(n)
        ]
        schedule = schedule_cycle(
            policy, profiles, [int(v) for v in lens], [int(v) for v in comps],
            cycle, origin, guard,
        )
        outcome = realize_cycle(schedule, profiles)
        yield outcome, measure_cycle(outcome, guard)


def run_cycles(config: ExperimentConfig) -> list[tuple[CycleOutcome, CycleMetrics]]:
    return list(iter_cycles(config))
