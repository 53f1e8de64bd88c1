"""Build the OLT's believed grant schedule for one cycle.

Three policies:

* ideal      -- schedules against the true RTTs (oracle; realizes with zero gaps)
* baseline   -- schedules against the stale RTT estimates
* complement -- baseline plus a non-negative pad C(i) inserted at the boundary
                before ONU i, biasing realized gaps positive

The complement pads the boundary (believed_open[i] = believed_close[i-1] +
guard + C(i)) rather than shifting each ONU's own timeline: shifting an ONU
by its own pad moves its close time by the same amount and leaves the gap
distribution unchanged, so only boundary padding actually reduces collisions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .model import GrantEntry, GrantSchedule, OnuProfile, us_to_ticks
from .stochastic import ComplementModel

IDEAL = "ideal"
BASELINE = "baseline"
COMPLEMENT = "complement"
POLICY_KINDS = (IDEAL, BASELINE, COMPLEMENT)


class SchedulingOriginError(ValueError):
    """origin too small: some grant_send would be negative."""

    def __init__(self, onu: int, grant_send: int):
        self.onu = onu
        super().__init__(
            f"grant_send for ONU {onu} is negative ({grant_send}); raise the origin"
        )


@dataclass(frozen=True)
class SchedulerPolicy:
    kind: str
    complement: Optional[ComplementModel] = None

    def __post_init__(self):
        if self.kind not in POLICY_KINDS:
            raise ValueError(f"unknown scheduler policy {self.kind!r}")
        if self.kind == COMPLEMENT and self.complement is None:
            raise ValueError("complement policy requires a ComplementModel")

    @property
    def complement_max(self) -> int:
        """Largest pad the policy can produce (for origin sizing)."""
        if self.kind != COMPLEMENT:
            return 0
        return self.complement.value


def default_origin(policy: SchedulerPolicy, profiles: Sequence[OnuProfile]) -> int:
    """Smallest convenient cycle origin guaranteeing non-negative grant_send.

    By shift covariance the choice does not affect gaps or metrics; 1 us of
    slack is added on top of the worst-case RTT plus pad.
    """
    worst_rtt = max(max(p.rtt_estimate, p.rtt_true) for p in profiles)
    return worst_rtt + policy.complement_max + us_to_ticks(1.0)


def schedule_cycle(
    policy: SchedulerPolicy,
    profiles: Sequence[OnuProfile],
    lengths: Sequence[int],
    complements: Sequence[int],
    cycle: int,
    origin: int,
    guard: int = 0,
) -> GrantSchedule:
    """Chain believed windows back to back from origin.

    believed_open[0] = origin + complements[0]; for i >= 1,
    believed_open[i] = believed_close[i-1] + guard + complements[i].
    grant_send[i] is believed_open[i] minus the RTT the policy uses.
    ``complements`` must be all zeros for ideal/baseline.
    """
    n = len(profiles)
    if n == 0:
        raise ValueError("schedule_cycle: need at least one ONU")
    if not (len(lengths) == len(complements) == n):
        raise ValueError("profiles, lengths and complements must have equal length")

    use_true = policy.kind == IDEAL
    entries = []
    boundary = origin
    for i, profile in enumerate(profiles):
        length = int(lengths[i])
        pad = int(complements[i])
        if length <= 0:
            raise ValueError(f"grant length for ONU {i} must be positive, got {length}")
        if pad < 0:
            raise ValueError(f"complement for ONU {i} must be >= 0, got {pad}")
        open_t = boundary + pad if i == 0 else boundary + guard + pad
        rtt_used = profile.rtt_true if use_true else profile.rtt_estimate
        send = open_t - rtt_used
        if send < 0:
            raise SchedulingOriginError(i, send)
        close_t = open_t + length
        entries.append(GrantEntry(i, send, open_t, close_t, length, pad))
        boundary = close_t
    return GrantSchedule(cycle, tuple(entries))
