"""Closed-form and Monte-Carlo oracles for the gap distribution.

For independent uniform deviations on [-a, a] the difference
D = dev(i) - dev(i-1) is triangular on [-2a, 2a]; a collision needs D < 0
(probability 1/2) and the expected positive gap is E[D+] = a/3. A complement
pad C shifts the gap to C + D, and the descriptors below integrate the
triangular density against the pad distribution in closed form. These
formulas are derived independently of the engine so they can serve as
oracles for it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .config import ExperimentConfig, with_updates
from .engine import iter_cycles
from .scheduler import BASELINE, COMPLEMENT, IDEAL
from .stochastic import ComplementModel


def expected_waste_per_cycle(n: int, delta_x: int) -> float:
    """Baseline expected waste in ticks: (n - 1) gaps, each E[D+] = delta_x / 3."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if delta_x < 0:
        raise ValueError("delta_x must be >= 0")
    return (n - 1) * delta_x / 3


def expected_collision_rate_baseline(n: int) -> float:
    """Baseline expected collision rate (n - 1) / (2n): each of the n - 1
    gaps is negative with probability 1/2 by symmetry of D."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (n - 1) / (2 * n)


def complement_descriptors(delta_x: int, model: ComplementModel) -> tuple[float, float]:
    """(collision probability, expected positive gap in ticks) for one gap
    C + D with pad C drawn from ``model`` and D triangular on [-2a, 2a].

    Uniform pad on [0, m]:
        P(C + D < 0) = ((2a)^3 - max(2a - m, 0)^3) / (24 a^2 m)
        E[(C + D)+]  = m/2 + ((2a)^4 - max(2a - m, 0)^4) / (96 a^2 m)
    Constant pad c:
        P = max(2a - c, 0)^2 / (8 a^2);  E+ = c + max(2a - c, 0)^3 / (24 a^2)
    """
    if delta_x <= 0:
        raise ValueError("delta_x must be > 0")
    a = float(delta_x)
    if model.mode == "disabled":
        return 0.5, a / 3
    if model.mode == "constant":
        c = float(model.value)
        slack = max(2 * a - c, 0.0)
        return slack**2 / (8 * a**2), c + slack**3 / (24 * a**2)
    if model.mode == "uniform":
        m = float(model.value)
        if m == 0:
            return 0.5, a / 3
        slack = max(2 * a - m, 0.0)
        p = ((2 * a) ** 3 - slack**3) / (24 * a**2 * m)
        e_plus = m / 2 + ((2 * a) ** 4 - slack**4) / (96 * a**2 * m)
        return p, e_plus
    raise ValueError(f"unsupported complement model {model.mode!r}")


def gap_descriptors(config: ExperimentConfig) -> tuple[float, float]:
    """(per-gap collision probability, expected positive gap in ticks) for
    the configured policy."""
    if config.scheduler == IDEAL:
        return 0.0, 0.0
    if config.scheduler == BASELINE:
        return (0.0, 0.0) if config.delta_x == 0 else (0.5, config.delta_x / 3)
    model = config.complement_model()
    if config.delta_x == 0:
        # degenerate deviation: every gap is exactly the pad
        pad_mean = model.value / 2 if model.mode == "uniform" else float(model.value)
        return 0.0, 0.0 if model.mode == "disabled" else pad_mean
    return complement_descriptors(config.delta_x, model)


def predicted_metrics(config: ExperimentConfig) -> tuple[float, float, float]:
    """(expected collision rate, expected waste in ticks, predicted
    utilization) for the configured policy.

    Utilization is the ratio-of-means approximation
    E[H] / (E[H] + E[W]) with E[H] = (1 + (n - 1)(1 - p)) * mean_length;
    the simulated mean of per-cycle ratios differs from it slightly.
    """
    n = config.onus
    p, e_plus = gap_descriptors(config)
    rate = (n - 1) * p / n
    waste = (n - 1) * e_plus
    busy = (1 + (n - 1) * (1 - p)) * config.mean_length()
    util = busy / (busy + waste)
    return rate, waste, util


@dataclass(frozen=True)
class MetricMoments:
    mean: float
    se: float


def _moments(values: list[float]) -> MetricMoments:
    n = len(values)
    mean = sum(values) / n
    if n < 2:
        return MetricMoments(mean, 0.0)
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return MetricMoments(mean, math.sqrt(var / n))


@dataclass(frozen=True)
class MonteCarloSummary:
    cycles: int
    collision_rate: MetricMoments
    waste: MetricMoments  # ticks
    utilization: MetricMoments


def monte_carlo_summary(config: ExperimentConfig, cycles: int | None = None) -> MonteCarloSummary:
    """Mean and standard error of the per-cycle metrics over a long run."""
    if cycles is not None:
        config = with_updates(config, cycles=cycles)
    rates, wastes, utils = [], [], []
    for _, metrics in iter_cycles(config):
        rates.append(metrics.collision_rate)
        wastes.append(float(metrics.waste))
        if metrics.utilization is not None:
            utils.append(metrics.utilization)
    return MonteCarloSummary(
        config.cycles, _moments(rates), _moments(wastes), _moments(utils)
    )


@dataclass(frozen=True)
class PairedCycle:
    cycle: int
    baseline_collisions: int
    complement_collisions: int
    baseline_waste: int
    complement_waste: int
    baseline_utilization: float
    complement_utilization: float


@dataclass(frozen=True)
class PairedReport:
    """Baseline vs complement on identical deviation and length streams."""

    cycles: tuple[PairedCycle, ...]
    mean_collision_rate_baseline: float
    mean_collision_rate_complement: float
    mean_waste_baseline: float
    mean_waste_complement: float
    mean_utilization_baseline: float
    mean_utilization_complement: float

    @property
    def complement_never_worse(self) -> bool:
        return all(
            c.complement_collisions <= c.baseline_collisions for c in self.cycles
        )


def paired_comparison(config: ExperimentConfig) -> PairedReport:
    """Run baseline and complement policies on the same seed.

    The stream coordinates (seed, cycle, purpose) do not involve the policy,
    so both runs see identical deviations and lengths and the comparison is
    paired cycle by cycle.
    """
    base_cfg = with_updates(config, scheduler=BASELINE)
    comp_cfg = with_updates(config, scheduler=COMPLEMENT)
    rows = []
    n = config.onus
    for (_, bm), (_, cm) in zip(iter_cycles(base_cfg), iter_cycles(comp_cfg)):
        rows.append(
            PairedCycle(
                len(rows), n - bm.k, n - cm.k, bm.waste, cm.waste,
                bm.utilization if bm.utilization is not None else 1.0,
                cm.utilization if cm.utilization is not None else 1.0,
            )
        )
    count = len(rows)
    return PairedReport(
        tuple(rows),
        sum(r.baseline_collisions for r in rows) / (n * count),
        sum(r.complement_collisions for r in rows) / (n * count),
        sum(r.baseline_waste for r in rows) / count,
        sum(r.complement_waste for r in rows) / count,
        sum(r.baseline_utilization for r in rows) / count,
        sum(r.complement_utilization for r in rows) / count,
    )
