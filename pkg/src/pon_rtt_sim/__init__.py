"""Discrete-event simulator of PON upstream grant scheduling under RTT
estimation error, with closed-form oracles and a complement-pad mitigation."""

from .config import ExperimentConfig, load_config
from .engine import measure_cycle, realize_cycle, run_cycles
from .scheduler import SchedulerPolicy, schedule_cycle

__all__ = [
    "ExperimentConfig",
    "load_config",
    "measure_cycle",
    "realize_cycle",
    "run_cycles",
    "SchedulerPolicy",
    "schedule_cycle",
]
