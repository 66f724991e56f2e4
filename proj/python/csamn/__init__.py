"""Satellite-UAV maritime IoT network simulator with joint resource optimisation."""

from ._core import (
    Config,
    compare,
    config_keys,
    dt_collection_step,
    oracle_joint,
    propagation_delay,
    run,
    solve_slot,
    sweep,
    visibility_window,
)

ALGORITHMS = ("jcorm", "atsm", "ga", "no-offload")

__all__ = [
    "ALGORITHMS",
    "Config",
    "compare",
    "config_keys",
    "dt_collection_step",
    "oracle_joint",
    "propagation_delay",
    "run",
    "solve_slot",
    "sweep",
    "visibility_window",
]
