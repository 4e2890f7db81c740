#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Typhoon Track Model

This module contains the SimulationSummary class written next to every simulated series.
"""
from dataclasses import dataclass

import serde
from serde.json import to_json


@serde.serde
@dataclass(frozen=True)
class SimulationSummary:
    """Class representing the diagnostics of one simulate run.

    Attributes:
        model (str): Integrated coefficient system.
        rows (int): Number of written samples.
        t_end (float): Simulated duration in s.
        dt (float): Step in s.
        drift_C1 (float | None): Relative drift of the vorticity constant.
        drift_C3 (float | None): Relative drift of the central-pressure constant.
        drift_C4 (float | None): Relative drift of the phase-curve constant.
        invariants_conserved (bool | None): All available drifts below 1e-6.
        min_a (float | None): Smallest divergence (friction runs).
        max_abs_b (float | None): Largest |b| (friction runs).
        final_a (float | None): Final divergence (friction runs).
        sustained_convergence (bool | None): a < 0 over the final day (friction runs).
    """

    model: str
    rows: int
    t_end: float
    dt: float
    drift_C1: float | None = None
    drift_C3: float | None = None
    drift_C4: float | None = None
    invariants_conserved: bool | None = None
    min_a: float | None = None
    max_abs_b: float | None = None
    final_a: float | None = None
    sustained_convergence: bool | None = None

    def __str__(self) -> str:
        return to_json(self, indent=2)
