#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Typhoon Track Model

This module contains the classes of the three-point fitting pipeline.

- FitConfig: search bound, acceptance tolerance and grid size for the b0 search.
- FitMode: how b0 was obtained (root search, fixed value, or fitted to history).
- WindowPoint: one anchor of a three-point window in the local plane.
- FitResult: fitted initial velocity and pressure-gradient forcing plus the verdict.
- FitRecord: the geographic JSON layout written by the command line front end.
"""
from dataclasses import dataclass, field
from enum import Enum

import serde
from serde.json import to_json


class FitMode(Enum):
    """Enum representing how b0 was determined.

    Attributes:
        SEARCH: Common root of the two velocity-matching conditions.
        FIXED: Supplied by the caller.
        HISTORICAL: Fitted to the observed continuation of the track.
    """

    SEARCH = "search"
    FIXED = "fixed"
    HISTORICAL = "historical"


@serde.serde
@dataclass(frozen=True)
class FitConfig:
    """Class representing the settings of the b0 search.

    Attributes:
        bound (float): Search interval is [-bound, bound] in 1/s. Use 1e-5 for the
            strict physically-motivated bound.
        epsilon (float): Acceptance tolerance on |b01 - b02| in 1/s.
        grid_points (int): Number of scan points over the search interval.
        guard (float): Exclusion radius around b0 = 0 and b0 = l in 1/s.
        max_condition (float): Largest accepted condition number of the 4x4 solve.
        workers (int): Worker threads used by the track sweep.
    """

    bound: float = 1e-4
    epsilon: float = 2e-6
    grid_points: int = 4001
    guard: float = 1e-9
    max_condition: float = 1e12
    workers: int = 4

    def __str__(self) -> str:
        return to_json(self, indent=2)


@serde.serde
@dataclass(frozen=True)
class WindowPoint:
    """Class representing one anchor of a fitting window.

    Attributes:
        t (float): Time in s.
        x1 (float): East coordinate in m.
        x2 (float): North coordinate in m.
    """

    t: float
    x1: float
    x2: float


@serde.serde
@dataclass(frozen=True)
class FitResult:
    """Class representing the outcome of fitting one three-point window.

    When accepted in SEARCH mode, b01 and b02 are present, lie within the bound,
    differ by less than epsilon_used, and b0 is their mean.

    Attributes:
        v0 (tuple[float, float] | None): Fitted (V1(0), V2(0)) in m/s.
        mn (tuple[float, float] | None): Fitted (c0 M(0), c0 N(0)) in m/s^2.
        b0 (float | None): Accepted averaged vorticity in 1/s.
        b01 (float | None): Root of the V1 matching condition in 1/s.
        b02 (float | None): Root of the V2 matching condition in 1/s.
        accepted (bool): Verdict.
        epsilon_used (float): Acceptance tolerance in 1/s.
        l (float): Coriolis parameter used for the fit in 1/s.
        window (list[WindowPoint]): The three anchors, local plane.
        condition_number (float | None): Condition number of the final 4x4 solve.
        mode (FitMode): How b0 was obtained.
        start_index (int): Index of the first anchor inside the swept track.
        message (str): Short diagnostic of the verdict.
    """

    v0: tuple[float, float] | None
    mn: tuple[float, float] | None
    b0: float | None
    b01: float | None
    b02: float | None
    accepted: bool
    epsilon_used: float
    l: float
    window: list[WindowPoint] = field(default_factory=list)
    condition_number: float | None = None
    mode: FitMode = FitMode.SEARCH
    start_index: int = 0
    message: str = ""

    def __str__(self) -> str:
        return to_json(self, indent=2)


@serde.serde
@dataclass(frozen=True)
class GeoPoint:
    """Class representing a geographic position in degrees."""

    lat: float
    lon: float


@serde.serde
@dataclass(frozen=True)
class FitRecord:
    """Class representing the JSON layout of a fit. Rates in 1/s, positions in degrees.

    Attributes:
        origin (GeoPoint): First window anchor, origin of the local plane.
        b0 (float | None): Accepted averaged vorticity.
        epsilon (float): Acceptance tolerance.
        v0 (list[float] | None): Fitted eye velocity in m/s.
        mn (list[float] | None): Fitted forcing in m/s^2.
        accepted (bool): Verdict.
        b01 (float | None): Root of the V1 condition.
        b02 (float | None): Root of the V2 condition.
        window (list[GeoPoint]): The three anchors.
        window_hours (list[float]): Anchor times in hours since the track start.
        l (float): Coriolis parameter.
        mode (str): How b0 was obtained.
        start_index (int): Index of the first anchor.
        condition_number (float | None): Condition number of the final solve.
    """

    origin: GeoPoint
    b0: float | None
    epsilon: float
    v0: list[float] | None
    mn: list[float] | None
    accepted: bool
    b01: float | None
    b02: float | None
    window: list[GeoPoint]
    window_hours: list[float]
    l: float
    mode: str
    start_index: int
    condition_number: float | None
