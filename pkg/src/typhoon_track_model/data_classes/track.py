#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Typhoon Track Model

This module contains the track classes.

- TrackPoint / Track: time-ordered geographic eye positions, times in seconds since
  the first point, longitudes normalized to (-180, 180].
- PlaneTrack: eye positions in the local tangent plane (meters) as numpy arrays.
- ErrorRow / ErrorTable: great-circle forecast errors per lead time.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import serde
from serde.json import to_json

from typhoon_track_model.exceptions import TrackValidationError


def normalize_longitude(lon: float) -> float:
    """Maps a longitude in degrees onto (-180, 180]."""
    wrapped: float = (lon + 180.0) % 360.0 - 180.0
    return 180.0 if wrapped == -180.0 else wrapped


@serde.serde
@dataclass(frozen=True)
class TrackPoint:
    """Class representing one observed or predicted eye position.

    Attributes:
        t (float): Time in s since the first point of the track.
        lat (float): Latitude in degrees.
        lon (float): Longitude in degrees, normalized to (-180, 180].
        label (str | None): Optional free-form label (e.g. the archive point number).
    """

    t: float
    lat: float
    lon: float
    label: str | None = None


@serde.serde
@dataclass(frozen=True)
class Track:
    """Class representing a time-ordered sequence of eye positions.

    Attributes:
        origin (tuple[float, float]): (lat0, lon0) in degrees, the first point.
        points (list[TrackPoint]): Positions with strictly increasing times.
    """

    origin: tuple[float, float]
    points: list[TrackPoint] = field(default_factory=list)

    def __post_init__(self) -> None:
        for i, point in enumerate(self.points):
            if not abs(point.lat) <= 90.0:
                raise TrackValidationError(f"latitude {point.lat} out of range at point {i}")
            if i > 0 and not point.t > self.points[i - 1].t:
                raise TrackValidationError(f"time not strictly increasing at point {i}")

    @classmethod
    def from_arrays(
        cls,
        times: np.ndarray,
        lats: np.ndarray,
        lons: np.ndarray,
        labels: list[str | None] | None = None,
    ) -> Track:
        """Builds a track from parallel arrays, normalizing longitudes."""
        labels = labels if labels is not None else [None] * len(times)
        points: list[TrackPoint] = [
            TrackPoint(t=float(t), lat=float(la), lon=normalize_longitude(float(lo)), label=lb)
            for t, la, lo, lb in zip(times, lats, lons, labels)
        ]
        origin: tuple[float, float] = (
            (points[0].lat, points[0].lon) if points else (0.0, 0.0)
        )
        return cls(origin=origin, points=points)

    @property
    def times(self) -> np.ndarray:
        """Times in s."""
        return np.array([p.t for p in self.points], dtype=float)

    @property
    def lats(self) -> np.ndarray:
        """Latitudes in degrees."""
        return np.array([p.lat for p in self.points], dtype=float)

    @property
    def lons(self) -> np.ndarray:
        """Longitudes in degrees."""
        return np.array([p.lon for p in self.points], dtype=float)

    def __len__(self) -> int:
        return len(self.points)

    def __str__(self) -> str:
        return to_json(self, indent=2)


@dataclass(frozen=True)
class PlaneTrack:
    """Eye positions in the local tangent plane.

    Attributes:
        times (np.ndarray): Times in s, shape (n,).
        xy (np.ndarray): Positions (x1 east, x2 north) in m, shape (n, 2).
    """

    times: np.ndarray
    xy: np.ndarray

    def __len__(self) -> int:
        return int(self.times.shape[0])


@serde.serde
@dataclass(frozen=True)
class ErrorRow:
    """Class representing the forecast error at one lead time.

    Attributes:
        lead (float): Lead time in s, measured from the first forecast point.
        error (float): Great-circle distance between forecast and actual in m.
    """

    lead: float
    error: float


@serde.serde
@dataclass(frozen=True)
class ErrorTable:
    """Class representing forecast errors per lead time with a summary.

    Attributes:
        rows (list[ErrorRow]): One row per actual point inside the forecast range.
        mean (float): Mean error in m.
        max (float): Maximum error in m.
    """

    rows: list[ErrorRow]
    mean: float
    max: float

    @classmethod
    def from_rows(cls, rows: list[ErrorRow]) -> ErrorTable:
        """Builds a table and its summary from rows."""
        errors: np.ndarray = np.array([r.error for r in rows], dtype=float)
        return cls(rows=rows, mean=float(errors.mean()), max=float(errors.max()))

    def __str__(self) -> str:
        return to_json(self, indent=2)
