#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Typhoon Track Model

This module contains the geographic helpers of the Typhoon Track Model.

The helper functions include:

- project / unproject: equirectangular tangent plane around an origin (x1 east, x2 north).
- haversine: great-circle distance on the spherical Earth.
- parse_track / format_track / write_track: the `t_hours,lat_deg,lon_deg[,label]` CSV.
- track_to_plane / plane_to_track: whole tracks to and from the local plane.
- evaluate_forecast: great-circle errors of a forecast against an observed track.
- error_table_frame: the `lead_hours,error_km` table.
- fit_record: the geographic JSON layout of a FitResult.
"""
from __future__ import annotations

import io
import logging
import pathlib
import re
from collections.abc import Sequence

import numpy as np
import pandas as pd

from typhoon_track_model import EARTH_RADIUS, units
from typhoon_track_model.data_classes.fit_result import FitRecord, FitResult, GeoPoint
from typhoon_track_model.data_classes.track import (
    ErrorRow,
    ErrorTable,
    PlaneTrack,
    Track,
    normalize_longitude,
)
from typhoon_track_model.exceptions import (
    ModelDomainError,
    TrackParseError,
    TrackValidationError,
)

logger: logging.Logger = logging.getLogger(__name__)

R_E: float = EARTH_RADIUS.to(units.m).magnitude
SECONDS_PER_HOUR: float = (1 * units.hour).to(units.s).magnitude

TRACK_COLUMNS: list[str] = ["t_hours", "lat_deg", "lon_deg"]
LABEL_COLUMN: str = "label"


def _check_latitude(lat: float) -> None:
    if not abs(lat) <= 90.0:
        raise ModelDomainError(f"latitude {lat} outside [-90, 90]")


def project(point: Sequence[float], origin: Sequence[float]) -> np.ndarray:
    """
    Projects (lat, lon) onto the tangent plane at origin.

    Args:
        point (Sequence[float]): (lat, lon) in degrees.
        origin (Sequence[float]): (lat0, lon0) in degrees.
    Returns:
        np.ndarray: (x1 east, x2 north) in m.
    Raises:
        ModelDomainError: If a latitude lies outside [-90, 90].
    """
    lat, lon = point
    lat0, lon0 = origin
    _check_latitude(lat)
    _check_latitude(lat0)
    dlon: float = normalize_longitude(lon - lon0)
    return np.array(
        [
            R_E * np.cos(np.deg2rad(lat0)) * np.deg2rad(dlon),
            R_E * np.deg2rad(lat - lat0),
        ]
    )


def unproject(xy: Sequence[float], origin: Sequence[float]) -> tuple[float, float]:
    """
    Inverse of project.

    Returns:
        tuple[float, float]: (lat, lon) in degrees, lon in (-180, 180].
    Raises:
        ModelDomainError: If the point leaves the plane's image (|lat| > 90) or the
            origin is a pole.
    """
    x1, x2 = (float(v) for v in xy)
    lat0, lon0 = origin
    _check_latitude(lat0)
    lat: float = lat0 + float(np.rad2deg(x2 / R_E))
    if not abs(lat) <= 90.0:
        raise ModelDomainError(f"point ({x1:.1f}, {x2:.1f}) m maps past the pole (lat {lat:.3f})")
    cos_lat0: float = float(np.cos(np.deg2rad(lat0)))
    if abs(cos_lat0) < 1e-12:
        raise ModelDomainError("the tangent plane is undefined at a pole")
    lon: float = normalize_longitude(lon0 + float(np.rad2deg(x1 / (R_E * cos_lat0))))
    return lat, lon


def haversine(p: Sequence[float], q: Sequence[float]) -> float:
    """Great-circle distance in m between two (lat, lon) points in degrees."""
    lat1, lon1, lat2, lon2 = np.deg2rad([p[0], p[1], q[0], q[1]])
    h: float = (
        np.sin((lat2 - lat1) / 2.0) ** 2
        + np.cos(lat1) * np.cos(lat2) * np.sin((lon2 - lon1) / 2.0) ** 2
    )
    return float(2.0 * R_E * np.arcsin(np.sqrt(min(1.0, h))))


def _parse_float(value: str, column: str, line_no: int) -> float:
    try:
        number: float = float(value)
    except ValueError as e:
        raise TrackParseError(f"{column} is not a number: {value!r}", line_no) from e
    if not np.isfinite(number):
        raise TrackParseError(f"{column} is not finite: {value!r}", line_no)
    return number


def parse_track(text: str) -> Track:
    """
    Parses the track CSV.

    Times are read in hours and stored in seconds on the file's own clock; the origin is
    the first point.

    Args:
        text (str): CSV with header `t_hours,lat_deg,lon_deg` and an optional `label`.
    Returns:
        Track: The parsed track.
    Raises:
        TrackParseError: If the header or a row is malformed (with its line number).
        TrackValidationError: If a latitude is out of range or times do not increase.
    """
    try:
        frame: pd.DataFrame = pd.read_csv(
            io.StringIO(text), dtype=str, keep_default_na=False, skip_blank_lines=True
        )
    except pd.errors.EmptyDataError as e:
        raise TrackParseError("empty track file", 1) from e
    except pd.errors.ParserError as e:
        found = re.search(r"line (\d+)", str(e))
        raise TrackParseError(
            f"malformed row: {e}", int(found.group(1)) if found else None
        ) from e

    columns: list[str] = [c.strip() for c in frame.columns]
    if columns not in (TRACK_COLUMNS, TRACK_COLUMNS + [LABEL_COLUMN]):
        raise TrackParseError(
            f"header must be {','.join(TRACK_COLUMNS)}[,{LABEL_COLUMN}], got {','.join(columns)}",
            1,
        )
    if frame.empty:
        raise TrackParseError("track file has no data rows", 2)

    times: list[float] = []
    lats: list[float] = []
    lons: list[float] = []
    labels: list[str | None] = []
    for row_no, row in enumerate(frame.itertuples(index=False)):
        line_no: int = row_no + 2
        values: list[str] = [str(v).strip() for v in row]
        t_hours, lat, lon = (
            _parse_float(v, name, line_no) for v, name in zip(values[:3], TRACK_COLUMNS)
        )
        if not abs(lat) <= 90.0:
            raise TrackValidationError(f"latitude {lat} outside [-90, 90]", line_no)
        t: float = (t_hours * units.hour).to(units.s).magnitude
        if times and not t > times[-1]:
            raise TrackValidationError(
                f"time {t_hours} h does not increase after {times[-1] / SECONDS_PER_HOUR} h",
                line_no,
            )
        times.append(t)
        lats.append(lat)
        lons.append(lon)
        labels.append(values[3] if len(values) > 3 and values[3] else None)

    track: Track = Track.from_arrays(np.array(times), np.array(lats), np.array(lons), labels)
    logger.debug(f"Parsed track of {len(track)} points starting at {track.origin}")
    return track


def track_frame(track: Track) -> pd.DataFrame:
    """Returns the track as a DataFrame in the CSV layout."""
    frame = pd.DataFrame(
        {
            "t_hours": track.times / SECONDS_PER_HOUR,
            "lat_deg": track.lats,
            "lon_deg": track.lons,
        }
    )
    if any(p.label is not None for p in track.points):
        frame[LABEL_COLUMN] = [p.label or "" for p in track.points]
    return frame


def format_track(track: Track) -> str:
    """Formats a track as canonical CSV: six decimals, LF line endings."""
    return track_frame(track).to_csv(index=False, float_format="%.6f", lineterminator="\n")


def write_track(track: Track, target: pathlib.Path) -> None:
    """Writes a track as canonical CSV."""
    with open(target, "w", encoding="utf-8", newline="") as track_out:
        track_out.write(format_track(track))


def read_track(source: pathlib.Path) -> Track:
    """Reads and parses a track CSV file."""
    with open(source, "r", encoding="utf-8") as track_in:
        return parse_track(track_in.read())


def track_to_plane(track: Track, origin: Sequence[float] | None = None) -> PlaneTrack:
    """Projects every point of a track onto the plane at origin (default: track.origin)."""
    plane_origin: Sequence[float] = track.origin if origin is None else origin
    xy: np.ndarray = np.array([project((p.lat, p.lon), plane_origin) for p in track.points])
    return PlaneTrack(times=track.times, xy=xy.reshape(-1, 2))


def plane_to_track(
    plane: PlaneTrack, origin: Sequence[float], labels: list[str | None] | None = None
) -> Track:
    """Maps plane positions back to geographic coordinates."""
    geo: list[tuple[float, float]] = [unproject(xy, origin) for xy in plane.xy]
    return Track.from_arrays(
        plane.times,
        np.array([g[0] for g in geo]),
        np.array([g[1] for g in geo]),
        labels,
    )


def evaluate_forecast(forecast: Track, actual: Track) -> ErrorTable:
    """
    Measures the great-circle error of a forecast at every observed time it covers.

    The forecast is interpolated linearly in time (longitudes unwrapped across the date
    line). Lead times are counted from the first forecast point.

    Raises:
        ModelDomainError: If no observed time falls inside the forecast range.
    """
    f_times: np.ndarray = forecast.times
    inside: list[int] = [
        i for i, t in enumerate(actual.times) if f_times[0] <= t <= f_times[-1]
    ]
    if not inside:
        raise ModelDomainError("forecast and observed track do not overlap in time")
    f_lons: np.ndarray = np.unwrap(forecast.lons, period=360.0)
    rows: list[ErrorRow] = []
    for i in inside:
        point = actual.points[i]
        lat: float = float(np.interp(point.t, f_times, forecast.lats))
        lon: float = normalize_longitude(float(np.interp(point.t, f_times, f_lons)))
        rows.append(
            ErrorRow(lead=point.t - float(f_times[0]), error=haversine((lat, lon), (point.lat, point.lon)))
        )
    return ErrorTable.from_rows(rows)


def error_table_frame(table: ErrorTable) -> pd.DataFrame:
    """Returns the error table in the `lead_hours,error_km` layout."""
    return pd.DataFrame(
        {
            "lead_hours": [r.lead / SECONDS_PER_HOUR for r in table.rows],
            "error_km": [(r.error * units.m).to(units.km).magnitude for r in table.rows],
        }
    )


def fit_record(result: FitResult, plane_origin: Sequence[float]) -> FitRecord:
    """
    Converts a FitResult whose window lives in the plane at plane_origin into its
    geographic JSON layout.
    """
    window: list[GeoPoint] = [
        GeoPoint(*unproject((p.x1, p.x2), plane_origin)) for p in result.window
    ]
    return FitRecord(
        origin=window[0] if window else GeoPoint(*plane_origin),
        b0=result.b0,
        epsilon=result.epsilon_used,
        v0=list(result.v0) if result.v0 is not None else None,
        mn=list(result.mn) if result.mn is not None else None,
        accepted=result.accepted,
        b01=result.b01,
        b02=result.b02,
        window=window,
        window_hours=[p.t / SECONDS_PER_HOUR for p in result.window],
        l=result.l,
        mode=result.mode.value,
        start_index=result.start_index,
        condition_number=result.condition_number,
    )
