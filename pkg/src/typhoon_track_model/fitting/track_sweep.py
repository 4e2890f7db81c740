#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Typhoon Track Model

This module contains the track-level fitting operations:

- sweep_track: fits every three successive points of a track (stride 1) on worker threads.
- forecast: evaluates the closed form of an accepted fit from its first anchor.
- fit_b0_to_history: picks b0 so the fitted trajectory follows the observed continuation
  of the track for as long as possible.
- coincidence_duration: how long a forecast stays within a distance tolerance.
"""
from __future__ import annotations

import logging
import queue

import numpy as np
from scipy.optimize import minimize_scalar

from typhoon_track_model.data_classes.fit_result import (
    FitConfig,
    FitMode,
    FitResult,
    WindowPoint,
)
from typhoon_track_model.data_classes.track import ErrorTable, PlaneTrack, Track
from typhoon_track_model.dynamics.model_core import coriolis_parameter
from typhoon_track_model.exceptions import ModelDomainError, UnacceptedFitError
from typhoon_track_model.fitting.three_point_fit import fit_with_fixed_b0
from typhoon_track_model.fitting.window_fit_thread import WindowFitThread
from typhoon_track_model.helper_functions.geo_track_io import track_to_plane
from typhoon_track_model.trajectory.closed_form import (
    GUARD,
    closed_form_coefficients,
    eval_trajectory,
)

logger: logging.Logger = logging.getLogger(__name__)

HISTORY_GRID_POINTS: int = 801


def sweep_plane(plane: PlaneTrack, l: float, config: FitConfig = FitConfig()) -> list[FitResult]:
    """
    Fits every three-point window of a plane track.

    Windows are split round-robin over config.workers threads; results are ordered by
    window start.

    Raises:
        ModelDomainError: If the track has fewer than three points.
    """
    if len(plane) < 3:
        raise ModelDomainError(f"a sweep needs at least three points, got {len(plane)}")
    n_windows: int = len(plane) - 2
    results: list[FitResult | None] = [None] * n_windows
    ex_queue: queue.Queue = queue.Queue()
    workers: int = max(1, min(config.workers, n_windows))
    threads: list[WindowFitThread] = [
        WindowFitThread(i, plane, list(range(i, n_windows, workers)), l, config, results, ex_queue)
        for i in range(workers)
    ]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()
    if not ex_queue.empty():
        raise ex_queue.get()

    accepted: int = sum(1 for r in results if r is not None and r.accepted)
    logger.info(f"Swept {n_windows} windows: {accepted} accepted at epsilon={config.epsilon:.1e}")
    return [r for r in results if r is not None]


def sweep_track(
    track: Track, config: FitConfig = FitConfig(), l: float | None = None
) -> list[FitResult]:
    """
    Projects a track onto the plane at its first point and fits every window.

    Args:
        track (Track): Observed track, at least three points.
        config (FitConfig): Search settings.
        l (float | None): Coriolis parameter; defaults to the value at the track origin.
    Returns:
        list[FitResult]: One result per window, in window order. Window anchors are in
            the plane of track.origin.
    """
    if len(track) < 3:
        raise ModelDomainError(f"a sweep needs at least three points, got {len(track)}")
    coriolis: float = coriolis_parameter(track.origin[0]) if l is None else l
    return sweep_plane(track_to_plane(track), coriolis, config)


def forecast(fit: FitResult, horizon: float, step: float, l: float | None = None) -> PlaneTrack:
    """
    Evaluates the fitted closed form from the first window anchor.

    Args:
        fit (FitResult): Accepted fit.
        horizon (float): Length of the forecast in s.
        step (float): Output spacing in s.
        l (float | None): Coriolis parameter; defaults to fit.l.
    Returns:
        PlaneTrack: Positions at t0, t0 + step, ..., t0 + horizon in the fit's plane. The
            horizon is always included.
    Raises:
        UnacceptedFitError: If the fit was not accepted.
        ModelDomainError: If horizon < 0 or step <= 0.
    """
    if not fit.accepted or fit.b0 is None or fit.v0 is None or fit.mn is None:
        raise UnacceptedFitError(f"window {fit.start_index} has no accepted fit: {fit.message}")
    if not step > 0.0 or not horizon >= 0.0:
        raise ModelDomainError(f"need step > 0 and horizon >= 0, got {step}, {horizon}")
    p0: WindowPoint = fit.window[0]
    coefficients = closed_form_coefficients(
        (p0.x1, p0.x2), fit.v0, fit.mn, fit.l if l is None else l, fit.b0
    )
    offsets: np.ndarray = np.arange(0.0, horizon + 1e-9 * step, step)
    if horizon - offsets[-1] > 1e-9 * step:
        offsets = np.append(offsets, horizon)
    return PlaneTrack(times=p0.t + offsets, xy=eval_trajectory(coefficients, offsets))


def _anchors(plane: PlaneTrack, start: int) -> list[WindowPoint]:
    return [
        WindowPoint(t=float(plane.times[k]), x1=float(plane.xy[k, 0]), x2=float(plane.xy[k, 1]))
        for k in range(start, start + 3)
    ]


def _history_cost(
    b0: float, plane: PlaneTrack, start: int, count: int, l: float, config: FitConfig
) -> float:
    window: list[WindowPoint] = _anchors(plane, start)
    try:
        fit: FitResult = fit_with_fixed_b0(*window, b0, l, config)
    except ModelDomainError:
        return np.inf
    coefficients = closed_form_coefficients((window[0].x1, window[0].x2), fit.v0, fit.mn, l, b0)
    later: slice = slice(start + 3, start + 3 + count)
    predicted: np.ndarray = eval_trajectory(coefficients, plane.times[later] - window[0].t)
    return float(np.sqrt(np.mean(np.sum((predicted - plane.xy[later]) ** 2, axis=1))))


def fit_b0_to_history(
    plane: PlaneTrack,
    start: int,
    count: int,
    l: float,
    bounds: tuple[float, float] = (-1e-4, 1e-4),
    config: FitConfig = FitConfig(),
) -> FitResult:
    """
    Fits b0 to the observed continuation of a window.

    For each candidate b0 the closed form is fitted through points start .. start + 2;
    the chosen b0 minimizes the RMS distance to the next `count` points. A coarse scan of
    the bounds, skipping the guards around 0 and l, is refined by a bounded scalar
    minimization around its best point.

    Raises:
        ModelDomainError: If fewer than start + 3 + count points exist or count < 1.
    """
    if count < 1 or start < 0 or start + 3 + count > len(plane):
        raise ModelDomainError(
            f"need points {start}..{start + 2 + count}, track has {len(plane)}"
        )
    grid: np.ndarray = np.linspace(bounds[0], bounds[1], HISTORY_GRID_POINTS)
    grid = grid[(np.abs(grid) > 2.0 * GUARD) & (np.abs(grid - l) > 2.0 * GUARD)]
    costs: np.ndarray = np.array([_history_cost(b, plane, start, count, l, config) for b in grid])
    if not np.any(np.isfinite(costs)):
        raise ModelDomainError("no admissible b0 inside the history bounds")
    i: int = int(np.nanargmin(np.where(np.isfinite(costs), costs, np.nan)))
    lo: float = float(grid[max(i - 1, 0)])
    hi: float = float(grid[min(i + 1, grid.shape[0] - 1)])
    for c in (0.0, l):
        # keep the refinement bracket on one side of each guard
        if lo < c < hi:
            lo, hi = (c + 2.0 * GUARD, hi) if grid[i] > c else (lo, c - 2.0 * GUARD)
    found = minimize_scalar(
        _history_cost,
        bounds=(lo, hi),
        args=(plane, start, count, l, config),
        method="bounded",
        options={"xatol": 1e-13},
    )
    best_b0, best_cost = (
        (float(found.x), float(found.fun)) if found.fun <= costs[i] else (float(grid[i]), float(costs[i]))
    )

    fit: FitResult = fit_with_fixed_b0(
        *_anchors(plane, start), best_b0, l, config, mode=FitMode.HISTORICAL, start_index=start
    )
    logger.info(f"Historical b0={best_b0:.6e} with RMS {best_cost / 1000.0:.2f} km over {count} points")
    return fit


def coincidence_duration(table: ErrorTable, tolerance: float) -> float:
    """
    Longest lead time, from the first row on, over which every error is below tolerance.

    Returns:
        float: Lead time in s of the last row of the leading run, 0 if the first row fails.
    """
    duration: float = 0.0
    for row in table.rows:
        if row.error >= tolerance:
            break
        duration = row.lead
    return duration
