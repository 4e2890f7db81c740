#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Typhoon Track Model

This module contains the three-point fit of the closed-form trajectory and the search
for the equilibrium vorticity b0.

Given three anchors p0, p1, p2 and a trial b0, writing the closed form at t1 - t0 and
t2 - t0 with origin p0 gives four linear equations for V1(0), V2(0), c0 M(0), c0 N(0).
The trial b0 is accepted when the fitted velocity matches the chord velocity of the first
interval in both components:

- g1(b0) = V1_fit(b0) - (x1(t1) - x1(t0)) / (t1 - t0) = 0 gives b01
- g2(b0) = V2_fit(b0) - (x2(t1) - x2(t0)) / (t1 - t0) = 0 gives b02

and the window is accepted when both roots exist inside the search bound and
|b01 - b02| < epsilon; b0 is then their mean.

The linear system is assembled in hours and kilometers to keep its condition number
moderate.
"""
from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import bisect

from typhoon_track_model.data_classes.fit_result import (
    FitConfig,
    FitMode,
    FitResult,
    WindowPoint,
)
from typhoon_track_model.dynamics.barotropic import small_vorticity_root
from typhoon_track_model.exceptions import DegenerateWindowError, ModelDomainError
from typhoon_track_model.trajectory.closed_form import check_frequencies, response_factors

logger: logging.Logger = logging.getLogger(__name__)

HOUR: float = 3600.0
KM: float = 1000.0

# unknowns in km/h and km/h^2 back to m/s and m/s^2
_TO_SI: np.ndarray = np.array([KM / HOUR, KM / HOUR, KM / HOUR**2, KM / HOUR**2])

ROOT_XTOL: float = 1e-20
ROOT_RTOL: float = 4.0 * np.finfo(float).eps


@dataclass(frozen=True)
class LinearFit:
    """Solution of the 4x4 system for one b0.

    Attributes:
        v0 (tuple[float, float]): (V1(0), V2(0)) in m/s.
        mn (tuple[float, float]): (c0 M(0), c0 N(0)) in m/s^2.
        condition_number (float): Condition number of the scaled system.
    """

    v0: tuple[float, float]
    mn: tuple[float, float]
    condition_number: float


def _check_window(window: Sequence[WindowPoint]) -> None:
    if len(window) != 3:
        raise DegenerateWindowError(f"a window needs three anchors, got {len(window)}")
    if not window[0].t < window[1].t < window[2].t:
        raise DegenerateWindowError(
            f"anchor times must increase strictly, got {[p.t for p in window]}"
        )


def _batch_fit(
    window: Sequence[WindowPoint], b0: np.ndarray, l: float
) -> tuple[np.ndarray, np.ndarray]:
    """
    Solves the scaled system for every b0 of a 1-d array.

    Returns:
        tuple[np.ndarray, np.ndarray]: Unknowns (V1, V2, m, n) in SI, shape (k, 4), NaN
            where the system is singular, and condition numbers, shape (k,).
    """
    p0, p1, p2 = window
    tau: np.ndarray = np.array([p1.t - p0.t, p2.t - p0.t]) / HOUR
    dz: np.ndarray = np.array(
        [complex(p1.x1 - p0.x1, p1.x2 - p0.x2), complex(p2.x1 - p0.x1, p2.x2 - p0.x2)]
    ) / KM
    b0h: np.ndarray = np.asarray(b0, dtype=float)[:, None] * HOUR
    with np.errstate(divide="ignore", invalid="ignore"):
        f, g = response_factors(tau[None, :], l * HOUR, b0h)
    f = np.broadcast_to(f, g.shape)

    matrix: np.ndarray = np.zeros((b0h.shape[0], 4, 4))
    rhs: np.ndarray = np.zeros((b0h.shape[0], 4))
    for k in range(2):
        matrix[:, 2 * k] = np.stack([f[:, k].real, -f[:, k].imag, g[:, k].real, -g[:, k].imag], axis=-1)
        matrix[:, 2 * k + 1] = np.stack([f[:, k].imag, f[:, k].real, g[:, k].imag, g[:, k].real], axis=-1)
        rhs[:, 2 * k] = dz[k].real
        rhs[:, 2 * k + 1] = dz[k].imag
    matrix[~np.all(np.isfinite(matrix), axis=(1, 2))] = 0.0

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        cond: np.ndarray = np.linalg.cond(matrix)
    singular: np.ndarray = ~np.isfinite(cond) | (cond > 1e15)
    safe: np.ndarray = np.where(singular[:, None, None], np.eye(4), matrix)
    solution: np.ndarray = np.linalg.solve(safe, rhs[..., None])[..., 0] * _TO_SI
    solution[singular] = np.nan
    return solution, cond


def solve_linear_fit(
    p0: WindowPoint,
    p1: WindowPoint,
    p2: WindowPoint,
    b0: float,
    l: float,
    max_condition: float = 1e12,
) -> LinearFit:
    """
    Fits (V(0), c0 M(0), c0 N(0)) so the closed form through p0 passes p1 and p2.

    Args:
        p0 (WindowPoint): Origin anchor.
        p1 (WindowPoint): Second anchor.
        p2 (WindowPoint): Third anchor.
        b0 (float): Trial vorticity in 1/s.
        l (float): Coriolis parameter in 1/s.
        max_condition (float): Largest accepted condition number.
    Returns:
        LinearFit: Fitted initial data.
    Raises:
        DegenerateWindowError: If times do not increase or the system is ill-conditioned.
        ResonanceError: If l, b0 or b0 - l hits the guard.
    """
    window: tuple[WindowPoint, ...] = (p0, p1, p2)
    _check_window(window)
    check_frequencies(l, b0)
    solution, cond = _batch_fit(window, np.array([b0]), l)
    if not cond[0] <= max_condition:
        raise DegenerateWindowError(
            f"window at t0={p0.t} s is ill-conditioned for b0={b0:.4e} (cond={cond[0]:.3e})"
        )
    v1, v2, m, n = (float(v) for v in solution[0])
    return LinearFit(v0=(v1, v2), mn=(m, n), condition_number=float(cond[0]))


def finite_difference_velocity(p0: WindowPoint, p1: WindowPoint) -> np.ndarray:
    """
    Returns the forward-difference (chord) velocity between two anchors in m/s.

    Raises:
        ModelDomainError: If t1 <= t0.
    """
    if not p1.t > p0.t:
        raise ModelDomainError(f"need t1 > t0, got t0={p0.t}, t1={p1.t}")
    return np.array([p1.x1 - p0.x1, p1.x2 - p0.x2]) / (p1.t - p0.t)


def condition_residuals(
    window: Sequence[WindowPoint], b0: np.ndarray, l: float
) -> np.ndarray:
    """Returns (g1, g2) for every b0, shape (k, 2); NaN where the system is singular."""
    solution, _ = _batch_fit(window, np.atleast_1d(b0), l)
    return solution[:, :2] - finite_difference_velocity(window[0], window[1])


def _scan_segments(grid: np.ndarray, l: float, guard: float) -> list[np.ndarray]:
    # runs of admissible grid points that do not straddle b0 = 0 or b0 = l
    admissible: np.ndarray = (np.abs(grid) > guard) & (np.abs(grid - l) > guard)
    side: np.ndarray = np.sign(grid) + 2.0 * np.sign(grid - l)
    segments: list[np.ndarray] = []
    current: list[int] = []
    for i in range(grid.shape[0]):
        if not admissible[i] or (current and side[i] != side[current[-1]]):
            if len(current) > 1:
                segments.append(np.array(current))
            current = []
        if admissible[i]:
            current.append(i)
    if len(current) > 1:
        segments.append(np.array(current))
    return segments


def _roots_of(
    window: Sequence[WindowPoint],
    l: float,
    component: int,
    grid: np.ndarray,
    values: np.ndarray,
    segments: list[np.ndarray],
) -> list[float]:
    def residual(b0: float) -> float:
        return float(condition_residuals(window, np.array([b0]), l)[0, component])

    roots: list[float] = []
    for segment in segments:
        b, v = grid[segment], values[segment, component]
        for j in np.flatnonzero(v == 0.0):
            roots.append(float(b[j]))
        for j in np.flatnonzero(v[:-1] * v[1:] < 0.0):
            root: float = bisect(residual, b[j], b[j + 1], xtol=ROOT_XTOL, rtol=ROOT_RTOL)
            # a sign change across a pole of the fitted velocity is not a root
            if abs(residual(root)) <= max(abs(v[j]), abs(v[j + 1])):
                roots.append(float(root))
    return sorted(roots)


def pair_roots(
    roots1: Sequence[float], roots2: Sequence[float], bound: float, epsilon: float
) -> tuple[float | None, float | None, bool]:
    """
    Picks the (b01, b02) pair with the smallest gap and judges it.

    Returns:
        tuple[float | None, float | None, bool]: b01, b02 (None when a condition has no
            root) and the verdict |b01|, |b02| <= bound and |b01 - b02| < epsilon.
    """
    if not roots1 or not roots2:
        return (roots1[0] if roots1 else None), (roots2[0] if roots2 else None), False
    gaps: np.ndarray = np.abs(np.subtract.outer(np.asarray(roots1), np.asarray(roots2)))
    i, j = np.unravel_index(int(np.argmin(gaps)), gaps.shape)
    b01, b02 = float(roots1[i]), float(roots2[j])
    accepted: bool = abs(b01) <= bound and abs(b02) <= bound and abs(b01 - b02) < epsilon
    return b01, b02, accepted


def find_b0(
    p0: WindowPoint,
    p1: WindowPoint,
    p2: WindowPoint,
    l: float,
    config: FitConfig = FitConfig(),
    start_index: int = 0,
) -> FitResult:
    """
    Searches b0 for a three-point window and returns the fit with its verdict.

    The residuals g1, g2 are scanned over [-bound, bound] on config.grid_points points,
    excluding the guard neighborhoods of 0 and l; each sign change is refined by
    bisection. A missing root is a rejection, not an error.

    Raises:
        DegenerateWindowError: If the anchor times do not increase.
        ModelDomainError: If the guards exclude the whole search interval.
    """
    window: list[WindowPoint] = [p0, p1, p2]
    _check_window(window)
    grid: np.ndarray = np.linspace(-config.bound, config.bound, config.grid_points)
    segments: list[np.ndarray] = _scan_segments(grid, l, config.guard)
    if not segments:
        raise ModelDomainError(
            f"guards of {config.guard:.1e} 1/s exclude the whole interval +-{config.bound:.1e} 1/s"
        )
    scanned: np.ndarray = np.concatenate(segments)
    values: np.ndarray = np.full((grid.shape[0], 2), np.nan)
    values[scanned] = condition_residuals(window, grid[scanned], l)
    roots1: list[float] = _roots_of(window, l, 0, grid, values, segments)
    roots2: list[float] = _roots_of(window, l, 1, grid, values, segments)
    b01, b02, accepted = pair_roots(roots1, roots2, config.bound, config.epsilon)

    result = FitResult(
        v0=None,
        mn=None,
        b0=None,
        b01=b01,
        b02=b02,
        accepted=False,
        epsilon_used=config.epsilon,
        l=l,
        window=window,
        mode=FitMode.SEARCH,
        start_index=start_index,
    )
    if not accepted:
        reason: str = (
            "no root for the V1 condition" if b01 is None
            else "no root for the V2 condition" if b02 is None
            else f"|b01 - b02| = {abs(b01 - b02):.3e} 1/s, bound {config.bound:.1e} 1/s"
        )
        logger.debug(f"Window {start_index} rejected: {reason}")
        return replace(result, message=f"rejected: {reason}")

    b0: float = 0.5 * (b01 + b02)
    try:
        fit: LinearFit = solve_linear_fit(p0, p1, p2, b0, l, config.max_condition)
    except ModelDomainError as e:
        logger.debug(f"Window {start_index} rejected at b0={b0:.4e}: {e}")
        return replace(result, message=f"rejected: {e}")
    logger.debug(f"Window {start_index} accepted: b0={b0:.6e} (b01={b01:.6e}, b02={b02:.6e})")
    return replace(
        result,
        v0=fit.v0,
        mn=fit.mn,
        b0=b0,
        accepted=True,
        condition_number=fit.condition_number,
        message="accepted",
    )


def fit_with_fixed_b0(
    p0: WindowPoint,
    p1: WindowPoint,
    p2: WindowPoint,
    b0: float,
    l: float,
    config: FitConfig = FitConfig(),
    mode: FitMode = FitMode.FIXED,
    start_index: int = 0,
) -> FitResult:
    """Runs the linear fit for a given b0; the result is accepted whenever the solve succeeds."""
    fit: LinearFit = solve_linear_fit(p0, p1, p2, b0, l, config.max_condition)
    return FitResult(
        v0=fit.v0,
        mn=fit.mn,
        b0=b0,
        b01=None,
        b02=None,
        accepted=True,
        epsilon_used=config.epsilon,
        l=l,
        window=[p0, p1, p2],
        condition_number=fit.condition_number,
        mode=mode,
        start_index=start_index,
        message=f"b0 {mode.value}",
    )


def b0_equilibrium_estimate(c0: float, A0: float, l: float) -> float:
    """
    Returns the small root of b0^2 - l b0 - 2 c0 A0 = 0.

    The root is evaluated as -2 c0 A0 / q with q the large root, which avoids the
    cancellation in (l - sqrt(l^2 + 8 c0 A0)) / 2.

    Raises:
        ModelDomainError: If l = 0.
    """
    return small_vorticity_root(l, 2.0 * c0 * A0)


def b0_asymptotic_estimate(c0: float, A0: float, l: float) -> float:
    """Returns the leading-order small root -2 c0 A0 / l, valid for c0 A0 << l^2."""
    if l == 0.0:
        raise ModelDomainError("the vorticity estimate needs a nonzero Coriolis parameter")
    return -2.0 * c0 * A0 / l + 0.0
