#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Shared fixtures of the Typhoon Track Model tests."""
from collections.abc import Callable

import numpy as np
import pytest

from typhoon_track_model.data_classes.fit_result import WindowPoint
from typhoon_track_model.data_classes.model_parameters import ModelParams
from typhoon_track_model.data_classes.track import PlaneTrack
from typhoon_track_model.trajectory.closed_form import (
    closed_form_coefficients,
    eval_trajectory,
    response_factors,
)

HOUR: float = 3600.0
DAY: float = 86_400.0


@pytest.fixture
def params() -> ModelParams:
    """Default physical constants: gamma = 9/7, l = 1e-4, c0 = 0.1."""
    return ModelParams()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20261017)


def synthetic_plane(
    v0: tuple[float, float],
    mn: tuple[float, float],
    b0: float,
    l: float,
    times: np.ndarray,
    x0: tuple[float, float] = (0.0, 0.0),
) -> PlaneTrack:
    """Samples the closed form at the given times (s since the first sample)."""
    coefficients = closed_form_coefficients(x0, v0, mn, l, b0)
    return PlaneTrack(times=np.asarray(times, dtype=float), xy=eval_trajectory(coefficients, times))


def window_of(plane: PlaneTrack, start: int = 0) -> list[WindowPoint]:
    return [
        WindowPoint(t=float(plane.times[k]), x1=float(plane.xy[k, 0]), x2=float(plane.xy[k, 1]))
        for k in range(start, start + 3)
    ]


@pytest.fixture
def chord_window() -> Callable[..., tuple[list[WindowPoint], tuple[float, float], tuple[float, float]]]:
    """
    Builds windows whose true V(t0) equals the chord velocity of the first interval.

    For a given velocity w the forcing is mu = (t1 - f(t1)) w / g(t1), so the closed form
    covers x(t1) - x(t0) = w (t1 - t0) exactly and b0 is a common root of both matching
    conditions.
    """

    def build(
        b0: float,
        l: float = 1e-4,
        v0: tuple[float, float] = (-3.0, 2.0),
        spacing: float = 6.0 * HOUR,
    ) -> tuple[list[WindowPoint], tuple[float, float], tuple[float, float]]:
        t1: float = spacing
        f, g = response_factors(t1, l, b0)
        w: complex = complex(*v0)
        mu: complex = complex((t1 - f) * w / g)
        mn: tuple[float, float] = (mu.real, mu.imag)
        plane = synthetic_plane(v0, mn, b0, l, np.array([0.0, spacing, 2.0 * spacing]))
        return window_of(plane), v0, mn

    return build


def chord_plane(
    b0: float,
    count: int,
    l: float = 1e-4,
    v0: tuple[float, float] = (-3.0, 2.0),
    spacing: float = 3.0 * HOUR,
    x0: tuple[float, float] = (0.0, 0.0),
    t0: float = 0.0,
) -> PlaneTrack:
    """
    Builds an evenly spaced track on which every window matches its chord velocity at b0.

    With w the chord velocity of the first interval and mu chosen as in chord_window, the
    second step of each window is rho times the first, rho = (f2 + g2 (t1 - f1) / g1) / t1.
    Successive steps therefore form a geometric sequence with ratio rho - 1.
    """
    t1: float = spacing
    f1, g1 = (complex(v) for v in response_factors(t1, l, b0))
    f2, g2 = (complex(v) for v in response_factors(2.0 * t1, l, b0))
    ratio: complex = (f2 + g2 * (t1 - f1) / g1) / t1 - 1.0
    steps: np.ndarray = complex(*v0) * t1 * ratio ** np.arange(count - 1)
    z: np.ndarray = complex(*x0) + np.concatenate([[0.0], np.cumsum(steps)])
    return PlaneTrack(
        times=t0 + np.arange(count) * spacing,
        xy=np.column_stack([z.real, z.imag]),
    )


def spliced_plane(
    first: tuple[float, int], second: tuple[float, int], spacing: float = 3.0 * HOUR
) -> tuple[PlaneTrack, int]:
    """
    Joins two chord-consistent tracks, given as (b0, count), at a sharp turn.

    The second track is reached from the last point of the first by a step in a third
    direction, so both windows across the joint turn sharply. Returns the plane and the
    index of the first point of the second track.
    """
    head = chord_plane(first[0], first[1], spacing=spacing)
    v_turn: tuple[float, float] = (4.0, 5.0)
    start = head.xy[-1] + np.array([6.0, -1.0]) * spacing
    tail = chord_plane(
        second[0], second[1], v0=v_turn, spacing=spacing, x0=(start[0], start[1]),
        t0=head.times[-1] + spacing,
    )
    return PlaneTrack(
        times=np.concatenate([head.times, tail.times]),
        xy=np.concatenate([head.xy, tail.xy]),
    ), len(head)


def split_root_window(
    b0_v1: float,
    b0_v2: float,
    l: float = 1e-4,
    v0: tuple[float, float] = (-3.0, 2.0),
    spacing: float = 3.0 * HOUR,
) -> list[WindowPoint]:
    """
    Builds a window whose V1 condition vanishes at b0_v1 and whose V2 condition at b0_v2.

    The first interval is covered at v0. The fitted velocity is affine in the third
    position dz2 = x + i y, V(b0) - v0 = alpha + beta dz2, so the two conditions form a
    2x2 real system in (x, y).
    """
    t1: float = spacing
    dz1: complex = complex(*v0) * t1
    matrix: list[list[float]] = []
    rhs: list[float] = []
    for b0, component in ((b0_v1, 0), (b0_v2, 1)):
        f1, g1 = (complex(v) for v in response_factors(t1, l, b0))
        f2, g2 = (complex(v) for v in response_factors(2.0 * t1, l, b0))
        det: complex = f1 * g2 - f2 * g1
        alpha: complex = dz1 * g2 / det - complex(*v0)
        beta: complex = -g1 / det
        if component == 0:
            matrix.append([beta.real, -beta.imag])
            rhs.append(-alpha.real)
        else:
            matrix.append([beta.imag, beta.real])
            rhs.append(-alpha.imag)
    x, y = np.linalg.solve(np.array(matrix), np.array(rhs))
    return [
        WindowPoint(t=0.0, x1=0.0, x2=0.0),
        WindowPoint(t=t1, x1=dz1.real, x2=dz1.imag),
        WindowPoint(t=2.0 * t1, x1=float(x), x2=float(y)),
    ]


def split_root_plane(b0_v1: float, b0_v2: float, count: int, spacing: float = 3.0 * HOUR) -> PlaneTrack:
    """Starts with split_root_window and continues chord-consistent at b0_v1."""
    p0, p1, p2 = split_root_window(b0_v1, b0_v2, spacing=spacing)
    tail = chord_plane(
        b0_v1, count - 1, v0=((p2.x1 - p1.x1) / spacing, (p2.x2 - p1.x2) / spacing),
        spacing=spacing, x0=(p1.x1, p1.x2), t0=p1.t,
    )
    return PlaneTrack(
        times=np.concatenate([[p0.t], tail.times]),
        xy=np.vstack([[p0.x1, p0.x2], tail.xy]),
    )
