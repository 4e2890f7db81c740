#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Typhoon Track Model

This module contains the closed-form eye trajectory at the equilibrium of the coefficient
system and its two-circle decomposition.

At a = 0, b = b0 the forcing c0 (M + i N) rotates as mu exp(-i b0 t) and the eye velocity
w = V1 + i V2 obeys w' = -i l w - mu exp(-i b0 t). Writing z = x1 + i x2,

    z(t) = Zc + (-Q + i P) exp(-i l t) + (T + i S) exp(-i b0 t)

which is the real pair

- x1 = X1c + P sin(lt) - Q cos(lt) + S sin(b0 t) + T cos(b0 t)
- x2 = X2c + Q sin(lt) + P cos(lt) - T sin(b0 t) + S cos(b0 t)

The second line starts from x2(0); it reproduces the origin at t = 0.
"""
from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from typhoon_track_model import RESONANCE_GUARD, units
from typhoon_track_model.data_classes.model_parameters import ModelParams
from typhoon_track_model.data_classes.model_states import BarotropicState
from typhoon_track_model.data_classes.trajectory_coefficients import (
    CircleComponent,
    Decomposition,
    TrajectoryCoefficients,
)
from typhoon_track_model.dynamics.barotropic import (
    equilibrium,
    integration_constants,
    simulate_barotropic,
)
from typhoon_track_model.dynamics.integrator import TimeSeries
from typhoon_track_model.exceptions import ResonanceError

logger: logging.Logger = logging.getLogger(__name__)

GUARD: float = RESONANCE_GUARD.to(1 / units.s).magnitude

ArrayLike = float | np.ndarray


def check_frequencies(l: float, b0: float, guard: float = GUARD) -> None:
    """
    Checks that l, b0 and b0 - l are all farther than guard from zero.

    Raises:
        ResonanceError: Naming the first offending quantity.
    """
    for name, value in (("l", l), ("b0", b0), ("b0 - l", b0 - l)):
        if not abs(value) > guard:
            raise ResonanceError(f"|{name}| = {abs(value):.3e} 1/s is within the guard {guard:.1e} 1/s")


def closed_form_coefficients(
    x0: Sequence[float],
    v0: Sequence[float],
    mn: Sequence[float],
    l: float,
    b0: float,
) -> TrajectoryCoefficients:
    """
    Computes the amplitudes of the closed-form trajectory.

    Args:
        x0 (Sequence[float]): (x1(0), x2(0)) in m.
        v0 (Sequence[float]): (V1(0), V2(0)) in m/s.
        mn (Sequence[float]): (c0 M(0), c0 N(0)) in m/s^2.
        l (float): Coriolis parameter in 1/s.
        b0 (float): Averaged vorticity at equilibrium in 1/s.
    Returns:
        TrajectoryCoefficients: Center and circle amplitudes.
    Raises:
        ResonanceError: If |l|, |b0| or |b0 - l| is within the resonance guard.
    """
    check_frequencies(l, b0)
    x1, x2 = (float(v) for v in x0)
    v1, v2 = (float(v) for v in v0)
    m, n = (float(v) for v in mn)
    d: float = b0 - l
    center: tuple[float, float] = (
        x1 + v2 / l + m / (b0 * l),
        x2 - v1 / l + n / (b0 * l),
    )
    return TrajectoryCoefficients(
        center=center,
        P=v1 / l - n / (l * d),
        Q=v2 / l + m / (l * d),
        S=n / (b0 * d),
        T=m / (b0 * d),
        l=l,
        b0=b0,
        origin=(x1, x2),
        v0=(v1, v2),
        mn=(m, n),
    )


def _complex_parts(c: TrajectoryCoefficients) -> tuple[complex, complex, complex]:
    return (
        complex(*c.center),
        complex(-c.Q, c.P),
        complex(c.T, c.S),
    )


def _to_xy(z: np.ndarray) -> np.ndarray:
    return np.stack([z.real, z.imag], axis=-1)


def eval_trajectory(c: TrajectoryCoefficients, t: ArrayLike) -> np.ndarray:
    """
    Evaluates the eye position at time(s) t since the origin point.

    Returns:
        np.ndarray: (x1, x2) in m, shape (2,) for scalar t or (n, 2) for an array.
    """
    zc, lz, bz = _complex_parts(c)
    tt: np.ndarray = np.asarray(t, dtype=float)
    z: np.ndarray = zc + lz * np.exp(-1j * c.l * tt) + bz * np.exp(-1j * c.b0 * tt)
    return _to_xy(z)


def eval_velocity(c: TrajectoryCoefficients, t: ArrayLike) -> np.ndarray:
    """Evaluates the eye velocity (V1, V2) in m/s at time(s) t."""
    _, lz, bz = _complex_parts(c)
    tt: np.ndarray = np.asarray(t, dtype=float)
    w: np.ndarray = (
        -1j * c.l * lz * np.exp(-1j * c.l * tt) - 1j * c.b0 * bz * np.exp(-1j * c.b0 * tt)
    )
    return _to_xy(w)


def eval_acceleration(c: TrajectoryCoefficients, t: ArrayLike) -> np.ndarray:
    """Evaluates the eye acceleration in m/s^2 at time(s) t."""
    _, lz, bz = _complex_parts(c)
    tt: np.ndarray = np.asarray(t, dtype=float)
    w_dot: np.ndarray = (
        -(c.l**2) * lz * np.exp(-1j * c.l * tt) - c.b0**2 * bz * np.exp(-1j * c.b0 * tt)
    )
    return _to_xy(w_dot)


def forcing(c: TrajectoryCoefficients, t: ArrayLike) -> np.ndarray:
    """Returns (c0 M(t), c0 N(t)) at the equilibrium, the rotation of mn at rate b0."""
    tt: np.ndarray = np.asarray(t, dtype=float)
    return _to_xy(complex(*c.mn) * np.exp(-1j * c.b0 * tt))


def decompose(c: TrajectoryCoefficients) -> Decomposition:
    """
    Splits the trajectory into its drift-free center and two circles.

    Returns:
        Decomposition: Center, inertial circle (frequency l), vorticity circle (frequency b0).
    """
    _, lz, bz = _complex_parts(c)
    return Decomposition(
        center=c.center,
        l_circle=CircleComponent(
            radius=float(abs(lz)),
            omega=c.l,
            period=2.0 * np.pi / abs(c.l),
            phase=float(np.angle(lz)),
        ),
        b0_circle=CircleComponent(
            radius=float(abs(bz)),
            omega=c.b0,
            period=2.0 * np.pi / abs(c.b0),
            phase=float(np.angle(bz)),
        ),
    )


def synthesize(d: Decomposition, t: ArrayLike) -> np.ndarray:
    """Rebuilds positions from a decomposition; inverse of decompose for eval_trajectory."""
    tt: np.ndarray = np.asarray(t, dtype=float)
    z: np.ndarray = complex(*d.center) + sum(
        circle.radius * np.exp(1j * (circle.phase - circle.omega * tt))
        for circle in (d.l_circle, d.b0_circle)
    )
    return _to_xy(z)


def _phi(omega: ArrayLike, t: ArrayLike) -> np.ndarray:
    # (1 - exp(-i omega t)) / (i omega), finite at omega = 0
    half: np.ndarray = np.asarray(omega) * np.asarray(t) / 2.0
    return np.asarray(t) * np.exp(-1j * half) * np.sinc(half / np.pi)


def response_factors(t: ArrayLike, l: float, b0: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    """
    Returns the complex factors (f, g) with z(t) - z(0) = f w + g mu.

    Here w = V1(0) + i V2(0) and mu = c0 (M(0) + i N(0)). b0 may be an array; f and g
    broadcast over t and b0. g is only evaluated away from b0 = l.
    """
    f: np.ndarray = _phi(l, t)
    d: np.ndarray = np.asarray(b0) - l
    g: np.ndarray = (_phi(b0, t) - f) / (1j * d)
    return f, g


@dataclass(frozen=True)
class OdeComparison:
    """Full-system eye track against the closed form from the same initial data.

    Attributes:
        times (np.ndarray): Sample times in s since the start.
        ode_xy (np.ndarray): Integrated eye positions in m, shape (n, 2).
        closed_xy (np.ndarray): Closed-form positions in m, shape (n, 2).
        b0 (float): Vorticity used for the closed form.
        series (TimeSeries): The integrated coefficient states.
    """

    times: np.ndarray
    ode_xy: np.ndarray
    closed_xy: np.ndarray
    b0: float
    series: TimeSeries

    @property
    def separation(self) -> np.ndarray:
        """Distance between the two tracks in m."""
        return np.hypot(*(self.ode_xy - self.closed_xy).T)

    @property
    def final_separation(self) -> float:
        """Distance at the end of the run in m."""
        return float(self.separation[-1])


def compare_with_ode(
    state0: BarotropicState,
    p: ModelParams,
    dt: float,
    t_end: float,
    b0: float | None = None,
) -> OdeComparison:
    """
    Integrates the barotropic system and evaluates the closed form from the same data.

    The closed form uses x(0), V(0) and (c0 M(0), c0 N(0)) of state0. b0 defaults to the
    equilibrium vorticity of the phase plane through state0.

    Raises:
        NoEquilibriumError: If b0 is omitted and the state has C1 = 0.
        ResonanceError: If the frequencies hit a guard.
        IntegrationBlowupError: If the full system leaves the physical range.
    """
    if b0 is None:
        _, b0 = equilibrium(integration_constants(state0, p).C1, p)
    coefficients: TrajectoryCoefficients = closed_form_coefficients(
        (state0.x1, state0.x2),
        (state0.V1, state0.V2),
        (p.c0 * state0.M, p.c0 * state0.N),
        p.l,
        b0,
    )
    series: TimeSeries = simulate_barotropic(state0, p, dt, t_end)
    elapsed: np.ndarray = series.times - state0.t
    comparison = OdeComparison(
        times=elapsed,
        ode_xy=np.column_stack([series.column("x1"), series.column("x2")]),
        closed_xy=eval_trajectory(coefficients, elapsed),
        b0=b0,
        series=series,
    )
    logger.info(
        f"Closed form vs full system after {elapsed[-1] / 3600.0:.1f} h: "
        f"{comparison.final_separation / 1000.0:.2f} km apart (b0={b0:.4e})"
    )
    return comparison


def self_intersections(points: np.ndarray) -> list[tuple[int, int]]:
    """
    Finds crossings between non-adjacent segments of a polyline.

    Args:
        points (np.ndarray): Vertices, shape (n, 2).
    Returns:
        list[tuple[int, int]]: Pairs (i, j), i < j - 1, of segments p[i]p[i+1] and
            p[j]p[j+1] that cross properly.
    """
    pts: np.ndarray = np.asarray(points, dtype=float)
    starts, ends = pts[:-1], pts[1:]
    crossings: list[tuple[int, int]] = []

    def orient(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.sign(
            (a[..., 0] - o[..., 0]) * (b[..., 1] - o[..., 1])
            - (a[..., 1] - o[..., 1]) * (b[..., 0] - o[..., 0])
        )

    for i in range(starts.shape[0] - 2):
        p, q = starts[i], ends[i]
        r, s = starts[i + 2 :], ends[i + 2 :]
        hit: np.ndarray = (
            (orient(p, q, r) * orient(p, q, s) < 0) & (orient(r, s, p) * orient(r, s, q) < 0)
        )
        crossings.extend((i, i + 2 + int(j)) for j in np.flatnonzero(hit))
    return crossings


def has_loop(points: np.ndarray) -> bool:
    """Whether the polyline crosses itself."""
    return bool(self_intersections(points))
