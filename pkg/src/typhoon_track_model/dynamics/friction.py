#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Typhoon Track Model

This module contains the barotropic system with linear surface friction, the vortex
collapse run and the (A, a) phase portraits.

A damping term -k U in the momentum equation adds -k a to a' and -k b to b'; every other
coefficient equation is unchanged. For k > 0 the reduced (A, a, b) system has no
equilibrium with A != 0, so the low-pressure core cannot stay at rest: the phase-curve
constant drifts and the flow eventually becomes convergent (a < 0).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from typhoon_track_model.data_classes.model_parameters import ModelParams
from typhoon_track_model.data_classes.model_states import BarotropicState
from typhoon_track_model.dynamics.barotropic import (
    barotropic_derivative,
    constants_along,
    equilibrium,
    integration_constants,
    linear_frequency,
    relative_drift,
)
from typhoon_track_model.dynamics.integrator import TimeSeries, integrate
from typhoon_track_model.exceptions import ModelDomainError

logger: logging.Logger = logging.getLogger(__name__)

SECONDS_PER_DAY: float = 86_400.0

_A, _K = BarotropicState.FIELDS.index("A"), BarotropicState.FIELDS.index("K")

# Initial data of the collapse run: A = 1e-9, a = 0, b = -2e-6 with l = 1e-4, c0 = 0.1
COLLAPSE_INITIAL_STATE: BarotropicState = BarotropicState(a=0.0, b=-2e-6, A=1e-9)


def friction_rhs(s: BarotropicState | np.ndarray, p: ModelParams) -> np.ndarray:
    """
    Returns the barotropic derivative with a' and b' damped by p.k.

    Args:
        s (BarotropicState | np.ndarray): State or state vector.
        p (ModelParams): Model constants, p.k >= 0.
    Returns:
        np.ndarray: State derivative in BarotropicState.FIELDS order.
    """
    y: np.ndarray = s.to_vector() if isinstance(s, BarotropicState) else np.asarray(s)
    return barotropic_derivative(y, p, k=p.k)


def simulate_friction(
    state0: BarotropicState, p: ModelParams, dt: float, t_end: float
) -> TimeSeries:
    """Integrates the damped barotropic system; A and K are guarded like the undamped run."""
    return integrate(
        lambda _t, y: barotropic_derivative(y, p, k=p.k),
        state0.to_vector(),
        dt,
        t_end,
        positive=(_A, _K),
        fields=BarotropicState.FIELDS,
        t0=state0.t,
    )


@dataclass(frozen=True)
class CollapseReport:
    """Diagnostics of a damped run.

    Attributes:
        series (TimeSeries): The integrated states.
        min_a (float): Smallest divergence coefficient reached.
        max_abs_b (float): Largest |b| reached.
        final_A (float): A at the end of the run.
        final_a (float): a at the end of the run.
        final_b (float): b at the end of the run.
        invariant_drift (float): Largest relative deviation of C4 from its initial value.
        convergent_since (float | None): Start of the terminal stretch with a < 0, if any.
        sustained_convergence (bool): Whether a < 0 over the whole terminal window.
    """

    series: TimeSeries
    min_a: float
    max_abs_b: float
    final_A: float
    final_a: float
    final_b: float
    invariant_drift: float
    convergent_since: float | None
    sustained_convergence: bool

    @property
    def collapsed(self) -> bool:
        """Collapse: the phase-curve constant is broken and the flow stays convergent."""
        return self.invariant_drift > 1e-2 and self.sustained_convergence


def _convergent_since(times: np.ndarray, a: np.ndarray) -> float | None:
    # first sample of the trailing run of a < 0
    if a[-1] >= 0.0:
        return None
    non_negative: np.ndarray = np.flatnonzero(a >= 0.0)
    start: int = int(non_negative[-1]) + 1 if non_negative.size else 0
    return float(times[start])


def collapse_simulation(
    p: ModelParams,
    state0: BarotropicState = COLLAPSE_INITIAL_STATE,
    dt: float = 60.0,
    t_end: float = 3.0 * SECONDS_PER_DAY,
    terminal_window: float = SECONDS_PER_DAY,
) -> CollapseReport:
    """
    Integrates the damped system and reports collapse diagnostics.

    With p.k = 0 the run is the conservative reference and the drift stays at integrator
    level.

    Args:
        p (ModelParams): Model constants; p.k is the friction coefficient.
        state0 (BarotropicState): Initial state, A > 0.
        dt (float): Step in s.
        t_end (float): Duration in s.
        terminal_window (float): Length of the final interval checked for a < 0.
    Returns:
        CollapseReport: Series and diagnostics.
    Raises:
        ModelDomainError: If A(0) <= 0.
        IntegrationBlowupError: If the run leaves the physical range.
    """
    integration_constants(state0, p)
    series: TimeSeries = simulate_friction(state0, p, dt, t_end)
    a: np.ndarray = series.column("a")
    b: np.ndarray = series.column("b")
    A: np.ndarray = series.column("A")
    _, _, c4 = constants_along(series, p)

    since: float | None = _convergent_since(series.times, a)
    sustained: bool = since is not None and series.times[-1] - since >= terminal_window
    report = CollapseReport(
        series=series,
        min_a=float(a.min()),
        max_abs_b=float(np.abs(b).max()),
        final_A=float(A[-1]),
        final_a=float(a[-1]),
        final_b=float(b[-1]),
        invariant_drift=relative_drift(c4),
        convergent_since=since,
        sustained_convergence=sustained,
    )
    logger.info(
        f"Friction run k={p.k}: C4 drift {report.invariant_drift:.3e}, "
        f"final a={report.final_a:.3e}, max|b|={report.max_abs_b:.3e}"
    )
    return report


def reduced_friction_rhs(
    A: complex, a: complex, b: complex, p: ModelParams
) -> tuple[complex, complex, complex]:
    """Returns (A', a', b') of the damped reduced system; accepts complex arguments."""
    return (
        -2.0 * p.gamma * a * A,
        -a * a + b * b - p.l * b - 2.0 * p.c0 * A - p.k * a,
        -2.0 * a * b + p.l * a - p.k * b,
    )


def damped_equilibria(p: ModelParams) -> list[tuple[complex, complex, complex]]:
    """
    Lists the equilibria (A, a, b) of the damped reduced system.

    A' = 0 forces a = 0 or A = 0, and a = 0 forces b = 0 and then A = 0, so every
    equilibrium lies on A = 0. Off a = 0, b' = 0 gives b = l a / (2 a + k) and a' = 0
    then factors into (a + k) ((2 a + k)^2 + l^2) = 0. This yields the origin, the real
    point (0, -k, l) and a complex pair with a = (-k +- i l)/2, b = (l +- i k)/2.

    Returns:
        list[tuple[complex, complex, complex]]: Real equilibria first, then the complex pair.
    """
    k, l = p.k, p.l
    points: list[tuple[complex, complex, complex]] = [(0j, 0j, 0j), (0j, complex(-k), complex(l))]
    for sign in (1.0, -1.0):
        points.append((0j, complex(-k, sign * l) / 2.0, complex(l, sign * k) / 2.0))
    return points


@dataclass(frozen=True)
class PhaseOrbit:
    """One curve of a phase portrait in the (A, a) plane.

    Attributes:
        times (np.ndarray): Sample times in s.
        A (np.ndarray): Pressure-curvature samples.
        a (np.ndarray): Divergence samples.
        b (np.ndarray): Rotation samples.
        center (tuple[float, float] | None): (A0, 0) of the undamped system, if any.
        period (float | None): Time of one revolution for closed orbits.
        closure (float | None): Gap between start and end relative to the orbit radius.
    """

    times: np.ndarray
    A: np.ndarray
    a: np.ndarray
    b: np.ndarray
    center: tuple[float, float] | None = None
    period: float | None = None
    closure: float | None = None

    def to_frame_columns(self) -> dict[str, np.ndarray]:
        return {"t_s": self.times, "A": self.A, "a": self.a, "b": self.b}


def trace_orbit(
    state0: BarotropicState, p: ModelParams, dt: float = 60.0, max_periods: float = 3.0
) -> PhaseOrbit:
    """
    Follows one revolution of an undamped orbit around the center (A0, 0).

    The angle is measured in the normalized plane u = (A - A0)/A0, v = 2 gamma a / omega,
    where the linearized motion is a circle of frequency omega. The end of the revolution
    and the closing state are interpolated linearly between samples.

    Args:
        state0 (BarotropicState): Initial state off the center.
        p (ModelParams): Model constants; p.k is ignored.
        dt (float): Step in s.
        max_periods (float): Horizon in units of the linear period.
    Returns:
        PhaseOrbit: Samples up to and including the closing point.
    Raises:
        ModelDomainError: If the state sits on the center or no revolution completes.
    """
    c1: float = integration_constants(state0, p).C1
    A0, _ = equilibrium(c1, p)
    omega: float = linear_frequency(A0, p)
    undamped = ModelParams(gamma=p.gamma, l=p.l, c0=p.c0, R=p.R)
    series: TimeSeries = integrate(
        lambda _t, y: barotropic_derivative(y, undamped),
        state0.to_vector(),
        dt,
        max_periods * 2.0 * np.pi / omega,
        positive=(_A, _K),
        fields=BarotropicState.FIELDS,
        t0=state0.t,
    )
    A: np.ndarray = series.column("A")
    a: np.ndarray = series.column("a")
    u: np.ndarray = (A - A0) / A0
    v: np.ndarray = 2.0 * p.gamma * a / omega
    radius: float = float(np.hypot(u[0], v[0]))
    if radius < 1e-12:
        raise ModelDomainError("initial state lies on the center; the orbit is a point")

    swept: np.ndarray = np.abs(np.unwrap(np.arctan2(v, u)) - np.arctan2(v[0], u[0]))
    beyond: np.ndarray = np.flatnonzero(swept >= 2.0 * np.pi)
    if beyond.size == 0:
        raise ModelDomainError(
            f"orbit did not close within {max_periods} linear periods"
        )
    j: int = int(beyond[0])
    w: float = float((2.0 * np.pi - swept[j - 1]) / (swept[j] - swept[j - 1]))
    t_close: float = float(series.times[j - 1] + w * (series.times[j] - series.times[j - 1]))
    end: np.ndarray = (1.0 - w) * series.states[j - 1] + w * series.states[j]

    times = np.append(series.times[:j], t_close)
    states = np.vstack([series.states[:j], end])
    u_end: float = (end[_A] - A0) / A0
    v_end: float = 2.0 * p.gamma * end[0] / omega
    closure: float = float(np.hypot(u_end - u[0], v_end - v[0]) / radius)
    logger.debug(f"Orbit around A0={A0:.4e}: period {t_close - times[0]:.1f} s, closure {closure:.2e}")
    return PhaseOrbit(
        times=times,
        A=states[:, _A],
        a=states[:, 0],
        b=states[:, 1],
        center=(A0, 0.0),
        period=t_close - float(times[0]),
        closure=closure,
    )


def phase_portrait(
    states: list[BarotropicState],
    p: ModelParams,
    dt: float = 60.0,
    t_end: float = 3.0 * SECONDS_PER_DAY,
) -> list[PhaseOrbit]:
    """
    Builds one (A, a) curve per initial state.

    For p.k = 0 every curve is a single closed revolution (see trace_orbit); for p.k > 0
    each curve is a damped run of length t_end.
    """
    orbits: list[PhaseOrbit] = []
    for state in states:
        if p.k == 0.0:
            orbits.append(trace_orbit(state, p, dt))
            continue
        series: TimeSeries = simulate_friction(state, p, dt, t_end)
        orbits.append(
            PhaseOrbit(
                times=series.times,
                A=series.column("A"),
                a=series.column("a"),
                b=series.column("b"),
            )
        )
    return orbits
