#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Typhoon Track Model

This module contains the baroclinic coefficient system (temperature and density as
separate height-averaged fields, with turbulent viscosity and heat conduction).

Its (a, b, A1) block is the barotropic block with 2 c0 replaced by 4 R, and the eye is
forced by 2 R (M1, N1) instead of c0 (M, N). Viscosity and heat terms enter only the
central-temperature equation

    K1' = -2 (gamma - 1) a K1 + 2 (gamma - 1) (2 mu + lam) a^2 / R + kappa (xi - 4 A1) / K2

so they change K1(t) and nothing else.
"""
from __future__ import annotations

import logging

import numpy as np

from typhoon_track_model.data_classes.model_parameters import (
    IntegrationConstants,
    ModelKind,
    ModelParams,
)
from typhoon_track_model.data_classes.model_states import BaroclinicState, BarotropicState
from typhoon_track_model.dynamics.barotropic import (
    _phase_constant,
    equilibrium_root,
    relative_drift,
)
from typhoon_track_model.dynamics.integrator import TimeSeries, integrate
from typhoon_track_model.exceptions import ModelDomainError

logger: logging.Logger = logging.getLogger(__name__)

_A1, _K2 = BaroclinicState.FIELDS.index("A1"), BaroclinicState.FIELDS.index("K2")


def baroclinic_derivative(y: np.ndarray, p: ModelParams) -> np.ndarray:
    """
    Evaluates the baroclinic right-hand side on a state vector.

    Args:
        y (np.ndarray): State vector in BaroclinicState.FIELDS order.
        p (ModelParams): Model constants.
    Returns:
        np.ndarray: Time derivative in the same order.
    """
    a, b, A1, M1, N1, K1, K2, V1, V2, _, _ = y
    g: float = p.gamma
    return np.array(
        [
            -a * a + b * b - p.l * b - 4.0 * p.R * A1,
            -2.0 * a * b + p.l * a,
            -2.0 * g * a * A1,
            -(2.0 * g - 1.0) * a * M1 + b * N1,
            -(2.0 * g - 1.0) * a * N1 - b * M1,
            -2.0 * (g - 1.0) * a * K1
            + 2.0 * (g - 1.0) * (2.0 * p.mu + p.lam) * a * a / p.R
            + (p.kappa / K2) * (p.xi - 4.0 * A1),
            -2.0 * a * K2,
            p.l * V2 - 2.0 * p.R * M1,
            -p.l * V1 - 2.0 * p.R * N1,
            V1,
            V2,
        ]
    )


def baroclinic_rhs(s: BaroclinicState | np.ndarray, p: ModelParams) -> np.ndarray:
    """
    Returns (a', b', A1', M1', N1', K1', K2', V1', V2', x1', x2') of the baroclinic system.

    Raises:
        ModelDomainError: If K2 <= 0.
    """
    y: np.ndarray = s.to_vector() if isinstance(s, BaroclinicState) else np.asarray(s)
    if not y[_K2] > 0.0:
        raise ModelDomainError(f"averaged density K2 must be positive, got {y[_K2]}")
    return baroclinic_derivative(y, p)


def simulate_baroclinic(
    state0: BaroclinicState, p: ModelParams, dt: float, t_end: float
) -> TimeSeries:
    """
    Integrates the baroclinic system from state0 for t_end seconds.

    K1 may grow or change sign through heat inflow and is not guarded.

    Raises:
        ModelDomainError: If K2 <= 0 initially.
        IntegrationBlowupError: If A1 or K2 leaves the positive range or a value overflows.
    """
    if not state0.K2 > 0.0:
        raise ModelDomainError(f"averaged density K2 must be positive, got {state0.K2}")
    return integrate(
        lambda _t, y: baroclinic_derivative(y, p),
        state0.to_vector(),
        dt,
        t_end,
        positive=(_A1, _K2),
        fields=BaroclinicState.FIELDS,
        t0=state0.t,
    )


def baroclinic_constants(s: BaroclinicState, p: ModelParams) -> IntegrationConstants:
    """
    Computes the barred constants of a baroclinic state.

    C1 = (b - l/2) A1^(-1/g), C3 = K2 A1^(-1/g) and C4 is the phase-curve constant of
    the reduced (A1, a) system.

    Raises:
        ModelDomainError: If A1 <= 0.
    """
    if not s.A1 > 0.0:
        raise ModelDomainError(f"temperature curvature A1 must be positive, got {s.A1}")
    g: float = p.gamma
    c1: float = (s.b - p.l / 2.0) * s.A1 ** (-1.0 / g)
    c3: float = s.K2 * s.A1 ** (-1.0 / g)
    c4: float = float(_phase_constant(s.a, s.A1, c1, g, p.l, 4.0 * p.R))
    return IntegrationConstants(C1=c1, C3=c3, C4=c4, model=ModelKind.BAROCLINIC)


def baroclinic_constants_along(
    series: TimeSeries, p: ModelParams
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Returns the barred (C1, C3, C4) series of a baroclinic TimeSeries."""
    g: float = p.gamma
    a, b, A1, K2 = (series.column(name) for name in ("a", "b", "A1", "K2"))
    c1: np.ndarray = (b - p.l / 2.0) * A1 ** (-1.0 / g)
    c3: np.ndarray = K2 * A1 ** (-1.0 / g)
    c4: np.ndarray = _phase_constant(a, A1, c1, g, p.l, 4.0 * p.R)
    return c1, c3, c4


def vorticity_relation_drift(series: TimeSeries, p: ModelParams) -> float:
    """
    Largest relative violation of b - l/2 = C1 A1^(1/g) along a baroclinic series.

    The constant is taken from the first sample.
    """
    c1, _, _ = baroclinic_constants_along(series, p)
    return relative_drift(c1)


def equilibrium_baroclinic(c1bar: float, p: ModelParams) -> tuple[float, float]:
    """
    Returns the center (A0bar, b0) of the baroclinic (A1, a) phase plane.

    Solves -l^2/4 + c1bar^2 A^(2/g) - 4 R A = 0; b0 solves b0^2 - l b0 - 4 R A0bar = 0.

    Raises:
        NoEquilibriumError: If c1bar = 0 or no positive root exists in the bracket.
    """
    return equilibrium_root(c1bar, p.gamma, p.l, 4.0 * p.R)


def matched_baroclinic_state(s: BarotropicState, p: ModelParams) -> BaroclinicState:
    """
    Maps a barotropic state onto the baroclinic state with the same eye dynamics.

    4 R A1 = 2 c0 A and 2 R (M1, N1) = c0 (M, N); a, b, V and x are shared. K1 and K2 keep
    their defaults since they do not feed back on the eye.
    """
    return BaroclinicState(
        a=s.a,
        b=s.b,
        A1=2.0 * p.c0 * s.A / (4.0 * p.R),
        M1=p.c0 * s.M / (2.0 * p.R),
        N1=p.c0 * s.N / (2.0 * p.R),
        V1=s.V1,
        V2=s.V2,
        x1=s.x1,
        x2=s.x2,
        t=s.t,
    )
