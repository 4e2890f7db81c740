#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Typhoon Track Model

This module contains the barotropic coefficient system, its first integrals and its
equilibrium.

With the linear velocity profile u = a r + b r_perp and the quadratic pi field
A |x|^2 + M x1 + N x2 + K, the coefficients obey

- A' = -2 gamma a A
- a' = -a^2 + b^2 - l b - 2 c0 A
- b' = -2 a b + l a
- K' = -2 (gamma - 1) a K
- M' = -(2 gamma - 1) a M + b N
- N' = -(2 gamma - 1) a N - b M
- V1' = l V2 - c0 M, V2' = -l V1 - c0 N
- x1' = V1, x2' = V2

The first integrals are b - l/2 = C1 A^(1/gamma), K = C3 A^((gamma-1)/gamma) and the
phase curve a^2 = C4 A^(1/gamma) - C1^2 A^(2/gamma) - l^2/4 + 2 c0 A / (gamma - 1).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from typhoon_track_model.data_classes.model_parameters import (
    IntegrationConstants,
    ModelKind,
    ModelParams,
)
from typhoon_track_model.data_classes.model_states import BarotropicState
from typhoon_track_model.dynamics.integrator import TimeSeries, integrate
from typhoon_track_model.exceptions import ModelDomainError, NoEquilibriumError

logger: logging.Logger = logging.getLogger(__name__)

EQUILIBRIUM_BRACKET: tuple[float, float] = (1e-15, 1.0)
EQUILIBRIUM_MAX_ITER: int = 200

_A, _K = BarotropicState.FIELDS.index("A"), BarotropicState.FIELDS.index("K")


def barotropic_derivative(y: np.ndarray, p: ModelParams, k: float = 0.0) -> np.ndarray:
    """
    Evaluates the barotropic right-hand side on a state vector.

    Args:
        y (np.ndarray): State vector in BarotropicState.FIELDS order.
        p (ModelParams): Model constants.
        k (float): Linear damping of a and b, 0 for the conservative system.
    Returns:
        np.ndarray: Time derivative in the same order.
    """
    a, b, A, M, N, K, V1, V2, _, _ = y
    g: float = p.gamma
    return np.array(
        [
            -a * a + b * b - p.l * b - 2.0 * p.c0 * A - k * a,
            -2.0 * a * b + p.l * a - k * b,
            -2.0 * g * a * A,
            -(2.0 * g - 1.0) * a * M + b * N,
            -(2.0 * g - 1.0) * a * N - b * M,
            -2.0 * (g - 1.0) * a * K,
            p.l * V2 - p.c0 * M,
            -p.l * V1 - p.c0 * N,
            V1,
            V2,
        ]
    )


def barotropic_rhs(s: BarotropicState | np.ndarray, p: ModelParams) -> np.ndarray:
    """
    Returns (a', b', A', M', N', K', V1', V2', x1', x2') of the barotropic system.

    Args:
        s (BarotropicState | np.ndarray): State or state vector.
        p (ModelParams): Model constants.
    Returns:
        np.ndarray: State derivative.
    """
    y: np.ndarray = s.to_vector() if isinstance(s, BarotropicState) else np.asarray(s)
    return barotropic_derivative(y, p)


def simulate_barotropic(
    state0: BarotropicState, p: ModelParams, dt: float, t_end: float
) -> TimeSeries:
    """
    Integrates the barotropic system from state0 for t_end seconds.

    Raises:
        IntegrationBlowupError: If A or K leaves the positive range or a value overflows.
    """
    return integrate(
        lambda _t, y: barotropic_derivative(y, p),
        state0.to_vector(),
        dt,
        t_end,
        positive=(_A, _K),
        fields=BarotropicState.FIELDS,
        t0=state0.t,
    )


def _phase_constant(
    a: np.ndarray | float,
    A: np.ndarray | float,
    c1: np.ndarray | float,
    gamma: float,
    l: float,
    coupling: float,
) -> np.ndarray | float:
    # C4 of the reduced system a' = -a^2 - l^2/4 + C1^2 A^(2/g) - coupling * A
    return (
        a * a
        + c1 * c1 * A ** (2.0 / gamma)
        + l * l / 4.0
        - coupling * A / (gamma - 1.0)
    ) * A ** (-1.0 / gamma)


def integration_constants(s: BarotropicState, p: ModelParams) -> IntegrationConstants:
    """
    Computes C1, C3 and C4 of a barotropic state.

    Args:
        s (BarotropicState): State with A > 0.
        p (ModelParams): Model constants.
    Returns:
        IntegrationConstants: The first integrals through s.
    Raises:
        ModelDomainError: If A <= 0.
    """
    if not s.A > 0.0:
        raise ModelDomainError(f"pressure curvature A must be positive, got {s.A}")
    g: float = p.gamma
    c1: float = (s.b - p.l / 2.0) * s.A ** (-1.0 / g)
    c3: float = s.K * s.A ** (-(g - 1.0) / g)
    c4: float = float(_phase_constant(s.a, s.A, c1, g, p.l, 2.0 * p.c0))
    return IntegrationConstants(C1=c1, C3=c3, C4=c4, model=ModelKind.BAROTROPIC)


def phase_invariant_residual(
    s: BarotropicState, p: ModelParams, c: IntegrationConstants
) -> float:
    """
    Returns the normalized residual of the phase-curve relation at s.

    The residual is a^2 - [C4 A^(1/g) - C1^2 A^(2/g) - l^2/4 + 2 c0 A/(g-1)],
    divided by max(a^2, l^2). It vanishes on exact solutions.

    Raises:
        ModelDomainError: If A <= 0.
    """
    if not s.A > 0.0:
        raise ModelDomainError(f"pressure curvature A must be positive, got {s.A}")
    g: float = p.gamma
    rhs: float = (
        c.C4 * s.A ** (1.0 / g)
        - c.C1**2 * s.A ** (2.0 / g)
        - p.l**2 / 4.0
        + 2.0 * p.c0 * s.A / (g - 1.0)
    )
    scale: float = max(s.a**2, p.l**2, np.finfo(float).tiny)
    return (s.a**2 - rhs) / scale


def equilibrium_root(c1: float, gamma: float, l: float, coupling: float) -> tuple[float, float]:
    """
    Solves -l^2/4 + c1^2 A^(2/gamma) - coupling * A = 0 for A > 0 by bisection.

    Args:
        c1 (float): Vorticity coupling constant.
        gamma (float): Two-dimensional adiabatic exponent.
        l (float): Coriolis parameter.
        coupling (float): 2 c0 (barotropic) or 4 R (baroclinic).
    Returns:
        tuple[float, float]: (A0, b0) with b0 = l/2 + c1 A0^(1/gamma).
    Raises:
        NoEquilibriumError: If the bracket holds no sign change.
    """

    def residual(A: float) -> float:
        return -l * l / 4.0 + c1 * c1 * A ** (2.0 / gamma) - coupling * A

    lo, hi = EQUILIBRIUM_BRACKET
    if c1 == 0.0 or not residual(lo) < 0.0 < residual(hi):
        raise NoEquilibriumError(
            f"no positive equilibrium root in [{lo}, {hi}] for C1={c1}"
        )
    a0: float = bisect(
        residual,
        lo,
        hi,
        xtol=1e-300,
        rtol=4.0 * np.finfo(float).eps,
        maxiter=EQUILIBRIUM_MAX_ITER,
    )
    b0: float = l / 2.0 + c1 * a0 ** (1.0 / gamma)
    logger.debug(f"Equilibrium for C1={c1}: A0={a0}, b0={b0}")
    return a0, b0


def equilibrium(c1: float, p: ModelParams) -> tuple[float, float]:
    """
    Returns the center (A0, b0) of the barotropic phase plane for the constant c1.

    b0 also solves b0^2 - l b0 - 2 c0 A0 = 0.

    Raises:
        NoEquilibriumError: If c1 = 0 or no positive root exists in the bracket.
    """
    return equilibrium_root(c1, p.gamma, p.l, 2.0 * p.c0)


def equilibrium_state(
    A0: float, b0: float, p: ModelParams, **overrides: float
) -> BarotropicState:
    """Builds a state at rest on the (A, a) center with optional overrides (M, N, V1, ...)."""
    values: dict[str, float] = {"a": 0.0, "b": b0, "A": A0} | overrides
    return BarotropicState(**values)


def linear_frequency(A0: float, p: ModelParams) -> float:
    """Angular frequency of small oscillations about the center, omega^2 = l^2 + 4 c0 A0 (2 - gamma)."""
    return float(np.sqrt(p.l**2 + 4.0 * p.c0 * A0 * (2.0 - p.gamma)))


@dataclass(frozen=True)
class InvariantDrift:
    """Largest relative deviation of each first integral from its initial value.

    Attributes:
        C1 (float): Drift of the vorticity coupling constant.
        C3 (float): Drift of the central-pressure constant.
        C4 (float): Drift of the phase-curve constant.
    """

    C1: float
    C3: float
    C4: float


def constants_along(series: TimeSeries, p: ModelParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Returns the (C1, C3, C4) series of a barotropic TimeSeries."""
    g: float = p.gamma
    a, b, A, K = (series.column(name) for name in ("a", "b", "A", "K"))
    c1: np.ndarray = (b - p.l / 2.0) * A ** (-1.0 / g)
    c3: np.ndarray = K * A ** (-(g - 1.0) / g)
    c4: np.ndarray = _phase_constant(a, A, c1, g, p.l, 2.0 * p.c0)
    return c1, c3, c4


def relative_drift(values: np.ndarray) -> float:
    """Largest |v(t) - v(0)| relative to |v(0)| (absolute when v(0) = 0)."""
    scale: float = abs(float(values[0])) or 1.0
    return float(np.max(np.abs(values - values[0])) / scale)


def invariant_drift(series: TimeSeries, p: ModelParams) -> InvariantDrift:
    """Measures the conservation of C1, C3 and C4 along a barotropic series."""
    c1, c3, c4 = constants_along(series, p)
    return InvariantDrift(C1=relative_drift(c1), C3=relative_drift(c3), C4=relative_drift(c4))


def small_vorticity_root(l: float, forcing: float) -> float:
    """
    Returns the root of b^2 - l b - forcing = 0 nearest zero.

    Evaluated as -forcing / q with q the large root, which avoids the cancellation in
    (l - sqrt(l^2 + 4 forcing)) / 2. forcing is 2 c0 A0 (barotropic) or 4 R A0 (baroclinic).

    Raises:
        ModelDomainError: If l = 0.
    """
    if l == 0.0:
        raise ModelDomainError("the vorticity root needs a nonzero Coriolis parameter")
    q: float = 0.5 * (l + float(np.copysign(np.sqrt(l * l + 4.0 * forcing), l)))
    return -forcing / q + 0.0


def comparison_state(p: ModelParams) -> BarotropicState:
    """
    Near-equilibrium state of the closed-form comparison run.

    a(0) = 1e-5, A(0) = 1e-9, N(0) = 1e-3, M(0) = 2e-3, V(0) = (-1, 1) m/s, x(0) = 0, and
    b(0) the equilibrium vorticity of A(0), so only the divergence is perturbed.
    """
    A0: float = 1e-9
    return BarotropicState(
        a=1e-5,
        b=small_vorticity_root(p.l, 2.0 * p.c0 * A0),
        A=A0,
        M=2e-3,
        N=1e-3,
        V1=-1.0,
        V2=1.0,
    )
