#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Typhoon Track Model

This module contains the fixed-step classical fourth-order Runge-Kutta integrator shared
by all coefficient systems, and the TimeSeries container it returns.

The integrator samples the solution at t = 0, dt, 2 dt, ... and lands exactly on t_end
with a shortened final step when t_end is not a multiple of dt. Components listed in
`positive` must stay strictly positive; a violation, like any non-finite value, stops the
integration with an IntegrationBlowupError carrying the accepted part of the series.
"""
from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from typhoon_track_model.exceptions import IntegrationBlowupError, ModelDomainError

logger: logging.Logger = logging.getLogger(__name__)

RhsFunction = Callable[[float, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class TimeSeries:
    """States sampled on the integration grid.

    Attributes:
        times (np.ndarray): Sample times in s, shape (n,).
        states (np.ndarray): State vectors, shape (n, dim).
        fields (tuple[str, ...]): Component names, if known.
    """

    times: np.ndarray
    states: np.ndarray
    fields: tuple[str, ...] = ()

    def column(self, name: str) -> np.ndarray:
        """Returns the series of one named component."""
        return self.states[:, self.fields.index(name)]

    def tail(self, start: int) -> TimeSeries:
        """Returns the series from sample `start` on."""
        return TimeSeries(self.times[start:], self.states[start:], self.fields)

    def __len__(self) -> int:
        return int(self.times.shape[0])


def rk4_step(rhs: RhsFunction, t: float, y: np.ndarray, h: float) -> np.ndarray:
    """Advances y by one classical Runge-Kutta step of size h."""
    k1: np.ndarray = rhs(t, y)
    k2: np.ndarray = rhs(t + 0.5 * h, y + 0.5 * h * k1)
    k3: np.ndarray = rhs(t + 0.5 * h, y + 0.5 * h * k2)
    k4: np.ndarray = rhs(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)


def integrate(
    rhs: RhsFunction,
    state0: np.ndarray,
    dt: float,
    t_end: float,
    positive: Sequence[int] = (),
    fields: tuple[str, ...] = (),
    t0: float = 0.0,
) -> TimeSeries:
    """
    Integrates y' = rhs(t, y) with fixed-step RK4 from t0 to t0 + t_end.

    Args:
        rhs (RhsFunction): Right-hand side, called as rhs(t, y).
        state0 (np.ndarray): Initial state vector.
        dt (float): Step in s, > 0.
        t_end (float): Duration in s, >= 0.
        positive (Sequence[int]): Indices of components that must remain > 0.
        fields (tuple[str, ...]): Component names stored on the series.
        t0 (float): Start time in s.
    Returns:
        TimeSeries: States at t0, t0 + dt, ..., t0 + t_end.
    Raises:
        ModelDomainError: If dt <= 0 or t_end < 0.
        IntegrationBlowupError: If a state becomes non-finite or a positive
            component drops to zero or below.
    """
    if not dt > 0.0:
        raise ModelDomainError(f"time step must be positive, got {dt}")
    if not t_end >= 0.0:
        raise ModelDomainError(f"duration must be non-negative, got {t_end}")

    n_full: int = int(np.floor(t_end / dt + 1e-9))
    offsets: list[float] = [i * dt for i in range(n_full + 1)]
    if t_end - offsets[-1] > 1e-9 * dt:
        offsets.append(t_end)
    times: np.ndarray = t0 + np.array(offsets, dtype=float)

    y: np.ndarray = np.array(state0, dtype=float)
    states: np.ndarray = np.empty((times.shape[0], y.shape[0]), dtype=float)
    states[0] = y
    positive_idx: np.ndarray = np.array(positive, dtype=int)

    for i in range(1, times.shape[0]):
        with np.errstate(over="ignore", invalid="ignore"):
            y = rk4_step(rhs, float(times[i - 1]), y, float(times[i] - times[i - 1]))
        if not np.all(np.isfinite(y)) or np.any(y[positive_idx] <= 0.0):
            partial = TimeSeries(times[:i].copy(), states[:i].copy(), fields)
            logger.error(f"Integration blew up between t={times[i - 1]} s and t={times[i]} s")
            raise IntegrationBlowupError(
                "non-finite or non-physical state encountered",
                last_valid_time=float(times[i - 1]),
                partial=partial,
            )
        states[i] = y

    logger.debug(f"Integrated {times.shape[0] - 1} steps of {dt} s up to t={times[-1]} s")
    return TimeSeries(times, states, fields)
