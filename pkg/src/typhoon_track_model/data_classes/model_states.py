#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Typhoon Track Model

This module contains the state classes of the coefficient systems.

The polynomial solution of the height-averaged equations is described by a handful of
time-dependent coefficients plus the velocity and position of the typhoon eye:

- BarotropicState: a, b, A, M, N, K, V1, V2, x1, x2 at time t.
- BaroclinicState: a, b, A1, M1, N1, K1, K2, V1, V2, x1, x2 at time t.

Both classes convert to and from the flat numpy vectors used by the integrator. The
vector order is the field order listed above.
"""
from __future__ import annotations

from dataclasses import astuple, dataclass
from typing import ClassVar

import numpy as np
import serde
from serde.json import to_json


@serde.serde
@dataclass(frozen=True)
class BarotropicState:
    """Class representing the coefficients of the barotropic solution.

    Attributes:
        a (float): Divergence coefficient in 1/s.
        b (float): Rotation coefficient in 1/s.
        A (float): Pressure-curvature coefficient, > 0 for a low-pressure core.
        M (float): Pressure-gradient coefficient along x1.
        N (float): Pressure-gradient coefficient along x2.
        K (float): Central value of pi, > 0.
        V1 (float): Eye velocity along x1 in m/s.
        V2 (float): Eye velocity along x2 in m/s.
        x1 (float): Eye position along x1 (east) in m.
        x2 (float): Eye position along x2 (north) in m.
        t (float): Time in s.
    """

    FIELDS: ClassVar[tuple[str, ...]] = (
        "a", "b", "A", "M", "N", "K", "V1", "V2", "x1", "x2",
    )

    a: float = 0.0
    b: float = 0.0
    A: float = 1e-9
    M: float = 0.0
    N: float = 0.0
    K: float = 1.0
    V1: float = 0.0
    V2: float = 0.0
    x1: float = 0.0
    x2: float = 0.0
    t: float = 0.0

    def to_vector(self) -> np.ndarray:
        """Returns the dynamic components (without t) as a float vector."""
        return np.array(astuple(self)[:-1], dtype=float)

    @classmethod
    def from_vector(cls, vector: np.ndarray, t: float = 0.0) -> BarotropicState:
        """Builds a state from a vector in FIELDS order."""
        return cls(*(float(v) for v in vector), t=float(t))

    def __str__(self) -> str:
        return to_json(self, indent=2)


@serde.serde
@dataclass(frozen=True)
class BaroclinicState:
    """Class representing the coefficients of the baroclinic solution.

    Attributes:
        a (float): Divergence coefficient in 1/s.
        b (float): Rotation coefficient in 1/s.
        A1 (float): Temperature-curvature coefficient in K/m^2, > 0.
        M1 (float): Temperature-gradient coefficient along x1 in K/m.
        N1 (float): Temperature-gradient coefficient along x2 in K/m.
        K1 (float): Central temperature in K.
        K2 (float): Height-averaged density in kg/m^2, > 0.
        V1 (float): Eye velocity along x1 in m/s.
        V2 (float): Eye velocity along x2 in m/s.
        x1 (float): Eye position along x1 in m.
        x2 (float): Eye position along x2 in m.
        t (float): Time in s.
    """

    FIELDS: ClassVar[tuple[str, ...]] = (
        "a", "b", "A1", "M1", "N1", "K1", "K2", "V1", "V2", "x1", "x2",
    )

    a: float = 0.0
    b: float = 0.0
    A1: float = 1e-12
    M1: float = 0.0
    N1: float = 0.0
    K1: float = 300.0
    K2: float = 1e4
    V1: float = 0.0
    V2: float = 0.0
    x1: float = 0.0
    x2: float = 0.0
    t: float = 0.0

    def to_vector(self) -> np.ndarray:
        """Returns the dynamic components (without t) as a float vector."""
        return np.array(astuple(self)[:-1], dtype=float)

    @classmethod
    def from_vector(cls, vector: np.ndarray, t: float = 0.0) -> BaroclinicState:
        """Builds a state from a vector in FIELDS order."""
        return cls(*(float(v) for v in vector), t=float(t))

    def __str__(self) -> str:
        return to_json(self, indent=2)
