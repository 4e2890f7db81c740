#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Typhoon Track Model

This module contains the classes of the closed-form equilibrium trajectory.

At the equilibrium of the coefficient system the eye moves on a superposition of two
circles: one traversed with the Coriolis frequency l, the other with the averaged
vorticity b0. TrajectoryCoefficients holds the amplitudes of both, Decomposition the
geometric view (radius, period, initial phase) of each circle.
"""
from dataclasses import dataclass

import serde
from serde.json import to_json


@serde.serde
@dataclass(frozen=True)
class TrajectoryCoefficients:
    """Class representing the amplitudes of the closed-form eye trajectory.

    Attributes:
        center (tuple[float, float]): Drift-free center (X1c, X2c) in m.
        P (float): sin(lt) amplitude of x1 and cos(lt) amplitude of x2 in m.
        Q (float): -cos(lt) amplitude of x1 and sin(lt) amplitude of x2 in m.
        S (float): sin(b0 t) amplitude of x1 and cos(b0 t) amplitude of x2 in m.
        T (float): cos(b0 t) amplitude of x1 and -sin(b0 t) amplitude of x2 in m.
        l (float): Coriolis frequency in 1/s.
        b0 (float): Averaged vorticity at equilibrium in 1/s.
        origin (tuple[float, float]): (x1(0), x2(0)) in m.
        v0 (tuple[float, float]): (V1(0), V2(0)) in m/s.
        mn (tuple[float, float]): (c0 M(0), c0 N(0)) in m/s^2.
    """

    center: tuple[float, float]
    P: float
    Q: float
    S: float
    T: float
    l: float
    b0: float
    origin: tuple[float, float]
    v0: tuple[float, float]
    mn: tuple[float, float]

    def __str__(self) -> str:
        return to_json(self, indent=2)


@serde.serde
@dataclass(frozen=True)
class CircleComponent:
    """Class representing one circular motion of the eye trajectory.

    The component contributes radius * exp(i * (phase - omega * t)) to x1 + i x2,
    i.e. it turns clockwise for positive omega.

    Attributes:
        radius (float): Radius in m.
        omega (float): Angular frequency in 1/s.
        period (float): 2 pi / |omega| in s.
        phase (float): Initial phase in rad.
    """

    radius: float
    omega: float
    period: float
    phase: float


@serde.serde
@dataclass(frozen=True)
class Decomposition:
    """Class representing the two-circle decomposition of a trajectory.

    Attributes:
        center (tuple[float, float]): Drift-free center in m.
        l_circle (CircleComponent): Inertial circle with frequency l.
        b0_circle (CircleComponent): Vorticity circle with frequency b0.
    """

    center: tuple[float, float]
    l_circle: CircleComponent
    b0_circle: CircleComponent

    def __str__(self) -> str:
        return to_json(self, indent=2)
