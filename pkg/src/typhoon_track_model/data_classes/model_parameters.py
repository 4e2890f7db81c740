#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Typhoon Track Model

This module contains the ModelParams class, which defines the physical constants of the
height-averaged vortex model, together with the ModelKind enum and the
IntegrationConstants class.

The ModelParams class includes the following attributes:

- gamma: Two-dimensional adiabatic exponent (dimensionless, 1 < gamma < 2).
- l: Coriolis parameter in 1/s.
- c0: Barotropic pressure constant multiplying the gradient of pi.
- R: Gas constant of the baroclinic momentum term in J/(kg K).
- mu, lam: Turbulent viscosity pair (baroclinic K1 equation only).
- kappa: Heat conduction coefficient (baroclinic K1 equation only).
- xi: Heat flux from the ocean surface (baroclinic K1 equation only).
- k: Surface friction coefficient in 1/s.
- cur_version: Version of the parameter file layout.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np
import serde
from serde.json import to_json

from typhoon_track_model.exceptions import ModelDomainError

PARAMS_VERSION: int = 1


class ModelKind(Enum):
    """Enum representing the coefficient system to integrate.

    Attributes:
        BAROTROPIC: Velocity, pressure and entropy system without dissipation.
        BAROCLINIC: Velocity, density and temperature system with viscosity and heat terms.
        FRICTION: Barotropic system with linear surface friction.
    """

    BAROTROPIC = "barotropic"
    BAROCLINIC = "baroclinic"
    FRICTION = "friction"


@serde.serde
@dataclass(frozen=True)
class ModelParams:
    """Class representing the physical constants of the vortex model.

    Attributes:
        gamma (float): Two-dimensional adiabatic exponent, 1 < gamma < 2.
        l (float): Coriolis parameter in 1/s. May be 0 at the equator.
        c0 (float): Barotropic pressure constant, > 0.
        R (float): Mass-specific gas constant in J/(kg K). Defaults to dry air.
        mu (float): First turbulent viscosity coefficient.
        lam (float): Second turbulent viscosity coefficient.
        kappa (float): Heat conduction coefficient.
        xi (float): Heat flux from the ocean surface.
        k (float): Surface friction coefficient in 1/s, >= 0.
        cur_version (int): Version of the parameter file layout.
    """

    gamma: float = 9.0 / 7.0
    l: float = 1e-4
    c0: float = 0.1
    R: float = 287.0
    mu: float = 0.0
    lam: float = 0.0
    kappa: float = 0.0
    xi: float = 0.0
    k: float = 0.0
    cur_version: int = PARAMS_VERSION

    def __post_init__(self) -> None:
        if not 1.0 < self.gamma < 2.0:
            raise ModelDomainError(
                f"gamma must lie in (1, 2) for a center-type equilibrium, got {self.gamma}"
            )
        if not self.c0 > 0.0:
            raise ModelDomainError(f"c0 must be positive, got {self.c0}")
        if not self.k >= 0.0:
            raise ModelDomainError(f"friction coefficient k must be >= 0, got {self.k}")
        if not np.isfinite(self.l):
            raise ModelDomainError(f"Coriolis parameter must be finite, got {self.l}")
        if not self.R > 0.0:
            raise ModelDomainError(f"gas constant R must be positive, got {self.R}")

    def __str__(self) -> str:
        # Pretty-print using JSON serialization
        return to_json(self, indent=2)


@serde.serde
@dataclass(frozen=True)
class IntegrationConstants:
    """Class representing the first integrals of a coefficient system.

    For the barotropic system C1 couples vorticity and pressure curvature,
    C3 ties the central pi value to A and C4 labels the phase curve in the
    (A, a) plane. For the baroclinic system the same fields hold the barred
    constants, with C3 tying the averaged density K2 to A1.

    Attributes:
        C1 (float): b - l/2 = C1 * A**(1/gamma).
        C3 (float): K = C3 * A**((gamma-1)/gamma) (barotropic) or
            K2 = C3 * A1**(1/gamma) (baroclinic).
        C4 (float): Phase-curve constant of the reduced (A, a) system.
        model (ModelKind): System the constants belong to.
    """

    C1: float
    C3: float
    C4: float
    model: ModelKind = ModelKind.BAROTROPIC

    def __str__(self) -> str:
        return to_json(self, indent=2)
