#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Typhoon Track Model

This module contains the derived constants of the bidimensional reduction:

- two_dim_gamma: the adiabatic exponent of the height-averaged gas.
- coriolis_parameter: l = 2 omega sin(latitude) of the l-plane approximation.
"""
import numpy as np

from typhoon_track_model import EARTH_ANGULAR_SPEED, units
from typhoon_track_model.exceptions import ModelDomainError

_OMEGA: float = EARTH_ANGULAR_SPEED.to(1 / units.s).magnitude


def two_dim_gamma(gamma3d: float) -> float:
    """
    Returns the two-dimensional adiabatic exponent (2 gamma3d - 1) / gamma3d.

    Args:
        gamma3d (float): Three-dimensional adiabatic exponent, > 1.
    Returns:
        float: Exponent of the height-averaged gas, inside (1, 2).
    Raises:
        ModelDomainError: If gamma3d <= 1.
    """
    if not gamma3d > 1.0:
        raise ModelDomainError(f"adiabatic exponent must exceed 1, got {gamma3d}")
    return (2.0 * gamma3d - 1.0) / gamma3d


def coriolis_parameter(latitude: float, omega: float = _OMEGA) -> float:
    """
    Returns the Coriolis parameter 2 omega sin(latitude).

    Args:
        latitude (float): Latitude in degrees, within [-90, 90].
        omega (float): Angular speed of the planet in 1/s.
    Returns:
        float: Coriolis parameter in 1/s.
    Raises:
        ModelDomainError: If the latitude is out of range.
    """
    if not -90.0 <= latitude <= 90.0:
        raise ModelDomainError(f"latitude must lie in [-90, 90], got {latitude}")
    return 2.0 * omega * float(np.sin(np.deg2rad(latitude)))
