#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#

from typing import Any

import pint
from pint.facets.plain.quantity import PlainQuantity

units: pint.UnitRegistry = pint.UnitRegistry()

EARTH_ANGULAR_SPEED: PlainQuantity[Any] = (
    7.2921159e-5 * units.rad / units.s
)  # Sidereal rotation rate of the Earth
EARTH_RADIUS: PlainQuantity[Any] = 6_371_000 * units.m  # Mean spherical radius
DEFAULT_TIME_STEP: PlainQuantity[Any] = 60 * units.s  # RK4 step
RESONANCE_GUARD: PlainQuantity[Any] = 1e-9 / units.s  # Minimum |l|, |b0|, |b0 - l|
