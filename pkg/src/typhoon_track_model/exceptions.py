#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Typhoon Track Model

This module contains the exception types raised by the Typhoon Track Model.

All exceptions derive from the builtin ValueError or RuntimeError so that callers
which only know the builtins keep working. The command line front end maps them
onto exit codes:

- ValueError subclasses: input or domain problems (exit code 1).
- IntegrationBlowupError: numerical failure (exit code 2).
"""
from __future__ import annotations

from typing import Any


class ModelDomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


class NoEquilibriumError(ModelDomainError):
    """Raised when the equilibrium equation has no positive root in the bracket."""


class ResonanceError(ModelDomainError):
    """Raised when l, b0 or b0 - l falls below the resonance guard."""


class DegenerateWindowError(ModelDomainError):
    """Raised when a three-point window yields a singular or ill-conditioned fit."""


class UnacceptedFitError(ModelDomainError):
    """Raised when a forecast is requested from a fit that was not accepted."""


class TrackParseError(ValueError):
    """Raised when a track file row cannot be parsed.

    Attributes:
        line_no (int | None): 1-based line number of the offending row.
    """

    def __init__(self, message: str, line_no: int | None = None) -> None:
        super().__init__(message if line_no is None else f"line {line_no}: {message}")
        self.line_no: int | None = line_no


class TrackValidationError(ValueError):
    """Raised when a parsed track violates its invariants.

    Attributes:
        line_no (int | None): 1-based line number of the offending row, if known.
    """

    def __init__(self, message: str, line_no: int | None = None) -> None:
        super().__init__(message if line_no is None else f"line {line_no}: {message}")
        self.line_no: int | None = line_no


class IntegrationBlowupError(RuntimeError):
    """Raised when the integrator meets a non-finite or non-physical state.

    Attributes:
        last_valid_time (float): Time in seconds of the last accepted state.
        partial (Any): The series accepted before the failure.
    """

    def __init__(self, message: str, last_valid_time: float, partial: Any = None) -> None:
        super().__init__(f"{message} (last valid time {last_valid_time:.1f} s)")
        self.last_valid_time: float = last_valid_time
        self.partial: Any = partial
