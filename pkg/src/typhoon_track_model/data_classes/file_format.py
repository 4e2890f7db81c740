#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#

"""Typhoon Track Model

This module contains the FileFormat enum, which defines the available formats for
simulated coefficient series.

The FileFormat enum includes the following formats:

- CSV: Comma-separated values, fixed float formatting
- PQT: Parquet format
"""
from __future__ import annotations

from enum import Enum


class FileFormat(Enum):
    """
    Enum for time-series output options.
    """

    CSV = "CSV"
    PQT = "PQT"

    @property
    def suffix(self) -> str:
        """File suffix written for this format."""
        return ".csv" if self is FileFormat.CSV else ".pqt"

    @classmethod
    def from_str(cls, value: str) -> FileFormat:
        """
        Create a FileFormat enum member from a string value, ignoring case.

        Args:
            value (str): The string representation of the enum value.
        Returns:
            FileFormat: The corresponding FileFormat enum member.
        Raises:
            ValueError: If the value does not correspond to any enum member.
        """
        for member in cls:
            if member.value == value.upper():
                return member
        raise ValueError(f"{value} is not a valid FileFormat")
