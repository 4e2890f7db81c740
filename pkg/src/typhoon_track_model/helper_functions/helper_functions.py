#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#

"""Typhoon Track Model

This module contains helper functions for the Typhoon Track Model.

The helper functions include:

- setup_logger: Sets up a logger that logs to both the console and a file.
- pretty_print_serde_json: Pretty prints a JSON string and saves it to a file.
- load_params: Builds ModelParams from defaults, an optional JSON file and flag overrides.
- load_state: Reads an initial coefficient state from JSON.
- series_frame / save_series: Writes an integrated series as CSV or Parquet.
- plot_tracks / plot_phase_portrait: Optional PNG figures of tracks and (A, a) orbits.
"""
from __future__ import annotations

import json
import logging
import os
import pathlib
import sys
from dataclasses import fields
from typing import Any

import matplotlib

matplotlib.use("Agg")  # Use a non-interactive backend for matplotlib to avoid GUI
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
from serde import SerdeError, from_dict
from serde.json import from_json

from typhoon_track_model.data_classes.file_format import FileFormat
from typhoon_track_model.data_classes.model_parameters import (
    PARAMS_VERSION,
    ModelKind,
    ModelParams,
)
from typhoon_track_model.data_classes.model_states import BaroclinicState, BarotropicState
from typhoon_track_model.dynamics.friction import PhaseOrbit
from typhoon_track_model.dynamics.integrator import TimeSeries

LOGGER_NAME: str = "typhoon_track_model"
SERIES_FLOAT_FORMAT: str = "%.12e"


def setup_logger(
    log_file: pathlib.Path = pathlib.Path("typhoon_track.log"),
) -> logging.Logger:
    """
    Sets up a logger that logs to both the console and a file.

    The logger is the package logger, so messages of every module end up in both
    handlers.

    Args:
        log_file (pathlib.Path): Path to the log file.

    Returns:
        logging.Logger: Configured logger instance.
    """
    logger: logging.Logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(logging.DEBUG)

    # A repeated call with another path moves the file handler to the new file
    target: str = os.path.abspath(log_file)
    for handler in list(logger.handlers):
        if isinstance(handler, logging.FileHandler) and handler.baseFilename != target:
            logger.removeHandler(handler)
            handler.close()

    if not any(isinstance(h, logging.FileHandler) for h in logger.handlers):
        # File handler
        file_handler = logging.FileHandler(target)
        file_handler.setLevel(logging.DEBUG)
        file_formatter = logging.Formatter("%(asctime)s - %(levelname)s - %(message)s")
        file_handler.setFormatter(file_formatter)
        logger.addHandler(file_handler)

    if not any(type(h) is logging.StreamHandler for h in logger.handlers):
        # Console handler
        console_handler = logging.StreamHandler(sys.stdout)
        console_handler.setLevel(logging.INFO)
        console_formatter = logging.Formatter("%(levelname)s - %(message)s")
        console_handler.setFormatter(console_formatter)
        logger.addHandler(console_handler)

    return logger


def pretty_print_serde_json(json_string: str, target_file_name: pathlib.Path) -> None:
    """
    Pretty prints a JSON string with sorted keys and saves it to a file.

    Args:
        json_string (str): The JSON string to be pretty printed.
        target_file_name (pathlib.Path): The file path where the pretty-printed JSON
        will be saved.
    """
    tmp_json_dict: dict[str, Any] = json.loads(json_string)
    with open(
        target_file_name,
        "w",
        encoding="utf-8",
        newline="\n",
    ) as pretty_json_out:
        pretty_json_out.write(json.dumps(tmp_json_dict, indent=4, sort_keys=True) + "\n")


def load_params(
    process_logger: logging.Logger,
    config: pathlib.Path | None = None,
    overrides: dict[str, float | None] | None = None,
) -> ModelParams:
    """
    Builds the model parameters.

    Defaults come from ModelParams; a JSON config file overrides them key by key, and
    non-None flag values override the file.

    Args:
        process_logger (logging.Logger): Logger for the effective configuration.
        config (pathlib.Path | None): Optional JSON file.
        overrides (dict[str, float | None] | None): Values given on the command line.
    Returns:
        ModelParams: The effective parameters.
    Raises:
        ValueError: If the config file is missing, outdated or holds invalid values.
    """
    default_params: dict[str, Any] = {f.name: f.default for f in fields(ModelParams)}
    if config is not None:
        if not pathlib.Path(config).is_file():
            raise ValueError(f"Config file {config} does not exist")
        process_logger.info(f"Reading config from {config}")
        with open(config, "r", encoding="utf-8") as f:
            json_dict: dict[str, Any] = json.load(f)
        for key, value in json_dict.items():
            if key in default_params:
                default_params[key] = value
            else:
                process_logger.warning(
                    f"Warning: {key} not found in default parameters. Ignoring."
                )
    else:
        process_logger.info("No configuration file provided. Using default parameters.")
    for key, value in (overrides or {}).items():
        if value is not None:
            default_params[key] = value

    if default_params["cur_version"] < PARAMS_VERSION:
        raise ValueError(
            "The current version of the model parameters is outdated. "
            "Please update to the latest version."
        )
    for entry in default_params.items():
        process_logger.info(f"Parameter: {entry[0]} = {entry[1]}")
    try:
        return from_dict(ModelParams, default_params)
    except (SerdeError, ValueError) as e:
        raise ValueError(f"Invalid model parameters: {e}") from e


def load_state(
    source: pathlib.Path, kind: ModelKind
) -> BarotropicState | BaroclinicState:
    """
    Reads an initial state from JSON. Missing fields take their defaults.

    Raises:
        ValueError: If the file does not exist or does not describe a state.
    """
    if not pathlib.Path(source).is_file():
        raise ValueError(f"State file {source} does not exist")
    with open(source, "r", encoding="utf-8") as state_in:
        text: str = state_in.read()
    state_class = BaroclinicState if kind == ModelKind.BAROCLINIC else BarotropicState
    try:
        return from_json(state_class, text)
    except Exception as e:  # pylint: disable=broad-exception-caught
        raise ValueError(f"Cannot read a {kind.value} state from {source}: {e}") from e


def series_frame(series: TimeSeries) -> pd.DataFrame:
    """Returns a series as a DataFrame with a leading `t_s` column."""
    frame = pd.DataFrame(series.states, columns=list(series.fields))
    frame.insert(0, "t_s", series.times)
    return frame


def save_series(
    series: TimeSeries, target: pathlib.Path, file_format: FileFormat = FileFormat.CSV
) -> pathlib.Path:
    """
    Saves an integrated series in the specified format (CSV or Parquet).

    Args:
        series (TimeSeries): The integrated states.
        target (pathlib.Path): Output path; its suffix is replaced by the format's.
        file_format (FileFormat): CSV or PQT.
    Returns:
        pathlib.Path: The written file.
    Raises:
        ValueError: If the specified file format is not supported.
    """
    frame: pd.DataFrame = series_frame(series)
    path: pathlib.Path = pathlib.Path(target).with_suffix(file_format.suffix)
    if file_format == FileFormat.CSV:
        frame.to_csv(path, index=False, float_format=SERIES_FLOAT_FORMAT, lineterminator="\n")
    elif file_format == FileFormat.PQT:
        frame.to_parquet(path)
    else:
        raise ValueError(f"Unsupported file format: {file_format}")
    return path


def plot_tracks(
    tracks: dict[str, np.ndarray], target: pathlib.Path, unit: str = "km"
) -> None:
    """
    Plots plane tracks, one line per entry.

    Args:
        tracks (dict[str, np.ndarray]): Label to positions in m, shape (n, 2).
        target (pathlib.Path): PNG file to write.
        unit (str): Axis unit, "km" or "m".
    """
    scale: float = 1000.0 if unit == "km" else 1.0
    fig, ax = plt.subplots(figsize=(8, 8))
    for label, xy in tracks.items():
        ax.plot(xy[:, 0] / scale, xy[:, 1] / scale, label=label)
        ax.plot(xy[0, 0] / scale, xy[0, 1] / scale, "o", color=ax.lines[-1].get_color())
    ax.set_xlabel(f"x1 east [{unit}]")
    ax.set_ylabel(f"x2 north [{unit}]")
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid()
    ax.legend()
    fig.tight_layout()
    fig.savefig(target, bbox_inches="tight", dpi=150)
    fig.clear()
    plt.close(fig)


def plot_phase_portrait(orbits: list[PhaseOrbit], target: pathlib.Path) -> None:
    """Plots (A, a) orbits; closed orbits are marked at their center."""
    fig, ax = plt.subplots(figsize=(8, 6))
    for i, orbit in enumerate(orbits):
        ax.plot(orbit.A, orbit.a, label=f"orbit {i}")
        if orbit.center is not None:
            ax.plot(*orbit.center, "k+")
    ax.set_xlabel("A")
    ax.set_ylabel("a [1/s]")
    ax.grid()
    ax.legend()
    fig.tight_layout()
    fig.savefig(target, bbox_inches="tight", dpi=150)
    fig.clear()
    plt.close(fig)
