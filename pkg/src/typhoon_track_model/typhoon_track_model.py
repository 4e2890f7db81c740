#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Typhoon Track Model

This module contains the command line front end of the Typhoon Track Model.

Every sub-command is a thin run_* function over the library:

- simulate: integrates the barotropic, baroclinic or friction system and writes the
  series (CSV or Parquet) with a JSON summary of the invariant drift.
- trajectory: evaluates the closed-form eye track and writes its two-circle decomposition.
- fit: fits one three-point window of a track and writes the FitResult JSON.
- forecast: fits a window and writes the forecast track.
- sweep: fits every window of a track and writes one row per window.
- evaluate: compares a forecast track with the observed one (`lead_hours,error_km`).
- phase: writes (A, a) orbits of the undamped or damped system.

Times are given in hours or days and distances in kilometers on the command line; they
are converted to SI before anything else happens. Exit codes: 0 success (a rejected fit
is a verdict, not a failure), 1 input or domain error, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import logging
import pathlib
import sys
from collections.abc import Sequence

import numpy as np
import pandas as pd
from serde.json import to_json

from typhoon_track_model import DEFAULT_TIME_STEP, units
from typhoon_track_model.data_classes.file_format import FileFormat
from typhoon_track_model.data_classes.fit_result import FitConfig, FitResult, WindowPoint
from typhoon_track_model.data_classes.model_parameters import ModelKind, ModelParams
from typhoon_track_model.data_classes.model_states import BaroclinicState, BarotropicState
from typhoon_track_model.data_classes.run_summary import SimulationSummary
from typhoon_track_model.data_classes.track import PlaneTrack, Track
from typhoon_track_model.dynamics.baroclinic import (
    baroclinic_constants_along,
    matched_baroclinic_state,
    simulate_baroclinic,
)
from typhoon_track_model.dynamics.barotropic import (
    comparison_state,
    constants_along,
    relative_drift,
    simulate_barotropic,
)
from typhoon_track_model.dynamics.friction import (
    COLLAPSE_INITIAL_STATE,
    collapse_simulation,
    phase_portrait,
)
from typhoon_track_model.dynamics.model_core import coriolis_parameter
from typhoon_track_model.exceptions import IntegrationBlowupError
from typhoon_track_model.fitting.three_point_fit import find_b0, fit_with_fixed_b0
from typhoon_track_model.fitting.track_sweep import (
    coincidence_duration,
    fit_b0_to_history,
    forecast,
    sweep_track,
)
from typhoon_track_model.helper_functions.geo_track_io import (
    error_table_frame,
    evaluate_forecast,
    fit_record,
    plane_to_track,
    read_track,
    track_to_plane,
    write_track,
)
from typhoon_track_model.helper_functions.helper_functions import (
    load_params,
    load_state,
    plot_phase_portrait,
    plot_tracks,
    pretty_print_serde_json,
    save_series,
    setup_logger,
)
from typhoon_track_model.trajectory.closed_form import (
    closed_form_coefficients,
    decompose,
    eval_trajectory,
)

CONSERVATION_TOLERANCE: float = 1e-6
CSV_FLOAT_FORMAT: str = "%.12e"


def _seconds(value: float, unit: str) -> float:
    return (value * units(unit)).to(units.s).magnitude


def _meters(value_km: float) -> float:
    return (value_km * units.km).to(units.m).magnitude


def _positive(value: float, name: str) -> float:
    if not value > 0.0:
        raise ValueError(f"--{name} must be positive, got {value}")
    return value


def _non_negative(value: float, name: str) -> float:
    if not value >= 0.0:
        raise ValueError(f"--{name} must be non-negative, got {value}")
    return value


def _model_params(args: argparse.Namespace, process_logger: logging.Logger) -> ModelParams:
    """Builds ModelParams from --config and the physical flags; --lat sets l unless --l is given."""
    coriolis: float | None = args.l
    if coriolis is None and getattr(args, "lat", None) is not None:
        coriolis = coriolis_parameter(args.lat)
    overrides: dict[str, float | None] = {
        "gamma": args.gamma,
        "l": coriolis,
        "c0": args.c0,
        "R": args.R,
        "mu": args.mu,
        "lam": args.lam,
        "kappa": args.kappa,
        "xi": args.xi,
        "k": args.k,
    }
    return load_params(process_logger, args.config, overrides)


def _fit_config(args: argparse.Namespace) -> FitConfig:
    return FitConfig(
        bound=_positive(args.bound, "bound"),
        epsilon=_positive(args.epsilon, "epsilon"),
        grid_points=int(_positive(args.grid_points, "grid-points")),
        workers=int(_positive(getattr(args, "workers", 1), "workers")),
    )


def _window(plane: PlaneTrack, start: int) -> list[WindowPoint]:
    if start < 0 or start + 3 > len(plane):
        raise ValueError(f"window {start} needs points {start}..{start + 2}, track has {len(plane)}")
    return [
        WindowPoint(t=float(plane.times[k]), x1=float(plane.xy[k, 0]), x2=float(plane.xy[k, 1]))
        for k in range(start, start + 3)
    ]


def _fit_window(
    args: argparse.Namespace, track: Track, process_logger: logging.Logger
) -> FitResult:
    """Fits the selected window in search, fixed-b0 or historical mode."""
    config: FitConfig = _fit_config(args)
    l: float = args.l if args.l is not None else coriolis_parameter(track.origin[0])
    plane: PlaneTrack = track_to_plane(track)
    window: list[WindowPoint] = _window(plane, args.window)
    if args.b0 is not None:
        process_logger.info(f"Fitting window {args.window} with fixed b0={args.b0}")
        return fit_with_fixed_b0(*window, args.b0, l, config, start_index=args.window)
    if args.history is not None:
        process_logger.info(f"Fitting b0 of window {args.window} to {args.history} later points")
        return fit_b0_to_history(
            plane, args.window, args.history, l, (-config.bound, config.bound), config
        )
    return find_b0(*window, l, config, start_index=args.window)


def run_simulate(args: argparse.Namespace, process_logger: logging.Logger) -> int:
    """
    Integrates one coefficient system and writes the series and its summary.

    Args:
        args (argparse.Namespace): Parsed flags.
        process_logger (logging.Logger): Process logger.
    Returns:
        int: Exit code.
    Raises:
        IntegrationBlowupError: If the run leaves the physical range.
    """
    kind: ModelKind = ModelKind(args.model)
    dt: float = _positive(args.dt, "dt")
    t_end: float = _seconds(_non_negative(args.days, "days"), "day")
    p: ModelParams = _model_params(args, process_logger)
    file_format: FileFormat = FileFormat.from_str(args.format)

    if args.state is not None:
        state = load_state(args.state, kind)
    elif kind == ModelKind.FRICTION:
        state = COLLAPSE_INITIAL_STATE
    elif kind == ModelKind.BAROCLINIC:
        state = matched_baroclinic_state(comparison_state(p), p)
    else:
        state = comparison_state(p)
    process_logger.info(f"Simulating {kind.value} system for {t_end} s with dt={dt} s")
    process_logger.info(f"Initial state: {state}")

    if kind == ModelKind.FRICTION:
        report = collapse_simulation(p, state, dt, t_end)
        series = report.series
        summary = SimulationSummary(
            model=kind.value,
            rows=len(series),
            t_end=t_end,
            dt=dt,
            drift_C4=report.invariant_drift,
            invariants_conserved=report.invariant_drift < CONSERVATION_TOLERANCE,
            min_a=report.min_a,
            max_abs_b=report.max_abs_b,
            final_a=report.final_a,
            sustained_convergence=report.sustained_convergence,
        )
    else:
        if kind == ModelKind.BAROCLINIC:
            if not isinstance(state, BaroclinicState):
                raise ValueError("the baroclinic model needs a baroclinic state")
            series = simulate_baroclinic(state, p, dt, t_end)
            constants = baroclinic_constants_along(series, p)
        else:
            if not isinstance(state, BarotropicState):
                raise ValueError("the barotropic model needs a barotropic state")
            series = simulate_barotropic(state, p, dt, t_end)
            constants = constants_along(series, p)
        drifts: list[float] = [relative_drift(c) for c in constants]
        summary = SimulationSummary(
            model=kind.value,
            rows=len(series),
            t_end=t_end,
            dt=dt,
            drift_C1=drifts[0],
            drift_C3=drifts[1],
            drift_C4=drifts[2],
            invariants_conserved=max(drifts) < CONSERVATION_TOLERANCE,
        )

    out: pathlib.Path = save_series(series, args.out, file_format)
    summary_path: pathlib.Path = out.with_name(out.stem + "_summary.json")
    pretty_print_serde_json(to_json(summary), summary_path)
    pretty_print_serde_json(to_json(p), out.with_name(out.stem + "_params.json"))
    process_logger.info(f"Wrote {len(series)} rows to {out} and the summary to {summary_path}")
    if summary.invariants_conserved is False:
        process_logger.info("Invariants are not conserved over the run")
    if args.plot:
        plot_tracks(
            {kind.value: np.column_stack([series.column("x1"), series.column("x2")])},
            out.with_suffix(".png"),
        )
    return 0


def run_trajectory(args: argparse.Namespace, process_logger: logging.Logger) -> int:
    """Evaluates the closed-form track from the flags and writes it with its decomposition."""
    l: float = args.l if args.l is not None else coriolis_parameter(args.lat)
    hours: float = _seconds(_non_negative(args.hours, "hours"), "hour")
    step: float = _seconds(_positive(args.step, "step"), "hour")
    x0: tuple[float, float] = (_meters(args.x0[0]), _meters(args.x0[1]))
    coefficients = closed_form_coefficients(x0, args.v0, args.mn, l, args.b0)
    decomposition = decompose(coefficients)
    process_logger.info(f"Trajectory coefficients: {coefficients}")

    offsets: np.ndarray = np.arange(0.0, hours + 1e-9 * step, step)
    plane = PlaneTrack(times=offsets, xy=eval_trajectory(coefficients, offsets))
    track: Track = plane_to_track(plane, (args.lat, args.lon))
    write_track(track, args.out)
    decomposition_path: pathlib.Path = args.out.with_name(args.out.stem + "_decomposition.json")
    pretty_print_serde_json(to_json(decomposition), decomposition_path)
    process_logger.info(
        f"l-circle radius {decomposition.l_circle.radius / 1000.0:.2f} km, "
        f"b0-circle radius {decomposition.b0_circle.radius / 1000.0:.2f} km"
    )
    if args.plot:
        plot_tracks({"closed form": plane.xy}, args.out.with_suffix(".png"))
    return 0


def run_fit(args: argparse.Namespace, process_logger: logging.Logger) -> int:
    """Fits one window and writes the geographic FitResult JSON."""
    track: Track = read_track(args.track)
    result: FitResult = _fit_window(args, track, process_logger)
    pretty_print_serde_json(to_json(fit_record(result, track.origin)), args.out)
    process_logger.info(
        f"Window {args.window}: accepted={result.accepted}, b0={result.b0}, "
        f"b01={result.b01}, b02={result.b02}"
    )
    return 0


def run_forecast(args: argparse.Namespace, process_logger: logging.Logger) -> int:
    """Fits one window and writes the forecast track from its first anchor."""
    horizon: float = _seconds(_non_negative(args.hours, "hours"), "hour")
    step: float = _seconds(_positive(args.step, "step"), "hour")
    track: Track = read_track(args.track)
    result: FitResult = _fit_window(args, track, process_logger)
    predicted: PlaneTrack = forecast(result, horizon, step)
    write_track(plane_to_track(predicted, track.origin), args.out)
    pretty_print_serde_json(
        to_json(fit_record(result, track.origin)), args.out.with_name(args.out.stem + "_fit.json")
    )
    process_logger.info(f"Wrote {len(predicted)} forecast points to {args.out}")
    if args.plot:
        plot_tracks(
            {"observed": track_to_plane(track).xy, "forecast": predicted.xy},
            args.out.with_suffix(".png"),
        )
    return 0


def run_sweep(args: argparse.Namespace, process_logger: logging.Logger) -> int:
    """Fits every window of a track and writes one CSV row per window."""
    config: FitConfig = _fit_config(args)
    track: Track = read_track(args.track)
    results: list[FitResult] = sweep_track(track, config, args.l)
    frame = pd.DataFrame(
        {
            "start_index": [r.start_index for r in results],
            "t0_hours": [r.window[0].t / 3600.0 for r in results],
            "accepted": [r.accepted for r in results],
            "b0": [r.b0 for r in results],
            "b01": [r.b01 for r in results],
            "b02": [r.b02 for r in results],
            "V1": [r.v0[0] if r.v0 else None for r in results],
            "V2": [r.v0[1] if r.v0 else None for r in results],
            "m": [r.mn[0] if r.mn else None for r in results],
            "n": [r.mn[1] if r.mn else None for r in results],
            "condition_number": [r.condition_number for r in results],
        }
    )
    frame.to_csv(args.out, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    process_logger.info(
        f"Wrote {len(results)} windows to {args.out}, {int(frame['accepted'].sum())} accepted"
    )
    return 0


def run_evaluate(args: argparse.Namespace, process_logger: logging.Logger) -> int:
    """Writes the `lead_hours,error_km` table of a forecast against the observed track."""
    table = evaluate_forecast(read_track(args.forecast), read_track(args.actual))
    error_table_frame(table).to_csv(
        args.out, index=False, float_format="%.6f", lineterminator="\n"
    )
    process_logger.info(
        f"Mean error {table.mean / 1000.0:.2f} km, max error {table.max / 1000.0:.2f} km"
    )
    if args.tolerance_km is not None:
        duration: float = coincidence_duration(table, _meters(args.tolerance_km))
        process_logger.info(
            f"Forecast stays within {args.tolerance_km} km for {duration / 3600.0:.1f} h"
        )
    return 0


def run_phase(args: argparse.Namespace, process_logger: logging.Logger) -> int:
    """Writes (A, a) orbits, one per initial divergence value."""
    dt: float = _positive(args.dt, "dt")
    t_end: float = _seconds(_non_negative(args.days, "days"), "day")
    p: ModelParams = _model_params(args, process_logger)
    states: list[BarotropicState] = [
        BarotropicState(a=a, b=args.b, A=_positive(args.A, "A")) for a in args.a_values
    ]
    orbits = phase_portrait(states, p, dt, t_end)
    frames: list[pd.DataFrame] = []
    for i, orbit in enumerate(orbits):
        frame = pd.DataFrame(orbit.to_frame_columns())
        frame.insert(0, "orbit", i)
        frames.append(frame)
        if orbit.closure is not None:
            process_logger.info(
                f"Orbit {i}: period {orbit.period / 3600.0:.2f} h, closure {orbit.closure:.2e}"
            )
    pd.concat(frames, ignore_index=True).to_csv(
        args.out, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n"
    )
    summary = pd.DataFrame(
        {
            "orbit": list(range(len(orbits))),
            "a0": list(args.a_values),
            "period_s": [o.period for o in orbits],
            "closure": [o.closure for o in orbits],
        }
    )
    summary.to_csv(
        args.out.with_name(args.out.stem + "_summary.csv"),
        index=False,
        float_format=CSV_FLOAT_FORMAT,
        lineterminator="\n",
    )
    if args.plot:
        plot_phase_portrait(orbits, args.out.with_suffix(".png"))
    return 0


def _add_physics_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=pathlib.Path, default=None, help="JSON parameter file")
    parser.add_argument("--gamma", type=float, default=None, help="2D adiabatic exponent")
    parser.add_argument("--lat", type=float, default=None, help="Latitude in degrees, sets l")
    parser.add_argument("--l", type=float, default=None, help="Coriolis parameter in 1/s")
    parser.add_argument("--c0", type=float, default=None, help="Barotropic pressure constant")
    parser.add_argument("--R", type=float, default=None, help="Gas constant in J/(kg K)")
    parser.add_argument("--mu", type=float, default=None, help="Turbulent viscosity")
    parser.add_argument("--lam", type=float, default=None, help="Second turbulent viscosity")
    parser.add_argument("--kappa", type=float, default=None, help="Heat conduction")
    parser.add_argument("--xi", type=float, default=None, help="Ocean heat flux")
    parser.add_argument("--k", type=float, default=None, help="Surface friction in 1/s")


def _add_fit_flags(parser: argparse.ArgumentParser) -> None:
    defaults = FitConfig()
    parser.add_argument("--track", type=pathlib.Path, required=True, help="Track CSV")
    parser.add_argument("--window", type=int, default=0, help="Index of the first anchor")
    parser.add_argument("--epsilon", type=float, default=defaults.epsilon, help="Acceptance tolerance in 1/s")
    parser.add_argument("--bound", type=float, default=defaults.bound, help="Search bound on |b0| in 1/s")
    parser.add_argument("--grid-points", type=int, default=defaults.grid_points, help="Scan points")
    parser.add_argument("--l", type=float, default=None, help="Coriolis parameter (default: track origin)")
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--b0", type=float, default=None, help="Fixed b0 in 1/s")
    mode.add_argument("--history", type=int, default=None, help="Fit b0 to this many later points")


def build_parser() -> argparse.ArgumentParser:
    """Builds the argument parser with one sub-command per operation."""
    parser = argparse.ArgumentParser(
        prog="typhoon_track",
        description="Height-averaged tropical cyclone vortex model",
    )
    parser.add_argument(
        "--log-file", type=pathlib.Path, default=pathlib.Path("typhoon_track.log"), help="Log file"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", help="Integrate a coefficient system")
    simulate.add_argument("--model", choices=[k.value for k in ModelKind], default="barotropic")
    simulate.add_argument("--state", type=pathlib.Path, default=None, help="Initial state JSON")
    simulate.add_argument("--dt", type=float, default=DEFAULT_TIME_STEP.to(units.s).magnitude, help="Step in s")
    simulate.add_argument("--days", type=float, default=3.0, help="Duration in days")
    simulate.add_argument("--out", type=pathlib.Path, default=pathlib.Path("simulation.csv"))
    simulate.add_argument("--format", default="CSV", help="CSV or PQT")
    simulate.add_argument("--plot", action="store_true", help="Also write a PNG of the eye track")
    _add_physics_flags(simulate)
    simulate.set_defaults(run=run_simulate)

    trajectory = commands.add_parser("trajectory", help="Closed-form eye trajectory")
    trajectory.add_argument("--lat", type=float, default=22.0, help="Origin latitude in degrees")
    trajectory.add_argument("--lon", type=float, default=130.0, help="Origin longitude in degrees")
    trajectory.add_argument("--l", type=float, default=None, help="Coriolis parameter (default: from --lat)")
    trajectory.add_argument("--b0", type=float, required=True, help="Equilibrium vorticity in 1/s")
    trajectory.add_argument("--v0", type=float, nargs=2, default=[0.0, 0.0], help="V1 V2 in m/s")
    trajectory.add_argument("--mn", type=float, nargs=2, default=[0.0, 0.0], help="c0 M, c0 N in m/s^2")
    trajectory.add_argument("--x0", type=float, nargs=2, default=[0.0, 0.0], help="x1 x2 in km")
    trajectory.add_argument("--hours", type=float, default=144.0, help="Length in hours")
    trajectory.add_argument("--step", type=float, default=1.0, help="Output step in hours")
    trajectory.add_argument("--out", type=pathlib.Path, default=pathlib.Path("trajectory.csv"))
    trajectory.add_argument("--plot", action="store_true")
    trajectory.set_defaults(run=run_trajectory)

    fit = commands.add_parser("fit", help="Fit one three-point window")
    _add_fit_flags(fit)
    fit.add_argument("--out", type=pathlib.Path, default=pathlib.Path("fit.json"))
    fit.set_defaults(run=run_fit)

    forecast_cmd = commands.add_parser("forecast", help="Forecast from one fitted window")
    _add_fit_flags(forecast_cmd)
    forecast_cmd.add_argument("--hours", type=float, default=144.0, help="Horizon in hours")
    forecast_cmd.add_argument("--step", type=float, default=3.0, help="Output step in hours")
    forecast_cmd.add_argument("--out", type=pathlib.Path, default=pathlib.Path("forecast.csv"))
    forecast_cmd.add_argument("--plot", action="store_true")
    forecast_cmd.set_defaults(run=run_forecast)

    sweep = commands.add_parser("sweep", help="Fit every window of a track")
    sweep.add_argument("--track", type=pathlib.Path, required=True, help="Track CSV")
    sweep.add_argument("--epsilon", type=float, default=FitConfig().epsilon)
    sweep.add_argument("--bound", type=float, default=FitConfig().bound)
    sweep.add_argument("--grid-points", type=int, default=FitConfig().grid_points)
    sweep.add_argument("--workers", type=int, default=FitConfig().workers)
    sweep.add_argument("--l", type=float, default=None, help="Coriolis parameter (default: track origin)")
    sweep.add_argument("--out", type=pathlib.Path, default=pathlib.Path("sweep.csv"))
    sweep.set_defaults(run=run_sweep)

    evaluate = commands.add_parser("evaluate", help="Forecast error against the observed track")
    evaluate.add_argument("--forecast", type=pathlib.Path, required=True)
    evaluate.add_argument("--actual", type=pathlib.Path, required=True)
    evaluate.add_argument("--tolerance-km", type=float, default=None)
    evaluate.add_argument("--out", type=pathlib.Path, default=pathlib.Path("errors.csv"))
    evaluate.set_defaults(run=run_evaluate)

    phase = commands.add_parser("phase", help="(A, a) phase portrait")
    phase.add_argument(
        "--a-values", type=float, nargs="+", default=[0.0, 2e-6, 4e-6, 6e-6, 8e-6],
        help="Initial divergence of each orbit in 1/s",
    )
    phase.add_argument("--A", type=float, default=1e-9, help="Initial A")
    phase.add_argument("--b", type=float, default=-2e-6, help="Initial b in 1/s")
    phase.add_argument("--dt", type=float, default=DEFAULT_TIME_STEP.to(units.s).magnitude)
    phase.add_argument("--days", type=float, default=3.0, help="Duration of damped runs")
    phase.add_argument("--out", type=pathlib.Path, default=pathlib.Path("phase.csv"))
    phase.add_argument("--plot", action="store_true")
    _add_physics_flags(phase)
    phase.set_defaults(run=run_phase)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """
    Main function of the Typhoon Track Model command line.

    Args:
        argv (Sequence[str] | None): Arguments without the program name; sys.argv if None.
    Returns:
        int: Exit code, 0 success, 1 input or domain error, 2 numerical failure.
    """
    parser: argparse.ArgumentParser = build_parser()
    try:
        args: argparse.Namespace = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 1

    # Set up logging
    local_logger: logging.Logger = setup_logger(log_file=args.log_file)
    try:
        return args.run(args, local_logger)
    except IntegrationBlowupError as e:
        local_logger.error(f"Integration blew up: {e}")
        print(
            f"integration blow-up: last valid time {e.last_valid_time:.1f} s ({e})",
            file=sys.stderr,
        )
        return 2
    except (ValueError, OSError) as e:
        local_logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
