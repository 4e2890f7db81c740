#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""End-to-end tests of the command line front end."""
import json

import numpy as np
import pandas as pd
import pytest

from typhoon_track_model.data_classes.track import PlaneTrack
from typhoon_track_model.helper_functions.geo_track_io import plane_to_track, read_track, write_track
from typhoon_track_model.trajectory.closed_form import closed_form_coefficients, eval_velocity
from typhoon_track_model.typhoon_track_model import build_parser, main

from conftest import HOUR, spliced_plane, split_root_window, synthetic_plane


@pytest.fixture
def cli(tmp_path):
    """Runs main with a log file inside tmp_path."""

    def run(*argv: str) -> int:
        return main(["--log-file", str(tmp_path / "run.log"), *argv])

    return run


@pytest.fixture
def track_file(tmp_path):
    plane = synthetic_plane((-4.0, 2.5), (3e-5, -2e-5), -1.8e-5, 1e-4, np.arange(20) * 3.0 * HOUR)
    target = tmp_path / "track.csv"
    write_track(plane_to_track(plane, (22.0, 130.0)), target)
    return target


@pytest.fixture
def spliced_track_file(tmp_path):
    """Two chord-consistent tracks joined at a sharp turn after eight points."""
    plane, _ = spliced_plane((-5e-6, 8), (-1.8e-5, 6))
    target = tmp_path / "spliced.csv"
    write_track(plane_to_track(plane, (22.0, 130.0)), target)
    return target


@pytest.fixture
def split_track_file(tmp_path):
    """One window whose two matching conditions vanish 2.5e-6 1/s apart."""
    window = split_root_window(-5e-6, -2.5e-6)
    plane = PlaneTrack(times=np.array([p.t for p in window]), xy=np.array([[p.x1, p.x2] for p in window]))
    target = tmp_path / "split.csv"
    write_track(plane_to_track(plane, (22.0, 130.0)), target)
    return target


def test_parser_lists_every_command() -> None:
    parser = build_parser()
    for command in ("simulate", "trajectory", "fit", "forecast", "sweep", "evaluate", "phase"):
        args = parser.parse_args(
            {
                "simulate": ["simulate"],
                "trajectory": ["trajectory", "--b0=-2e-6"],
                "fit": ["fit", "--track", "t.csv"],
                "forecast": ["forecast", "--track", "t.csv"],
                "sweep": ["sweep", "--track", "t.csv"],
                "evaluate": ["evaluate", "--forecast", "f.csv", "--actual", "a.csv"],
                "phase": ["phase"],
            }[command]
        )
        assert args.command == command
        assert callable(args.run)


def test_help_and_bad_arguments(cli) -> None:
    assert cli("--help") == 0
    assert cli("simulate", "--model", "nonsense") == 1
    assert cli("trajectory") == 1
    assert cli() == 1


def test_simulate_barotropic(cli, tmp_path) -> None:
    out = tmp_path / "run.csv"
    assert cli("simulate", "--days", "3", "--out", str(out)) == 0
    frame = pd.read_csv(out)
    assert len(frame) == 4321
    assert frame.columns[0] == "t_s"
    summary = json.loads((tmp_path / "run_summary.json").read_text(encoding="utf-8"))
    assert summary["rows"] == 4321
    assert summary["invariants_conserved"] is True
    params = json.loads((tmp_path / "run_params.json").read_text(encoding="utf-8"))
    assert params["l"] == 1e-4


def test_simulate_zero_duration(cli, tmp_path) -> None:
    out = tmp_path / "zero.csv"
    assert cli("simulate", "--days", "0", "--out", str(out)) == 0
    assert len(pd.read_csv(out)) == 1


def test_log_file_follows_each_run(tmp_path) -> None:
    first = tmp_path / "first.log"
    second = tmp_path / "second.log"
    argv = ["simulate", "--days", "0", "--out", str(tmp_path / "zero.csv")]
    assert main(["--log-file", str(first), *argv]) == 0
    logged: str = first.read_text(encoding="utf-8")
    assert "Simulating" in logged
    assert main(["--log-file", str(second), *argv]) == 0
    assert first.read_text(encoding="utf-8") == logged
    assert "Simulating" in second.read_text(encoding="utf-8")


def test_simulate_parquet_and_baroclinic(cli, tmp_path) -> None:
    out = tmp_path / "bc.csv"
    assert cli("simulate", "--model", "baroclinic", "--days", "0.5", "--format", "pqt", "--out", str(out)) == 0
    frame = pd.read_parquet(tmp_path / "bc.pqt")
    assert "A1" in frame.columns
    assert len(frame) == 721


def test_simulate_friction_collapse(cli, tmp_path) -> None:
    out = tmp_path / "friction.csv"
    assert cli("simulate", "--model", "friction", "--k", "3e-5", "--out", str(out)) == 0
    summary = json.loads((tmp_path / "friction_summary.json").read_text(encoding="utf-8"))
    assert summary["invariants_conserved"] is False
    assert summary["sustained_convergence"] is True
    assert summary["final_a"] < 0.0


def test_simulate_rejects_bad_values(cli, tmp_path) -> None:
    assert cli("simulate", "--dt", "0", "--out", str(tmp_path / "x.csv")) == 1
    assert cli("simulate", "--gamma", "2.5", "--out", str(tmp_path / "x.csv")) == 1
    assert cli("simulate", "--state", str(tmp_path / "missing.json")) == 1


def test_simulate_blowup_exit_code(cli, tmp_path, capsys) -> None:
    state = tmp_path / "state.json"
    state.write_text(json.dumps({"a": 0.0, "b": 5e-5, "A": 1e-9}), encoding="utf-8")
    code = cli("simulate", "--state", str(state), "--days", "3", "--out", str(tmp_path / "x.csv"))
    assert code == 2
    assert "last valid time" in capsys.readouterr().err


def test_trajectory(cli, tmp_path) -> None:
    out = tmp_path / "traj.csv"
    argv = ["trajectory", "--b0=-2e-6", "--v0", "-3", "1", "--mn", "1e-5", "0", "--hours", "24", "--out", str(out)]
    assert cli(*argv) == 0
    track = read_track(out)
    assert len(track) == 25
    assert track.origin == pytest.approx((22.0, 130.0))
    decomposition = json.loads((tmp_path / "traj_decomposition.json").read_text(encoding="utf-8"))
    assert {"center", "l_circle", "b0_circle"} <= set(decomposition)


def test_trajectory_resonance(cli, tmp_path) -> None:
    assert cli("trajectory", "--b0", "1e-4", "--l", "1e-4", "--out", str(tmp_path / "t.csv")) == 1
    assert cli("trajectory", "--b0", "0", "--out", str(tmp_path / "t.csv")) == 1


def test_fit_fixed_vorticity(cli, tmp_path, track_file) -> None:
    out = tmp_path / "fit.json"
    assert cli("fit", "--track", str(track_file), "--l", "1e-4", "--b0=-1.8e-5", "--window", "2", "--out", str(out)) == 0
    record = json.loads(out.read_text(encoding="utf-8"))
    assert record["accepted"] is True
    assert record["mode"] == "fixed"
    assert record["start_index"] == 2
    assert record["window_hours"] == [6.0, 9.0, 12.0]
    coefficients = closed_form_coefficients((0.0, 0.0), (-4.0, 2.5), (3e-5, -2e-5), 1e-4, -1.8e-5)
    np.testing.assert_allclose(record["v0"], eval_velocity(coefficients, 6.0 * HOUR), atol=0.05)


def test_fit_search(cli, tmp_path, spliced_track_file) -> None:
    out = tmp_path / "search.json"
    assert cli("fit", "--track", str(spliced_track_file), "--l", "1e-4", "--grid-points", "1001", "--out", str(out)) == 0
    record = json.loads(out.read_text(encoding="utf-8"))
    assert record["mode"] == "search"
    assert record["epsilon"] == 2e-6
    assert record["accepted"] is True
    assert abs(record["b01"] - record["b02"]) < 2e-6
    assert record["b0"] == pytest.approx(-5e-6, abs=1e-7)
    assert len(record["v0"]) == 2

    rejected = tmp_path / "kink.json"
    assert cli("fit", "--track", str(spliced_track_file), "--l", "1e-4", "--window", "6", "--grid-points", "1001", "--out", str(rejected)) == 0
    record = json.loads(rejected.read_text(encoding="utf-8"))
    assert record["accepted"] is False
    assert record["b0"] is None


def test_fit_epsilon_decides_verdict(cli, tmp_path, split_track_file) -> None:
    records: dict[str, dict] = {}
    for epsilon in ("2e-6", "3e-6"):
        out = tmp_path / f"fit_{epsilon}.json"
        assert cli("fit", "--track", str(split_track_file), "--l", "1e-4", f"--epsilon={epsilon}", "--out", str(out)) == 0
        records[epsilon] = json.loads(out.read_text(encoding="utf-8"))
    assert records["2e-6"]["accepted"] is False
    assert records["3e-6"]["accepted"] is True
    for record in records.values():
        assert record["b01"] == pytest.approx(-5e-6, abs=1e-7)
        assert record["b02"] == pytest.approx(-2.5e-6, abs=1e-7)
    assert records["3e-6"]["b0"] == pytest.approx(-3.75e-6, abs=1e-7)


def test_fit_window_past_end(cli, tmp_path, track_file) -> None:
    assert cli("fit", "--track", str(track_file), "--window", "18", "--b0=-2e-6", "--out", str(tmp_path / "f.json")) == 1
    assert cli("fit", "--track", str(tmp_path / "missing.csv"), "--out", str(tmp_path / "f.json")) == 1


def test_fit_rejects_exclusive_modes(cli, track_file) -> None:
    assert cli("fit", "--track", str(track_file), "--b0=-2e-6", "--history", "4") == 1


def test_forecast_and_evaluate(cli, tmp_path, track_file) -> None:
    forecast_out = tmp_path / "forecast.csv"
    argv = ["forecast", "--track", str(track_file), "--l", "1e-4", "--b0=-1.8e-5", "--hours", "12", "--step", "3", "--out", str(forecast_out)]
    assert cli(*argv) == 0
    predicted = read_track(forecast_out)
    assert len(predicted) == 5
    np.testing.assert_allclose(predicted.times, np.arange(5) * 3.0 * HOUR)
    assert (tmp_path / "forecast_fit.json").is_file()

    errors_out = tmp_path / "errors.csv"
    assert cli("evaluate", "--forecast", str(forecast_out), "--actual", str(track_file), "--tolerance-km", "50", "--out", str(errors_out)) == 0
    table = pd.read_csv(errors_out)
    assert list(table.columns) == ["lead_hours", "error_km"]
    np.testing.assert_allclose(table["lead_hours"], [0.0, 3.0, 6.0, 9.0, 12.0])
    assert table["error_km"].max() < 1.0


def test_evaluate_without_overlap(cli, tmp_path) -> None:
    first = tmp_path / "first.csv"
    second = tmp_path / "second.csv"
    first.write_text("t_hours,lat_deg,lon_deg\n0,20,130\n3,20,131\n", encoding="utf-8")
    second.write_text("t_hours,lat_deg,lon_deg\n4,20,130\n6,20,131\n", encoding="utf-8")
    assert cli("evaluate", "--forecast", str(first), "--actual", str(second), "--out", str(tmp_path / "e.csv")) == 1


def test_history_forecast(cli, tmp_path, track_file) -> None:
    out = tmp_path / "history.csv"
    assert cli("forecast", "--track", str(track_file), "--l", "1e-4", "--history", "6", "--grid-points", "401", "--hours", "6", "--out", str(out)) == 0
    record = json.loads((tmp_path / "history_fit.json").read_text(encoding="utf-8"))
    assert record["mode"] == "historical"
    assert record["b0"] == pytest.approx(-1.8e-5, abs=1e-7)


def test_sweep(cli, tmp_path, spliced_track_file) -> None:
    out = tmp_path / "sweep.csv"
    assert cli("sweep", "--track", str(spliced_track_file), "--l", "1e-4", "--grid-points", "1001", "--workers", "2", "--out", str(out)) == 0
    frame = pd.read_csv(out)
    assert len(frame) == 12
    assert list(frame["start_index"]) == list(range(12))
    np.testing.assert_allclose(frame["t0_hours"], np.arange(12) * 3.0)
    assert list(frame.loc[~frame["accepted"], "start_index"]) == [6, 7]
    accepted = frame[frame["accepted"]]
    assert ((accepted["b01"] - accepted["b02"]).abs() < 2e-6).all()
    np.testing.assert_allclose(accepted["b0"], [-5e-6] * 6 + [-1.8e-5] * 4, atol=1e-7)


def test_phase(cli, tmp_path) -> None:
    out = tmp_path / "phase.csv"
    assert cli("phase", "--a-values", "2e-6", "4e-6", "--out", str(out)) == 0
    frame = pd.read_csv(out)
    assert set(frame["orbit"]) == {0, 1}
    summary = pd.read_csv(tmp_path / "phase_summary.csv")
    assert len(summary) == 2
    assert (summary["closure"] < 1e-3).all()


def test_phase_damped(cli, tmp_path) -> None:
    out = tmp_path / "damped.csv"
    assert cli("phase", "--k", "3e-5", "--a-values", "0", "--days", "1", "--out", str(out)) == 0
    assert len(pd.read_csv(out)) == 1441
