#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Tests of the tangent-plane projection, the track CSV and forecast evaluation."""
import numpy as np
import pytest

from typhoon_track_model.data_classes.fit_result import FitMode, FitResult, WindowPoint
from typhoon_track_model.data_classes.track import PlaneTrack, Track, normalize_longitude
from typhoon_track_model.exceptions import (
    ModelDomainError,
    TrackParseError,
    TrackValidationError,
)
from typhoon_track_model.helper_functions.geo_track_io import (
    error_table_frame,
    evaluate_forecast,
    fit_record,
    format_track,
    haversine,
    parse_track,
    plane_to_track,
    project,
    read_track,
    track_to_plane,
    unproject,
    write_track,
)

from conftest import HOUR

HEADER: str = "t_hours,lat_deg,lon_deg\n"
ONE_DEGREE: float = 6_371_000.0 * np.pi / 180.0


def test_project_scales() -> None:
    np.testing.assert_allclose(project((1.0, 0.0), (0.0, 0.0)), (0.0, 111194.9), atol=0.1)
    np.testing.assert_allclose(project((60.0, 1.0), (60.0, 0.0)), (55597.5, 0.0), atol=0.1)
    with pytest.raises(ModelDomainError):
        project((91.0, 0.0), (0.0, 0.0))


def test_project_across_date_line() -> None:
    xy = project((20.0, -179.0), (20.0, 179.0))
    assert xy[0] == pytest.approx(2.0 * ONE_DEGREE * np.cos(np.deg2rad(20.0)), rel=1e-12)


def test_unproject_inverts_project(rng: np.random.Generator) -> None:
    origin = (22.0, 130.0)
    for _ in range(200):
        xy = rng.uniform(-2e6, 2e6, 2)
        lat, lon = unproject(xy, origin)
        np.testing.assert_allclose(project((lat, lon), origin), xy, atol=1e-6)
        point = (origin[0] + rng.uniform(-15.0, 15.0), origin[1] + rng.uniform(-15.0, 15.0))
        np.testing.assert_allclose(unproject(project(point, origin), origin), point, atol=1e-9)


def test_unproject_rejects_points_past_the_pole() -> None:
    with pytest.raises(ModelDomainError):
        unproject((0.0, 2e7), (45.0, 0.0))
    with pytest.raises(ModelDomainError):
        unproject((1e3, 0.0), (90.0, 0.0))


def test_haversine() -> None:
    assert haversine((0.0, 0.0), (0.0, 1.0)) == pytest.approx(111194.9, abs=1.0)
    assert haversine((0.0, 0.0), (0.0, 180.0)) == pytest.approx(20_015_086.8, abs=1.0)
    assert haversine((10.0, 20.0), (10.0, 20.0)) == 0.0


def test_haversine_is_a_metric(rng: np.random.Generator) -> None:
    for _ in range(200):
        p, q, r = (
            (rng.uniform(-80.0, 80.0), rng.uniform(-180.0, 180.0)) for _ in range(3)
        )
        assert haversine(p, q) == pytest.approx(haversine(q, p), rel=1e-12)
        assert haversine(p, r) <= haversine(p, q) + haversine(q, r) + 1e-6


def test_normalize_longitude() -> None:
    assert normalize_longitude(190.0) == -170.0
    assert normalize_longitude(-180.0) == 180.0
    assert normalize_longitude(540.0) == 180.0
    assert normalize_longitude(-30.0) == -30.0


def test_parse_track() -> None:
    track = parse_track(HEADER + "0,22,130\n6,22.5,129.25\n\n12,23,190\n")
    assert len(track) == 3
    assert track.origin == (22.0, 130.0)
    np.testing.assert_array_equal(track.times, [0.0, 6.0 * HOUR, 12.0 * HOUR])
    assert track.lons[-1] == -170.0
    assert all(p.label is None for p in track.points)


def test_parse_track_keeps_file_clock() -> None:
    track = parse_track(HEADER + "-6,22,130\n0,22.5,129.5\n")
    np.testing.assert_array_equal(track.times, [-6.0 * HOUR, 0.0])


def test_parse_track_labels() -> None:
    track = parse_track("t_hours,lat_deg,lon_deg,label\n0,22,130,A1\n3,22.1,129.9,\n")
    assert [p.label for p in track.points] == ["A1", None]
    assert format_track(track).splitlines()[0] == "t_hours,lat_deg,lon_deg,label"


@pytest.mark.parametrize(
    "text, line_no",
    [
        ("time,lat,lon\n0,22,130\n", 1),
        ("", 1),
        (HEADER, 2),
        (HEADER + "0,22,130\n3,abc,131\n", 3),
        (HEADER + "0,22,130\n3,22,nan\n", 3),
        (HEADER + "0,22,130\n3,22,131,x\n", 3),
    ],
)
def test_parse_errors_carry_line(text: str, line_no: int) -> None:
    with pytest.raises(TrackParseError) as excinfo:
        parse_track(text)
    assert excinfo.value.line_no == line_no
    assert str(excinfo.value).startswith(f"line {line_no}: ")


@pytest.mark.parametrize(
    "text, line_no",
    [
        (HEADER + "0,22,130\n3,91,130\n", 3),
        (HEADER + "0,22,130\n6,22,130\n6,23,130\n", 4),
        (HEADER + "0,22,130\n-3,22,130\n", 3),
    ],
)
def test_validation_errors_carry_line(text: str, line_no: int) -> None:
    with pytest.raises(TrackValidationError) as excinfo:
        parse_track(text)
    assert excinfo.value.line_no == line_no


def test_canonical_format_round_trip(tmp_path) -> None:
    canonical: str = HEADER + "0.000000,22.000000,130.000000\n6.000000,22.500000,129.250000\n"
    assert format_track(parse_track(canonical)) == canonical
    target = tmp_path / "track.csv"
    write_track(parse_track(canonical), target)
    assert target.read_bytes() == canonical.encode("utf-8")
    assert read_track(target) == parse_track(canonical)


def test_track_rejects_bad_points() -> None:
    with pytest.raises(TrackValidationError):
        Track.from_arrays(np.array([0.0, 0.0]), np.array([10.0, 11.0]), np.array([0.0, 1.0]))
    with pytest.raises(TrackValidationError):
        Track.from_arrays(np.array([0.0]), np.array([95.0]), np.array([0.0]))


def test_plane_round_trip() -> None:
    track = parse_track(HEADER + "0,22,130\n6,22.5,129.25\n12,23.1,128.4\n")
    plane = track_to_plane(track)
    np.testing.assert_allclose(plane.xy[0], (0.0, 0.0), atol=1e-9)
    back = plane_to_track(plane, track.origin)
    np.testing.assert_allclose(back.lats, track.lats, atol=1e-9)
    np.testing.assert_allclose(back.lons, track.lons, atol=1e-9)
    np.testing.assert_array_equal(back.times, track.times)


def test_evaluate_identity() -> None:
    track = parse_track(HEADER + "0,22,130\n6,22.5,129.25\n12,23.1,128.4\n")
    table = evaluate_forecast(track, track)
    assert [r.lead for r in table.rows] == [0.0, 6.0 * HOUR, 12.0 * HOUR]
    assert table.max == pytest.approx(0.0, abs=1e-6)


def test_evaluate_shifted_forecast() -> None:
    actual = parse_track(HEADER + "0,0,130\n6,0,129\n")
    shifted = parse_track(HEADER + "0,0,131\n6,0,130\n")
    table = evaluate_forecast(shifted, actual)
    frame = error_table_frame(table)
    assert list(frame.columns) == ["lead_hours", "error_km"]
    np.testing.assert_allclose(frame["lead_hours"], [0.0, 6.0])
    np.testing.assert_allclose(frame["error_km"], 111.19, atol=0.01)
    assert table.mean == pytest.approx(table.max, rel=1e-12)


def test_evaluate_interpolates_in_time() -> None:
    forecast = parse_track(HEADER + "0,10,130\n6,10,132\n")
    actual = parse_track(HEADER + "3,10,131\n")
    table = evaluate_forecast(forecast, actual)
    assert len(table.rows) == 1
    assert table.rows[0].lead == 3.0 * HOUR
    assert table.rows[0].error == pytest.approx(0.0, abs=1e-6)


def test_evaluate_across_date_line() -> None:
    forecast = parse_track(HEADER + "0,20,179.5\n6,20,-179.5\n")
    actual = parse_track(HEADER + "3,20,180\n")
    assert evaluate_forecast(forecast, actual).max < 1.0


def test_evaluate_single_overlap_and_none() -> None:
    forecast = parse_track(HEADER + "0,20,130\n3,20,131\n")
    table = evaluate_forecast(forecast, parse_track(HEADER + "3,20,131\n6,20,132\n"))
    assert len(table.rows) == 1
    assert table.rows[0].lead == 3.0 * HOUR
    with pytest.raises(ModelDomainError):
        evaluate_forecast(forecast, parse_track(HEADER + "4,20,131\n5,20,132\n"))


def test_fit_record_layout() -> None:
    origin = (22.0, 130.0)
    window = [
        WindowPoint(t=6.0 * HOUR, x1=0.0, x2=0.0),
        WindowPoint(t=12.0 * HOUR, x1=-5e4, x2=2e4),
        WindowPoint(t=18.0 * HOUR, x1=-1e5, x2=5e4),
    ]
    result = FitResult(
        v0=(-2.3, 0.9), mn=(1e-5, -2e-5), b0=-1.9e-6, b01=-2e-6, b02=-1.8e-6,
        accepted=True, epsilon_used=2e-6, l=1e-4, window=window,
        condition_number=42.0, mode=FitMode.SEARCH, start_index=2,
    )
    record = fit_record(result, origin)
    assert (record.origin.lat, record.origin.lon) == origin
    assert record.window_hours == [6.0, 12.0, 18.0]
    assert record.mode == "search"
    assert record.v0 == [-2.3, 0.9]
    assert record.window[2].lat > origin[0] and record.window[2].lon < origin[1]


def test_plane_track_length() -> None:
    assert len(PlaneTrack(times=np.arange(4.0), xy=np.zeros((4, 2)))) == 4
