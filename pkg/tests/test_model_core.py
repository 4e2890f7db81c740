#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Tests of the derived constants and the RK4 integrator."""
import numpy as np
import pytest

from typhoon_track_model.dynamics.integrator import TimeSeries, integrate, rk4_step
from typhoon_track_model.dynamics.model_core import coriolis_parameter, two_dim_gamma
from typhoon_track_model.exceptions import IntegrationBlowupError, ModelDomainError


@pytest.mark.parametrize(
    "gamma3d, expected",
    [(1.4, 9.0 / 7.0), (2.0, 1.5), (5.0 / 3.0, 1.4)],
)
def test_two_dim_gamma(gamma3d: float, expected: float) -> None:
    assert two_dim_gamma(gamma3d) == pytest.approx(expected, rel=1e-15)


def test_two_dim_gamma_limit_and_monotone() -> None:
    near_one: float = two_dim_gamma(1.0 + 1e-12)
    assert 1.0 < near_one < 1.0 + 1e-11
    values = [two_dim_gamma(g) for g in np.linspace(1.01, 50.0, 200)]
    assert all(1.0 < v < 2.0 for v in values)
    assert np.all(np.diff(values) > 0.0)


@pytest.mark.parametrize("gamma3d", [1.0, 0.5, -2.0])
def test_two_dim_gamma_rejects(gamma3d: float) -> None:
    with pytest.raises(ModelDomainError):
        two_dim_gamma(gamma3d)


def test_coriolis_parameter() -> None:
    assert coriolis_parameter(0.0) == 0.0
    assert coriolis_parameter(90.0) == pytest.approx(1.45842318e-4, rel=1e-8)
    assert coriolis_parameter(22.0) == pytest.approx(5.4634e-5, abs=1e-8)
    for lat in (5.0, 22.0, 63.5):
        assert coriolis_parameter(-lat) == -coriolis_parameter(lat)


@pytest.mark.parametrize("lat", [90.5, -91.0])
def test_coriolis_parameter_rejects(lat: float) -> None:
    with pytest.raises(ModelDomainError):
        coriolis_parameter(lat)


def _decay(_t: float, y: np.ndarray) -> np.ndarray:
    return -y


def test_integrate_zero_field_is_constant() -> None:
    state0 = np.array([1.0, -2.0, 3.5])
    series: TimeSeries = integrate(lambda _t, y: np.zeros_like(y), state0, 0.5, 10.0)
    assert len(series) == 21
    assert np.all(series.states == state0)


def test_integrate_exponential_decay() -> None:
    series = integrate(_decay, np.array([1.0]), 0.01, 1.0)
    assert series.times[-1] == pytest.approx(1.0, abs=1e-12)
    assert series.states[-1, 0] == pytest.approx(np.exp(-1.0), abs=1e-8)


def test_integrate_fourth_order_convergence() -> None:
    coarse: float = abs(integrate(_decay, np.array([1.0]), 0.1, 1.0).states[-1, 0] - np.exp(-1.0))
    fine: float = abs(integrate(_decay, np.array([1.0]), 0.05, 1.0).states[-1, 0] - np.exp(-1.0))
    assert coarse / fine >= 8.0


def test_integrate_lands_on_t_end() -> None:
    series = integrate(_decay, np.array([1.0]), 0.3, 1.0)
    np.testing.assert_allclose(series.times, [0.0, 0.3, 0.6, 0.9, 1.0])


def test_integrate_zero_duration() -> None:
    series = integrate(_decay, np.array([2.0]), 60.0, 0.0, t0=100.0)
    assert len(series) == 1
    assert series.times[0] == 100.0


def test_integrate_time_translation() -> None:
    def rhs(_t: float, y: np.ndarray) -> np.ndarray:
        return np.array([y[1], -y[0] - 0.1 * y[1]])

    full = integrate(rhs, np.array([1.0, 0.0]), 0.01, 2.0)
    tail = integrate(rhs, full.states[100], 0.01, 1.0, t0=float(full.times[100]))
    np.testing.assert_allclose(tail.times, full.times[100:], rtol=1e-12)
    np.testing.assert_allclose(tail.states, full.states[100:], rtol=1e-10, atol=1e-14)


def test_rk4_step_is_exact_for_cubic() -> None:
    y = rk4_step(lambda t, _y: np.array([3.0 * t**2]), 1.0, np.array([1.0]), 0.5)
    assert y[0] == pytest.approx(1.5**3, rel=1e-14)


def test_integrate_blowup_reports_partial_series() -> None:
    with pytest.raises(IntegrationBlowupError) as raised:
        integrate(lambda _t, y: y * y, np.array([1.0]), 0.01, 2.0)
    error = raised.value
    assert 0.9 < error.last_valid_time < 2.0
    assert error.partial.times[-1] == error.last_valid_time
    assert np.all(np.isfinite(error.partial.states))


def test_integrate_positivity_guard() -> None:
    with pytest.raises(IntegrationBlowupError) as raised:
        integrate(lambda _t, y: -np.ones_like(y), np.array([1.0]), 0.3, 2.0, positive=(0,))
    assert raised.value.last_valid_time == pytest.approx(0.9)
    assert len(raised.value.partial) == 4


@pytest.mark.parametrize("dt, t_end", [(0.0, 1.0), (-1.0, 1.0), (1.0, -1.0)])
def test_integrate_rejects_bad_grid(dt: float, t_end: float) -> None:
    with pytest.raises(ModelDomainError):
        integrate(_decay, np.array([1.0]), dt, t_end)


def test_time_series_column_and_tail() -> None:
    series = integrate(
        lambda _t, y: np.array([1.0, 0.0]), np.array([0.0, 5.0]), 1.0, 3.0, fields=("p", "q")
    )
    np.testing.assert_allclose(series.column("p"), [0.0, 1.0, 2.0, 3.0])
    tail = series.tail(2)
    assert len(tail) == 2
    assert tail.fields == ("p", "q")
    np.testing.assert_allclose(tail.column("q"), [5.0, 5.0])
