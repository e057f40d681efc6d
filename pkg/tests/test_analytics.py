import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ifamarket.analytics import (
    DayReturns,
    aggregate_days,
    annualize,
    max_deviation,
    quantile_summary,
    rolling_moments,
)

import oracles


def test_aggregate_all_up_day():
    days = aggregate_days(np.ones(2048, dtype=np.uint8))
    assert days.returns.tolist() == [0.512]


def test_aggregate_balanced_day():
    moves = np.concatenate([np.ones(1024, dtype=np.uint8), np.zeros(1024, dtype=np.uint8)])
    assert aggregate_days(moves).returns.tolist() == [0.0]


def test_aggregate_truncates_partial_day():
    days = aggregate_days(np.ones(3000, dtype=np.uint8))
    assert len(days) == 1


def test_aggregate_zero_and_bad_args():
    assert len(aggregate_days(np.empty(0, dtype=np.uint8))) == 0
    with pytest.raises(ValueError):
        aggregate_days(np.ones(10, dtype=np.uint8), ticks_per_day=0)


@settings(max_examples=30, deadline=None)
@given(
    moves=st.lists(st.integers(min_value=0, max_value=1), min_size=0, max_size=400),
    ticks_per_day=st.integers(min_value=1, max_value=37),
)
def test_aggregate_matches_reference(moves, ticks_per_day):
    ours = aggregate_days(np.asarray(moves, dtype=np.uint8), ticks_per_day, 0.001)
    assert ours.returns.tolist() == pytest.approx(
        oracles.day_returns(moves, ticks_per_day, 0.001), abs=1e-15
    )


def test_rolling_two_point_symmetric_window():
    c = 0.0125
    returns = np.tile([c, -c], 8)  # one 16-day window
    rm = rolling_moments(DayReturns(returns=returns), window_days=16)
    assert len(rm) == 1
    assert rm.mean[0] == 0.0
    assert rm.skew[0] == 0.0
    assert rm.kurt[0] == 1.0


def test_rolling_constant_window_undefined_shapes():
    rm = rolling_moments(DayReturns(returns=np.full(8, 0.25)), window_days=4)
    assert np.all(rm.vol == 0.0)
    assert np.all(np.isnan(rm.skew))
    assert np.all(np.isnan(rm.kurt))
    with pytest.raises(ValueError):
        max_deviation(rm)


def test_rolling_requires_enough_days():
    with pytest.raises(ValueError):
        rolling_moments(DayReturns(returns=np.zeros(5)), window_days=6)


def test_rolling_alignment():
    returns = np.arange(10, dtype=np.float64)
    rm = rolling_moments(DayReturns(returns=returns), window_days=4)
    assert len(rm) == 7
    assert rm.mean[0] == returns[:4].mean()
    assert rm.mean[-1] == returns[6:].mean()


@settings(max_examples=25, deadline=None)
@given(
    data=st.lists(
        st.floats(min_value=-0.5, max_value=0.5, allow_nan=False).map(
            lambda x: 0.0 if abs(x) < 1e-6 else x  # keep m2 out of denormals
        ),
        min_size=12,
        max_size=200,
    ),
    window=st.integers(min_value=2, max_value=12),
)
def test_rolling_matches_per_window_reference(data, window):
    if len(data) < window:
        data = data + [0.0] * (window - len(data))
    rm = rolling_moments(DayReturns(returns=np.array(data)), window_days=window)
    for t in range(len(rm)):
        mean, vol, skew, kurt = oracles.window_moments(data[t : t + window])
        assert rm.mean[t] == pytest.approx(mean, abs=1e-12)
        assert rm.vol[t] == pytest.approx(vol, abs=1e-12)
        if math.isnan(skew):
            assert math.isnan(rm.skew[t]) and math.isnan(rm.kurt[t])
        else:
            assert rm.skew[t] == pytest.approx(skew, abs=1e-9)
            assert rm.kurt[t] == pytest.approx(kurt, abs=1e-9)


def test_annualize_scales_mean_and_vol_only():
    rng = np.random.default_rng(7)
    rm = rolling_moments(
        DayReturns(returns=rng.normal(0, 0.01, 600)), window_days=256
    )
    ann = annualize(rm, days_per_year=252)
    assert np.allclose(ann.mean, rm.mean * 252, rtol=0, atol=0)
    assert np.allclose(ann.vol, rm.vol * math.sqrt(252), rtol=0, atol=0)
    assert np.array_equal(ann.skew, rm.skew)
    assert np.array_equal(ann.kurt, rm.kurt)
    assert annualize(rm, 252).mean[0] == pytest.approx(rm.mean[0] * 252)


def test_annualize_arithmetic_examples():
    rm = rolling_moments(DayReturns(returns=np.array([0.001] * 5 + [0.0, 0.002] * 3)), window_days=8)
    ann = annualize(rm, 252)
    assert ann.mean[0] == pytest.approx(rm.mean[0] * 252)
    assert ann.vol[0] == pytest.approx(rm.vol[0] * math.sqrt(252))


def test_scale_equivariance_is_exact_for_doubling():
    rng = np.random.default_rng(11)
    net = rng.integers(-2048, 2049, size=800)
    base = DayReturns(returns=0.00025 * net.astype(np.float64))
    doubled = DayReturns(returns=0.0005 * net.astype(np.float64))
    rm1 = rolling_moments(base, 256)
    rm2 = rolling_moments(doubled, 256)
    assert np.array_equal(rm2.mean, 2.0 * rm1.mean)
    assert np.array_equal(rm2.vol, 2.0 * rm1.vol)
    assert np.array_equal(rm2.skew, rm1.skew, equal_nan=True)
    assert np.array_equal(rm2.kurt, rm1.kurt, equal_nan=True)


def test_shift_invariance_over_repeated_cycles():
    rng = np.random.default_rng(13)
    period = rng.normal(0, 0.01, 50)
    rm = rolling_moments(DayReturns(returns=np.tile(period, 3)), window_days=20)
    # windows one period apart see identical data, bit for bit
    assert np.array_equal(rm.mean[:50], rm.mean[50:100])
    assert np.array_equal(rm.vol[:50], rm.vol[50:100])
    assert np.array_equal(rm.skew[:50], rm.skew[50:100], equal_nan=True)
    assert np.array_equal(rm.kurt[:50], rm.kurt[50:100], equal_nan=True)


def test_max_deviation_ignores_undefined_windows():
    returns = np.concatenate([np.full(6, 0.25), [0.25, -0.25] * 6])
    rm = rolling_moments(DayReturns(returns=returns), window_days=6)
    skew_dev, kurt_dev = max_deviation(rm)
    assert skew_dev >= 0 and kurt_dev >= 0
    assert not math.isnan(skew_dev) and not math.isnan(kurt_dev)


def test_quantile_summary_examples():
    assert quantile_summary([5.0]) == (5, 5, 5, 5, 5)
    # linear interpolation between order statistics
    assert quantile_summary([1, 2, 3, 4, 5]) == (1.0, 1.4, 3.0, 4.6, 5.0)
    with pytest.raises(ValueError):
        quantile_summary([])


def test_day_return_bound_invariant():
    with pytest.raises(ValueError):
        DayReturns(
            returns=np.array([0.6]), ticks_per_day=2048, scale=0.00025
        )
