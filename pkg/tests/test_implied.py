"""Implied-volatility inversion, round trips and the at-the-money vol gap."""

import math

import numpy as np
import pytest

from bachelier.implied import (
    atm_implied_bachelier,
    implied_bachelier,
    implied_bs,
    implied_vol_gap_bound,
)
from bachelier.models import SQRT_TWO_PI, NoSolutionError, ValidationError
from bachelier.pricing import bachelier_call_value, bs_call_value


def test_atm_shortcut_unit_cases():
    assert math.isclose(atm_implied_bachelier(math.sqrt(1.0 / (2.0 * math.pi)), 1.0), 1.0,
                        rel_tol=1e-15)
    assert math.isclose(atm_implied_bachelier(2.0, 4.0), SQRT_TWO_PI, rel_tol=1e-15)


def test_atm_shortcut_round_trips_through_pricer():
    for sigma in (0.5, 3.0, 42.0):
        for t in (1.0 / 12.0, 1.0, 5.0):
            price = bachelier_call_value(100.0, 100.0, sigma, t)
            assert math.isclose(atm_implied_bachelier(price, t), sigma, rel_tol=1e-13)


def test_atm_shortcut_matches_premium_normalisation():
    # vol / sqrt(2 pi) equals price / sqrt(T)
    price, t = 1.7, 0.5
    vol = atm_implied_bachelier(price, t)
    assert math.isclose(vol / SQRT_TWO_PI, price / math.sqrt(t), rel_tol=1e-15)


def test_atm_shortcut_validation():
    with pytest.raises(ValidationError):
        atm_implied_bachelier(-1.0, 1.0)
    with pytest.raises(ValidationError):
        atm_implied_bachelier(1.0, 0.0)


def test_normal_solver_agrees_with_atm_shortcut():
    price = bachelier_call_value(100.0, 100.0, 7.0, 0.5)
    result = implied_bachelier(price, 100.0, 100.0, 0.5)
    assert math.isclose(result.vol, atm_implied_bachelier(price, 0.5), rel_tol=1e-12)


def test_normal_round_trip_vol_space():
    price = bachelier_call_value(100.0, 103.0, 7.3, 0.5)
    result = implied_bachelier(price, 100.0, 103.0, 0.5)
    assert math.isclose(result.vol, 7.3, rel_tol=1e-9)
    assert result.iterations >= 1
    assert abs(result.residual) <= 1e-10 * max(1.0, price)


def test_bs_round_trip_vol_space():
    price = bs_call_value(100.0, 100.0, 0.2, 1.0)
    result = implied_bs(price, 100.0, 100.0, 1.0)
    assert math.isclose(result.vol, 0.2, rel_tol=1e-9)

    price = bs_call_value(100.0, 103.0, 0.21, 0.5)
    assert math.isclose(implied_bs(price, 100.0, 103.0, 0.5).vol, 0.21, rel_tol=1e-9)


def test_round_trips_in_price_space():
    # draws across both models; the contract tolerance lives in price space
    rng = np.random.default_rng(405)
    for _ in range(150):
        s0 = float(rng.uniform(5.0, 400.0))
        t = float(rng.uniform(0.05, 3.0))
        sigma_rel = float(np.exp(rng.uniform(math.log(1e-4), math.log(3.0))))
        d = float(rng.uniform(-2.0, 2.0))
        s = sigma_rel * math.sqrt(t)

        strike = s0 * math.exp(d * s)
        target = bs_call_value(s0, strike, sigma_rel, t)
        if max(s0 - strike, 0.0) < target < s0:
            back = bs_call_value(s0, strike, implied_bs(target, s0, strike, t).vol, t)
            assert abs(back - target) <= 1e-9 * target

        strike_n = s0 + d * s0 * s
        if strike_n > 0.0:
            target_n = bachelier_call_value(s0, strike_n, s0 * sigma_rel, t)
            if target_n > max(s0 - strike_n, 0.0):
                vol = implied_bachelier(target_n, s0, strike_n, t).vol
                back_n = bachelier_call_value(s0, strike_n, vol, t)
                assert abs(back_n - target_n) <= 1e-9 * target_n


def test_well_conditioned_vol_recovery():
    # near the money the vol itself comes back at solver precision
    rng = np.random.default_rng(77)
    for _ in range(60):
        s0 = float(rng.uniform(20.0, 200.0))
        t = float(rng.uniform(0.1, 2.0))
        sigma = float(rng.uniform(0.05, 0.9))
        d = float(rng.uniform(-1.5, 1.5))
        strike = s0 * math.exp(d * sigma * math.sqrt(t))
        price = bs_call_value(s0, strike, sigma, t)
        assert math.isclose(implied_bs(price, s0, strike, t).vol, sigma, rel_tol=1e-9)


def test_boundary_rejections_normal():
    intrinsic = 5.0
    with pytest.raises(NoSolutionError):
        implied_bachelier(intrinsic, 105.0, 100.0, 1.0)
    with pytest.raises(NoSolutionError):
        implied_bachelier(intrinsic + 1e-320, 105.0, 100.0, 1.0)
    with pytest.raises(NoSolutionError):
        implied_bachelier(0.0, 100.0, 110.0, 1.0)
    with pytest.raises(ValidationError):
        implied_bachelier(math.nan, 100.0, 100.0, 1.0)


def test_boundary_rejections_lognormal():
    with pytest.raises(NoSolutionError):
        implied_bs(100.0, 100.0, 100.0, 1.0)  # at the upper bound
    with pytest.raises(NoSolutionError) as excinfo:
        implied_bs(150.0, 100.0, 100.0, 1.0)
    assert "diverge" in str(excinfo.value)
    with pytest.raises(NoSolutionError):
        implied_bs(4.999, 105.0, 100.0, 1.0)  # below intrinsic
    with pytest.raises(ValidationError):
        implied_bs(1.0, 100.0, 100.0, -1.0)


def test_deep_quotes_still_reprice_exactly():
    # vega is microscopic here, so vol recovery degrades but repricing cannot
    price = bachelier_call_value(100.0, 95.0, 2.4, 1.0 / 12.0)
    result = implied_bachelier(price, 100.0, 95.0, 1.0 / 12.0)
    assert bachelier_call_value(100.0, 95.0, result.vol, 1.0 / 12.0) == pytest.approx(
        price, rel=1e-12
    )


def test_gap_bound_at_historical_scale():
    # yearly relative vol around 2.4%, one month to run
    t = 1.0 / 12.0
    c0 = bs_call_value(100.0, 100.0, 0.024, t)
    gap, bound, holds = implied_vol_gap_bound(c0, 100.0, t)
    assert holds
    assert 0.0 <= gap <= bound
    assert math.isclose(bound, t * 0.024**3 / 12.0, rel_tol=1e-6)
    assert bound < 1e-7  # about 9.6e-8


def test_gap_bound_mid_vol():
    t = 1.0
    c0 = bs_call_value(100.0, 100.0, 0.5, t)  # sigma * sqrt(T) = 0.5
    gap, bound, holds = implied_vol_gap_bound(c0, 100.0, t)
    assert holds and gap > 0.0


def test_gap_nonnegative_on_random_prices():
    rng = np.random.default_rng(8128)
    for _ in range(200):
        s0 = float(rng.uniform(10.0, 500.0))
        t = float(rng.uniform(0.05, 2.0))
        x = float(np.exp(rng.uniform(math.log(1e-3), 0.0)))
        c0 = bs_call_value(s0, s0, x / math.sqrt(t), t)
        gap, bound, holds = implied_vol_gap_bound(c0, s0, t)
        assert holds
        assert gap >= 0.0


def test_gap_cubic_scaling_approaches_limit_constant():
    s0, t = 100.0, 1.0
    ratios = []
    for x in np.geomspace(1e-3, 1.0, 13):
        sigma = float(x)
        c0 = bs_call_value(s0, s0, sigma, t)
        gap, _, holds = implied_vol_gap_bound(c0, s0, t)
        assert holds
        ratios.append(gap / (sigma**3 * t))
    assert all(r <= 1.0 / 12.0 for r in ratios)
    # the ratio settles at 1/24 as sigma*sqrt(T) shrinks
    assert abs(ratios[0] - 1.0 / 24.0) < 0.05 / 24.0


def test_ordering_always_bs_above_relative_normal():
    s0, t = 250.0, 0.5
    for x in np.geomspace(1e-3, 1.0, 20):
        c0 = bs_call_value(s0, s0, float(x) / math.sqrt(t), t)
        gap, _, _ = implied_vol_gap_bound(c0, s0, t)
        assert gap >= 0.0


def test_gap_bound_rejects_out_of_range_prices():
    with pytest.raises((NoSolutionError, ValidationError)):
        implied_vol_gap_bound(0.0, 100.0, 1.0)
    with pytest.raises(NoSolutionError):
        implied_vol_gap_bound(100.0, 100.0, 1.0)
