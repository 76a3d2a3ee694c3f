"""Implied volatility: closed form at the money, bracketed Newton elsewhere.

The solver brackets the root first (stretching the bracket geometrically when
the default one does not contain it), then runs Newton steps with the analytic
vega, falling back to bisection whenever a step would leave the bracket.  It
iterates until no representable progress remains, so the final price residual
ordinarily sits at machine scale, far inside the contractual tolerance of
1e-10 * max(1, price).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .models import (
    SQRT_TWO_PI,
    NoSolutionError,
    ValidationError,
    check_finite,
    check_positive,
)
from .pricing import bachelier_call_value, bs_call_value

PRICE_TOL_SCALE = 1e-10
_MAX_ITER = 200


@dataclass(frozen=True)
class ImpliedVolResult:
    vol: float
    iterations: int
    residual: float


def atm_implied_bachelier(price: float, maturity: float) -> float:
    """Invert the at-the-money call exactly: sigma_abs = price * sqrt(2 pi / T)."""
    price = check_positive("price", price)
    maturity = check_positive("maturity", maturity)
    return price * SQRT_TWO_PI / math.sqrt(maturity)


def _solve_increasing(
    f: Callable[[float], float],
    fprime: Callable[[float], float],
    target: float,
    lo: float,
    hi: float,
    lo_floor: float,
    hi_cap: float,
    tol: float,
) -> tuple[float, int, float]:
    """Root of the increasing map f(x) = target inside [lo_floor, hi_cap]."""
    evals = 0

    def g(x: float) -> float:
        nonlocal evals
        evals += 1
        return f(x) - target

    glo = g(lo)
    while glo > 0.0:
        if lo <= lo_floor:
            raise NoSolutionError(
                "price is not attainable even at the smallest admissible volatility"
            )
        hi = lo
        lo = max(lo / 16.0, lo_floor)
        glo = g(lo)
    ghi = g(hi)
    while ghi < 0.0:
        if hi >= hi_cap:
            raise NoSolutionError(
                f"no volatility up to {hi_cap:g} reproduces the price (diverging)"
            )
        lo = hi
        hi = min(hi * 16.0, hi_cap)
        ghi = g(hi)

    if glo == 0.0:
        return lo, evals, 0.0
    if ghi == 0.0:
        return hi, evals, 0.0

    x = 0.5 * (lo + hi)
    gx = g(x)
    for _ in range(_MAX_ITER):
        if gx == 0.0:
            break
        if gx > 0.0:
            hi = x
        else:
            lo = x
        v = fprime(x)
        if math.isfinite(v) and v > 0.0:
            nxt = x - gx / v
            if not (lo < nxt < hi):
                nxt = 0.5 * (lo + hi)
        else:
            nxt = 0.5 * (lo + hi)
        if nxt == x or nxt == lo or nxt == hi:
            break
        x = nxt
        gx = g(x)

    residual = abs(gx)
    if residual > tol:
        raise NoSolutionError("volatility search stalled outside tolerance")
    return x, evals, residual


def implied_bachelier(price: float, s0: float, strike: float, maturity: float) -> ImpliedVolResult:
    """Absolute volatility reproducing a normal-model call price."""
    price = check_finite("price", price)
    s0 = check_positive("s0", s0)
    strike = check_positive("strike", strike)
    maturity = check_positive("maturity", maturity)
    intrinsic = max(s0 - strike, 0.0)
    if price <= intrinsic:
        raise NoSolutionError(f"price {price!r} is at or below intrinsic value {intrinsic!r}")

    sqrt_t = math.sqrt(maturity)

    def value(sigma: float) -> float:
        return bachelier_call_value(s0, strike, sigma, maturity)

    def vega(sigma: float) -> float:
        d = (s0 - strike) / (sigma * sqrt_t)
        return sqrt_t * math.exp(-0.5 * d * d) / SQRT_TWO_PI

    vol, evals, residual = _solve_increasing(
        value,
        vega,
        price,
        lo=1e-10 * s0,
        hi=100.0 * s0,
        lo_floor=1e-300,
        hi_cap=1e12 * s0,
        tol=PRICE_TOL_SCALE * max(1.0, price),
    )
    return ImpliedVolResult(vol=vol, iterations=evals, residual=residual)


def implied_bs(price: float, s0: float, strike: float, maturity: float) -> ImpliedVolResult:
    """Relative volatility reproducing a lognormal-model call price.

    Admissible prices sit strictly between intrinsic value and s0; as the
    price approaches s0 the root runs off to +infinity, which the bracket cap
    reports as a no-solution condition.
    """
    price = check_finite("price", price)
    s0 = check_positive("s0", s0)
    strike = check_positive("strike", strike)
    maturity = check_positive("maturity", maturity)
    intrinsic = max(s0 - strike, 0.0)
    if price <= intrinsic:
        raise NoSolutionError(f"price {price!r} is at or below intrinsic value {intrinsic!r}")
    if price >= s0:
        raise NoSolutionError(
            f"price {price!r} is at or above the upper bound s0 = {s0!r}; "
            "the implied volatility diverges to +infinity"
        )

    sqrt_t = math.sqrt(maturity)
    log_ratio = math.log(s0 / strike)

    def value(sigma: float) -> float:
        return bs_call_value(s0, strike, sigma, maturity)

    def vega(sigma: float) -> float:
        s = sigma * sqrt_t
        d1 = (log_ratio + 0.5 * s * s) / s
        return s0 * sqrt_t * math.exp(-0.5 * d1 * d1) / SQRT_TWO_PI

    vol, evals, residual = _solve_increasing(
        value,
        vega,
        price,
        lo=1e-10,
        hi=10.0,
        lo_floor=1e-300,
        hi_cap=1e8,
        tol=PRICE_TOL_SCALE * max(1.0, price),
    )
    return ImpliedVolResult(vol=vol, iterations=evals, residual=residual)


def implied_vol_gap_bound(c0: float, s0: float, maturity: float) -> tuple[float, float, bool]:
    """For one at-the-money call price, compare the two implied vols.

    Returns (gap, bound, holds) with gap = sigma_bs - sigma_abs / s0 and
    bound = T * sigma_bs^3 / 12; ``holds`` reports 0 <= gap <= bound.
    """
    c0 = check_finite("c0", c0)
    s0 = check_positive("s0", s0)
    maturity = check_positive("maturity", maturity)
    if not 0.0 < c0 < s0:
        raise NoSolutionError(f"at-the-money price must lie in (0, s0), got {c0!r}")
    sigma_abs = atm_implied_bachelier(c0, maturity)
    sigma_bs = implied_bs(c0, s0, s0, maturity).vol
    gap = sigma_bs - sigma_abs / s0
    bound = maturity * sigma_bs**3 / 12.0
    return gap, bound, (0.0 <= gap <= bound)
