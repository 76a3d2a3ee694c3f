"""Closed-form European option prices for the normal and lognormal models.

Everything is written in forward terms, so put/call parity is the exact
identity  put = call + strike - s0  for both models and is used verbatim to
price puts.  For fixed s0 != strike both prices collapse to intrinsic value
faster than any power of sigma * sqrt(T) as that product goes to zero; below
``DEGENERATE_VOL_TIME`` the formulas short-circuit to intrinsic to avoid 0/0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .models import (
    SQRT_TWO_PI,
    BachelierParams,
    BlackScholesParams,
    OptionSpec,
    ValidationError,
    std_normal_cdf,
    std_normal_pdf,
)

# sigma * sqrt(T) below this is treated as an expired contract.
DEGENERATE_VOL_TIME = 1e-12


@dataclass(frozen=True)
class PriceResult:
    """A model price tagged with the model that produced it."""

    price: float
    model: str


def bachelier_call_value(s0: float, strike: float, sigma_abs: float, maturity: float) -> float:
    """Normal-model call: (s0 - K) * Phi(d) + sigma_abs * sqrt(T) * phi(d)."""
    s = sigma_abs * math.sqrt(maturity)
    intrinsic = max(s0 - strike, 0.0)
    if s < DEGENERATE_VOL_TIME:
        return intrinsic
    d = (s0 - strike) / s
    value = (s0 - strike) * std_normal_cdf(d) + s * std_normal_pdf(d)
    return max(value, intrinsic)


def bachelier_put_value(s0: float, strike: float, sigma_abs: float, maturity: float) -> float:
    return bachelier_call_value(s0, strike, sigma_abs, maturity) + (strike - s0)


def bs_call_value(s0: float, strike: float, sigma_rel: float, maturity: float) -> float:
    """Lognormal-model call: s0 * Phi(d1) - K * Phi(d2).

    At the money the difference Phi(s/2) - Phi(-s/2) loses most of its digits
    for small s, so that case is evaluated as a single erf instead; the gap to
    the normal-model price is ~s^3/24 of the price and would otherwise drown
    in rounding noise.
    """
    s = sigma_rel * math.sqrt(maturity)
    intrinsic = max(s0 - strike, 0.0)
    if s < DEGENERATE_VOL_TIME:
        return intrinsic
    if strike == s0:
        return s0 * math.erf(s / (2.0 * math.sqrt(2.0)))
    d1 = (math.log(s0 / strike) + 0.5 * s * s) / s
    d2 = d1 - s
    value = s0 * std_normal_cdf(d1) - strike * std_normal_cdf(d2)
    return max(value, intrinsic)


def bs_put_value(s0: float, strike: float, sigma_rel: float, maturity: float) -> float:
    return bs_call_value(s0, strike, sigma_rel, maturity) + (strike - s0)


def bachelier_call(params: BachelierParams, spec: OptionSpec) -> PriceResult:
    value = bachelier_call_value(params.s0, spec.strike, params.sigma_abs, params.maturity)
    return PriceResult(price=value, model="bachelier")


def bachelier_put(params: BachelierParams, spec: OptionSpec) -> PriceResult:
    value = bachelier_put_value(params.s0, spec.strike, params.sigma_abs, params.maturity)
    return PriceResult(price=value, model="bachelier")


def bs_call(params: BlackScholesParams, spec: OptionSpec) -> PriceResult:
    value = bs_call_value(params.s0, spec.strike, params.sigma_rel, params.maturity)
    return PriceResult(price=value, model="black_scholes")


def bs_put(params: BlackScholesParams, spec: OptionSpec) -> PriceResult:
    value = bs_put_value(params.s0, spec.strike, params.sigma_rel, params.maturity)
    return PriceResult(price=value, model="black_scholes")


def price(params, spec: OptionSpec) -> PriceResult:
    """Dispatch on parameter type and option kind."""
    if isinstance(params, BachelierParams):
        fn = bachelier_put if spec.kind == "put" else bachelier_call
    elif isinstance(params, BlackScholesParams):
        fn = bs_put if spec.kind == "put" else bs_call
    else:
        raise ValidationError(f"unsupported parameter type {type(params).__name__}")
    return fn(params, spec)


def atm_binary_and_dirac(params) -> tuple[float, float, float]:
    """At-the-money call price C(0), binary price B(0) and density value psi(0).

    These are the three coefficients of the quadratic strike approximation
    C_hat(m) = C(0) - B(0) * m + psi(0) * m^2 / 2:  B(0) is the price of the
    at-the-money digital paying 1 on S_T >= S_0 (equal to -C'(0)), and psi(0)
    the terminal density of the displacement S_T - S_0 at zero (equal to
    C''(0), the second strike-derivative of the call at the money).

    For the lognormal model psi(0) is the lognormal density of S_T evaluated
    at S_0:  exp(-sigma^2 T / 8) / (S_0 * sigma * sqrt(2 pi T)).
    """
    if isinstance(params, BachelierParams):
        a = params.atm_price
        return (a, 0.5, 1.0 / (2.0 * math.pi * a))
    if isinstance(params, BlackScholesParams):
        s = params.sigma_sqrt_t
        c0 = params.s0 * math.erf(s / (2.0 * math.sqrt(2.0)))
        b0 = std_normal_cdf(-0.5 * s)
        psi0 = math.exp(-s * s / 8.0) / (params.s0 * s * SQRT_TWO_PI)
        return (c0, b0, psi0)
    raise ValidationError(f"unsupported parameter type {type(params).__name__}")


def atm_gap_bound(s0: float, sigma_rel: float, maturity: float, sharp: bool = False) -> float:
    """Upper bound on the at-the-money price gap C_bachelier - C_bs when the
    two models are coupled by sigma_abs = s0 * sigma_rel.

    The stated bound is s0 * sigma_rel^3 * T^(3/2) / (12 sqrt(2 pi)); the
    ``sharp`` flavour tightens the constant to 24, which is what the gap
    actually approaches (divided by (sigma_rel * sqrt(T))^3) as the product
    sigma_rel * sqrt(T) goes to zero.
    """
    c = 24.0 if sharp else 12.0
    x = sigma_rel * math.sqrt(maturity)
    return s0 * x * x * x / (c * SQRT_TWO_PI)
