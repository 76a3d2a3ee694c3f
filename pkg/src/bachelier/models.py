"""Core domain types plus the Gaussian density/distribution helpers shared by
every other module.

All monetary quantities are plain floats in consistent forward units; there is
no discounting or daycount logic anywhere in the package.  The normal model
quotes volatility in currency units per sqrt(year) (``sigma_abs``), the
lognormal model as a dimensionless fraction per sqrt(year) (``sigma_rel``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


class ValidationError(ValueError):
    """An input failed eager validation."""


class NoSolutionError(ValueError):
    """A well-formed request has no answer in the admissible domain."""


def _as_float(name: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{name} must be a real number, got {value!r}")
    return float(value)


def check_positive(name: str, value) -> float:
    value = _as_float(name, value)
    if not math.isfinite(value) or value <= 0.0:
        raise ValidationError(f"{name} must be finite and > 0, got {value!r}")
    return value


def check_finite(name: str, value) -> float:
    value = _as_float(name, value)
    if not math.isfinite(value):
        raise ValidationError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class BachelierParams:
    """Arithmetic Brownian motion for the forward price: S_t = s0 + sigma_abs * W_t.

    ``sigma_abs`` is an absolute volatility, measured in currency units per
    sqrt(year) rather than as a fraction of the price level.
    """

    s0: float
    sigma_abs: float
    maturity: float

    def __post_init__(self) -> None:
        for name in ("s0", "sigma_abs", "maturity"):
            object.__setattr__(self, name, check_positive(name, getattr(self, name)))

    @property
    def sigma_sqrt_t(self) -> float:
        return self.sigma_abs * math.sqrt(self.maturity)

    @property
    def atm_price(self) -> float:
        """Value of the at-the-money call: sigma_abs * sqrt(T / (2 pi))."""
        return self.sigma_sqrt_t / SQRT_TWO_PI

    @property
    def nervousness(self) -> float:
        """Time-standardised premium coefficient H = sigma_abs / sqrt(2 pi).

        Equals the at-the-money call price divided by sqrt(T).
        """
        return self.sigma_abs / SQRT_TWO_PI


@dataclass(frozen=True)
class BlackScholesParams:
    """Geometric Brownian motion: S_t = s0 * exp(sigma_rel * W_t - sigma_rel^2 * t / 2)."""

    s0: float
    sigma_rel: float
    maturity: float

    def __post_init__(self) -> None:
        for name in ("s0", "sigma_rel", "maturity"):
            object.__setattr__(self, name, check_positive(name, getattr(self, name)))

    @property
    def sigma_sqrt_t(self) -> float:
        return self.sigma_rel * math.sqrt(self.maturity)


@dataclass(frozen=True)
class OptionSpec:
    """A European option: positive strike plus a call/put flag."""

    strike: float
    kind: str = "call"

    def __post_init__(self) -> None:
        object.__setattr__(self, "strike", check_positive("strike", self.strike))
        if self.kind not in ("call", "put"):
            raise ValidationError(f"kind must be 'call' or 'put', got {self.kind!r}")


@dataclass(frozen=True)
class MoneynessFrame:
    """Strike-centred coordinates for the normal model.

    ``a`` is the at-the-money call value sigma_abs * sqrt(T / (2 pi)) and
    ``m = strike - s0`` the moneyness.  Together they pin down every quantity
    of the model that does not depend on the absolute price level, through
    the identity 2 * pi * a^2 = sigma_abs^2 * T.
    """

    a: float
    m: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", check_positive("a", self.a))
        object.__setattr__(self, "m", check_finite("m", self.m))

    @classmethod
    def from_bachelier(cls, params: BachelierParams, spec: OptionSpec) -> "MoneynessFrame":
        return cls(a=params.atm_price, m=spec.strike - params.s0)

    @property
    def sigma_sqrt_t(self) -> float:
        return self.a * SQRT_TWO_PI


def std_normal_pdf(x: float) -> float:
    """Standard normal density phi(x)."""
    x = check_finite("x", x)
    return math.exp(-0.5 * x * x) / SQRT_TWO_PI


def std_normal_cdf(x: float) -> float:
    """Standard normal distribution function Phi(x), via the complementary
    error function (absolute error at machine scale, no quadrature)."""
    x = check_finite("x", x)
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def bachelier_terminal_density(params: BachelierParams, x: float) -> float:
    """Density of the terminal displacement S_T - S_0 under the normal model.

    This is the N(0, sigma_abs^2 * T) density; in moneyness coordinates it
    reads exp(-x^2 / (4 pi a^2)) / (2 pi a).
    """
    if not isinstance(params, BachelierParams):
        raise ValidationError("params must be a BachelierParams instance")
    s = params.sigma_sqrt_t
    z = x / s
    return math.exp(-0.5 * z * z) / (s * SQRT_TWO_PI)
