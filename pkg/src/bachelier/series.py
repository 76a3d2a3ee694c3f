"""Power-series machinery around the at-the-money price.

The call value of the normal model, written as a function C(m) of the
moneyness m = strike - s0, expands as

    C(m) = c0 + c1 * m + sum_{k >= 2} psi^(k-2)(0) / k! * m^k

with c0 = int_0^inf x psi(x) dx, c1 = -int_0^inf psi(x) dx and psi the
terminal density of the displacement S_T - S_0.  For the Gaussian density the
first few terms are the closed forms

    C(m) = a - m/2 + m^2/(4 pi a) - m^4/(96 pi^2 a^3) + m^6/(1920 pi^3 a^5) + ...

where a = C(0) is the at-the-money value.  This module hard-codes those
coefficients up to order 6, computes coefficients of arbitrary densities from
an evaluator bundle (analytic derivatives or Richardson-extrapolated finite
differences), and builds the two quadratic "rules of thumb" plus the
call/put reciprocity map on top of them.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from scipy.integrate import IntegrationWarning, quad

from .models import (
    SQRT_TWO_PI,
    BachelierParams,
    BlackScholesParams,
    NoSolutionError,
    ValidationError,
    check_finite,
    check_positive,
    std_normal_cdf,
    std_normal_pdf,
)
from .pricing import atm_binary_and_dirac

_EPS = math.ulp(1.0)
GAUSSIAN_ORDER_LIMIT = 6


def call_value_from_frame(a: float, m: float) -> float:
    """C(m) for the normal model parametrised by its at-the-money value a."""
    s = a * SQRT_TWO_PI
    return -m * std_normal_cdf(-m / s) + s * std_normal_pdf(m / s)


def put_value_from_frame(a: float, m: float) -> float:
    """P(m) = C(m) + m, the exact parity applied in frame coordinates."""
    return call_value_from_frame(a, m) + m


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Coefficients of C(m) = sum_k coeffs[k] * m^k around the money."""

    coeffs: tuple[float, ...]
    radius_hint: float
    density_id: str

    def __post_init__(self) -> None:
        if len(self.coeffs) < 1:
            raise ValidationError("need at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if not (self.coeffs[0] > 0.0 and math.isfinite(self.coeffs[0])):
            raise ValidationError("c0 must be a positive at-the-money value")
        if len(self.coeffs) >= 2 and not (-1.0 < self.coeffs[1] < 0.0):
            raise ValidationError("c1 must lie in (-1, 0): it is minus a tail mass")
        if not self.radius_hint > 0.0:
            raise ValidationError("radius_hint must be positive (math.inf if unbounded)")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


def expansion_coefficients_gaussian(a: float, order: int = 6) -> ExpansionCoefficients:
    """Closed-form coefficients for the Gaussian density, orders 0..6.

    Higher orders have no hard-coded closed form here; request them through
    ``expansion_coefficients_generic`` with ``gaussian_density_evaluator``.
    """
    a = check_positive("a", a)
    if not isinstance(order, int) or order < 0:
        raise ValidationError(f"order must be a non-negative integer, got {order!r}")
    if order > GAUSSIAN_ORDER_LIMIT:
        raise ValidationError(
            f"closed forms stop at order {GAUSSIAN_ORDER_LIMIT}; "
            "use expansion_coefficients_generic for higher orders"
        )
    pi = math.pi
    full = (
        a,
        -0.5,
        1.0 / (4.0 * pi * a),
        0.0,
        -1.0 / (96.0 * pi**2 * a**3),
        0.0,
        1.0 / (1920.0 * pi**3 * a**5),
    )
    return ExpansionCoefficients(
        coeffs=full[: order + 1],
        radius_hint=math.inf,
        density_id=f"gaussian(a={a!r})",
    )


@dataclass(frozen=True)
class DensityEvaluator:
    """Terminal-displacement density bundle for the generic expansion.

    ``pdf`` evaluates the density of S_T - S_0 at a displacement.  ``scale``
    is a characteristic width used to pick finite-difference steps when
    ``derivative`` (an analytic k -> psi^(k)(0) map) is not supplied.
    ``tail_mass`` and ``tail_mean`` are int_0^inf psi and int_0^inf x psi;
    omitted values are computed by quadrature.  ``gaussian_a`` marks the
    evaluator as the exact N(0, 2 pi a^2) density, letting the generic
    expansion reuse the hard-coded closed forms bit for bit up to order 6.
    """

    pdf: Callable[[float], float]
    scale: float
    derivative: Optional[Callable[[int], float]] = None
    tail_mass: Optional[float] = None
    tail_mean: Optional[float] = None
    radius_hint: float = math.inf
    label: str = "density"
    gaussian_a: Optional[float] = None

    def __post_init__(self) -> None:
        check_positive("scale", self.scale)
        if self.gaussian_a is not None:
            check_positive("gaussian_a", self.gaussian_a)


def _double_factorial_odd(j: int) -> float:
    # (2j - 1)!! with the empty product equal to 1
    out = 1.0
    for k in range(1, 2 * j, 2):
        out *= k
    return out


def gaussian_density_evaluator(a: float) -> DensityEvaluator:
    """The N(0, 2 pi a^2) density with analytic derivatives and exact tails."""
    a = check_positive("a", a)
    variance = 2.0 * math.pi * a * a
    peak = 1.0 / (2.0 * math.pi * a)

    def pdf(x: float) -> float:
        return math.exp(-0.5 * x * x / variance) * peak

    def derivative(k: int) -> float:
        if k % 2 == 1:
            return 0.0
        j = k // 2
        return (-1.0) ** j * _double_factorial_odd(j) / variance**j * peak

    return DensityEvaluator(
        pdf=pdf,
        scale=math.sqrt(variance),
        derivative=derivative,
        tail_mass=0.5,
        tail_mean=a,
        radius_hint=math.inf,
        label=f"gaussian(a={a!r})",
        gaussian_a=a,
    )


def bs_displacement_density(params: BlackScholesParams) -> DensityEvaluator:
    """Density of S_T - S_0 under the lognormal model.

    Derivatives at zero are left to finite differences; the tail integrals
    are supplied analytically (the tail mean is the at-the-money call value,
    the tail mass the at-the-money binary price).  The density stops being
    analytic at the displacement -s0, hence the finite radius hint.
    """
    s0 = params.s0
    s = params.sigma_sqrt_t
    c0, b0, _ = atm_binary_and_dirac(params)

    def pdf(x: float) -> float:
        level = s0 + x
        if level <= 0.0:
            return 0.0
        g = (math.log(level / s0) + 0.5 * s * s) / s
        return std_normal_pdf(g) / (level * s)

    return DensityEvaluator(
        pdf=pdf,
        scale=s0 * s,
        derivative=None,
        tail_mass=b0,
        tail_mean=c0,
        radius_hint=s0,
        label=f"lognormal(s0={s0!r}, sigma_sqrt_t={s!r})",
    )


def _central_difference(f: Callable[[float], float], k: int, h: float) -> float:
    total = 0.0
    for j in range(k + 1):
        weight = (-1.0) ** j * math.comb(k, j)
        total += weight * f((k / 2.0 - j) * h)
    return total / h**k


def _fd_derivative_at_zero(f: Callable[[float], float], k: int, scale: float) -> float:
    """k-th derivative of f at 0 by central differences plus two Richardson
    extrapolation stages; base step ~ eps^(1/(k+2)) scaled to the density width."""
    if k == 0:
        return f(0.0)
    h = 8.0 * scale * _EPS ** (1.0 / (k + 2))
    d1 = _central_difference(f, k, h)
    d2 = _central_difference(f, k, h / 2.0)
    d3 = _central_difference(f, k, h / 4.0)
    r12 = (4.0 * d2 - d1) / 3.0
    r23 = (4.0 * d3 - d2) / 3.0
    return (16.0 * r23 - r12) / 15.0


def _tail_integrals(pdf: Callable[[float], float], scale: float) -> tuple[float, float]:
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            mass, mass_err = quad(pdf, 0.0, math.inf, limit=200)
            mean, mean_err = quad(lambda x: x * pdf(x), 0.0, math.inf, limit=200)
        except Exception as exc:
            raise ValidationError(f"density tail integrals do not converge: {exc}") from None
    for value, err, name in ((mass, mass_err, "tail mass"), (mean, mean_err, "tail mean")):
        if not math.isfinite(value) or err > 1e-8 * max(1.0, abs(value)):
            raise ValidationError(f"density {name} failed the integrability pre-check")
    return mass, mean


def expansion_coefficients_generic(psi: DensityEvaluator, order: int) -> ExpansionCoefficients:
    """Coefficients of C(m) for an arbitrary displacement density."""
    if not isinstance(psi, DensityEvaluator):
        raise ValidationError("psi must be a DensityEvaluator")
    if not isinstance(order, int) or order < 0:
        raise ValidationError(f"order must be a non-negative integer, got {order!r}")

    tail_mass, tail_mean = psi.tail_mass, psi.tail_mean
    if tail_mass is None or tail_mean is None:
        quad_mass, quad_mean = _tail_integrals(psi.pdf, psi.scale)
        tail_mass = quad_mass if tail_mass is None else tail_mass
        tail_mean = quad_mean if tail_mean is None else tail_mean
    if not (math.isfinite(tail_mean) and tail_mean > 0.0):
        raise ValidationError("tail mean int_0^inf x psi must be finite and positive")

    closed: tuple[float, ...] = ()
    if psi.gaussian_a is not None:
        closed = expansion_coefficients_gaussian(
            psi.gaussian_a, min(order, GAUSSIAN_ORDER_LIMIT)
        ).coeffs

    coeffs = [tail_mean]
    if order >= 1:
        coeffs.append(-tail_mass)
    for k in range(2, order + 1):
        if k < len(closed):
            coeffs.append(closed[k])
        elif psi.derivative is not None:
            coeffs.append(psi.derivative(k - 2) / math.factorial(k))
        else:
            coeffs.append(_fd_derivative_at_zero(psi.pdf, k - 2, psi.scale) / math.factorial(k))
    return ExpansionCoefficients(
        coeffs=tuple(coeffs),
        radius_hint=psi.radius_hint,
        density_id=psi.label,
    )


def eval_series(coeffs: ExpansionCoefficients, m: float, order: Optional[int] = None) -> float:
    """Horner evaluation of the expansion, optionally truncated at ``order``."""
    m = check_finite("m", m)
    values: Sequence[float] = coeffs.coeffs
    if order is not None:
        if not isinstance(order, int) or order < 0:
            raise ValidationError(f"order must be a non-negative integer, got {order!r}")
        values = values[: order + 1]
    total = 0.0
    for c in reversed(values):
        total = total * m + c
    return total


# Even part of the dimensionless profile F(x) = C(m) / a at x = m / a,
# coefficients of x^0, x^2, x^4, x^6.
_F_EVEN = (
    1.0,
    1.0 / (4.0 * math.pi),
    -1.0 / (96.0 * math.pi**2),
    1.0 / (1920.0 * math.pi**3),
)


def dimensionless_F(x: float, order: int = 6) -> float:
    """Truncated universal profile F with a * F(m / a) = C(m).

    Evaluated as even-polynomial-in-x^2 minus x/2: the only odd term is the
    linear one, so the parity defect F(x) - F(-x) + x is pure rounding noise
    (a couple of ulps) at any truncation order.
    """
    x = check_finite("x", x)
    if not isinstance(order, int) or not 0 <= order <= GAUSSIAN_ORDER_LIMIT:
        raise ValidationError(f"order must be an integer in [0, {GAUSSIAN_ORDER_LIMIT}]")
    u = x * x
    even = 0.0
    for c in reversed(_F_EVEN[: order // 2 + 1]):
        even = even * u + c
    if order >= 1:
        return even - 0.5 * x
    return even


def rule_of_thumb_1(c0: float, b0: float, psi0: float, m: float) -> float:
    """Quadratic strike approximation C_hat(m) = c0 - b0 * m + psi0 * m^2 / 2.

    Exact inputs for any model come from ``pricing.atm_binary_and_dirac``.
    The error is O(m^3) in general and O(m^4) when the displacement density
    is symmetric (the odd cubic coefficient vanishes).
    """
    c0 = check_positive("c0", c0)
    b0 = check_finite("b0", b0)
    psi0 = check_positive("psi0", psi0)
    m = check_finite("m", m)
    return c0 - b0 * m + 0.5 * psi0 * m * m


def invert_rule_of_thumb_1(c_hat: float, c0: float, b0: float, psi0: float) -> float:
    """Strike-from-price inversion of the quadratic approximation.

    Of the two quadratic roots the one continuous in the price at c_hat = c0
    is returned (the root with the smaller |m|, so m -> 0 as c_hat -> c0).
    """
    c_hat = check_finite("c_hat", c_hat)
    c0 = check_positive("c0", c0)
    b0 = check_finite("b0", b0)
    psi0 = check_positive("psi0", psi0)
    discriminant = b0 * b0 - 2.0 * psi0 * (c0 - c_hat)
    if discriminant < 0.0:
        raise NoSolutionError(
            "price lies below the vertex of the quadratic approximation; no real moneyness"
        )
    return (b0 - math.sqrt(discriminant)) / psi0


@dataclass(frozen=True)
class ThumbReport:
    """One row of a rule-of-thumb error table."""

    m_over_a: float
    exact: float
    approx: float
    abs_err: float


def rule_of_thumb_1_report(a: float, m: float) -> ThumbReport:
    """Quadratic approximation versus the exact normal-model value."""
    a = check_positive("a", a)
    m = check_finite("m", m)
    exact = call_value_from_frame(a, m)
    approx = rule_of_thumb_1(a, 0.5, 1.0 / (2.0 * math.pi * a), m)
    return ThumbReport(m_over_a=m / a, exact=exact, approx=approx, abs_err=abs(exact - approx))


def rule_of_thumb_2(params: BachelierParams, m: float) -> tuple[float, float, float, float]:
    """Near-constancy of the call/put products around the money.

    Returns (a_ratio, b_ratio, predicted_a, predicted_b) where
    a_ratio = C(m) P(m) / a^2 and b_ratio = C(m) P(m) (C(m)+P(m)) / (2 a^3),
    and the predictions are the quadratic profiles
    1 - (pi-2)/(4 pi) (m/a)^2 and 1 - (pi-3)/(4 pi) (m/a)^2.  The second
    product is flatter by the factor (pi-2)/(pi-3), roughly 8.
    """
    if not isinstance(params, BachelierParams):
        raise ValidationError("params must be a BachelierParams instance")
    m = check_finite("m", m)
    a = params.atm_price
    u = m / a
    c = call_value_from_frame(a, m)
    p = c + m
    a_ratio = c * p / (a * a)
    b_ratio = c * p * 0.5 * (c + p) / (a * a * a)
    pi = math.pi
    predicted_a = 1.0 - (pi - 2.0) / (4.0 * pi) * u * u
    predicted_b = 1.0 - (pi - 3.0) / (4.0 * pi) * u * u
    return a_ratio, b_ratio, predicted_a, predicted_b


_FRAME_MAX_ITER = 200


def _invert_call_from_frame(c: float, a: float) -> float:
    """Solve C(m) = c for m; C is strictly decreasing with range (0, inf)."""
    s = a * SQRT_TWO_PI
    if c == a:
        return 0.0
    if c > a:
        lo, hi = -(c + s), 0.0  # C(lo) >= |lo| > c
    else:
        lo, hi = 0.0, s
        while call_value_from_frame(a, hi) > c:
            lo = hi
            hi *= 2.0
            if hi > 1e60 * s:  # pragma: no cover - c > 0 is checked upstream
                raise NoSolutionError("call inversion failed to bracket")
    tol = 1e-13 * max(a, c)
    m = 0.5 * (lo + hi)
    for _ in range(_FRAME_MAX_ITER):
        value = call_value_from_frame(a, m) - c
        if value == 0.0:
            break
        if value > 0.0:
            lo = m
        else:
            hi = m
        slope = -std_normal_cdf(-m / s)  # C'(m)
        nxt = m - value / slope if slope < 0.0 else 0.5 * (lo + hi)
        if not (lo < nxt < hi):
            nxt = 0.5 * (lo + hi)
        if nxt == m or nxt == lo or nxt == hi:
            break
        m = nxt
    if abs(call_value_from_frame(a, m) - c) > tol:
        raise NoSolutionError("call inversion stalled outside tolerance")
    return m


def reciprocity_I(c: float, a: float) -> float:
    """The reciprocity map I sending a call value to the matching put value.

    Inverts m -> C(m) numerically and returns C(-m), which equals P(m) by the
    symmetry of the Gaussian density.  I is strictly decreasing and is its
    own inverse.
    """
    a = check_positive("a", a)
    c = check_finite("c", c)
    if c <= 0.0:
        raise NoSolutionError(f"call values are strictly positive, got {c!r}")
    m = _invert_call_from_frame(c, a)
    return call_value_from_frame(a, -m)
