"""
Price expansions around the money
=================================

In the frame (a, m) with a the at-the-money price and m = K - S0, the
normal-model call is an analytic function of m whose coefficients are
rationals in pi times powers of 1/a.  Truncations at orders 2, 4, 6 give
successively flatter error curves; the script tables them, then rescales to
the dimensionless profile F and finishes by squeezing pi itself out of
three option prices.
"""

import math

from bachelier.series import (
    call_value_from_frame,
    dimensionless_F,
    eval_series,
    expansion_coefficients_gaussian,
)

a = 1.0
coeffs = expansion_coefficients_gaussian(a)
names = ("a", "-1/2", "1/(4 pi a)", "0", "-1/(96 pi^2 a^3)", "0", "1/(1920 pi^3 a^5)")
print("coefficients at a = 1:")
for k, (c, label) in enumerate(zip(coeffs.coeffs, names)):
    print(f"  c{k} = {c:+.12e}   {label}")

print(f"\n{'m':>6} {'exact':>14} {'err order 2':>12} {'err order 4':>12} {'err order 6':>12}")
for m in (0.05, 0.1, 0.2, 0.4):
    exact = call_value_from_frame(a, m)
    errs = [abs(eval_series(coeffs, m, order=k) - exact) for k in (2, 4, 6)]
    print(f"{m:6.2f} {exact:14.10f} {errs[0]:12.3e} {errs[1]:12.3e} {errs[2]:12.3e}")
print("each column drops ~4x faster than the previous when m halves")

# the whole family collapses onto one dimensionless curve
print("\nuniversal profile: C(m) = a F(m/a)")
for scale in (0.5, 2.0):
    m = 0.1 * scale
    print(f"  a = {scale}: a*F(m/a) = {scale * dimensionless_F(m / scale):.12f}"
          f"  C = {call_value_from_frame(scale, m):.12f}")

# pi from prices: the curvature of the price in strike at the money is
# 1 / (4 pi a), so three quotes reveal the constant
m = 0.1
curvature = (call_value_from_frame(a, m) + call_value_from_frame(a, -m) - 2.0 * a) / (2 * m * m)
pi_hat = 1.0 / (4.0 * a * curvature)
print(f"\npi from three prices: {pi_hat:.6f} (error {abs(pi_hat - math.pi):.2e})")
