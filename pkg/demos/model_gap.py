"""
The normal and lognormal models side by side
============================================

With volatilities coupled by sigma_abs = s0 * sigma, the two at-the-money
prices agree to third order in sigma * sqrt(T).  This script prints the
closed forms, the gap, and its bounds across a sweep of vol levels, then
zooms in on a month-long option at the kind of vol level where the models
were first used; there the gap is far below any quoted tick.
"""

import math

from bachelier.pricing import atm_gap_bound, bachelier_call_value, bs_call_value

s0 = 100.0
t = 1.0

print(f"at the money, s0 = {s0}, T = {t} year")
print(f"{'sigma':>8} {'normal':>12} {'lognormal':>12} {'gap':>12} {'sharp bound':>12}")
for sigma in (0.01, 0.05, 0.1, 0.2, 0.5, 1.0):
    cb = bachelier_call_value(s0, s0, s0 * sigma, t)
    cbs = bs_call_value(s0, s0, sigma, t)
    bound = atm_gap_bound(s0, sigma, t, sharp=True)
    print(f"{sigma:8.2f} {cb:12.6f} {cbs:12.6f} {cb - cbs:12.3e} {bound:12.3e}")

# the gap grows like the cube of sigma * sqrt(T): halve the vol, gap drops 8x
g1 = bachelier_call_value(s0, s0, s0 * 0.2, t) - bs_call_value(s0, s0, 0.2, t)
g2 = bachelier_call_value(s0, s0, s0 * 0.1, t) - bs_call_value(s0, s0, 0.1, t)
print(f"\ncubic rate check: gap(0.2) / gap(0.1) = {g1 / g2:.2f} (cube predicts 8)")

# one month at 2.4% yearly vol
sigma, t_month = 0.024, 1.0 / 12.0
cb = bachelier_call_value(s0, s0, s0 * sigma, t_month)
cbs = bs_call_value(s0, s0, sigma, t_month)
print(f"\none month at sigma = {sigma:.1%}:")
print(f"  normal    {cb:.10f}")
print(f"  lognormal {cbs:.10f}")
print(f"  gap       {cb - cbs:.3e}  (under a millionth of the price unit)")
print(f"  relative  {(cb - cbs) / cb:.3e}  <=  T sigma^2 / 12 = {t_month * sigma**2 / 12:.3e}")

# parity is exact by construction, not to rounding: P = C + K - S0
strike = 93.0
call = bachelier_call_value(s0, strike, 15.0, 1.0)
put = call + strike - s0
print(f"\nparity at K = {strike}: C = {call:.6f}, P = C + K - S0 = {put:.6f}")
print("the put formula in the library is literally this sum, so the identity")
print("holds bit for bit, and", math.isclose(put, call + strike - s0, rel_tol=0.0, abs_tol=0.0))
