"""
Two rules of thumb for near-the-money quotes
============================================

Rule 1 keeps the strike expansion at its quadratic term.  For a symmetric
density the cubic term vanishes, so the error is quartic in m; fifteen
percent either side of the money the rule is good to a few parts in ten
thousand.  Rule 2 says the products C*P and C*P*(C+P)/2 are nearly flat in
the strike, the triple product about eight times flatter.
"""

import math

from bachelier.models import BachelierParams
from bachelier.pricing import atm_binary_and_dirac
from bachelier.series import invert_rule_of_thumb_1, rule_of_thumb_1, rule_of_thumb_1_report, rule_of_thumb_2

a = 1.0
print("rule 1 on the normal model, a = 1:")
print(f"{'m/a':>6} {'exact':>12} {'quadratic':>12} {'abs err':>10}")
for m in (0.05, 0.1, 0.2, 0.3):
    r = rule_of_thumb_1_report(a, m)
    print(f"{r.m_over_a:6.2f} {r.exact:12.8f} {r.approx:12.8f} {r.abs_err:10.2e}")

# the same quadratic works for any model once you feed it that model's
# at-the-money value, binary price and density peak
from bachelier.models import BlackScholesParams

params_bs = BlackScholesParams(s0=100.0, sigma_rel=0.2, maturity=1.0)
c0, b0, psi0 = atm_binary_and_dirac(params_bs)
print(f"\nlognormal inputs: C(0) = {c0:.6f}, B(0) = {b0:.6f}, psi(0) = {psi0:.6f}")
print(f"quadratic price at m = 3: {rule_of_thumb_1(c0, b0, psi0, 3.0):.6f}")

# and it inverts: price -> strike offset, the root continuous at the money
m_back = invert_rule_of_thumb_1(rule_of_thumb_1(c0, b0, psi0, 3.0), c0, b0, psi0)
print(f"inverted back: m = {m_back:.12f}")

# rule 2: both product ratios stay within a percent over +-30% of a
params = BachelierParams(s0=100.0, sigma_abs=20.0, maturity=1.0)
print(f"\nrule 2, a = {params.atm_price:.4f}:")
print(f"{'m/a':>6} {'CP/a^2':>10} {'CP(C+P)/2a^3':>14}")
for u in (0.0, 0.1, 0.2, 0.3):
    a_ratio, b_ratio, _, _ = rule_of_thumb_2(params, u * params.atm_price)
    print(f"{u:6.2f} {a_ratio:10.6f} {b_ratio:14.6f}")

pi = math.pi
print(f"\ncurvatures: -(pi-2)/(4 pi) = {-(pi - 2) / (4 * pi):.6f} for the pair,")
print(f"            -(pi-3)/(4 pi) = {-(pi - 3) / (4 * pi):.6f} for the triple;")
print(f"flatness factor (pi-2)/(pi-3) = {(pi - 2) / (pi - 3):.2f}")
