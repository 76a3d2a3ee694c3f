"""
A reciprocity hidden in the price-strike relation
=================================================

Fix the at-the-money price a.  Map a call price c to the strike where the
call is worth c, flip the sign of that moneyness, and read the price there:
I(c) = C(-m(c)).  Applying the map twice returns the original price, at any
price level, and a itself is the fixed point.  Parity is the reason: the
reflected call is exactly the put.
"""

import numpy as np

from bachelier.series import call_value_from_frame, put_value_from_frame, reciprocity_I

a = 1.0
print(f"fixed point: I(a) = {reciprocity_I(a, a):.15f} at a = {a}")

print(f"\n{'c':>8} {'I(c)':>12} {'I(I(c))':>12} {'error':>10}")
for ratio in (0.1, 0.5, 1.0, 2.0, 5.0):
    c = ratio * a
    once = reciprocity_I(c, a)
    twice = reciprocity_I(once, a)
    print(f"{c:8.2f} {once:12.6f} {twice:12.6f} {abs(twice - c):10.2e}")

# the map is strictly decreasing: expensive calls reflect to cheap ones
cs = np.linspace(0.2, 3.0, 8)
images = [reciprocity_I(float(c), a) for c in cs]
print("\nmonotone:", all(x > y for x, y in zip(images, images[1:])))

# and the reason is one line of parity: C(-m) = P(m)
for m in (-1.0, 0.3, 2.0):
    lhs = call_value_from_frame(a, -m)
    rhs = put_value_from_frame(a, m)
    print(f"C({-m:+.1f}) = {lhs:.12f}   P({m:+.1f}) = {rhs:.12f}")
