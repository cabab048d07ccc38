"""Fused dot products through the quire.

Run: python3 demos/04_quire_dot_products.py
"""

from fractions import Fraction

import numpy as np

from bposit import FormatSpec, Quire, fused_dot, naive_dot, round_real_to_bposit, value_of

spec = FormatSpec.bposit(32, 6, 5)


def bp(x):
    return round_real_to_bposit(Fraction(x), spec)


def val(p):
    return float(value_of(p, spec).to_fraction())


# huge terms that cancel leave the small one behind only if nothing is
# rounded on the way
xs = [bp(2**100), bp(1), bp(-(2**100))]
ys = [bp(2**60), bp(3), bp(2**60)]
print(f"exact 3, fused {val(fused_dot(xs, ys, spec))}, rounded each step {val(naive_dot(xs, ys, spec))}")

q = Quire.empty(spec)
print(f"quire: {q.size} bits, {q.frac_bits} of them below the binary point")
q = q.accumulate(bp(0.1), bp(0.1)).accumulate(bp(-0.01), bp(1))
print(f"0.1*0.1 - 0.01 left in the quire: {float(q.value()):.3e}  (inexact flag {q.inexact})")

# random vectors with mixed magnitudes: how often does per-step rounding lose?
rng = np.random.default_rng(5)
differ, worst = 0, 0.0
for _ in range(300):
    a = rng.standard_normal(16) * 2.0 ** rng.integers(-20, 20, 16)
    b = rng.standard_normal(16)
    xs, ys = [bp(x) for x in a], [bp(y) for y in b]
    exact = sum(value_of(x, spec).to_fraction() * value_of(y, spec).to_fraction()
                for x, y in zip(xs, ys))
    f, n = fused_dot(xs, ys, spec), naive_dot(xs, ys, spec)
    assert f == round_real_to_bposit(exact, spec)
    if f != n:
        differ += 1
        if exact:
            worst = max(worst, abs(val(n) - float(exact)) / abs(float(exact)))
print(f"per-step rounding differs from the fused result in {differ}/300 cases, "
      f"worst relative error {worst:.2e}")
