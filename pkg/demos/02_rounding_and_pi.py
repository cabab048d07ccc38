"""Rounding a few reals into 16- and 32-bit formats.

Run: python3 demos/02_rounding_and_pi.py
"""

import math
from fractions import Fraction

from bposit import FormatSpec, round_real_to_bposit, round_real_to_float, value_of
from bposit.float_codec import float_value

pi = Fraction(math.pi)  # the double nearest pi is close enough here


def show(x, specs, digits=10):
    for spec in specs:
        if spec.is_posit_family:
            p = round_real_to_bposit(x, spec)
            v = value_of(p, spec)
        else:
            p = round_real_to_float(x, spec)
            v = float_value(p, spec)
        err = abs(v.to_fraction() - x) / abs(x) if v is not None else None
        shown = v.sci_str(digits) if v is not None else "inf"
        rel = "     -    " if err is None else f"{float(err):.3e}"
        print(f"  {spec.name:<14} {p:#0{spec.n // 4 + 2}x}  {shown:<18} rel.err {rel}")
    print()


print("pi in 16 bits")
show(pi, [FormatSpec.ieee(16), FormatSpec.posit(16, 2), FormatSpec.bposit(16, 6, 5),
          FormatSpec.bposit(16, 6, 3)])

e16 = abs(float_value(round_real_to_float(pi, FormatSpec.ieee(16)), FormatSpec.ieee(16)).to_fraction() - pi)
p16 = FormatSpec.posit(16, 2)
ep = abs(value_of(round_real_to_bposit(pi, p16), p16).to_fraction() - pi)
print(f"binary16 error / posit16 error = {float(e16 / ep):.0f}\n")

# a tiny physical constant: binary32 flushes it to zero and posit32 clamps
# it to minpos, while <32,6,5> still keeps most of its digits
print("1.4657e-52 in 32 bits")
show(Fraction("1.4657e-52"), [FormatSpec.ieee(32), FormatSpec.posit(32, 2),
                              FormatSpec.bposit(32, 6, 5)])

# midpoints go to the even neighbour
spec = FormatSpec.bposit(8, 6, 3)
one = value_of(0x40, spec).to_fraction()
up = value_of(0x41, spec).to_fraction()
mid = (one + up) / 2
print(f"midpoint of 0x40 and 0x41 in {spec.name} rounds to {round_real_to_bposit(mid, spec):#04x}")
