"""Independent reference models used by the tests.

Nothing here calls the package's decoders or rounding code. Values come from
reading the bit string run by run; negative patterns go through their 2's
complement. Rounding is checked against the pattern one bit longer whose
value sits exactly between two neighbours.
"""

from __future__ import annotations

import struct
from fractions import Fraction

import numpy as np

ZERO, NAR = "zero", "nar"


def bposit_value(bits: int, n: int, rs: int, es: int):
    """Exact value of an ``<n, rs, es>`` pattern as a Fraction, or ZERO / NAR."""
    mask = (1 << n) - 1
    bits &= mask
    if bits == 0:
        return ZERO
    if bits == 1 << (n - 1):
        return NAR
    if bits >> (n - 1):
        v = bposit_value((-bits) & mask, n, rs, es)
        return -v
    body = format(bits, f"0{n}b")[1:]
    first = body[0]
    k = 0
    while k < len(body) and k < rs and body[k] == first:
        k += 1
    r = k - 1 if first == "1" else -k
    size = min(k + 1 if k < rs else rs, len(body))
    rest = body[size:] + "0" * es  # ghost bits
    e = int(rest[:es], 2) if es else 0
    frac_text = rest[es:len(body) - size] if len(body) - size > es else ""
    f = Fraction(int(frac_text, 2), 1 << len(frac_text)) if frac_text else Fraction(0)
    return (1 + f) * Fraction(2) ** (r * (1 << es) + e)


def posit_value(bits: int, n: int, es: int):
    return bposit_value(bits, n, n - 1, es)


def round_oracle(x: Fraction, n: int, rs: int, es: int) -> int:
    """Nearest ``<n, rs, es>`` pattern by scanning and midpoint comparison.

    Ties go to the even pattern; magnitudes beyond maxpos or below minpos
    saturate. ``x`` must be nonzero.
    """
    neg = x < 0
    x = abs(x)
    top = (1 << (n - 1)) - 1
    # largest positive pattern with value <= x
    lo, hi = 0, top
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if bposit_value(mid, n, rs, es) <= x:
            lo = mid
        else:
            hi = mid - 1
    if lo == 0:
        p = 1
    elif lo == top:
        p = top
    else:
        m = bposit_value((lo << 1) | 1, n + 1, rs, es)
        if x < m or (x == m and lo % 2 == 0):
            p = lo
        else:
            p = lo + 1
    return (-p) & ((1 << n) - 1) if neg else p


_NP_FLOAT = {16: (np.float16, "<e", "<H"), 32: (np.float32, "<f", "<I"), 64: (np.float64, "<d", "<Q")}


def ieee_bits_to_float(bits: int, n: int) -> float:
    _, fmt, ifmt = _NP_FLOAT[n]
    return struct.unpack(fmt, struct.pack(ifmt, bits))[0]


def ieee_round_bits(x: float, n: int) -> int:
    """Round a double into binaryN with the hardware (numpy) conversion."""
    ty, fmt, ifmt = _NP_FLOAT[n]
    with np.errstate(over="ignore"):
        v = ty(x)
    return struct.unpack(ifmt, v.tobytes())[0]
