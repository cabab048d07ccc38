"""IEEE binary16/32/64 to and from a recoded form.

The recoded form carries one extra exponent bit so subnormals can be
normalized on the way in: every finite nonzero value has a significand in
[1, 2). Encoding re-biases, computes the subnormal right shift and rounds
to nearest-even when the significand carries more bits than the format.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import NamedTuple

from .core import ExactValue, FormatMismatch, FormatSpec

__all__ = ["FloatClass", "RecodedFloat", "decode_float", "encode_float",
           "round_real_to_float", "float_value", "canonical_nan"]


class FloatClass(enum.Enum):
    ZERO = "zero"
    SUBNORMAL = "subnormal"
    NORMAL = "normal"
    INF = "inf"
    NAN = "nan"


class RecodedFloat(NamedTuple):
    """``value = (-1)**sign * sig * 2**(exp - frac_bits)``.

    ``sig`` includes the leading 1 for finite nonzero values. Zero and
    infinity carry ``exp = sig = 0``; NaN keeps its payload in ``sig``.
    """

    cls: FloatClass
    sign: int
    exp: int
    sig: int
    frac_bits: int

    @property
    def significand(self) -> Fraction:
        return Fraction(self.sig, 1 << self.frac_bits)

    @property
    def is_finite(self) -> bool:
        return self.cls in (FloatClass.ZERO, FloatClass.SUBNORMAL, FloatClass.NORMAL)

    def to_exact(self) -> ExactValue:
        if not self.is_finite:
            raise ValueError(f"{self.cls.value} has no real value")
        m = -self.sig if self.sign else self.sig
        return ExactValue.from_scaled(m, self.exp - self.frac_bits)

    def __str__(self):
        return f"{self.cls.value}|{self.exp}|{self.significand}"


def _layout(spec: FormatSpec) -> tuple[int, int, int]:
    if spec.is_posit_family:
        raise FormatMismatch(f"{spec.name} is not an IEEE format")
    ew, fw = spec.exp_width, spec.frac_width
    return ew, fw, (1 << (ew - 1)) - 1


def canonical_nan(spec: FormatSpec) -> int:
    ew, fw, _ = _layout(spec)
    return (((1 << ew) - 1) << fw) | (1 << (fw - 1))


def decode_float(bits: int, spec: FormatSpec) -> RecodedFloat:
    ew, fw, bias = _layout(spec)
    s = (bits >> (spec.n - 1)) & 1
    biased = (bits >> fw) & ((1 << ew) - 1)
    frac = bits & ((1 << fw) - 1)
    if biased == (1 << ew) - 1:
        if frac:
            return RecodedFloat(FloatClass.NAN, s, 0, frac, fw)
        return RecodedFloat(FloatClass.INF, s, 0, 0, fw)
    if biased == 0:
        if frac == 0:
            return RecodedFloat(FloatClass.ZERO, s, 0, 0, fw)
        # normalize: shift the leading 1 into the hidden-bit position
        lz = fw - frac.bit_length()
        return RecodedFloat(FloatClass.SUBNORMAL, s, 1 - bias - (lz + 1),
                            frac << (lz + 1), fw)
    return RecodedFloat(FloatClass.NORMAL, s, biased - bias, frac | (1 << fw), fw)


def _shift_round(m: int, shift: int) -> int:
    """``m / 2**shift`` rounded to nearest, ties to even."""
    if shift <= 0:
        return m << -shift
    q = m >> shift
    rem = m & ((1 << shift) - 1)
    half = 1 << (shift - 1)
    if rem > half or (rem == half and q & 1):
        q += 1
    return q


def encode_float(r: RecodedFloat, spec: FormatSpec) -> int:
    ew, fw, bias = _layout(spec)
    sign = r.sign << (spec.n - 1)
    all_ones = ((1 << ew) - 1) << fw
    if r.cls is FloatClass.NAN:
        return canonical_nan(spec)
    if r.cls is FloatClass.INF:
        return sign | all_ones
    if r.cls is FloatClass.ZERO or r.sig == 0:
        return sign
    # renormalize in case the caller's significand is not in [1, 2)
    exp = r.exp + r.sig.bit_length() - 1 - r.frac_bits
    fb = r.sig.bit_length() - 1
    emin = 1 - bias
    if exp < emin:
        # subnormal: right-shift distance below the normal range
        q = _shift_round(r.sig, fb - fw + (emin - exp))
        return sign | q  # a carry into bit fw lands as the smallest normal
    q = _shift_round(r.sig, fb - fw)
    if q >> (fw + 1):
        q >>= 1
        exp += 1
    if exp > bias:
        return sign | all_ones
    return sign | ((exp + bias) << fw) | (q & ((1 << fw) - 1))


def round_real_to_float(x, spec: FormatSpec) -> int:
    """Nearest float to the rational ``x`` (ties to even), overflow to infinity."""
    ew, fw, bias = _layout(spec)
    if isinstance(x, ExactValue):
        x = x.to_fraction()
    x = Fraction(x)
    sign = (1 << (spec.n - 1)) if x < 0 else 0
    ax = abs(x)
    if ax == 0:
        return sign
    num, den = ax.numerator, ax.denominator
    t = num.bit_length() - den.bit_length()
    if (num << max(0, -t)) < (den << max(0, t)):
        t -= 1
    e = max(t, 1 - bias)
    q = round(ax / Fraction(2) ** (e - fw))
    if q >> (fw + 1):
        q >>= 1
        e += 1
    if e > bias:
        return sign | (((1 << ew) - 1) << fw)
    if q >> fw == 0:
        return sign | q
    return sign | ((e + bias) << fw) | (q - (1 << fw))


def float_value(bits: int, spec: FormatSpec) -> ExactValue | None:
    """Exact value of a finite float; None for infinities and NaN."""
    r = decode_float(bits, spec)
    return r.to_exact() if r.is_finite else None
