"""Standard posit <N, eS> codec in the sequential style.

The regime length comes from a leading-bit count, then a left shift exposes
exponent and fraction. This is the baseline the bounded decoder is compared
against; its fields agree with :func:`bposit.codec.decode_reference` under
the equivalent ``<N, N-1, eS>`` b-posit.
"""

from __future__ import annotations

from typing import NamedTuple

from .codec import check_fields
from .core import (
    NAR_FIELDS, ZERO_FIELDS, FieldSet, FormatMismatch, FormatSpec, ValueClass,
)

__all__ = ["LbcResult", "count_leading_zeros", "leading_bit_count",
           "decode_standard", "encode_standard", "encode_standard_signed"]


class LbcResult(NamedTuple):
    run_length: int
    run_bit: int


def count_leading_zeros(y: int, width: int) -> int:
    """Leading zeros of a ``width``-bit word, split-in-half recursion."""
    if width == 1:
        return 1 - (y & 1)
    lo_w = width // 2
    hi_w = width - lo_w
    zh = count_leading_zeros(y >> lo_w, hi_w)
    if zh < hi_w:
        return zh
    return hi_w + count_leading_zeros(y & ((1 << lo_w) - 1), lo_w)


def leading_bit_count(bits: int, spec: FormatSpec) -> LbcResult:
    """Length of the run starting at bit N-2, capped at N-1."""
    n = spec.n
    run = (bits >> (n - 2)) & 1
    w = n - 2
    x = bits & ((1 << w) - 1)
    if run:
        x ^= (1 << w) - 1
    return LbcResult(1 + count_leading_zeros(x, w) if w else 1, run)


def _require_posit(spec: FormatSpec) -> None:
    if not spec.is_standard_posit:
        raise FormatMismatch(f"{spec.name} is not a standard posit layout")


def decode_standard(bits: int, spec: FormatSpec) -> FieldSet:
    _require_posit(spec)
    n, es = spec.n, spec.es
    bits &= spec.mask
    # reduction NOR over everything but the sign
    if bits & (spec.nar - 1) == 0:
        return NAR_FIELDS if bits else ZERO_FIELDS
    s = bits >> (n - 1)
    k, run = leading_bit_count(bits, spec)
    w = n - 2
    x = bits & ((1 << w) - 1)
    # shift the run out, then drop the terminator: n-3 bits remain
    rem = ((x << (k - 1)) & ((1 << w) - 1)) & ((1 << (w - 1)) - 1) if w > 1 else 0
    size = min(k + 1, n - 1)
    r = k - 1 if run else -k
    rw = n - 3
    if rw >= es:
        mfb = rw - es
        e = rem >> mfb
        fb = max(0, n - 1 - size - es)
        frac = (rem & ((1 << mfb) - 1)) >> (mfb - fb)
    else:
        e = rem << (es - rw)
        fb = frac = 0
    return FieldSet(s, r, e, frac, fb, size)


def encode_standard(fields: FieldSet, spec: FormatSpec) -> int:
    """Build the regime from its value and shift the exponent/fraction in."""
    _require_posit(spec)
    if fields.cls is ValueClass.ZERO:
        return 0
    if fields.cls is ValueClass.NAR:
        return spec.nar
    check_fields(fields, spec)
    n, es = spec.n, spec.es
    run = int(fields.r >= 0)
    k = fields.r + 1 if run else -fields.r
    w = n - 2
    fb = fields.frac_bits
    # terminator, exponent, fraction, then right-shift by the run length
    length = 1 + es + fb
    payload = ((1 - run) << (es + fb)) | (fields.e << fb) | fields.frac
    payload = payload << (w - length) if length <= w else payload >> (length - w)
    shift = k - 1
    tail = payload >> shift
    if run:
        tail |= ((1 << shift) - 1) << (w - shift)  # thermometer fill
    return (fields.s << (n - 1)) | (run << w) | tail


def encode_standard_signed(s: int, regime: int, exponent: int, fraction: int,
                           spec: FormatSpec, *, zero: bool = False,
                           nar: bool = False) -> int:
    """Sequential encoder fed like :func:`bposit.codec.encode_hardware`.

    ``regime``/``exponent`` split the magnitude's scale and ``fraction`` is
    the raw field left-aligned to ``spec.max_frac_bits``. The scale is
    folded with the sign in one adder, which yields the word's raw regime
    and exponent, and the fields are then shifted into place.
    """
    _require_posit(spec)
    if nar:
        return spec.nar
    if zero:
        return 0
    n, es, mfb = spec.n, spec.es, spec.max_frac_bits
    t = (regime << es) + exponent
    if s:
        t = ~t + (fraction == 0)
    r, e = t >> es, t & ((1 << es) - 1)
    size = min((r + 1 if r >= 0 else -r) + 1, n - 1)
    fb = max(0, n - 1 - size - es)
    return encode_standard(FieldSet(s, r, e, fraction >> (mfb - fb), fb, size), spec)
