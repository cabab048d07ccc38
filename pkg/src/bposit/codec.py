"""B-posit decode and encode.

Three routes through the format live here:

* :func:`decode_reference` scans the regime bit by bit. It is the oracle.
* :func:`decode_fast` follows the parallel hardware scheme: XOR the bits
  after the regime MSB with that MSB, turn them into a one-hot regime-size
  vector, pick the exponent/fraction tap with a small multiplexer, and fold
  the exponent with the sign. The 2's-complement carry is left in
  ``exp_cin`` instead of being added.
* :func:`encode_hardware` packs fields back using the regime-string decoder
  and the exponent-overflow correction; :func:`encode_fields` is the inverse
  of :func:`decode_reference` built on top of it.

All routines take the pattern as a plain ``int`` plus a :class:`FormatSpec`;
``rS`` is a parameter everywhere, with ``rS = 6`` reproducing the published
tables.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .core import (
    NAR_FIELDS, ZERO_FIELDS, ExactValue, FieldOutOfRange, FieldSet, FormatSpec,
    InvalidRegimeValue, ValueClass, fields_to_value, twos_complement,
)

__all__ = [
    "DecodeResult", "RegimeString", "decode_reference", "decode_fast",
    "regime_one_hot", "one_hot_from_xor", "regime_width", "regime_size_of",
    "regime_string_of", "encode_fields", "encode_hardware", "fold_fields",
    "round_real_to_bposit", "value_of", "check_fields", "format_fields", "parse_pattern",
]


def regime_width(rs: int) -> int:
    """Bits of the 2's-complement regime value for regimes in [-rS, rS-1]."""
    return (rs - 1).bit_length() + 1


def decode_reference(bits: int, spec: FormatSpec) -> FieldSet:
    n, rs, es = spec.n, spec.rs, spec.es
    bits &= spec.mask
    if bits == 0:
        return ZERO_FIELDS
    if bits == spec.nar:
        return NAR_FIELDS
    s = bits >> (n - 1)
    pos = n - 2
    run_bit = (bits >> pos) & 1
    k = 0
    while k < rs and pos >= 0 and (bits >> pos) & 1 == run_bit:
        k += 1
        pos -= 1
    if k < rs:
        size = k + 1  # terminator consumed
    else:
        size = rs
    r = k - 1 if run_bit else -k
    avail = n - 1 - size
    if avail >= es:
        fb = avail - es
        e = (bits >> fb) & ((1 << es) - 1)
        frac = bits & ((1 << fb) - 1)
    else:
        # exponent runs past the LSB; missing bits are ghost zeros
        fb = 0
        e = (bits & ((1 << avail) - 1)) << (es - avail)
        frac = 0
    return FieldSet(s, r, e, frac, fb, size)


def value_of(bits: int, spec: FormatSpec) -> ExactValue:
    return fields_to_value(decode_reference(bits, spec), spec)


def one_hot_from_xor(t: int, width: int) -> tuple[int, ...]:
    """Priority-map ``width`` XORed bits (MSB first) to a one-hot vector.

    The first set bit at position i selects element i; all-zero selects the
    last element. The vector has ``width + 1`` entries.
    """
    i = width - t.bit_length() if t else width
    return tuple(int(j == i) for j in range(width + 1))


def _xor_taps(bits: int, spec: FormatSpec) -> int:
    n, rs = spec.n, spec.rs
    w = rs - 1
    t = (bits >> (n - 1 - rs)) & ((1 << w) - 1)
    if (bits >> (n - 2)) & 1:
        t ^= (1 << w) - 1
    return t


def regime_one_hot(bits: int, spec: FormatSpec) -> tuple[int, ...]:
    """One-hot regime-size vector from bits [N-3 : N-1-rS] XOR the regime MSB."""
    return one_hot_from_xor(_xor_taps(bits & spec.mask, spec), spec.rs - 1)


class DecodeResult(NamedTuple):
    """Outputs of the parallel decoder.

    ``regime`` and ``exponent`` are sign-folded (1's complement for negative
    words) so that ``T = regime * 2**eS + exponent`` holds for both signs
    and the significand stays in signed form ``1 - 3s + f``. ``exp_cin`` is
    the deferred carry that turns the folded exponent into the magnitude's.
    ``raw_significand_signed`` is the fraction field exactly as tapped,
    left-aligned to ``spec.max_frac_bits``. ``fields`` is the plain
    :class:`FieldSet` recovered from these outputs.
    """

    fields: FieldSet
    exp_cin: int
    raw_significand_signed: int
    regime: int
    exponent: int
    one_hot: tuple[int, ...]

    def effective_exponent(self, spec: FormatSpec) -> int:
        return (self.regime << spec.es) + self.exponent

    def magnitude_fields(self, spec: FormatSpec) -> FieldSet:
        """Fields of ``|x|`` after the deferred carry is applied."""
        f = self.fields
        if not f.is_real or not f.s:
            return f
        t = self.effective_exponent(spec) + self.exp_cin
        mfb = spec.max_frac_bits
        frac_field = -self.raw_significand_signed & ((1 << mfb) - 1)
        r, e = t >> spec.es, t & ((1 << spec.es) - 1)
        size = _regime_size(r, spec.rs)
        fb = max(0, spec.n - 1 - size - spec.es)
        return FieldSet(0, r, e, frac_field >> (mfb - fb), fb, size)


def _regime_size(r: int, rs: int) -> int:
    k = r + 1 if r >= 0 else -r
    return min(k + 1, rs)


def decode_fast(bits: int, spec: FormatSpec) -> DecodeResult:
    n, rs, es = spec.n, spec.rs, spec.es
    bits &= spec.mask
    s = bits >> (n - 1)
    run = (bits >> (n - 2)) & 1
    t = _xor_taps(bits, spec)
    w = rs - 1
    i = w - t.bit_length() if t else w
    one_hot = tuple(int(j == i) for j in range(rs))
    size = min(i + 2, rs)

    # tap mux: bits below the regime, left-aligned in the data width
    width = max(n - 3, es)
    below = n - 1 - size
    data = (bits & ((1 << below) - 1)) << (width - below)
    mfb = width - es
    raw_exp = data >> mfb
    frac_field = data & ((1 << mfb) - 1)
    emask = (1 << es) - 1
    exponent = raw_exp ^ emask if s else raw_exp
    exp_cin = s & (frac_field == 0)
    # priority encoder: index i, complemented unless the folded run bit is 1
    regime = i if run ^ s else -i - 1

    if bits & (spec.nar - 1) == 0:
        fields = NAR_FIELDS if s else ZERO_FIELDS
    else:
        fb = max(0, below - es)
        fields = FieldSet(
            s,
            -regime - 1 if s else regime,
            exponent ^ emask if s else exponent,
            frac_field >> (mfb - fb),
            fb,
            size,
        )
    return DecodeResult(fields, exp_cin, frac_field, regime, exponent, one_hot)


def regime_size_of(r4: int, rs: int = 6) -> int:
    """Regime field size from the 2's-complement regime value bits."""
    return _fold(r4, rs)[1]


def _fold(r4: int, rs: int) -> tuple[int, int]:
    w = regime_width(rs)
    if not 0 <= r4 < (1 << w):
        raise InvalidRegimeValue(f"{r4} does not fit in {w} bits")
    signed = r4 - (1 << w) if r4 >> (w - 1) else r4
    if not -rs <= signed <= rs - 1:
        raise InvalidRegimeValue(f"regime {signed} outside [-{rs}, {rs - 1}]")
    low = (1 << (w - 1)) - 1
    j = (r4 & low) ^ (low if r4 >> (w - 1) else 0)
    return j, min(j + 2, rs)


class RegimeString(NamedTuple):
    bits: int
    width: int
    folded: int
    decoder_output: int
    intermediate: int


def regime_string_of(r4: int, s: int, rs: int = 6) -> RegimeString:
    """Regime bit string for the encoder.

    The folded regime drives a 3-to-rS one-hot decoder; a 0 is prepended to
    form the intermediate string, whose top ``width`` bits are inverted when
    the raw run consists of ones (regime MSB XNOR sign).
    """
    j, size = _fold(r4, rs)
    decoder_output = 1 << (rs - 1 - j)
    intermediate = decoder_output  # leading 0 makes it rS+1 bits wide
    top = intermediate >> (rs + 1 - size)
    msb = r4 >> (regime_width(rs) - 1)
    if not msb ^ s:
        top ^= (1 << size) - 1
    return RegimeString(top, size, j, decoder_output, intermediate)


def encode_hardware(s: int, regime: int, exponent: int, fraction: int,
                    spec: FormatSpec, *, zero: bool = False, nar: bool = False) -> int:
    """Pack encoder-side fields into a pattern.

    ``regime``/``exponent`` describe the magnitude's effective exponent
    (as produced by :func:`decode_fast` plus ``exp_cin``); ``fraction`` is
    the raw signed-form fraction left-aligned to ``spec.max_frac_bits`` and
    already cut to the width the regime leaves.
    """
    if nar:
        return spec.nar
    if zero:
        return 0
    n, rs, es = spec.n, spec.rs, spec.es
    w = regime_width(rs)
    r4 = regime & ((1 << w) - 1)
    rstr = regime_string_of(r4, s, rs)
    msb = r4 >> (w - 1)
    run = 1 - (msb ^ s)
    emask = (1 << es) - 1
    exp_raw = (exponent ^ emask if s else exponent) + (s & (fraction == 0))
    overflow = exp_raw >> es
    tail_len = n - 1
    if overflow:
        # exponent carry moves the raw regime up by one; everything after it is 0
        inter = rstr.intermediate
        if run:
            size = min(rstr.width + 1, rs)
            string = ((inter >> 1) >> (rs + 1 - size)) ^ ((1 << size) - 1)
        else:
            # one bit shorter, except from the capped all-zeros regime
            size = rstr.folded + 1
            string = ((inter << 1) & ((1 << (rs + 1)) - 1)) >> (rs + 1 - size)
        tail = string << (tail_len - size)
    else:
        size = rstr.width
        avail = tail_len - size
        tail = rstr.bits << avail
        exp_raw &= emask
        if avail >= es:
            fb = avail - es
            tail |= exp_raw << fb
            tail |= fraction >> (spec.max_frac_bits - fb)
        else:
            tail |= exp_raw >> (es - avail)
    return (s << (n - 1)) | tail


def fold_fields(fields: FieldSet, spec: FormatSpec) -> tuple[int, int, int, int]:
    """Map plain fields to encoder inputs ``(s, regime, exponent, fraction)``."""
    es, mfb = spec.es, spec.max_frac_bits
    fraction = fields.frac << (mfb - fields.frac_bits)
    if not fields.s:
        return 0, fields.r, fields.e, fraction
    t = ((-fields.r - 1) << es) + (~fields.e & ((1 << es) - 1))
    if fields.frac == 0:
        t += 1
    return 1, t >> es, t & ((1 << es) - 1), fraction


def check_fields(fields: FieldSet, spec: FormatSpec) -> None:
    rs, es = spec.rs, spec.es
    if fields.s not in (0, 1):
        raise FieldOutOfRange(f"sign {fields.s}")
    if not -rs <= fields.r <= rs - 1:
        raise FieldOutOfRange(f"regime {fields.r} outside [-{rs}, {rs - 1}]")
    if not 0 <= fields.e < (1 << es) and not (es == 0 and fields.e == 0):
        raise FieldOutOfRange(f"exponent {fields.e} needs more than {es} bits")
    size = _regime_size(fields.r, rs)
    avail = spec.n - 1 - size
    fb = max(0, avail - es)
    if fields.frac_bits != fb or not 0 <= fields.frac < (1 << fb):
        raise FieldOutOfRange(
            f"fraction {fields.frac}/2^{fields.frac_bits} does not fit the "
            f"{fb} bits left by a size-{size} regime")
    if avail < es and fields.e & ((1 << (es - avail)) - 1):
        raise FieldOutOfRange(f"exponent {fields.e} sets ghost bits")
    if fields.r == -rs and fields.e == 0 and fields.frac == 0:
        raise FieldOutOfRange("all-zero body is reserved for zero/NaR")


def encode_fields(fields: FieldSet, spec: FormatSpec) -> int:
    """Inverse of :func:`decode_reference`."""
    if fields.cls is ValueClass.ZERO:
        return 0
    if fields.cls is ValueClass.NAR:
        return spec.nar
    check_fields(fields, spec)
    return encode_hardware(*fold_fields(fields, spec), spec)


@lru_cache(maxsize=None)
def _bounds(spec: FormatSpec) -> tuple[Fraction, Fraction]:
    return (value_of(1, spec).to_fraction(),
            value_of(spec.nar - 1, spec).to_fraction())


def _as_fraction(x) -> Fraction | None:
    """None stands for NaR."""
    if isinstance(x, ExactValue):
        return None if x.cls is ValueClass.NAR else x.to_fraction()
    return Fraction(x)


def round_real_to_bposit(x, spec: FormatSpec) -> int:
    """Nearest pattern to ``x``, ties to an even pattern.

    Rounding acts on the infinitely long bit string of ``|x|``: where the
    cut falls inside the fraction this is nearest-value rounding; where it
    falls inside exponent bits the split point is the value of the pattern
    extended by a single 1 bit. Nonzero values never round to zero and
    finite values never reach NaR.
    """
    q = _as_fraction(x)
    if q is None:
        return spec.nar
    if q == 0:
        return 0
    u = _round_magnitude(abs(q), spec)
    return twos_complement(u, spec.n) if q < 0 else u


def _round_magnitude(x: Fraction, spec: FormatSpec) -> int:
    minpos, maxpos = _bounds(spec)
    if x >= maxpos:
        return spec.nar - 1
    if x <= minpos:
        return 1
    n, rs, es = spec.n, spec.rs, spec.es
    num, den = x.numerator, x.denominator
    t = num.bit_length() - den.bit_length()
    if (num << max(0, -t)) < (den << max(0, t)):
        t -= 1
    r, e = t >> es, t & ((1 << es) - 1)
    if r >= 0:
        k = r + 1
        rb, size = (((1 << k) - 1) << 1, k + 1) if k < rs else ((1 << rs) - 1, rs)
    else:
        k = -r
        rb, size = (1, k + 1) if k < rs else (0, rs)
    prefix = (rb << es) | e
    shift = n - 1 - size - es
    frac = x / Fraction(2) ** t - 1
    return round((prefix + frac) * Fraction(2) ** shift)


def _split(bits: int, spec: FormatSpec) -> tuple[str, str, str, str]:
    n, rs, es = spec.n, spec.rs, spec.es
    text = format(bits & spec.mask, f"0{n}b")
    body = text[1:]
    run = body[0]
    k = 0
    while k < rs and k < len(body) and body[k] == run:
        k += 1
    size = min(k + 1, rs, len(body))
    return text[0], body[:size], body[size:size + es], body[size + es:]


def format_fields(bits: int, spec: FormatSpec, sep: str = "|") -> str:
    """Sign, regime, exponent and fraction bits, e.g. ``0|000000|00000|0001``."""
    return sep.join(_split(bits, spec))


_BIN_RE = re.compile(r"^(0b)?[01 |_]+$")


def parse_pattern(text: str, spec: FormatSpec) -> int:
    """Read a pattern as hex (``0x...``) or as binary with optional separators."""
    t = text.strip().lower()
    if t.startswith("0x"):
        bits = int(t, 16)
    elif _BIN_RE.match(t):
        digits = re.sub(r"[ |_]", "", t.removeprefix("0b"))
        if len(digits) != spec.n and not t.startswith("0b"):
            raise ValueError(f"{text!r} has {len(digits)} bits, expected {spec.n}")
        bits = int(digits, 2)
    else:
        bits = int(t, 0)
    if not 0 <= bits <= spec.mask:
        raise FieldOutOfRange(f"{text!r} does not fit in {spec.n} bits")
    return bits
