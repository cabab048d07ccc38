"""Format descriptions, decoded fields, exact values and posit ordering.

Everything else in the package checks itself against the definitions here:
a decoded posit is a :class:`FieldSet`, its meaning is the
:class:`ExactValue` returned by :func:`fields_to_value`, and the order of
bit patterns is plain signed-integer order.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import NamedTuple

__all__ = [
    "InvalidFormat", "FormatMismatch", "FieldOutOfRange", "InvalidRegimeValue",
    "FormatKind", "ValueClass", "FormatSpec", "FieldSet", "ExactValue",
    "BitPattern", "Extremes", "validate_format", "parse_format",
    "fields_to_value", "format_extremes", "compare_as_posit", "to_signed",
    "twos_complement", "IEEE_LAYOUTS",
]


class InvalidFormat(ValueError):
    pass


class FormatMismatch(ValueError):
    pass


class FieldOutOfRange(ValueError):
    pass


class InvalidRegimeValue(ValueError):
    pass


class FormatKind(enum.Enum):
    BPOSIT = "bposit"
    POSIT = "posit"
    IEEE = "ieee"


class ValueClass(enum.Enum):
    ZERO = "zero"
    NAR = "nar"
    REAL = "real"


# binary16/32/64: (exponent width, fraction width)
IEEE_LAYOUTS = {16: (5, 10), 32: (8, 23), 64: (11, 52)}


@dataclass(frozen=True)
class FormatSpec:
    """A number format layout.

    ``rs`` is the maximum regime size. Standard posits carry ``rs = n - 1``
    so that every posit-family routine can treat them as b-posits.
    """

    kind: FormatKind
    n: int
    rs: int = 0
    es: int = 0
    exp_width: int = 0
    frac_width: int = 0
    max_frac_bits: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        validate_format(self)
        if self.kind is FormatKind.IEEE:
            mfb = self.frac_width
        else:
            mfb = max(0, self.n - 3 - self.es)
        object.__setattr__(self, "max_frac_bits", mfb)

    @classmethod
    def bposit(cls, n: int, rs: int, es: int) -> FormatSpec:
        return cls(FormatKind.BPOSIT, n, rs, es)

    @classmethod
    def posit(cls, n: int, es: int) -> FormatSpec:
        return cls(FormatKind.POSIT, n, n - 1, es)

    @classmethod
    def ieee(cls, n: int) -> FormatSpec:
        if n not in IEEE_LAYOUTS:
            raise InvalidFormat(f"unsupported IEEE width {n}")
        ew, fw = IEEE_LAYOUTS[n]
        return cls(FormatKind.IEEE, n, exp_width=ew, frac_width=fw)

    @property
    def is_posit_family(self) -> bool:
        return self.kind is not FormatKind.IEEE

    @property
    def is_standard_posit(self) -> bool:
        """True when the regime cap never binds (rS = N-1)."""
        return self.is_posit_family and self.rs == self.n - 1

    def as_bposit(self) -> FormatSpec:
        """The b-posit with identical semantics."""
        if not self.is_posit_family:
            raise FormatMismatch(f"{self.name} is not a posit format")
        return FormatSpec.bposit(self.n, self.rs, self.es)

    @property
    def name(self) -> str:
        if self.kind is FormatKind.BPOSIT:
            return f"bposit:{self.n}:{self.rs}:{self.es}"
        if self.kind is FormatKind.POSIT:
            return f"posit:{self.n}:{self.es}"
        return f"ieee:{self.n}"

    def __str__(self):
        return self.name

    @property
    def mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def nar(self) -> int:
        """The NaR pattern, 10...0."""
        return 1 << (self.n - 1)


def validate_format(spec: FormatSpec) -> FormatSpec:
    """Check the layout invariants of ``spec`` and return it unchanged."""
    n = spec.n
    if spec.kind is FormatKind.IEEE:
        if IEEE_LAYOUTS.get(n) != (spec.exp_width, spec.frac_width):
            raise InvalidFormat(
                f"IEEE layout ({spec.exp_width}, {spec.frac_width}) for width {n} "
                "is not binary16/32/64")
        return spec
    if n > 64:
        raise InvalidFormat(f"N = {n} exceeds 64")
    if spec.es < 0:
        raise InvalidFormat(f"eS = {spec.es} is negative")
    if spec.kind is FormatKind.POSIT:
        if n < 4:
            raise InvalidFormat(f"posit width {n} < 4")
        if spec.rs != n - 1:
            raise InvalidFormat("a standard posit has rS = N-1")
        return spec
    if n < 4:
        raise InvalidFormat(f"b-posit width {n} < 4")
    if spec.rs > n - 1:
        raise InvalidFormat(f"rS = {spec.rs} > N-1 = {n - 1}")
    if spec.rs < 2:
        raise InvalidFormat(f"rS = {spec.rs} < 2")
    return spec


_FORMAT_RE = re.compile(r"^(bposit|posit|ieee):(\d+)(?::(\d+))?(?::(\d+))?$")


def parse_format(text: str) -> FormatSpec:
    """Parse ``bposit:N:rS:eS``, ``posit:N:eS`` or ``ieee:16|32|64``."""
    m = _FORMAT_RE.match(text.strip().lower())
    if not m:
        raise InvalidFormat(f"cannot parse format {text!r}")
    kind, *nums = m.groups()
    nums = [int(x) for x in nums if x is not None]
    try:
        if kind == "bposit" and len(nums) == 3:
            return FormatSpec.bposit(*nums)
        if kind == "posit" and len(nums) == 2:
            return FormatSpec.posit(*nums)
        if kind == "ieee" and len(nums) == 1:
            return FormatSpec.ieee(*nums)
    except TypeError as exc:
        raise InvalidFormat(str(exc)) from None
    raise InvalidFormat(f"wrong number of parameters in {text!r}")


class FieldSet(NamedTuple):
    """Decoded posit fields, read straight from the word.

    For negative patterns the fields are those of the raw bits; the value
    follows from the sign-aware formula in :func:`fields_to_value`.
    ``frac`` is an integer numerator over ``2**frac_bits``.
    """

    s: int
    r: int
    e: int
    frac: int
    frac_bits: int
    regime_size: int
    cls: ValueClass = ValueClass.REAL

    @property
    def f(self) -> Fraction:
        return Fraction(self.frac, 1 << self.frac_bits)

    @property
    def is_real(self) -> bool:
        return self.cls is ValueClass.REAL


ZERO_FIELDS = FieldSet(0, 0, 0, 0, 0, 0, ValueClass.ZERO)
NAR_FIELDS = FieldSet(1, 0, 0, 0, 0, 0, ValueClass.NAR)


@dataclass(frozen=True)
class ExactValue:
    """Exact binary value ``(-1)**negative * significand * 2**scale``.

    Canonical: the significand is odd, or zero for Zero and NaR.
    """

    cls: ValueClass
    negative: bool = False
    significand: int = 0
    scale: int = 0

    @classmethod
    def zero(cls) -> ExactValue:
        return cls(ValueClass.ZERO)

    @classmethod
    def nar(cls) -> ExactValue:
        return cls(ValueClass.NAR)

    @classmethod
    def from_scaled(cls, m: int, scale: int = 0) -> ExactValue:
        """Canonical value of ``m * 2**scale``."""
        if m == 0:
            return cls.zero()
        neg = m < 0
        m = -m if neg else m
        tz = (m & -m).bit_length() - 1
        return cls(ValueClass.REAL, neg, m >> tz, scale + tz)

    @classmethod
    def from_fraction(cls, x) -> ExactValue:
        x = Fraction(x)
        if x == 0:
            return cls.zero()
        den = x.denominator
        if den & (den - 1):
            raise ValueError(f"{x} is not a dyadic rational")
        return cls.from_scaled(x.numerator, -(den.bit_length() - 1))

    def to_fraction(self) -> Fraction:
        if self.cls is ValueClass.NAR:
            raise ValueError("NaR has no real value")
        if self.cls is ValueClass.ZERO:
            return Fraction(0)
        m = -self.significand if self.negative else self.significand
        if self.scale >= 0:
            return Fraction(m << self.scale)
        return Fraction(m, 1 << -self.scale)

    def __float__(self):
        if self.cls is ValueClass.NAR:
            return float("nan")
        return float(self.to_fraction())

    def __neg__(self):
        if self.cls is not ValueClass.REAL:
            return self
        return ExactValue(self.cls, not self.negative, self.significand, self.scale)

    def __abs__(self):
        if self.cls is not ValueClass.REAL:
            return self
        return ExactValue(self.cls, False, self.significand, self.scale)

    def _key(self):
        if self.cls is ValueClass.NAR:
            raise TypeError("NaR is unordered as a real value")
        return self.to_fraction()

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __gt__(self, other):
        return self._key() > other._key()

    def __ge__(self, other):
        return self._key() >= other._key()

    def floor_log2(self) -> int:
        return self.significand.bit_length() - 1 + self.scale

    def ceil_log2(self) -> int:
        return self.scale if self.significand == 1 else self.floor_log2() + 1

    def exact_str(self) -> str:
        """``+m·2^k`` form, e.g. ``+17·2^-196``."""
        if self.cls is ValueClass.ZERO:
            return "0"
        if self.cls is ValueClass.NAR:
            return "NaR"
        sign = "-" if self.negative else "+"
        return f"{sign}{self.significand}·2^{self.scale}"

    def sci_str(self, digits: int = 17) -> str:
        """Decimal scientific string with ``digits`` significant digits."""
        if self.cls is ValueClass.ZERO:
            return "0"
        if self.cls is ValueClass.NAR:
            return "NaR"
        x = self.to_fraction()
        with localcontext() as ctx:
            ctx.prec = digits
            d = Decimal(x.numerator) / Decimal(x.denominator)
        return f"{d:.{digits - 1}E}"

    def __str__(self):
        return self.exact_str()


class BitPattern(NamedTuple):
    bits: int
    spec: FormatSpec

    @classmethod
    def of(cls, bits: int, spec: FormatSpec) -> BitPattern:
        if not 0 <= bits <= spec.mask:
            raise FieldOutOfRange(f"{bits:#x} does not fit in {spec.n} bits")
        return cls(bits, spec)

    @property
    def signed(self) -> int:
        return to_signed(self.bits, self.spec.n)

    def hex(self) -> str:
        return f"0x{self.bits:0{(self.spec.n + 3) // 4}X}"


class Extremes(NamedTuple):
    minpos: ExactValue
    maxpos: ExactValue
    dynamic_range_log2: tuple[int, int]


def to_signed(bits: int, n: int) -> int:
    return bits - (1 << n) if bits >> (n - 1) else bits


def twos_complement(bits: int, n: int) -> int:
    return -bits & ((1 << n) - 1)


def fields_to_value(fields: FieldSet, spec: FormatSpec) -> ExactValue:
    """Exact value ``(1 - 3s + f) * 2**T`` with ``T = (1-2s)(r*2**eS + e + s)``."""
    if fields.cls is ValueClass.ZERO:
        return ExactValue.zero()
    if fields.cls is ValueClass.NAR:
        return ExactValue.nar()
    s = fields.s
    t = (1 - 2 * s) * ((fields.r << spec.es) + fields.e + s)
    fb = fields.frac_bits
    m = ((1 - 3 * s) << fb) + fields.frac
    return ExactValue.from_scaled(m, t - fb)


def format_extremes(spec: FormatSpec) -> Extremes:
    """minpos, maxpos and ``(floor log2 minpos, ceil log2 maxpos)``."""
    # local import: codec builds on this module
    from .codec import decode_reference

    if not spec.is_posit_family:
        raise FormatMismatch(f"{spec.name} is not a posit format")
    maxpos = fields_to_value(decode_reference(spec.nar - 1, spec), spec)
    minpos = fields_to_value(decode_reference(1, spec), spec)
    return Extremes(minpos, maxpos, (minpos.floor_log2(), maxpos.ceil_log2()))


def compare_as_posit(a: BitPattern, b: BitPattern) -> int:
    """-1, 0 or 1 by signed 2's-complement order; NaR sorts first."""
    if a.spec != b.spec:
        raise FormatMismatch(f"{a.spec.name} vs {b.spec.name}")
    if not a.spec.is_posit_family:
        raise FormatMismatch(f"{a.spec.name} is not a posit format")
    x, y = a.signed, b.signed
    return (x > y) - (x < y)
