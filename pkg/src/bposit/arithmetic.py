"""Exact add/multiply with one final rounding, and the quire.

Values are unpacked to sign, significand in [1, 2) and a binary scale,
combined exactly, and rounded once by :func:`round_real_to_bposit`.

The quire is a fixed-point two's-complement register of
``32 + 4 * rS * 2**eS`` bits: sign, 31 carry-guard bits, ``2 * rS * 2**eS``
integer bits and as many fraction bits. Products of two values near
``minpos`` carry bits below the quire's LSB (b-posit minpos has fraction
bits of its own). Those bits are rounded to nearest-even on entry and the
quire remembers it lost something in ``inexact``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .codec import round_real_to_bposit, value_of
from .core import (
    ExactValue, FormatMismatch, FormatSpec, InvalidFormat, ValueClass,
    twos_complement,
)

__all__ = ["Unpacked", "unpack", "add_exact", "mul_exact", "round_unpacked",
           "add", "mul", "Quire", "quire_size_of", "quire_accumulate",
           "quire_read", "fused_dot", "naive_dot", "negate"]


class Unpacked(NamedTuple):
    """``value = (-1)**sign * significand * 2**t`` with significand in [1, 2)."""

    cls: ValueClass
    sign: int = 0
    significand: Fraction = Fraction(0)
    t: int = 0

    @classmethod
    def from_exact(cls, v: ExactValue) -> Unpacked:
        if v.cls is not ValueClass.REAL:
            return cls(v.cls)
        m = v.significand
        shift = m.bit_length() - 1
        return cls(ValueClass.REAL, int(v.negative), Fraction(m, 1 << shift),
                   v.scale + shift)

    @classmethod
    def from_fraction(cls, x: Fraction) -> Unpacked:
        return cls.from_exact(ExactValue.from_fraction(x))

    def to_fraction(self) -> Fraction:
        if self.cls is ValueClass.NAR:
            raise ValueError("NaR has no real value")
        if self.cls is ValueClass.ZERO:
            return Fraction(0)
        mag = self.significand * Fraction(2) ** self.t
        return -mag if self.sign else mag

    @property
    def is_nar(self) -> bool:
        return self.cls is ValueClass.NAR


_NAR = Unpacked(ValueClass.NAR)


def unpack(bits: int, spec: FormatSpec) -> Unpacked:
    if not spec.is_posit_family:
        raise FormatMismatch(f"{spec.name} is not a posit format")
    return Unpacked.from_exact(value_of(bits, spec))


def add_exact(a: Unpacked, b: Unpacked) -> Unpacked:
    if a.is_nar or b.is_nar:
        return _NAR
    return Unpacked.from_fraction(a.to_fraction() + b.to_fraction())


def mul_exact(a: Unpacked, b: Unpacked) -> Unpacked:
    if a.is_nar or b.is_nar:
        return _NAR
    if a.cls is ValueClass.ZERO or b.cls is ValueClass.ZERO:
        return Unpacked(ValueClass.ZERO)
    sig = a.significand * b.significand
    t = a.t + b.t
    if sig >= 2:
        sig /= 2
        t += 1
    return Unpacked(ValueClass.REAL, a.sign ^ b.sign, sig, t)


def round_unpacked(u: Unpacked, spec: FormatSpec) -> int:
    if u.is_nar:
        return spec.nar
    return round_real_to_bposit(u.to_fraction(), spec)


def add(a: int, b: int, spec: FormatSpec) -> int:
    return round_unpacked(add_exact(unpack(a, spec), unpack(b, spec)), spec)


def mul(a: int, b: int, spec: FormatSpec) -> int:
    return round_unpacked(mul_exact(unpack(a, spec), unpack(b, spec)), spec)


def quire_size_of(spec: FormatSpec) -> int:
    if not spec.is_posit_family:
        raise InvalidFormat(f"{spec.name} has no quire")
    return 32 + 4 * spec.rs * (1 << spec.es)


def _quire_frac_bits(spec: FormatSpec) -> int:
    return 2 * spec.rs * (1 << spec.es)


@lru_cache(maxsize=1 << 17)
def _term(bits: int, spec: FormatSpec) -> tuple[ValueClass, bool, int, int]:
    v = value_of(bits, spec)
    return v.cls, v.negative, v.significand, v.scale


@dataclass(frozen=True)
class Quire:
    """Immutable quire; :meth:`accumulate` returns an updated copy.

    ``acc`` is the register contents as an unsigned ``size``-bit integer.
    """

    spec: FormatSpec
    acc: int = 0
    nar: bool = False
    inexact: bool = False

    @classmethod
    def empty(cls, spec: FormatSpec) -> Quire:
        quire_size_of(spec)
        return cls(spec)

    @property
    def size(self) -> int:
        return quire_size_of(self.spec)

    @property
    def frac_bits(self) -> int:
        return _quire_frac_bits(self.spec)

    @property
    def signed_acc(self) -> int:
        q = self.size
        return self.acc - (1 << q) if self.acc >> (q - 1) else self.acc

    def value(self) -> Fraction:
        return Fraction(self.signed_acc, 1 << self.frac_bits)

    def accumulate(self, a: int, b: int) -> Quire:
        """Add the exact product of patterns ``a`` and ``b``."""
        return self.accumulate_many(((a, b),))

    def accumulate_many(self, pairs: Iterable[tuple[int, int]]) -> Quire:
        if self.nar:
            return self
        spec, fb = self.spec, self.frac_bits
        acc, inexact = self.signed_acc, self.inexact
        for a, b in pairs:
            ca, na, ma, sa = _term(a, spec)
            cb, nb, mb, sb = _term(b, spec)
            if ca is ValueClass.NAR or cb is ValueClass.NAR:
                return replace(self, nar=True)
            if ca is ValueClass.ZERO or cb is ValueClass.ZERO:
                continue
            m = ma * mb
            scale = sa + sb + fb
            if scale >= 0:
                fixed = m << scale
            else:
                # bits below the quire LSB: round to nearest, ties to even
                sh = -scale
                fixed = m >> sh
                rem = m & ((1 << sh) - 1)
                half = 1 << (sh - 1)
                if rem > half or (rem == half and fixed & 1):
                    fixed += 1
                inexact = inexact or rem != 0
            acc += -fixed if na != nb else fixed
        return replace(self, acc=acc & ((1 << self.size) - 1), inexact=inexact)

    def read(self) -> int:
        """Round the contents once to the quire's format."""
        if self.nar:
            return self.spec.nar
        return round_real_to_bposit(self.value(), self.spec)

    def hex(self) -> str:
        digits = (self.size + 3) // 4
        return f"0x{self.acc:0{digits}x}"


def quire_accumulate(q: Quire, a: int, b: int) -> Quire:
    return q.accumulate(a, b)


def quire_read(q: Quire) -> int:
    return q.read()


def fused_dot(xs: Sequence[int], ys: Sequence[int], spec: FormatSpec) -> int:
    return Quire.empty(spec).accumulate_many(zip(xs, ys, strict=True)).read()


def naive_dot(xs: Sequence[int], ys: Sequence[int], spec: FormatSpec) -> int:
    """Dot product rounded after every multiply and every add."""
    acc = 0
    for a, b in zip(xs, ys, strict=True):
        acc = add(acc, mul(a, b, spec), spec)
    return acc


def negate(bits: int, spec: FormatSpec) -> int:
    """Exact negation; Zero and NaR are fixed points."""
    return twos_complement(bits, spec.n)
