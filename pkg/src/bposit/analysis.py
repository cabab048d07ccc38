"""Accuracy of number formats across magnitudes.

Decimals of accuracy for a true value ``x`` rounded to ``x_hat`` is
``-log10(|log10(x_hat / x)|)``, clamped to ``[0, N * log10(2)]``; exactly
representable values get the ceiling. Sweeps report one number per binade
``[2**b, 2**(b+1))``: the worst case over midpoints of adjacent
representable values near both ends of the binade and a set of random
points, or the mean over the random points alone. Each adjacent pair is
probed at its geometric midpoint and just below its arithmetic midpoint,
where round-to-nearest loses the most.

Random points depend only on the seed and the binade, never on the format,
so two formats with the same values in a binade get identical numbers.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .codec import round_real_to_bposit, value_of
from .core import ExactValue, FormatMismatch, FormatSpec, ValueClass, format_extremes
from .float_codec import float_value, round_real_to_float

__all__ = ["OutOfRange", "AccuracySample", "ZoneReport", "accuracy_ceiling",
           "decimal_accuracy", "binade_probes", "binade_decimals",
           "accuracy_sweep", "sweep_csv", "golden_zone_stats",
           "pattern_fraction_by_class", "pattern_fraction_by_decode",
           "dynamic_range_binades"]

_LOG10_2 = math.log10(2)


class OutOfRange(ValueError):
    pass


class AccuracySample(NamedTuple):
    format: FormatSpec
    log2_magnitude: int  # lower edge of the binade
    decimals: float


@dataclass(frozen=True)
class ZoneReport:
    spec: FormatSpec
    baseline: FormatSpec
    golden_zone_log2: tuple[int, int]
    pattern_fraction: Fraction
    fovea_log2: tuple[int, int]
    peak_decimals: float

    def as_dict(self) -> dict:
        return {
            "format": self.spec.name,
            "baseline": self.baseline.name,
            "golden_zone_log2": list(self.golden_zone_log2),
            "pattern_fraction": str(self.pattern_fraction),
            "pattern_fraction_float": float(self.pattern_fraction),
            "fovea_log2": list(self.fovea_log2),
            "peak_decimals": self.peak_decimals,
        }


def accuracy_ceiling(spec: FormatSpec) -> float:
    return spec.n * _LOG10_2


# --- rounding and values, either format family ---------------------------------

def _round(x: Fraction, spec: FormatSpec) -> int:
    if spec.is_posit_family:
        return round_real_to_bposit(x, spec)
    return round_real_to_float(x, spec)


def _value(bits: int, spec: FormatSpec) -> Fraction | None:
    """Exact value of a pattern; None for NaR, infinities and NaN."""
    if spec.is_posit_family:
        v = value_of(bits, spec)
        return None if v.cls is ValueClass.NAR else v.to_fraction()
    v = float_value(bits, spec)
    return None if v is None else v.to_fraction()


def _max_positive_pattern(spec: FormatSpec) -> int:
    if spec.is_posit_family:
        return spec.nar - 1
    return (((1 << spec.exp_width) - 1) << spec.frac_width) - 1


def _range(spec: FormatSpec) -> tuple[Fraction, Fraction]:
    """Smallest and largest positive finite values."""
    return _value(1, spec), _value(_max_positive_pattern(spec), spec)


def dynamic_range_binades(spec: FormatSpec) -> tuple[int, int]:
    """Binades ``[lo, hi)`` that hold at least one positive finite value."""
    if spec.is_posit_family:
        ext = format_extremes(spec)
        return ext.minpos.floor_log2(), ext.maxpos.floor_log2() + 1
    lo, hi = _range(spec)
    return (ExactValue.from_fraction(lo).floor_log2(),
            ExactValue.from_fraction(hi).floor_log2() + 1)


def _floor_pattern(x: Fraction, spec: FormatSpec) -> int:
    """Largest positive pattern whose value is <= x (0 if none)."""
    lo, hi = 0, _max_positive_pattern(spec)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if _value(mid, spec) <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo


def decimal_accuracy(x, spec: FormatSpec) -> float:
    """Decimals of accuracy when ``x`` is rounded into ``spec``.

    Raises :class:`OutOfRange` when ``|x|`` lies beyond what the format
    represents without saturating: outside ``[minpos, maxpos]`` for posits,
    at or past the overflow threshold for IEEE formats.
    """
    if isinstance(x, ExactValue):
        if x.cls is not ValueClass.REAL:
            raise OutOfRange("accuracy needs a finite nonzero value")
        x = x.to_fraction()
    x = Fraction(x)
    if x == 0:
        raise OutOfRange("accuracy needs a finite nonzero value")
    ceiling = accuracy_ceiling(spec)
    if spec.is_posit_family:
        lo, hi = _range(spec)
        if not lo <= abs(x) <= hi:
            raise OutOfRange(f"|x| outside [minpos, maxpos] of {spec.name}")
    xh = _value(_round(x, spec), spec)
    if xh is None:
        raise OutOfRange(f"x overflows {spec.name}")
    if xh == 0:
        return 0.0
    ratio = xh / x
    if ratio == 1:
        return ceiling
    err = abs(math.log1p(float(ratio - 1)) / math.log(10))
    if err == 0:
        return ceiling
    return min(ceiling, max(0.0, -math.log10(err)))


# --- sweeps -----------------------------------------------------------------------

def _geometric_mid(a: Fraction, b: Fraction, bits: int = 160) -> Fraction:
    """Rational within 2**-bits (relative) of sqrt(a * b)."""
    p = a * b
    scale = 2 * bits - (p.numerator.bit_length() - p.denominator.bit_length())
    scale += scale & 1
    if scale >= 0:
        root = isqrt((p.numerator << scale) // p.denominator)
    else:
        root = isqrt(p.numerator // (p.denominator << -scale))
    return Fraction(root) / Fraction(2) ** (scale // 2)


def _random_points(b: int, count: int, seed: int) -> list[Fraction]:
    rng = np.random.default_rng([seed & 0xFFFFFFFF, b & 0xFFFFFFFF])
    us = rng.integers(0, 1 << 52, count, dtype=np.int64).tolist()
    base = Fraction(2) ** b
    return [base * (1 + Fraction(u, 1 << 52)) for u in us]


def binade_probes(spec: FormatSpec, b: int, samples: int, seed: int,
                  pairs: int = 2) -> tuple[list[Fraction], list[Fraction]]:
    """(midpoint probes, random probes) inside binade ``b``."""
    lo_edge, hi_edge = Fraction(2) ** b, Fraction(2) ** (b + 1)
    mids = []
    top = _max_positive_pattern(spec)
    start = _floor_pattern(lo_edge, spec)
    end = _floor_pattern(hi_edge, spec)
    firsts = range(max(start, 1), min(start + pairs, top))
    lasts = range(max(end - pairs, start, 1), min(end, top))
    for p in sorted(set(firsts) | set(lasts)):
        a, c = _value(p, spec), _value(p + 1, spec)
        if a is None or c is None:
            continue
        # nearest rounding is worst just below the arithmetic midpoint; a gap
        # wider than the binade is clamped to the binade edge
        for m in (_geometric_mid(a, c), (a + c) / 2 * (1 - Fraction(1, 1 << 96))):
            m = min(max(m, lo_edge), hi_edge * (1 - Fraction(1, 1 << 96)))
            if a < m < c:
                mids.append(m)
    return mids, _random_points(b, samples, seed)


def binade_decimals(spec: FormatSpec, b: int, samples: int, seed: int,
                    stat: str = "worst") -> float:
    """Worst-case or mean decimals in binade ``b``; NaN if nothing is in range."""
    mids, rand = binade_probes(spec, b, samples, seed)
    probes = rand if stat == "mean" else mids + rand
    vals = []
    for x in probes:
        try:
            vals.append(decimal_accuracy(x, spec))
        except OutOfRange:
            continue
    if not vals:
        return math.nan
    if stat == "mean":
        return math.fsum(vals) / len(vals)
    if stat != "worst":
        raise ValueError(f"unknown statistic {stat!r}")
    return min(vals)


def accuracy_sweep(specs: Sequence[FormatSpec], samples_per_binade: int = 16,
                   seed: int = 0, lo: int | None = None, hi: int | None = None,
                   stat: str = "worst") -> list[AccuracySample]:
    """One sample per format and binade in ``[lo, hi)``.

    The default range is the union of the formats' dynamic ranges. Binades
    where a format has no in-range probe are left out for that format.
    """
    if samples_per_binade < 1:
        raise ValueError("samples_per_binade must be at least 1")
    ranges = [dynamic_range_binades(s) for s in specs]
    lo = min(r[0] for r in ranges) if lo is None else lo
    hi = max(r[1] for r in ranges) if hi is None else hi
    out = []
    for spec in specs:
        for b in range(lo, hi):
            d = binade_decimals(spec, b, samples_per_binade, seed, stat)
            if not math.isnan(d):
                out.append(AccuracySample(spec, b, d))
    return out


def sweep_csv(samples: Iterable[AccuracySample], *, seed: int, samples_per_binade: int,
              stat: str = "worst") -> str:
    buf = io.StringIO()
    from . import __version__
    buf.write(f"# meta: version={__version__} seed={seed} "
              f"samples_per_binade={samples_per_binade} stat={stat} "
              "metric=-log10(|log10(xhat/x)|) ceiling=N*log10(2) "
              "log2_magnitude=binade lower edge\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["format", "log2_magnitude", f"decimals_{stat}"])
    for s in samples:
        w.writerow([s.format.name, s.log2_magnitude, f"{s.decimals:.6f}"])
    return buf.getvalue()


# --- golden zone and fovea ------------------------------------------------------------

def _contiguous_around_zero(ok: dict[int, bool]) -> tuple[int, int]:
    """Widest run of passing binades containing binades -1 and 0."""
    if not (ok.get(0) and ok.get(-1)):
        return 0, 0
    lo = -1
    while ok.get(lo - 1):
        lo -= 1
    hi = 0
    while ok.get(hi + 1):
        hi += 1
    return lo, hi + 1


def pattern_fraction_by_class(spec: FormatSpec, lo: int, hi: int) -> Fraction:
    """Share of all patterns whose scale T lies in ``[lo, hi)``.

    Counts (regime, exponent) classes: each holds ``2**fraction_bits``
    patterns per sign. The all-zero body of the most negative regime is
    Zero, not a value, and is left out.
    """
    if not spec.is_posit_family:
        raise FormatMismatch(f"{spec.name} is not a posit format")
    n, rs, es = spec.n, spec.rs, spec.es
    count = 0
    for r in range(-rs, rs):
        k = r + 1 if r >= 0 else -r
        size = min(k + 1, rs)
        avail = n - 1 - size
        fb = max(0, avail - es)
        ghost = max(0, es - avail)
        for e in range(0, 1 << es, 1 << ghost):
            t = (r << es) + e
            if lo <= t < hi:
                count += 1 << fb
                if r == -rs and e == 0:
                    count -= 1
    # negatives mirror positives
    return Fraction(2 * count, 1 << n)


def pattern_fraction_by_decode(spec: FormatSpec, lo: int, hi: int) -> Fraction:
    """Same share by decoding every pattern; for small N only."""
    if spec.n > 24:
        raise ValueError("exhaustive decode is limited to N <= 24")
    count = 0
    for p in range(1 << spec.n):
        v = value_of(p, spec)
        if v.cls is ValueClass.REAL and lo <= abs(v).floor_log2() < hi:
            count += 1
    return Fraction(count, 1 << spec.n)


def golden_zone_stats(spec: FormatSpec, baseline: FormatSpec, *, samples_per_binade: int = 8,
                      seed: int = 0, tol: float = 1e-9) -> ZoneReport:
    """Golden zone against an IEEE baseline, its pattern share and the fovea.

    The golden zone is the run of binades around 1 where the worst-case
    decimals of ``spec`` are at least those of ``baseline``; the fovea is
    the run where they equal the format's peak.
    """
    if not spec.is_posit_family or baseline.is_posit_family:
        raise FormatMismatch("need a posit-family format and an IEEE baseline")
    lo, hi = dynamic_range_binades(spec)
    mine = {b: binade_decimals(spec, b, samples_per_binade, seed) for b in range(lo, hi)}
    ok = {}
    for b, d in mine.items():
        base = binade_decimals(baseline, b, samples_per_binade, seed)
        ok[b] = math.isnan(base) or d >= base - tol
    zone = _contiguous_around_zero(ok)
    peak = max(v for v in mine.values() if not math.isnan(v))
    fovea = _contiguous_around_zero({b: v >= peak - tol for b, v in mine.items()})
    frac = pattern_fraction_by_class(spec, *zone)
    return ZoneReport(spec, baseline, zone, frac, fovea, peak)
