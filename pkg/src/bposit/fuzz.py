"""Differential fuzzing of the codecs against each other and the netlists.

For each random pattern the checks are:

* posit family: fast decode equals reference decode, encoding the decoded
  fields gives the pattern back, and the gate-level decoder agrees with the
  behavioral one. Standard posits also go through the LBC codec.
* IEEE: decode then encode is the identity (NaN goes to the canonical NaN)
  and the gate-level decoder agrees.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .circuit.circuits import CircuitKind, _rand_bits, build_circuit, reference_outputs
from .circuit.netlist import simulate_batch
from .codec import decode_fast, decode_reference, encode_fields
from .core import FormatSpec
from .float_codec import FloatClass, canonical_nan, decode_float, encode_float
from .posit_codec import decode_standard, encode_standard

__all__ = ["FuzzReport", "fuzz_format"]

_CHUNK = 1 << 16


@dataclass
class FuzzReport:
    spec: FormatSpec
    count: int
    seed: int
    mismatches: Counter = field(default_factory=Counter)
    first: dict[str, int] = field(default_factory=dict)  # first failing pattern per check

    @property
    def ok(self) -> bool:
        return not any(self.mismatches.values())

    def as_dict(self) -> dict:
        return {"format": self.spec.name, "count": self.count, "seed": self.seed,
                "mismatches": dict(self.mismatches), "ok": self.ok,
                "first_failure": {k: hex(v) for k, v in self.first.items()}}

    def _fail(self, check: str, pattern: int) -> None:
        self.mismatches[check] += 1
        self.first.setdefault(check, pattern)


def _posit_checks(report: FuzzReport, patterns: list[int]) -> None:
    spec = report.spec
    b = spec.as_bposit()
    for p in patterns:
        ref = decode_reference(p, b)
        if decode_fast(p, b).fields != ref:
            report._fail("fast_vs_reference", p)
        if encode_fields(ref, b) != p:
            report._fail("encode_roundtrip", p)
        if spec.is_standard_posit:
            f = decode_standard(p, spec)
            if f != ref:
                report._fail("lbc_vs_reference", p)
            if encode_standard(f, spec) != p:
                report._fail("lbc_encode_roundtrip", p)


def _float_checks(report: FuzzReport, patterns: list[int]) -> None:
    spec = report.spec
    nan = canonical_nan(spec)
    for p in patterns:
        r = decode_float(p, spec)
        want = nan if r.cls is FloatClass.NAN else p
        if encode_float(r, spec) != want:
            report._fail("encode_roundtrip", p)


def fuzz_format(spec: FormatSpec, count: int, seed: int = 0,
                netlist: bool = True) -> FuzzReport:
    """Run ``count`` random patterns through every codec path of ``spec``."""
    rng = np.random.default_rng(seed)
    report = FuzzReport(spec, count, seed)
    if spec.is_posit_family:
        kind = CircuitKind.BPOSIT_DEC if not spec.is_standard_posit else CircuitKind.POSIT_DEC
        checks = _posit_checks
    else:
        kind, checks = CircuitKind.FLOAT_DEC, _float_checks
    net = build_circuit(kind, spec) if netlist else None
    bus = "bits" if kind is CircuitKind.FLOAT_DEC else "p"
    done = 0
    while done < count:
        m = min(_CHUNK, count - done)
        arr = _rand_bits(rng, spec.n, m)
        checks(report, arr.tolist())
        if net is not None:
            got = simulate_batch(net, {bus: arr})
            ref = reference_outputs(kind, spec, {bus: arr})
            bad = np.zeros(m, bool)
            for k in ref:
                bad |= got[k] != ref[k]
            for i in np.flatnonzero(bad):
                report._fail("netlist", int(arr[i]))
        done += m
    return report
