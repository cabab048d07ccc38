"""Command-line interface: ``bposit <subcommand> ...`` or ``python3 -m bposit``.

Formats are written ``bposit:N:rS:eS``, ``posit:N:eS`` or ``ieee:16|32|64``.
Every subcommand is deterministic given ``--seed``. With ``--json`` the
output, and any error, is a single JSON document.
"""

from __future__ import annotations

import argparse
import json
import signal
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .analysis import (
    OutOfRange, accuracy_sweep, decimal_accuracy, golden_zone_stats, sweep_csv,
)
from .circuit import CircuitKind, build_circuit, default_spec, metrics, to_dot, to_json
from .codec import decode_fast, format_fields, parse_pattern, round_real_to_bposit, value_of
from .core import ExactValue, FormatSpec, ValueClass, parse_format, to_signed
from .float_codec import decode_float, float_value, round_real_to_float
from .fuzz import fuzz_format

__all__ = ["main", "build_parser"]

TABLE_LIMIT = 16


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    json_errors = False

    def error(self, message):
        if _Parser.json_errors:
            print(json.dumps({"error": message, "type": "usage"}))
            sys.exit(2)
        super().error(message)


# --- shared helpers ---------------------------------------------------------------

def _formats(text: str) -> list[FormatSpec]:
    return [parse_format(t) for t in text.split(",") if t.strip()]


def _value(bits: int, spec: FormatSpec) -> ExactValue | None:
    return value_of(bits, spec) if spec.is_posit_family else float_value(bits, spec)


def _fields(bits: int, spec: FormatSpec) -> str:
    if spec.is_posit_family:
        return format_fields(bits, spec)
    text = format(bits, f"0{spec.n}b")
    ew = spec.exp_width
    return f"{text[0]}|{text[1:1 + ew]}|{text[1 + ew:]}"


def _value_strings(bits: int, spec: FormatSpec, digits: int = 17) -> tuple[str, str]:
    v = _value(bits, spec)
    if v is None:
        r = decode_float(bits, spec)
        name = r.cls.name.lower()
        return (f"-{name}" if r.sign and name == "inf" else name), name
    return v.exact_str(), v.sci_str(digits)


def _round(x: Fraction, spec: FormatSpec) -> int:
    return round_real_to_bposit(x, spec) if spec.is_posit_family else round_real_to_float(x, spec)


def _describe(bits: int, spec: FormatSpec, digits: int = 17) -> dict:
    exact, sci = _value_strings(bits, spec, digits)
    row = {"format": spec.name, "hex": f"0x{bits:0{(spec.n + 3) // 4}x}",
           "fields": _fields(bits, spec), "exact": exact, "value": sci}
    if spec.is_posit_family:
        d = decode_fast(bits, spec.as_bposit())
        f = d.fields
        row["class"] = f.cls.name.lower()
        if f.is_real:
            row.update(sign=f.s, regime=f.r, exponent=f.e, fraction_bits=f.frac_bits,
                       regime_size=f.regime_size,
                       effective_exponent=(1 - 2 * f.s) * ((f.r << spec.es) + f.e + f.s))
        if spec.kind.name == "BPOSIT":
            row["one_hot"] = "".join(map(str, d.one_hot))
    else:
        row["class"] = decode_float(bits, spec).cls.name.lower()
    return row


def _emit(args, doc, text: str) -> None:
    if args.json:
        print(json.dumps(doc, indent=1))
    else:
        print(text)


# --- subcommands --------------------------------------------------------------------

def cmd_inspect(args) -> int:
    spec = parse_format(args.format)
    rows = [_describe(parse_pattern(p, spec), spec, args.digits) for p in args.patterns]
    lines = []
    for r in rows:
        extra = ""
        if "regime" in r:
            extra = f"  r={r['regime']} e={r['exponent']} T={r['effective_exponent']}"
        lines.append(f"{r['hex']}  {r['fields']}  {r['exact']}  {r['value']}  [{r['class']}]{extra}")
    _emit(args, rows if len(rows) > 1 else rows[0], "\n".join(lines))
    return 0


def cmd_convert(args) -> int:
    target = parse_format(args.to)
    rows = []
    for text in args.values:
        if args.source:
            src = parse_format(args.source)
            bits = parse_pattern(text, src)
            v = _value(bits, src)
            if v is None or v.cls is ValueClass.NAR:
                out = target.nar if target.is_posit_family else None
                if out is None:
                    raise CliError(f"{text} has no real value to convert")
                rows.append(_describe(out, target, args.digits) | {"input": text})
                continue
            x = v.to_fraction()
        else:
            try:
                x = Fraction(text)
            except ValueError:
                raise CliError(f"cannot parse number {text!r}") from None
        out = _round(x, target)
        row = _describe(out, target, args.digits) | {"input": text}
        vh = _value(out, target)
        if x != 0 and vh is not None and vh.cls is ValueClass.REAL:
            row["relative_error"] = float(abs(vh.to_fraction() - x) / abs(x))
            try:
                row["decimals"] = decimal_accuracy(x, target)
            except OutOfRange:
                row["decimals"] = None
        rows.append(row)
    lines = [f"{r['input']} -> {r['hex']}  {r['fields']}  {r['value']}"
             + (f"  rel.err {r['relative_error']:.3e}" if "relative_error" in r else "")
             for r in rows]
    _emit(args, rows if len(rows) > 1 else rows[0], "\n".join(lines))
    return 0


def cmd_table(args) -> int:
    spec = parse_format(args.format)
    if spec.n > TABLE_LIMIT:
        raise CliError(f"table is limited to N <= {TABLE_LIMIT}")
    # ascending as signed integers: NaR (or -NaN/-inf for floats) first
    order = sorted(range(1 << spec.n), key=lambda p: to_signed(p, spec.n))
    rows = [_describe(p, spec, args.digits) for p in order]
    text = "\n".join(f"{r['hex']}  {r['fields']}  {r['exact']}  {r['value']}" for r in rows)
    _emit(args, rows, text)
    return 0


def cmd_sweep(args) -> int:
    specs = _formats(args.formats)
    samples = accuracy_sweep(specs, args.samples, args.seed, args.lo, args.hi, args.stat)
    text = sweep_csv(samples, seed=args.seed, samples_per_binade=args.samples, stat=args.stat)
    if args.out:
        Path(args.out).write_text(text)
        if args.json:
            print(json.dumps({"out": args.out, "rows": len(samples)}))
        return 0
    if args.json:
        print(json.dumps([{"format": s.format.name, "log2_magnitude": s.log2_magnitude,
                           "decimals": s.decimals} for s in samples]))
    else:
        sys.stdout.write(text)
    return 0


def cmd_zones(args) -> int:
    docs, lines = [], []
    for spec in _formats(args.formats):
        base = parse_format(args.baseline) if args.baseline else FormatSpec.ieee(spec.n)
        r = golden_zone_stats(spec, base, samples_per_binade=args.samples, seed=args.seed)
        docs.append(r.as_dict())
        (glo, ghi), (flo, fhi) = r.golden_zone_log2, r.fovea_log2
        lines.append(f"{spec.name} vs {base.name}: golden zone [2^{glo}, 2^{ghi}) "
                     f"holds {r.pattern_fraction} = {float(r.pattern_fraction):.6f} of patterns; "
                     f"fovea [2^{flo}, 2^{fhi}) at {r.peak_decimals:.4f} decimals")
    _emit(args, docs if len(docs) > 1 else docs[0], "\n".join(lines))
    return 0


def cmd_circuit_report(args) -> int:
    kinds = [CircuitKind(k) for k in args.kinds.split(",")] if args.kinds else list(CircuitKind)
    sizes = [int(x) for x in args.sizes.split(",")]
    rows = []
    for kind in kinds:
        for n in sizes:
            spec = parse_format(args.format) if args.format else default_spec(kind, n)
            if args.format and spec.n != n:
                continue
            net = build_circuit(kind, spec)
            m = metrics(net)
            rows.append({"kind": kind.value, "format": spec.name, "n": spec.n} | m.as_dict())
            if args.export:
                out = Path(args.export)
                out.mkdir(parents=True, exist_ok=True)
                stem = f"{kind.value}-{spec.name.replace(':', '_')}"
                (out / f"{stem}.json").write_text(to_json(net))
                if args.dot:
                    (out / f"{stem}.dot").write_text(to_dot(net))
    head = f"{'kind':<11}{'format':<16}{'gates':>7}{'depth':>7}  mux inputs"
    body = [f"{r['kind']:<11}{r['format']:<16}{r['gate_count']:>7}{r['depth']:>7}  "
            + ",".join(f"{k}x{v}" for k, v in r["mux_input_counts"].items()) for r in rows]
    _emit(args, rows, "\n".join([head, *body]))
    return 0


def cmd_fuzz(args) -> int:
    docs, lines = [], []
    for spec in _formats(args.formats):
        t0 = time.perf_counter()
        r = fuzz_format(spec, args.n, args.seed, netlist=not args.no_netlist)
        docs.append(r.as_dict())
        total = sum(r.mismatches.values())
        lines.append(f"{spec.name}: {args.n} patterns, {total} mismatches "
                     f"({time.perf_counter() - t0:.1f} s)"
                     + "".join(f"\n  {k}: {v} (first {r.first[k]:#x})"
                               for k, v in r.mismatches.items() if v))
    _emit(args, docs if len(docs) > 1 else docs[0], "\n".join(lines))
    return 0 if all(d["ok"] for d in docs) else 1


# --- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="bposit", description="Bounded posit codecs, circuits and accuracy analysis.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("inspect", parents=[common], help="field breakdown and exact value")
    s.add_argument("--format", required=True)
    s.add_argument("--digits", type=int, default=17)
    s.add_argument("patterns", nargs="+", help="hex 0x... or binary")
    s.set_defaults(func=cmd_inspect)

    s = sub.add_parser("convert", parents=[common], help="round numbers or patterns into a format")
    s.add_argument("--to", "--format", dest="to", required=True)
    s.add_argument("--from", dest="source", help="read the inputs as patterns of this format")
    s.add_argument("--digits", type=int, default=17)
    s.add_argument("values", nargs="+")
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("table", parents=[common], help="every pattern of a small format, in order")
    s.add_argument("--format", required=True)
    s.add_argument("--digits", type=int, default=8)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("sweep", parents=[common], help="decimals of accuracy per binade, as CSV")
    s.add_argument("--formats", required=True, help="comma-separated formats")
    s.add_argument("--samples", type=int, default=16, help="random probes per binade")
    s.add_argument("--stat", choices=("worst", "mean"), default="worst")
    s.add_argument("--lo", type=int, help="first binade (default: widest dynamic range)")
    s.add_argument("--hi", type=int, help="last binade, exclusive")
    s.add_argument("--out", help="write CSV here instead of stdout")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("zones", parents=[common], help="golden zone and fovea")
    s.add_argument("--formats", "--format", dest="formats", required=True)
    s.add_argument("--baseline", help="IEEE baseline (default: same width)")
    s.add_argument("--samples", type=int, default=8)
    s.set_defaults(func=cmd_zones)

    s = sub.add_parser("circuit-report", parents=[common], help="gate counts and depths")
    s.add_argument("--kinds", help="comma-separated: " + ",".join(k.value for k in CircuitKind))
    s.add_argument("--sizes", default="16,32,64")
    s.add_argument("--format", help="use this format instead of the per-family default")
    s.add_argument("--export", help="directory for JSON netlists")
    s.add_argument("--dot", action="store_true", help="also write Graphviz files")
    s.set_defaults(func=cmd_circuit_report)

    s = sub.add_parser("fuzz", parents=[common], help="differential codec and netlist fuzzing")
    s.add_argument("--formats", required=True)
    s.add_argument("--n", type=int, default=100_000)
    s.add_argument("--no-netlist", action="store_true")
    s.set_defaults(func=cmd_fuzz)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if hasattr(signal, "SIGPIPE"):
        signal.signal(signal.SIGPIPE, signal.SIG_DFL)  # quiet exit under `| head`
    _Parser.json_errors = "--json" in argv
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError, OverflowError) as exc:
        if args.json:
            print(json.dumps({"error": str(exc), "type": type(exc).__name__}))
        else:
            print(f"bposit {args.command}: error: {exc}", file=sys.stderr)
        return 1
