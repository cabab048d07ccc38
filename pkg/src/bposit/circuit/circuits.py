"""Gate-level decoders and encoders for b-posits, posits and IEEE floats.

Each builder returns a :class:`Netlist` whose buses mirror a behavioral
routine, and :func:`reference_outputs` evaluates that routine on the same
inputs so the two can be compared bit for bit.

Bus conventions (all LSB first):

* b-posit decoder ``p`` -> ``s, regime, exponent, fraction, exp_cin,
  one_hot, zero, nar`` as in :func:`bposit.codec.decode_fast`; ``one_hot``
  packs element 0 in its MSB so it prints like the size table.
* b-posit encoder ``s, regime, exponent, fraction, zero, nar`` -> ``p``, the
  inputs of :func:`bposit.codec.encode_hardware`.
* posit decoder ``p`` -> the raw word fields of
  :func:`bposit.posit_codec.decode_standard`, fraction left-aligned.
* posit encoder: same inputs as the b-posit encoder, checked against
  :func:`bposit.posit_codec.encode_standard_signed`.
* float decoder ``bits`` -> class flags, ``sign, exp, sig`` of
  :class:`RecodedFloat`; the encoder takes the same buses back.
"""

from __future__ import annotations

import enum

import numpy as np

from ..codec import decode_fast, encode_hardware, regime_width
from ..core import FormatSpec, ValueClass
from ..float_codec import FloatClass, RecodedFloat, decode_float, encode_float
from ..posit_codec import decode_standard, encode_standard_signed
from .netlist import Builder, Netlist, simulate_batch

__all__ = ["CircuitKind", "UnsupportedKindForSpec", "build_circuit",
           "reference_outputs", "domain_inputs", "random_inputs",
           "posit_regime_width", "mismatches", "default_spec"]


class UnsupportedKindForSpec(ValueError):
    pass


class CircuitKind(enum.Enum):
    BPOSIT_DEC = "bposit-dec"
    BPOSIT_ENC = "bposit-enc"
    POSIT_DEC = "posit-dec"
    POSIT_ENC = "posit-enc"
    FLOAT_DEC = "float-dec"
    FLOAT_ENC = "float-enc"

    @property
    def family(self) -> str:
        return self.value.split("-")[0]


def posit_regime_width(n: int) -> int:
    """Bits of the signed regime of a standard posit, r in [-(N-1), N-2]."""
    return (n - 2).bit_length() + 1


def _check(kind: CircuitKind, spec: FormatSpec) -> None:
    fam = kind.family
    ok = ((fam == "bposit" and spec.is_posit_family)
          or (fam == "posit" and spec.is_standard_posit)
          or (fam == "float" and not spec.is_posit_family))
    if not ok:
        raise UnsupportedKindForSpec(f"{kind.value} cannot be built for {spec.name}")


def build_circuit(kind: CircuitKind | str, spec: FormatSpec) -> Netlist:
    kind = CircuitKind(kind)
    _check(kind, spec)
    return _BUILDERS[kind](spec)


# --- b-posit ----------------------------------------------------------------

def _bposit_decoder(spec: FormatSpec) -> Netlist:
    n, rs, es = spec.n, spec.rs, spec.es
    b = Builder(f"bposit-dec {spec.name}")
    p = b.input("p", n)
    s, run = p[n - 1], p[n - 2]

    # exception check in parallel with everything else
    body_zero = b.nor_reduce(p[:n - 1])
    zero = b.and_(body_zero, b.not_(s))
    nar = b.and_(body_zero, s)
    b.note("exception_check", [zero, nar], width=n - 1)

    # XOR layer, then the priority one-hot over rS entries
    taps = [b.xor(p[n - 3 - i], run) for i in range(rs - 1)]
    inv = [b.not_(t) for t in taps]
    hot = [b.and_reduce([taps[i], *inv[:i]]) for i in range(rs - 1)]
    hot.append(b.and_reduce(inv))
    b.note("one_hot", hot, inputs=rs - 1, lines=rs)

    # the last two entries share a tap, so the mux has rS-1 data inputs
    lines = hot[:rs - 2] + [b.or_(hot[rs - 2], hot[rs - 1])]
    sel = b.one_hot_to_binary(lines)
    index = b.one_hot_to_binary(hot)

    width = max(n - 3, es)
    mfb = width - es
    cands, fzs = [], []
    for i in range(rs - 1):
        below = n - 1 - (i + 2)
        off = width - below
        cands.append([p[j - off] if j >= off else b.zero for j in range(width)])
        fzs.append([b.nor_reduce(p[:below - es]) if below > es else b.one])
    data = b.mux_k(sel, cands)
    b.note("field_mux", data, inputs=rs - 1, width=width)
    frac_zero = b.mux_k(sel, fzs)[0]

    raw_exp = data[mfb:]
    exponent = b.xor_bus(s, raw_exp)
    exp_cin = b.and_(s, frac_zero)

    rw = regime_width(rs)
    idx = (index + [b.zero] * rw)[:rw]
    flip = b.xnor(run, s)
    regime = b.xor_bus(flip, idx)
    b.note("priority_encoder", regime, inputs=rs)

    b.output("s", [s])
    b.output("regime", regime)
    b.output("exponent", exponent)
    b.output("fraction", data[:mfb])
    b.output("exp_cin", [exp_cin])
    b.output("one_hot", list(reversed(hot)))
    b.output("zero", [zero])
    b.output("nar", [nar])
    return b.build()


def _bposit_encoder(spec: FormatSpec) -> Netlist:
    n, rs, es = spec.n, spec.rs, spec.es
    mfb = spec.max_frac_bits
    rw = regime_width(rs)
    b = Builder(f"bposit-enc {spec.name}")
    s = b.input("s", 1)[0]
    regime = b.input("regime", rw)
    exponent = b.input("exponent", es)
    fraction = b.input("fraction", mfb)
    zero = b.input("zero", 1)[0]
    nar = b.input("nar", 1)[0]

    msb = regime[rw - 1]
    run = b.xnor(msb, s)
    j = b.xor_bus(msb, regime[:rw - 1])
    b.note("fold_xor", j, count=rw - 1)
    dec = b.decoder(j, rs)
    b.note("regime_decoder", dec, inputs=rw - 1, lines=rs)
    # intermediate string is '0' followed by the decoder lines
    string = [run] + [b.xor(dec[m - 1], run) for m in range(1, rs)]

    # Two packings run side by side: A without the 2's-complement carry,
    # B with it (and with the regime bump when the exponent overflows).
    # Whether the fraction is zero arrives last and only picks between them.
    exp_x = b.xor_bus(s, exponent)
    exp_c, overflow = b.incrementer(exp_x, s)
    tail_len = n - 1

    def pack(exp_bits):
        body = list(reversed(exp_bits)) + list(reversed(fraction))  # MSB first
        cands = []
        for i in range(rs - 1):
            k = i + 2
            col = [string[m] if m < k else
                   (body[m - k] if m - k < len(body) else b.zero)
                   for m in range(tail_len)]
            cands.append(list(reversed(col)))
        return list(reversed(b.mux_k(j, cands)))

    packed_a = pack(exp_x)
    b.note("packing_mux", packed_a, inputs=rs - 1, width=tail_len)
    packed_b = pack(exp_c)

    # exponent overflow: the regime grows by one and the rest is zero
    with_carry = []
    for m in range(tail_len):
        if m < rs:
            thermo = b.one if m < 2 else b.or_reduce(dec[m - 1:])
            ovf = b.mux(run, dec[m], thermo)
            with_carry.append(b.mux(overflow, packed_b[m], ovf))
        else:
            with_carry.append(packed_b[m])
    b.note("overflow_mux", with_carry[:rs], inputs=2)
    frac_any = b.or_reduce(fraction)
    tail = b.mux_bus(frac_any, with_carry, packed_a)

    en = b.not_(b.or_(zero, nar))
    word = b.and_bus(en, list(reversed(tail)))
    word.append(b.or_(nar, b.and_(en, s)))
    b.output("p", word)
    return b.build()


# --- standard posit -----------------------------------------------------------

def _posit_decoder(spec: FormatSpec) -> Netlist:
    n, es = spec.n, spec.es
    w = n - 2
    b = Builder(f"posit-dec {spec.name}")
    p = b.input("p", n)
    s, run = p[n - 1], p[n - 2]

    body_zero = b.nor_reduce(p[:n - 1])
    zero = b.and_(body_zero, b.not_(s))
    nar = b.and_(body_zero, s)
    b.note("exception_check", [zero, nar], width=n - 1)

    x = b.xor_bus(run, p[:w])
    # pad with a one below the LSB so the count never needs a carry
    count, _ = b.lzc([b.one] + x)
    b.note("lbc", count, width=w + 1)  # bits N-3..0 after the XOR, plus the run bit's pad
    shifted = b.shift_left(p[:w], count)
    b.note("shifter", shifted, width=w, stages=len(count))
    rem = shifted[:w - 1]  # drop the terminator, now the MSB

    rwp = posit_regime_width(n)
    mag = (count + [b.zero] * rwp)[:rwp - 1] + [b.zero]
    regime = b.xor_bus(b.not_(run), mag)

    rwid = n - 3
    mfb = spec.max_frac_bits
    if rwid >= es:
        exponent = rem[mfb:]
        fraction = rem[:mfb]
    else:
        exponent = [b.zero] * (es - rwid) + rem
        fraction = []

    live = b.not_(body_zero)
    b.output("s", [s])
    b.output("regime", b.and_bus(live, regime))
    b.output("exponent", b.and_bus(live, exponent))
    b.output("fraction", b.and_bus(live, fraction))
    b.output("zero", [zero])
    b.output("nar", [nar])
    return b.build()


def _posit_encoder(spec: FormatSpec) -> Netlist:
    n, es = spec.n, spec.es
    w = n - 2
    mfb = spec.max_frac_bits
    rwp = posit_regime_width(n)
    b = Builder(f"posit-enc {spec.name}")
    s = b.input("s", 1)[0]
    regime = b.input("regime", rwp)
    exponent = b.input("exponent", es)
    fraction = b.input("fraction", mfb)
    zero = b.input("zero", 1)[0]
    nar = b.input("nar", 1)[0]

    # fold the scale with the sign: raw word fields come out of one adder
    frac_zero = b.nor_reduce(fraction)
    scale = b.xor_bus(s, exponent + regime)
    raw, _ = b.incrementer(scale, b.and_(s, frac_zero))
    b.note("adder", raw, width=len(raw))
    raw_e, raw_r = raw[:es], raw[es:]

    msb = raw_r[-1]
    run = b.not_(msb)
    shift = b.xor_bus(msb, raw_r[:-1])  # run length minus one

    payload = [msb] + list(reversed(raw_e)) + list(reversed(fraction))
    payload = list(reversed(payload[:w]))
    # shifted-in bits repeat the run bit, which fills the regime
    tail = b.shift_right(payload, shift, fill=run)
    b.note("shifter", tail, width=w, stages=len(shift))

    en = b.not_(b.or_(zero, nar))
    word = b.and_bus(en, tail + [run])
    word.append(b.or_(nar, b.and_(en, s)))
    b.output("p", word)
    return b.build()


# --- IEEE ---------------------------------------------------------------------

def _float_decoder(spec: FormatSpec) -> Netlist:
    n, ew, fw = spec.n, spec.exp_width, spec.frac_width
    bias = (1 << (ew - 1)) - 1
    xw = ew + 1
    b = Builder(f"float-dec {spec.name}")
    bits = b.input("bits", n)
    frac, biased, sign = bits[:fw], bits[fw:fw + ew], bits[n - 1]

    e_ones = b.and_reduce(biased)
    e_zero = b.nor_reduce(biased)
    f_zero = b.nor_reduce(frac)
    nan = b.and_(e_ones, b.not_(f_zero))
    inf = b.and_(e_ones, f_zero)
    zero = b.and_(e_zero, f_zero)
    sub = b.and_(e_zero, b.not_(f_zero))
    normal = b.and_(b.not_(e_ones), b.not_(e_zero))
    b.note("classify", [zero, sub, normal, inf, nan])

    exp_n, _ = b.adder(biased + [b.zero], b.const_bus(-bias, xw))
    lz, _ = b.lzc([b.one] + frac)
    b.note("lzc", lz, width=fw)
    shifted = b.shift_left(frac + [b.zero], lz)
    sig_sub = [b.zero] + shifted[:fw]
    b.note("normalize_shifter", sig_sub, width=fw + 1)
    lz_ext = (lz + [b.zero] * xw)[:xw]
    exp_s, _ = b.adder([b.not_(x) for x in lz_ext], b.const_bus(1 - bias, xw))

    sig_n = frac + [b.one]
    exp = b.and_bus(normal, exp_n)
    exp = [b.or_(x, b.and_(sub, y)) for x, y in zip(exp, exp_s)]
    sig = b.and_bus(normal, sig_n)
    sig = [b.or_(x, b.and_(sub, y)) for x, y in zip(sig, sig_sub)]
    nan_sig = b.and_bus(nan, frac + [b.zero])
    sig = [b.or_(x, y) for x, y in zip(sig, nan_sig)]

    for name, wire in (("zero", zero), ("subnormal", sub), ("normal", normal),
                       ("inf", inf), ("nan", nan)):
        b.output(name, [wire])
    b.output("sign", [sign])
    b.output("exp", exp)
    b.output("sig", sig)
    return b.build()


def _float_encoder(spec: FormatSpec) -> Netlist:
    n, ew, fw = spec.n, spec.exp_width, spec.frac_width
    bias = (1 << (ew - 1)) - 1
    xw = ew + 1
    b = Builder(f"float-enc {spec.name}")
    nan = b.input("nan", 1)[0]
    inf = b.input("inf", 1)[0]
    zero = b.input("zero", 1)[0]
    sign = b.input("sign", 1)[0]
    exp = b.input("exp", xw)
    sig = b.input("sig", fw + 1)

    ext = exp + [exp[-1]]  # one guard bit for the comparisons
    over_d, _ = b.adder(ext, b.const_bus(-(bias + 1), xw + 1))
    over = b.not_(over_d[-1])
    norm_d, _ = b.adder(ext, b.const_bus(bias - 1, xw + 1))
    normal = b.not_(norm_d[-1])
    b.note("range_compare", [over, normal])

    biased, _ = b.adder(exp[:ew], b.const_bus(bias, ew))

    # subnormal: right shift by emin - exp with round to nearest even
    dist, _ = b.adder([b.not_(x) for x in ext], b.const_bus(2 - bias, xw + 1))
    sat_d, _ = b.adder(dist, b.const_bus(-(fw + 2), xw + 1))
    sat = b.not_(sat_d[-1])
    lbits = (fw + 1).bit_length()
    wide = [b.zero] * (fw + 2) + sig
    y = b.shift_right(wide, dist[:lbits])
    b.note("denormalize_shifter", y, width=len(wide), stages=lbits)
    q = y[fw + 2:]
    guard = y[fw + 1]
    sticky = b.or_reduce(y[:fw + 1])
    rup = b.and_(guard, b.or_(sticky, q[0]))
    q, _ = b.incrementer(q, rup)
    q = b.and_bus(b.not_(sat), q)
    sub_mag = q + [b.zero] * (n - 1 - len(q))

    norm_mag = sig[:fw] + biased
    inf_mag = [b.zero] * fw + [b.one] * ew
    nan_mag = [b.zero] * (fw - 1) + [b.one] * (ew + 1)

    sig_zero = b.nor_reduce(sig)
    mag = b.mux_bus(normal, sub_mag, norm_mag)
    mag = b.mux_bus(over, mag, inf_mag)
    mag = b.and_bus(b.not_(b.or_(zero, sig_zero)), mag)
    mag = b.mux_bus(inf, mag, inf_mag)
    mag = b.mux_bus(nan, mag, nan_mag)
    out_sign = b.and_(b.not_(nan), sign)
    b.output("bits", mag + [out_sign])
    return b.build()


_BUILDERS = {
    CircuitKind.BPOSIT_DEC: _bposit_decoder,
    CircuitKind.BPOSIT_ENC: _bposit_encoder,
    CircuitKind.POSIT_DEC: _posit_decoder,
    CircuitKind.POSIT_ENC: _posit_encoder,
    CircuitKind.FLOAT_DEC: _float_decoder,
    CircuitKind.FLOAT_ENC: _float_encoder,
}


# --- behavioral side ------------------------------------------------------------

def _mask(width: int) -> int:
    return (1 << width) - 1


def _ref_bposit_dec(spec, ins):
    rw, es, rs = regime_width(spec.rs), spec.es, spec.rs
    out = {k: [] for k in ("s", "regime", "exponent", "fraction", "exp_cin",
                           "one_hot", "zero", "nar")}
    for p in ins["p"].tolist():
        d = decode_fast(p, spec)
        out["s"].append(p >> (spec.n - 1))
        out["regime"].append(d.regime & _mask(rw))
        out["exponent"].append(d.exponent & _mask(es))
        out["fraction"].append(d.raw_significand_signed)
        out["exp_cin"].append(d.exp_cin)
        out["one_hot"].append(sum(h << (rs - 1 - i) for i, h in enumerate(d.one_hot)))
        out["zero"].append(int(d.fields.cls is ValueClass.ZERO))
        out["nar"].append(int(d.fields.cls is ValueClass.NAR))
    return out


def _ref_bposit_enc(spec, ins):
    rw = regime_width(spec.rs)
    res = []
    for s, r, e, f, z, x in zip(*(ins[k].tolist() for k in
                                  ("s", "regime", "exponent", "fraction", "zero", "nar"))):
        r = r - (1 << rw) if r >> (rw - 1) else r
        res.append(encode_hardware(s, r, e, f, spec, zero=bool(z), nar=bool(x)))
    return {"p": res}


def _ref_posit_dec(spec, ins):
    rwp, mfb = posit_regime_width(spec.n), spec.max_frac_bits
    out = {k: [] for k in ("s", "regime", "exponent", "fraction", "zero", "nar")}
    for p in ins["p"].tolist():
        f = decode_standard(p, spec)
        out["s"].append(f.s)
        out["regime"].append(f.r & _mask(rwp))
        out["exponent"].append(f.e)
        out["fraction"].append(f.frac << (mfb - f.frac_bits))
        out["zero"].append(int(f.cls is ValueClass.ZERO))
        out["nar"].append(int(f.cls is ValueClass.NAR))
    return out


def _ref_posit_enc(spec, ins):
    rwp = posit_regime_width(spec.n)
    res = []
    for s, r, e, f, z, x in zip(*(ins[k].tolist() for k in
                                  ("s", "regime", "exponent", "fraction", "zero", "nar"))):
        r = r - (1 << rwp) if r >> (rwp - 1) else r
        res.append(encode_standard_signed(s, r, e, f, spec, zero=bool(z), nar=bool(x)))
    return {"p": res}


_FLOAT_FLAGS = ("zero", "subnormal", "normal", "inf", "nan")


def _ref_float_dec(spec, ins):
    xw = spec.exp_width + 1
    out = {k: [] for k in (*_FLOAT_FLAGS, "sign", "exp", "sig")}
    for bits in ins["bits"].tolist():
        r = decode_float(bits, spec)
        for k in _FLOAT_FLAGS:
            out[k].append(int(r.cls.value == k))
        out["sign"].append(r.sign)
        out["exp"].append(r.exp & _mask(xw))
        out["sig"].append(r.sig)
    return out


def _ref_float_enc(spec, ins):
    xw, fw = spec.exp_width + 1, spec.frac_width
    res = []
    for nan, inf, zero, sign, exp, sig in zip(*(ins[k].tolist() for k in
                                                ("nan", "inf", "zero", "sign", "exp", "sig"))):
        exp = exp - (1 << xw) if exp >> (xw - 1) else exp
        cls = (FloatClass.NAN if nan else FloatClass.INF if inf
               else FloatClass.ZERO if zero else FloatClass.NORMAL)
        res.append(encode_float(RecodedFloat(cls, sign, exp, sig, fw), spec))
    return {"bits": res}


_REFS = {
    CircuitKind.BPOSIT_DEC: _ref_bposit_dec,
    CircuitKind.BPOSIT_ENC: _ref_bposit_enc,
    CircuitKind.POSIT_DEC: _ref_posit_dec,
    CircuitKind.POSIT_ENC: _ref_posit_enc,
    CircuitKind.FLOAT_DEC: _ref_float_dec,
    CircuitKind.FLOAT_ENC: _ref_float_enc,
}


def reference_outputs(kind: CircuitKind | str, spec: FormatSpec,
                      inputs: dict[str, np.ndarray]) -> dict[str, np.ndarray]:
    """Behavioral codec outputs for the circuit's input buses."""
    kind = CircuitKind(kind)
    _check(kind, spec)
    out = _REFS[kind](spec, inputs)
    return {k: np.array(v, dtype=np.uint64) for k, v in out.items()}


# --- input generation -------------------------------------------------------------

def _u64(values) -> np.ndarray:
    return np.array(values, dtype=np.uint64)


def domain_inputs(kind: CircuitKind | str, spec: FormatSpec,
                  patterns: np.ndarray) -> dict[str, np.ndarray]:
    """Circuit inputs derived from format patterns.

    Decoders take the patterns directly. Encoders take what the matching
    decoder produces from them, which is exactly the encoder's domain.
    """
    kind = CircuitKind(kind)
    _check(kind, spec)
    patterns = np.asarray(patterns, dtype=np.uint64)
    if kind is CircuitKind.BPOSIT_DEC or kind is CircuitKind.POSIT_DEC:
        return {"p": patterns}
    if kind is CircuitKind.FLOAT_DEC:
        return {"bits": patterns}
    if kind is CircuitKind.BPOSIT_ENC or kind is CircuitKind.POSIT_ENC:
        d = _ref_bposit_dec(spec, {"p": patterns})
        rw, es = regime_width(spec.rs), spec.es
        regime, exponent = [], []
        for r, e, c in zip(d["regime"], d["exponent"], d["exp_cin"]):
            r = r - (1 << rw) if r >> (rw - 1) else r
            t = (r << es) + e + c  # apply the deferred carry
            regime.append((t >> es) & _mask(rw))
            exponent.append(t & _mask(es))
        return {"s": _u64(d["s"]), "regime": _u64(regime), "exponent": _u64(exponent),
                "fraction": _u64(d["fraction"]), "zero": _u64(d["zero"]),
                "nar": _u64(d["nar"])}
    d = _ref_float_dec(spec, {"bits": patterns})
    return {k: _u64(d[k]) for k in ("nan", "inf", "zero", "sign", "exp", "sig")}


def random_inputs(kind: CircuitKind | str, spec: FormatSpec, count: int,
                  rng: np.random.Generator) -> dict[str, np.ndarray]:
    """Random vectors over the circuit's input domain.

    Decoders and the posit encoder draw random patterns. The b-posit and
    float encoders draw their input fields directly, which also covers
    combinations no decoder emits (unreduced fractions, exponents outside
    the normal range).
    """
    kind = CircuitKind(kind)
    _check(kind, spec)
    n = spec.n
    if kind is CircuitKind.BPOSIT_ENC:
        rs, es, mfb = spec.rs, spec.es, spec.max_frac_bits
        rw = regime_width(rs)
        flags = rng.integers(0, 64, count)
        return {
            "s": rng.integers(0, 2, count, dtype=np.uint64),
            "regime": (rng.integers(-rs, rs, count) & _mask(rw)).astype(np.uint64),
            "exponent": _rand_bits(rng, es, count),
            "fraction": _rand_bits(rng, mfb, count),
            "zero": (flags == 0).astype(np.uint64),
            "nar": (flags == 1).astype(np.uint64),
        }
    if kind is CircuitKind.FLOAT_ENC:
        ew, fw = spec.exp_width, spec.frac_width
        xw = ew + 1
        cls = rng.integers(0, 32, count)
        sig = _rand_bits(rng, fw, count) | np.uint64(1 << fw)
        sig[cls == 3] = 0  # a zero significand with no zero flag
        return {
            "nan": (cls == 0).astype(np.uint64),
            "inf": (cls == 1).astype(np.uint64),
            "zero": (cls == 2).astype(np.uint64),
            "sign": rng.integers(0, 2, count, dtype=np.uint64),
            "exp": (rng.integers(-(1 << ew), 1 << ew, count) & _mask(xw)).astype(np.uint64),
            "sig": sig,
        }
    return domain_inputs(kind, spec, _rand_bits(rng, n, count))


def _rand_bits(rng: np.random.Generator, width: int, count: int) -> np.ndarray:
    if width == 0:
        return np.zeros(count, np.uint64)
    v = rng.integers(0, 1 << 32, count, dtype=np.uint64) << np.uint64(32)
    v |= rng.integers(0, 1 << 32, count, dtype=np.uint64)
    return v >> np.uint64(64 - width) if width < 64 else v


def mismatches(kind: CircuitKind | str, spec: FormatSpec, inputs: dict[str, np.ndarray],
               net: Netlist | None = None) -> dict[str, int]:
    """Per-output count of vectors where the netlist and the codec disagree."""
    kind = CircuitKind(kind)
    net = net or build_circuit(kind, spec)
    got = simulate_batch(net, inputs)
    ref = reference_outputs(kind, spec, inputs)
    return {k: int(np.count_nonzero(got[k] != ref[k])) for k in ref}


def default_spec(kind: CircuitKind | str, n: int) -> FormatSpec:
    """Format each circuit family is compared at: ``<N,6,5>``, ``<N,2>``, binaryN."""
    family = CircuitKind(kind).family
    if family == "bposit":
        return FormatSpec.bposit(n, 6, 5)
    if family == "posit":
        return FormatSpec.posit(n, 2)
    return FormatSpec.ieee(n)
