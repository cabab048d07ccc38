import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bposit import FormatSpec
from bposit.circuit import (
    Builder, CircuitKind, UnsupportedKindForSpec, WidthMismatch, build_circuit,
    default_spec, domain_inputs, evaluate, fan_in_cone, metrics, mismatches,
    random_inputs, simulate, simulate_batch, to_dot, to_json,
)

SMALL = {
    "bposit": [FormatSpec.bposit(8, 6, 3), FormatSpec.bposit(9, 3, 1), FormatSpec.bposit(10, 2, 0),
               FormatSpec.bposit(12, 6, 5), FormatSpec.bposit(7, 4, 4)],
    "posit": [FormatSpec.posit(8, 2), FormatSpec.posit(6, 0), FormatSpec.posit(10, 3)],
}


# --- builder primitives ---------------------------------------------------------------

def test_identity_netlist():
    b = Builder("wires")
    b.output("y", b.input("x", 8))
    net = b.build()
    for v in (0, 1, 0xA5, 0xFF):
        assert evaluate(net, x=v) == {"y": v}
    assert metrics(net).gate_count == 0 and metrics(net).depth == 0


def test_width_mismatch():
    b = Builder()
    b.output("y", b.input("x", 4))
    with pytest.raises(WidthMismatch):
        simulate(b.build(), [0, 1])


def test_constant_folding_and_hashing():
    b = Builder()
    x, y = b.input("x", 1)[0], b.input("y", 1)[0]
    assert b.and_(x, b.zero) == b.zero
    assert b.or_(x, b.one) == b.one
    assert b.xor(x, x) == b.zero
    assert b.not_(b.not_(x)) == x
    assert b.mux(b.one, x, y) == y
    assert b.and_(x, y) == b.and_(x, y)


def _bits(v, w):
    return [(v >> i) & 1 for i in range(w)]


@given(st.integers(0, 255), st.integers(0, 255), st.integers(0, 1))
def test_adder_and_incrementer(a, c, cin):
    b = Builder()
    x, y, ci = b.input("a", 8), b.input("b", 8), b.input("c", 1)[0]
    s, co = b.adder(x, y, ci)
    t, to = b.incrementer(x, ci)
    b.output("s", s + [co])
    b.output("t", t + [to])
    out = evaluate(b.build(), a=a, b=c, c=cin)
    assert out["s"] == a + c + cin
    assert out["t"] == a + cin


@given(st.integers(1, 40), st.data())
def test_lzc(width, data):
    v = data.draw(st.integers(0, (1 << width) - 1))
    b = Builder()
    count, allz = b.lzc(b.input("x", width))
    b.output("c", count)
    b.output("z", [allz])
    out = evaluate(b.build(), x=v)
    if v == 0 and width & (width - 1) == 0:
        assert out["z"] == 1
    elif v == 0:
        assert out["z"] == 0 and out["c"] == width
    else:
        assert out["z"] == 0 and out["c"] == width - v.bit_length()


@given(st.integers(0, 2**12 - 1), st.integers(0, 15), st.integers(0, 1))
def test_shifters(v, k, fill):
    b = Builder()
    x, amt, f = b.input("x", 12), b.input("k", 4), b.input("f", 1)[0]
    b.output("l", b.shift_left(x, amt, f))
    b.output("r", b.shift_right(x, amt, f))
    out = evaluate(b.build(), x=v, k=k, f=fill)
    ones = ((1 << min(k, 12)) - 1) if fill else 0
    assert out["l"] == ((v << k) | ones) & 0xFFF
    assert out["r"] == (v >> k) | (ones << (12 - min(k, 12)))


@pytest.mark.parametrize("k", [1, 2, 3, 5, 6, 8])
def test_mux_k_depth_and_select(k):
    b = Builder()
    sel = b.input("s", 4)
    data = [b.input(f"d{i}", 3) for i in range(k)]
    b.output("y", b.mux_k(sel[:max(1, (k - 1).bit_length())], data))
    net = b.build()
    assert metrics(net).depth == max(1, (k - 1).bit_length()) or k == 1
    for i in range(k):
        vals = {f"d{j}": (j * 3 + 1) & 7 for j in range(k)}
        assert evaluate(net, s=i, **vals)["y"] == vals[f"d{i}"]


def test_decoder_and_one_hot_to_binary():
    b = Builder()
    lines = b.decoder(b.input("s", 3), 6)
    b.output("hot", lines)
    b.output("back", b.one_hot_to_binary(lines))
    net = b.build()
    for i in range(6):
        assert evaluate(net, s=i) == {"hot": 1 << i, "back": i}


# --- structure of the codec circuits ----------------------------------------------------

def test_bposit_decoder_structure():
    net = build_circuit("bposit-dec", FormatSpec.bposit(16, 6, 5))
    assert net.component("field_mux").params["inputs"] == 5
    assert net.component("one_hot").params["lines"] == 6
    assert metrics(net).mux_input_counts == {5: 1}
    assert evaluate(net, p=0x8000)["nar"] == 1
    assert evaluate(net, p=0x0000)["zero"] == 1
    assert evaluate(net, p=0x4000)["nar"] == 0


def test_field_mux_and_priority_encoder_are_parallel():
    net = build_circuit("bposit-dec", FormatSpec.bposit(32, 6, 5))
    hot = set(net.component("one_hot").outputs)
    mux_cone = fan_in_cone(net, net.component("field_mux").outputs)
    pe_cone = fan_in_cone(net, net.component("priority_encoder").outputs)
    assert hot <= mux_cone and hot <= pe_cone
    # neither block feeds the other
    assert not set(net.component("priority_encoder").outputs) & mux_cone
    assert not set(net.component("field_mux").outputs) & pe_cone


def test_bposit_encoder_structure():
    net = build_circuit("bposit-enc", FormatSpec.bposit(32, 6, 5))
    assert net.component("fold_xor").params["count"] == 3
    dec = net.component("regime_decoder")
    assert (dec.params["inputs"], dec.params["lines"]) == (3, 6)
    assert net.component("packing_mux").params["inputs"] == 5
    assert net.component("overflow_mux").params["inputs"] == 2


def test_posit_decoder_lbc_feeds_shifter():
    net = build_circuit("posit-dec", FormatSpec.posit(64, 2))
    lbc = net.component("lbc")
    assert lbc.params["width"] == 63
    assert set(lbc.outputs) <= fan_in_cone(net, net.component("shifter").outputs)
    assert set(net.component("exception_check").outputs).isdisjoint(
        fan_in_cone(net, lbc.outputs))


def test_posit_encoder_chain():
    net = build_circuit("posit-enc", FormatSpec.posit(32, 2))
    adder = net.component("adder")
    assert set(adder.outputs) <= fan_in_cone(net, net.component("shifter").outputs)


def test_float_circuit_blocks():
    dec = build_circuit("float-dec", FormatSpec.ieee(32))
    assert {c.name for c in dec.components} >= {"classify", "lzc", "normalize_shifter"}
    enc = build_circuit("float-enc", FormatSpec.ieee(32))
    assert {c.name for c in enc.components} >= {"range_compare", "denormalize_shifter"}


def test_unsupported_kind():
    with pytest.raises(UnsupportedKindForSpec):
        build_circuit("posit-dec", FormatSpec.bposit(16, 6, 5))
    with pytest.raises(UnsupportedKindForSpec):
        build_circuit("float-dec", FormatSpec.posit(16, 2))
    with pytest.raises(ValueError):
        build_circuit("adder", FormatSpec.ieee(16))


# --- behavior ---------------------------------------------------------------------

@pytest.mark.parametrize("spec", SMALL["bposit"], ids=str)
@pytest.mark.parametrize("kind", ["bposit-dec", "bposit-enc"])
def test_bposit_circuits_exhaustive_small(kind, spec):
    pats = np.arange(1 << spec.n, dtype=np.uint64)
    assert not any(mismatches(kind, spec, domain_inputs(kind, spec, pats)).values())


@pytest.mark.parametrize("spec", SMALL["posit"], ids=str)
@pytest.mark.parametrize("kind", ["posit-dec", "posit-enc"])
def test_posit_circuits_exhaustive_small(kind, spec):
    pats = np.arange(1 << spec.n, dtype=np.uint64)
    assert not any(mismatches(kind, spec, domain_inputs(kind, spec, pats)).values())


@pytest.mark.parametrize("kind", list(CircuitKind), ids=lambda k: k.value)
def test_random_vectors_32(kind):
    spec = default_spec(kind, 32)
    ins = random_inputs(kind, spec, 4000, np.random.default_rng(7))
    assert not any(mismatches(kind, spec, ins).values())


def test_bposit_encoder_random_fields_small():
    spec = FormatSpec.bposit(12, 6, 5)
    ins = random_inputs("bposit-enc", spec, 20000, np.random.default_rng(3))
    assert not any(mismatches("bposit-enc", spec, ins).values())


def test_batch_matches_single():
    spec = FormatSpec.bposit(16, 6, 5)
    net = build_circuit("bposit-dec", spec)
    pats = np.array([0, 1, 0x8000, 0xC000, 0x7FFF, 0x1234], dtype=np.uint64)
    batch = simulate_batch(net, {"p": pats})
    for i, p in enumerate(pats.tolist()):
        single = evaluate(net, p=p)
        assert {k: int(v[i]) for k, v in batch.items()} == single


# --- metrics and export --------------------------------------------------------------

def test_depth_and_cost_trends():
    m = {(k, n): metrics(build_circuit(k, default_spec(k, n)))
         for k in ("bposit-dec", "bposit-enc", "posit-dec", "posit-enc") for n in (16, 32, 64)}
    for k in ("bposit-dec", "bposit-enc"):
        depths = [m[k, n].depth for n in (16, 32, 64)]
        assert max(depths) - min(depths) <= 2
    for k in ("posit-dec", "posit-enc"):
        assert m[k, 16].depth < m[k, 32].depth < m[k, 64].depth
    g = [m["bposit-dec", n].gate_count for n in (16, 32, 64)]
    # growth comes from the data width only: roughly linear in N
    assert (g[2] - g[1]) / 32 <= 1.25 * (g[1] - g[0]) / 16


def test_metrics_are_deterministic():
    spec = FormatSpec.posit(32, 2)
    a = metrics(build_circuit("posit-enc", spec))
    b = metrics(build_circuit("posit-enc", spec))
    assert a == b and a.as_dict()["gate_count"] == a.gate_count
    assert sum(a.by_kind.values()) == a.gate_count


def test_json_and_dot_export():
    net = build_circuit("bposit-dec", FormatSpec.bposit(16, 6, 5))
    doc = json.loads(to_json(net))
    ids = {g["id"] for g in doc["gates"]} | {w for bus in doc["inputs"] for w in bus["bits"]}
    assert all(i in ids for g in doc["gates"] for i in g["in"])
    assert {g["kind"] for g in doc["gates"]} <= {"AND", "OR", "NOT", "XOR", "MUX2", "CONST"}
    assert [o["name"] for o in doc["outputs"]][:2] == ["s", "regime"]
    dot = to_dot(net)
    assert dot.startswith("digraph") and dot.rstrip().endswith("}")
