"""Combinational netlists over a small gate basis.

Every wire is the output of one gate, so wire ids and gate ids coincide.
Primary inputs are ``INPUT`` pseudo-gates and constants are ``CONST``;
neither counts towards the gate total or the depth. Buses are ordered
LSB first.

The :class:`Builder` folds constants and hashes structure as it goes, so
two requests for the same gate over the same wires return one wire.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

__all__ = ["GATE_KINDS", "Gate", "Component", "Netlist", "Builder",
           "CircuitMetrics", "WidthMismatch", "simulate", "evaluate",
           "simulate_batch", "metrics", "to_json", "to_dot", "fan_in_cone"]

GATE_KINDS = ("AND", "OR", "NOT", "XOR", "MUX2", "CONST")
_PSEUDO = ("INPUT", "CONST")


class WidthMismatch(ValueError):
    pass


class Gate(NamedTuple):
    kind: str
    inputs: tuple[int, ...] = ()
    value: int = 0  # CONST value, or the input index for INPUT


class Component(NamedTuple):
    """A named block recorded while building, for structural checks."""

    name: str
    params: dict
    outputs: tuple[int, ...]


@dataclass
class Netlist:
    gates: list[Gate]
    inputs: dict[str, list[int]]
    outputs: dict[str, list[int]]
    components: list[Component] = field(default_factory=list)
    name: str = ""

    @property
    def input_width(self) -> int:
        return sum(len(b) for b in self.inputs.values())

    @property
    def output_width(self) -> int:
        return sum(len(b) for b in self.outputs.values())

    def component(self, name: str) -> Component:
        for c in self.components:
            if c.name == name:
                return c
        raise KeyError(name)


class Builder:
    def __init__(self, name: str = ""):
        self.name = name
        self.gates: list[Gate] = []
        self.inputs: dict[str, list[int]] = {}
        self.outputs: dict[str, list[int]] = {}
        self.components: list[Component] = []
        self._hash: dict[tuple, int] = {}
        self._n_in = 0
        self.zero = self._add(Gate("CONST", (), 0))
        self.one = self._add(Gate("CONST", (), 1))

    def _add(self, g: Gate) -> int:
        key = (g.kind, g.inputs, g.value)
        if g.kind != "INPUT" and key in self._hash:
            return self._hash[key]
        self.gates.append(g)
        wid = len(self.gates) - 1
        if g.kind != "INPUT":
            self._hash[key] = wid
        return wid

    def _const(self, w: int) -> int | None:
        g = self.gates[w]
        return g.value if g.kind == "CONST" else None

    # --- buses -------------------------------------------------------------

    def input(self, name: str, width: int) -> list[int]:
        bus = []
        for _ in range(width):
            bus.append(self._add(Gate("INPUT", (), self._n_in)))
            self._n_in += 1
        self.inputs[name] = bus
        return bus

    def output(self, name: str, bus: Sequence[int]) -> None:
        self.outputs[name] = list(bus)

    def const_bus(self, value: int, width: int) -> list[int]:
        return [self.one if (value >> i) & 1 else self.zero for i in range(width)]

    def note(self, name: str, outputs: Iterable[int] = (), **params) -> None:
        self.components.append(Component(name, params, tuple(outputs)))

    def build(self) -> Netlist:
        return Netlist(self.gates, self.inputs, self.outputs, self.components,
                       self.name)

    # --- gates -------------------------------------------------------------

    def not_(self, a: int) -> int:
        c = self._const(a)
        if c is not None:
            return self.zero if c else self.one
        g = self.gates[a]
        if g.kind == "NOT":
            return g.inputs[0]
        return self._add(Gate("NOT", (a,)))

    def and_(self, a: int, b: int) -> int:
        ca, cb = self._const(a), self._const(b)
        if ca == 0 or cb == 0:
            return self.zero
        if ca == 1:
            return b
        if cb == 1 or a == b:
            return a
        return self._add(Gate("AND", (min(a, b), max(a, b))))

    def or_(self, a: int, b: int) -> int:
        ca, cb = self._const(a), self._const(b)
        if ca == 1 or cb == 1:
            return self.one
        if ca == 0:
            return b
        if cb == 0 or a == b:
            return a
        return self._add(Gate("OR", (min(a, b), max(a, b))))

    def xor(self, a: int, b: int) -> int:
        ca, cb = self._const(a), self._const(b)
        if ca is not None and cb is not None:
            return self.one if ca ^ cb else self.zero
        if ca is not None:
            return self.not_(b) if ca else b
        if cb is not None:
            return self.not_(a) if cb else a
        if a == b:
            return self.zero
        return self._add(Gate("XOR", (min(a, b), max(a, b))))

    def xnor(self, a: int, b: int) -> int:
        return self.not_(self.xor(a, b))

    def mux(self, sel: int, a0: int, a1: int) -> int:
        """``a1`` when ``sel`` is 1, else ``a0``."""
        cs = self._const(sel)
        if cs is not None:
            return a1 if cs else a0
        if a0 == a1:
            return a0
        c0, c1 = self._const(a0), self._const(a1)
        if c0 == 0 and c1 == 1:
            return sel
        if c0 == 1 and c1 == 0:
            return self.not_(sel)
        return self._add(Gate("MUX2", (sel, a0, a1)))

    # --- composite blocks ----------------------------------------------------

    def reduce(self, op, bits: Sequence[int]) -> int:
        """Balanced tree of a 2-input gate; depth ceil(log2 len)."""
        bits = list(bits)
        if not bits:
            raise ValueError("empty reduction")
        while len(bits) > 1:
            nxt = [op(bits[i], bits[i + 1]) for i in range(0, len(bits) - 1, 2)]
            if len(bits) % 2:
                nxt.append(bits[-1])
            bits = nxt
        return bits[0]

    def or_reduce(self, bits: Sequence[int]) -> int:
        return self.reduce(self.or_, bits) if bits else self.zero

    def and_reduce(self, bits: Sequence[int]) -> int:
        return self.reduce(self.and_, bits) if bits else self.one

    def nor_reduce(self, bits: Sequence[int]) -> int:
        return self.not_(self.or_reduce(bits))

    def mux_bus(self, sel: int, a0: Sequence[int], a1: Sequence[int]) -> list[int]:
        return [self.mux(sel, x, y) for x, y in zip(a0, a1, strict=True)]

    def and_bus(self, en: int, bus: Sequence[int]) -> list[int]:
        return [self.and_(en, x) for x in bus]

    def xor_bus(self, t: int, bus: Sequence[int]) -> list[int]:
        return [self.xor(t, x) for x in bus]

    def mux_k(self, sel: Sequence[int], data: Sequence[Sequence[int]]) -> list[int]:
        """k-input mux as a balanced MUX2 tree; ``sel`` is binary, LSB first.

        Indices beyond ``len(data)`` select the last input. With exactly
        ceil(log2 k) select bits the tree has that depth.
        """
        k = len(data)
        levels = max(1, (k - 1).bit_length())
        if len(sel) < levels:
            raise WidthMismatch(f"{k}-input mux needs {levels} select bits")
        cur = [list(d) for d in data]
        for lvl in range(levels):
            nxt = []
            for i in range(0, len(cur), 2):
                hi = cur[i + 1] if i + 1 < len(cur) else cur[i]
                nxt.append(self.mux_bus(sel[lvl], cur[i], hi))
            cur = nxt
        if len(sel) > levels and k > 1:
            # wider selects saturate to the last input
            cur[0] = self.mux_bus(self.or_reduce(sel[levels:]), cur[0], data[-1])
        return cur[0]

    def one_hot_to_binary(self, hot: Sequence[int]) -> list[int]:
        """Encoder for a one-hot vector: bit b is the OR of lines with b set."""
        width = max(1, (len(hot) - 1).bit_length())
        return [self.or_reduce([h for i, h in enumerate(hot) if (i >> b) & 1])
                for b in range(width)]

    def decoder(self, sel: Sequence[int], outputs: int) -> list[int]:
        """Binary-to-one-hot decoder with ``outputs`` lines."""
        inv = [self.not_(x) for x in sel]
        lines = []
        for i in range(outputs):
            lits = [sel[b] if (i >> b) & 1 else inv[b] for b in range(len(sel))]
            lines.append(self.and_reduce(lits))
        return lines

    def adder(self, a: Sequence[int], b: Sequence[int], cin: int | None = None
              ) -> tuple[list[int], int]:
        """Ripple-carry adder; returns (sum, carry out)."""
        c = self.zero if cin is None else cin
        out = []
        for x, y in zip(a, b, strict=True):
            t = self.xor(x, y)
            out.append(self.xor(t, c))
            c = self.or_(self.and_(x, y), self.and_(t, c))
        return out, c

    def incrementer(self, a: Sequence[int], cin: int) -> tuple[list[int], int]:
        """``a + cin`` with carries from an AND-prefix, so depth is logarithmic."""
        out = []
        for i, x in enumerate(a):
            carry = self.and_reduce([cin, *a[:i]])
            out.append(self.xor(x, carry))
        return out, self.and_reduce([cin, *a])

    def lzc(self, bits: Sequence[int]) -> tuple[list[int], int]:
        """Leading-zero count of an MSB-last bus.

        Divide-and-conquer on a power-of-two width padded with ones below the
        LSB. Returns the count (``ceil(log2 width)`` bits) and an all-zero
        flag. The padding makes an all-zero bus count as ``width`` unless
        the width is a power of two, where only the flag tells.
        """
        w = len(bits)
        p = 1 << max(0, (w - 1).bit_length())
        msb_first = list(reversed(bits)) + [self.one] * (p - w)

        def rec(seg):
            # returns (count bits LSB first, all-zero flag)
            if len(seg) == 1:
                return [], self.not_(seg[0])
            half = len(seg) // 2
            ch, zh = rec(seg[:half])
            cl, zl = rec(seg[half:])
            cnt = self.mux_bus(zh, ch, cl)
            return cnt + [zh], self.and_(zh, zl)

        count, allz = rec(msb_first)
        return count, allz

    def shift_left(self, bus: Sequence[int], amount: Sequence[int],
                   fill: int | None = None) -> list[int]:
        """Logarithmic barrel shifter towards the MSB."""
        fill = self.zero if fill is None else fill
        cur = list(bus)
        for stage, s in enumerate(amount):
            d = 1 << stage
            shifted = [fill] * min(d, len(cur)) + cur[:max(0, len(cur) - d)]
            cur = self.mux_bus(s, cur, shifted)
        return cur

    def shift_right(self, bus: Sequence[int], amount: Sequence[int],
                    fill: int | None = None) -> list[int]:
        fill = self.zero if fill is None else fill
        cur = list(bus)
        for stage, s in enumerate(amount):
            d = 1 << stage
            shifted = cur[d:] + [fill] * min(d, len(cur))
            cur = self.mux_bus(s, cur, shifted)
        return cur


# --- evaluation -------------------------------------------------------------

def _flat_inputs(net: Netlist) -> list[int]:
    return [w for bus in net.inputs.values() for w in bus]


def simulate(net: Netlist, inputs: Sequence[int]) -> list[int]:
    """Evaluate one input vector (flat, in input-bus order) to a flat output vector."""
    flat = _flat_inputs(net)
    if len(inputs) != len(flat):
        raise WidthMismatch(f"{len(inputs)} input bits for a {len(flat)}-bit netlist")
    val = [0] * len(net.gates)
    for wid, g in enumerate(net.gates):
        k = g.kind
        if k == "INPUT":
            val[wid] = inputs[g.value] & 1
        elif k == "CONST":
            val[wid] = g.value
        elif k == "AND":
            val[wid] = val[g.inputs[0]] & val[g.inputs[1]]
        elif k == "OR":
            val[wid] = val[g.inputs[0]] | val[g.inputs[1]]
        elif k == "XOR":
            val[wid] = val[g.inputs[0]] ^ val[g.inputs[1]]
        elif k == "NOT":
            val[wid] = 1 - val[g.inputs[0]]
        else:
            s, a0, a1 = g.inputs
            val[wid] = val[a1] if val[s] else val[a0]
    return [val[w] for bus in net.outputs.values() for w in bus]


def evaluate(net: Netlist, **buses: int) -> dict[str, int]:
    """Evaluate with named integer buses; missing buses read as 0."""
    unknown = set(buses) - set(net.inputs)
    if unknown:
        raise WidthMismatch(f"no input bus named {sorted(unknown)}")
    vec = []
    for name, bus in net.inputs.items():
        v = buses.get(name, 0)
        if v < 0 or v >> len(bus):
            raise WidthMismatch(f"{name}={v} does not fit {len(bus)} bits")
        vec.extend((v >> i) & 1 for i in range(len(bus)))
    out = simulate(net, vec)
    res, pos = {}, 0
    for name, bus in net.outputs.items():
        res[name] = sum(b << i for i, b in enumerate(out[pos:pos + len(bus)]))
        pos += len(bus)
    return res


_CHUNK = 1 << 16


def _to_planes(values: np.ndarray, width: int) -> list[np.ndarray]:
    planes = []
    for i in range(width):
        bits = ((values >> np.uint64(i)) & np.uint64(1)).astype(np.uint8)
        packed = np.packbits(bits, bitorder="little")
        pad = (-len(packed)) % 8
        if pad:
            packed = np.concatenate([packed, np.zeros(pad, np.uint8)])
        planes.append(packed.view(np.uint64))
    return planes


def _from_planes(planes: Sequence[np.ndarray], count: int) -> np.ndarray:
    out = np.zeros(count, np.uint64)
    for i, p in enumerate(planes):
        bits = np.unpackbits(p.view(np.uint8), bitorder="little")[:count]
        out |= bits.astype(np.uint64) << np.uint64(i)
    return out


def _sim_chunk(net: Netlist, planes: dict[int, np.ndarray], words: int
               ) -> list[np.ndarray]:
    zero = np.zeros(words, np.uint64)
    ones = ~zero
    val: list = [None] * len(net.gates)
    for wid, g in enumerate(net.gates):
        k = g.kind
        if k == "INPUT":
            val[wid] = planes[wid]
        elif k == "CONST":
            val[wid] = ones if g.value else zero
        elif k == "AND":
            val[wid] = val[g.inputs[0]] & val[g.inputs[1]]
        elif k == "OR":
            val[wid] = val[g.inputs[0]] | val[g.inputs[1]]
        elif k == "XOR":
            val[wid] = val[g.inputs[0]] ^ val[g.inputs[1]]
        elif k == "NOT":
            val[wid] = ~val[g.inputs[0]]
        else:
            s, a0, a1 = g.inputs
            vs = val[s]
            val[wid] = (vs & val[a1]) | (~vs & val[a0])
    return val


def simulate_batch(net: Netlist, buses: Mapping[str, np.ndarray]) -> dict[str, np.ndarray]:
    """Bit-parallel evaluation of many vectors.

    ``buses`` maps input names to equal-length ``uint64`` arrays (buses up
    to 64 bits). Returns output buses as ``uint64`` arrays.
    """
    unknown = set(buses) - set(net.inputs)
    if unknown:
        raise WidthMismatch(f"no input bus named {sorted(unknown)}")
    for name, bus in net.outputs.items():
        if len(bus) > 64:
            raise WidthMismatch(f"output {name} is wider than 64 bits")
    arrays = {k: np.asarray(v, dtype=np.uint64) for k, v in buses.items()}
    lengths = {len(a) for a in arrays.values()}
    if len(lengths) > 1:
        raise WidthMismatch("input arrays differ in length")
    count = lengths.pop() if lengths else 0
    result = {name: [] for name in net.outputs}
    for start in range(0, count, _CHUNK):
        stop = min(count, start + _CHUNK)
        words = (stop - start + 63) // 64
        planes: dict[int, np.ndarray] = {}
        for name, bus in net.inputs.items():
            if name in arrays:
                chunk = arrays[name][start:stop]
                for wid, plane in zip(bus, _to_planes(chunk, len(bus))):
                    planes[wid] = plane
            else:
                for wid in bus:
                    planes[wid] = np.zeros(words, np.uint64)
        val = _sim_chunk(net, planes, words)
        for name, bus in net.outputs.items():
            result[name].append(_from_planes([val[w] for w in bus], stop - start))
    return {k: (np.concatenate(v) if v else np.zeros(0, np.uint64))
            for k, v in result.items()}


# --- metrics and export -------------------------------------------------------

@dataclass(frozen=True)
class CircuitMetrics:
    gate_count: int
    depth: int
    by_kind: dict[str, int]
    mux_input_counts: dict[int, int]

    def as_dict(self) -> dict:
        return {"gate_count": self.gate_count, "depth": self.depth,
                "by_kind": dict(self.by_kind),
                "mux_input_counts": {str(k): v for k, v in self.mux_input_counts.items()}}


def _live(net: Netlist) -> set[int]:
    """Gates that reach some output."""
    return fan_in_cone(net, [w for bus in net.outputs.values() for w in bus])


def fan_in_cone(net: Netlist, wires: Iterable[int]) -> set[int]:
    seen: set[int] = set()
    stack = list(wires)
    while stack:
        w = stack.pop()
        if w in seen:
            continue
        seen.add(w)
        stack.extend(net.gates[w].inputs)
    return seen


def levels(net: Netlist) -> list[int]:
    lv = [0] * len(net.gates)
    for wid, g in enumerate(net.gates):
        if g.kind not in _PSEUDO:
            lv[wid] = 1 + max(lv[i] for i in g.inputs)
    return lv


def metrics(net: Netlist) -> CircuitMetrics:
    """Gate count and unit-delay depth over gates that drive an output."""
    live = _live(net)
    kinds = Counter(net.gates[w].kind for w in live
                    if net.gates[w].kind not in _PSEUDO)
    lv = levels(net)
    outs = [w for bus in net.outputs.values() for w in bus]
    depth = max((lv[w] for w in outs), default=0)
    muxes = Counter(c.params["inputs"] for c in net.components
                    if c.name.endswith("mux") and "inputs" in c.params)
    return CircuitMetrics(sum(kinds.values()), depth, dict(sorted(kinds.items())),
                          dict(sorted(muxes.items())))


def to_json(net: Netlist) -> str:
    gates = [{"id": i, "kind": g.kind, "in": list(g.inputs)}
             | ({"value": g.value} if g.kind == "CONST" else {})
             for i, g in enumerate(net.gates) if g.kind != "INPUT"]
    doc = {
        "name": net.name,
        "gates": gates,
        "inputs": [{"name": k, "bits": v} for k, v in net.inputs.items()],
        "outputs": [{"name": k, "bits": v} for k, v in net.outputs.items()],
    }
    return json.dumps(doc, indent=1)


def to_dot(net: Netlist) -> str:
    live = _live(net)
    lines = [f'digraph "{net.name or "netlist"}" {{', "  rankdir=LR;"]
    for name, bus in net.inputs.items():
        for i, w in enumerate(bus):
            lines.append(f'  n{w} [label="{name}[{i}]" shape=box];')
    for w in sorted(live):
        g = net.gates[w]
        if g.kind == "INPUT":
            continue
        label = f"{g.value}" if g.kind == "CONST" else g.kind
        lines.append(f'  n{w} [label="{label}"];')
        for src in g.inputs:
            lines.append(f"  n{src} -> n{w};")
    for name, bus in net.outputs.items():
        for i, w in enumerate(bus):
            lines.append(f'  o_{name}_{i} [label="{name}[{i}]" shape=box];')
            lines.append(f"  n{w} -> o_{name}_{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"
