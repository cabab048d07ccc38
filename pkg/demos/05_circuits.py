"""Gate counts and depths of the six codec circuits.

Run: python3 demos/05_circuits.py
"""

import numpy as np

from bposit.circuit import (
    CircuitKind, build_circuit, default_spec, evaluate, metrics, mismatches, random_inputs,
)

print(f"{'circuit':<11} " + "  ".join(f"N={n:<2} gates/depth" for n in (16, 32, 64)))
for kind in CircuitKind:
    cells = []
    for n in (16, 32, 64):
        m = metrics(build_circuit(kind, default_spec(kind, n)))
        cells.append(f"{m.gate_count:>5} / {m.depth:<8}")
    print(f"{kind.value:<11} " + "  ".join(cells))

# the b-posit decoder keeps a 5-way field mux at every width; only the data
# buses get wider, so depth hardly moves while the standard posit LBC and
# shifter gain a level per doubling
net = build_circuit("bposit-dec", default_spec("bposit-dec", 64))
mux = net.component("field_mux")
print(f"\n64-bit b-posit decoder field mux: {mux.params['inputs']} inputs, "
      f"{mux.params['width']} bits wide")

out = evaluate(net, p=0xC000_0000_0000_0000)
print("decode of -1:", {k: out[k] for k in ("s", "regime", "exponent", "exp_cin", "one_hot")})

rng = np.random.default_rng(0)
for kind in ("bposit-dec", "bposit-enc"):
    spec = default_spec(kind, 32)
    bad = mismatches(kind, spec, random_inputs(kind, spec, 20000, rng))
    print(f"{kind} vs behavioral codec on 20000 random vectors: {sum(bad.values())} mismatches")
