"""Gate-level models of the posit, b-posit and IEEE codecs."""

from .circuits import (
    CircuitKind, UnsupportedKindForSpec, build_circuit, default_spec,
    domain_inputs, mismatches, random_inputs, reference_outputs,
)
from .netlist import (
    Builder, CircuitMetrics, Netlist, WidthMismatch, evaluate, fan_in_cone, metrics,
    simulate, simulate_batch, to_dot, to_json,
)

__all__ = [
    "CircuitKind", "UnsupportedKindForSpec", "build_circuit", "default_spec",
    "domain_inputs", "mismatches",
    "random_inputs", "reference_outputs", "Builder", "CircuitMetrics",
    "Netlist", "WidthMismatch", "evaluate", "fan_in_cone", "metrics", "simulate",
    "simulate_batch", "to_dot", "to_json",
]
