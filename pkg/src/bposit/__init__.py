"""Bounded posits: bit-exact codecs, quire arithmetic, circuit models and accuracy analysis.

A b-posit ``<N, rS, eS>`` is a posit whose regime field stops growing at
``rS`` bits. Standard posits and IEEE binary16/32/64 are included for
comparison.
"""

__version__ = "0.1.0"

from .analysis import (
    AccuracySample, OutOfRange, ZoneReport, accuracy_sweep, decimal_accuracy,
    golden_zone_stats, pattern_fraction_by_class, pattern_fraction_by_decode,
    sweep_csv,
)
from .arithmetic import (
    Quire, add, fused_dot, mul, naive_dot, quire_accumulate, quire_read,
    quire_size_of,
)
from .codec import (
    decode_fast, decode_reference, encode_fields, encode_hardware,
    format_fields, parse_pattern, regime_one_hot, regime_size_of,
    regime_string_of, round_real_to_bposit, value_of,
)
from .core import (
    ExactValue, FieldOutOfRange, FieldSet, FormatKind, FormatMismatch,
    FormatSpec, InvalidFormat, InvalidRegimeValue, ValueClass, format_extremes,
    parse_format,
)
from .float_codec import (
    FloatClass, RecodedFloat, decode_float, encode_float, round_real_to_float,
)
from .posit_codec import decode_standard, encode_standard, leading_bit_count

__all__ = [
    "AccuracySample", "OutOfRange", "ZoneReport", "accuracy_sweep",
    "decimal_accuracy", "golden_zone_stats", "pattern_fraction_by_class",
    "pattern_fraction_by_decode", "sweep_csv",
    "Quire", "add", "fused_dot", "mul", "naive_dot", "quire_accumulate",
    "quire_read", "quire_size_of",
    "decode_fast", "decode_reference", "encode_fields", "encode_hardware",
    "format_fields", "parse_pattern", "regime_one_hot", "regime_size_of",
    "regime_string_of", "round_real_to_bposit", "value_of",
    "ExactValue", "FieldOutOfRange", "FieldSet", "FormatKind", "FormatMismatch",
    "FormatSpec", "InvalidFormat", "InvalidRegimeValue", "ValueClass",
    "format_extremes", "parse_format",
    "FloatClass", "RecodedFloat", "decode_float", "encode_float",
    "round_real_to_float",
    "decode_standard", "encode_standard", "leading_bit_count",
]
