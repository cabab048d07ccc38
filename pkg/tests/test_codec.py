import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from oracles import NAR, ZERO, bposit_value, round_oracle

from bposit import (
    FieldOutOfRange, FieldSet, FormatSpec, InvalidRegimeValue, ValueClass,
    decode_fast, decode_reference, encode_fields, encode_hardware,
    format_fields, parse_pattern, regime_one_hot, regime_size_of,
    regime_string_of, round_real_to_bposit, value_of,
)
from bposit.codec import fold_fields, one_hot_from_xor

B16 = FormatSpec.bposit(16, 6, 5)
B32 = FormatSpec.bposit(32, 6, 5)


# --- regime tables --------------------------------------------------------------------

# XORed bits [N-3:N-7] (X as 0) -> one-hot string
ONE_HOT_ROWS = [
    ("1XXXX", "100000"), ("01XXX", "010000"), ("001XX", "001000"),
    ("0001X", "000100"), ("00001", "000010"), ("00000", "000001"),
]


@pytest.mark.parametrize("xored,expected", ONE_HOT_ROWS)
def test_one_hot_rows(xored, expected):
    for fill in range(2 ** xored.count("X")):
        bits = xored
        for b in format(fill, f"0{xored.count('X')}b"):
            bits = bits.replace("X", b, 1)
        assert "".join(map(str, one_hot_from_xor(int(bits, 2), 5))) == expected


@pytest.mark.parametrize("xored,expected", ONE_HOT_ROWS)
@pytest.mark.parametrize("s,run", [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_one_hot_rows_from_patterns(xored, expected, s, run):
    # regime MSB `run`; the next five bits are `run` XOR the table input
    taps = int(xored.replace("X", "0"), 2) ^ (0b11111 if run else 0)
    bits = (s << 15) | (run << 14) | (taps << 9) | 0x1
    assert "".join(map(str, regime_one_hot(bits, B16))) == expected


REGIME_SIZE_ROWS = [
    ("0000", "1111", 2), ("0001", "1110", 3), ("0010", "1101", 4),
    ("0011", "1100", 5), ("0100", "1011", 6), ("0101", "1010", 6),
]


@pytest.mark.parametrize("pos,neg,size", REGIME_SIZE_ROWS)
def test_regime_size_rows(pos, neg, size):
    assert regime_size_of(int(pos, 2)) == size
    assert regime_size_of(int(neg, 2)) == size


REGIME_STRING_ROWS = [
    ("000", 2, "100000", "0100000"), ("001", 3, "010000", "0010000"),
    ("010", 4, "001000", "0001000"), ("011", 5, "000100", "0000100"),
    ("100", 6, "000010", "0000010"), ("101", 6, "000001", "0000001"),
]


@pytest.mark.parametrize("folded,size,decoder,intermediate", REGIME_STRING_ROWS)
def test_regime_string_rows(folded, size, decoder, intermediate):
    for r4 in (int(folded, 2), int(folded, 2) ^ 0b1111):
        for s in (0, 1):
            rs = regime_string_of(r4, s)
            assert format(rs.folded, "03b") == folded
            assert rs.width == size
            assert format(rs.decoder_output, "06b") == decoder
            assert format(rs.intermediate, "07b") == intermediate


def test_regime_string_bits_match_run_length():
    # positive words: r >= 0 is a run of ones ended by a zero, r < 0 the reverse
    for r in range(-6, 6):
        s = regime_string_of(r & 0xF, 0)
        k = r + 1 if r >= 0 else -r
        run = "1" if r >= 0 else "0"
        want = (run * k + ("0" if run == "1" else "1"))[:6]
        assert format(s.bits, f"0{s.width}b") == want


def test_regime_value_out_of_range():
    with pytest.raises(InvalidRegimeValue):
        regime_size_of(0b0110)
    with pytest.raises(InvalidRegimeValue):
        regime_size_of(16)


# --- decoding ---------------------------------------------------------------------

def _matches_oracle(spec):
    for p in range(1 << spec.n):
        v, o = value_of(p, spec), bposit_value(p, spec.n, spec.rs, spec.es)
        if o is ZERO:
            assert v.cls is ValueClass.ZERO
        elif o is NAR:
            assert v.cls is ValueClass.NAR
        else:
            assert v.to_fraction() == o, hex(p)


def test_decode_matches_oracle(small_bposit):
    _matches_oracle(small_bposit)


def test_decode_matches_oracle_standard(small_posit):
    _matches_oracle(small_posit.as_bposit())


def test_fast_equals_reference_and_round_trips(small_bposit):
    spec = small_bposit
    for p in range(1 << spec.n):
        ref = decode_reference(p, spec)
        assert decode_fast(p, spec).fields == ref
        assert encode_fields(ref, spec) == p


def test_values_are_monotone(small_bposit):
    spec = small_bposit
    order = sorted(range(1 << spec.n), key=lambda p: p - (1 << spec.n) if p >> (spec.n - 1) else p)
    vals = [value_of(p, spec).to_fraction() for p in order[1:]]  # NaR first
    assert all(a < b for a, b in zip(vals, vals[1:]))


@given(st.integers(0, 2**32 - 1))
def test_fast_equals_reference_32(p):
    assert decode_fast(p, B32).fields == decode_reference(p, B32)


@given(st.integers(1, 2**32 - 1))
def test_negation_is_twos_complement(p):
    v = value_of(p, B32)
    w = value_of(-p & B32.mask, B32)
    if v.cls is ValueClass.REAL:
        assert w.to_fraction() == -v.to_fraction()


def test_decoder_examples():
    f = decode_reference(0x0001, B16)
    assert (f.s, f.r, f.e, f.frac, f.frac_bits) == (0, -6, 0, 1, 4)
    assert format_fields(0x0001, B16) == "0|000000|00000|0001"
    assert value_of(0x0001, B16).to_fraction() == Fraction(17, 16) / 2**192
    assert value_of(0x4000, B16).to_fraction() == 1
    assert decode_reference(0x8000, B16).cls is ValueClass.NAR
    assert decode_reference(0, B16).cls is ValueClass.ZERO


def test_fast_decode_of_negative_word_defers_carry():
    d = decode_fast(0xC000, B16)  # -1: raw fields read as-is
    assert d.exponent == 31 and d.exp_cin == 1 and d.regime == -1
    assert d.effective_exponent(B16) + d.exp_cin == 0
    assert d.one_hot == (1, 0, 0, 0, 0, 0)
    assert value_of(0xC000, B16).to_fraction() == -1


def test_magnitude_fields_match_negation():
    for p in range(0x8001, 0x10000, 97):
        mag = decode_fast(p, B16).magnitude_fields(B16)
        assert mag == decode_reference(-p & 0xFFFF, B16)


# --- encoding -------------------------------------------------------------------------

def test_encoder_inverts_fast_decode_on_negative_words():
    # exponents that carry into the regime (e.g. -1 = 0xC000) are among these
    for p in range(0x8001, 0x10000):
        s, r, e, f = fold_fields(decode_reference(p, B16), B16)
        d = decode_fast(p, B16)
        t = d.effective_exponent(B16) + d.exp_cin
        assert (r << 5) + e == t
        assert encode_hardware(s, r, e, f, B16) == p


def test_encode_rejects_bad_fields():
    with pytest.raises(FieldOutOfRange):
        encode_fields(FieldSet(0, 6, 0, 0, 4, 6), B16)
    with pytest.raises(FieldOutOfRange):
        encode_fields(FieldSet(0, 0, 32, 0, 8, 2), B16)
    with pytest.raises(FieldOutOfRange):
        encode_fields(FieldSet(0, 0, 0, 0, 7, 2), B16)
    with pytest.raises(FieldOutOfRange):
        encode_fields(FieldSet(0, -6, 0, 0, 4, 6), B16)


def test_encode_flags():
    assert encode_hardware(0, 0, 0, 0, B16, nar=True) == 0x8000
    assert encode_hardware(1, 3, 1, 5, B16, zero=True) == 0


# --- rounding -----------------------------------------------------------------------

def test_rounding_matches_midpoint_oracle(small_bposit):
    spec = small_bposit
    n, rs, es = spec.n, spec.rs, spec.es
    for p in range(1, (1 << (n - 1)) - 1):
        lo, hi = bposit_value(p, n, rs, es), bposit_value(p + 1, n, rs, es)
        mid = bposit_value((p << 1) | 1, n + 1, rs, es)
        for x in (mid, (lo + mid) / 2, (mid + hi) / 2, (lo + hi) / 2, -mid):
            assert round_real_to_bposit(x, spec) == round_oracle(x, n, rs, es), (hex(p), x)


@given(st.fractions(min_value=Fraction(-2**200), max_value=Fraction(2**200)).filter(bool))
def test_rounding_matches_oracle_32(x):
    assert round_real_to_bposit(x, B32) == round_oracle(x, 32, 6, 5)


def test_rounding_is_idempotent(small_bposit):
    spec = small_bposit
    for p in range(1 << spec.n):
        v = value_of(p, spec)
        assert round_real_to_bposit(v, spec) == p


def test_rounding_saturates():
    assert round_real_to_bposit(Fraction(2) ** 400, B32) == 0x7FFFFFFF
    assert round_real_to_bposit(Fraction(1, 2**400), B32) == 1
    assert round_real_to_bposit(-Fraction(1, 2**400), B32) == 0xFFFFFFFF
    assert round_real_to_bposit(0, B32) == 0


def test_pi_in_sixteen_bits():
    p = round_real_to_bposit(Fraction(math.pi), B16)
    assert value_of(p, B16).to_fraction() == Fraction(201, 64)  # 3.140625
    assert format_fields(p, B16) == "0|10|00001|10010010"


# --- text ---------------------------------------------------------------------------

def test_parse_pattern():
    assert parse_pattern("0x0001", B16) == 1
    assert parse_pattern("0|000000|00000|0001", B16) == 1
    assert parse_pattern("0b101", B16) == 5
    with pytest.raises(ValueError):
        parse_pattern("0101", B16)
    with pytest.raises(FieldOutOfRange):
        parse_pattern("0x10000", B16)
