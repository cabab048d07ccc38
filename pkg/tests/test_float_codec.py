import math
import struct
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from oracles import ieee_bits_to_float, ieee_round_bits

from bposit import FloatClass, FormatSpec, decode_float, encode_float, round_real_to_float
from bposit.float_codec import RecodedFloat, canonical_nan, float_value

F16, F32, F64 = FormatSpec.ieee(16), FormatSpec.ieee(32), FormatSpec.ieee(64)


def test_binary16_against_numpy():
    for p in range(1 << 16):
        r = decode_float(p, F16)
        x = ieee_bits_to_float(p, 16)
        if math.isnan(x):
            assert r.cls is FloatClass.NAN
            assert encode_float(r, F16) == canonical_nan(F16)
            continue
        if math.isinf(x):
            assert r.cls is FloatClass.INF and r.sign == (x < 0)
        else:
            assert float(r.to_exact().to_fraction()) == x
            if x != 0:
                assert 1 <= r.significand < 2
        assert encode_float(r, F16) == p


@given(st.integers(0, 2**64 - 1))
def test_binary64_round_trip(p):
    r = decode_float(p, F64)
    x = ieee_bits_to_float(p, 64)
    if r.is_finite:
        assert float(r.to_exact().to_fraction()) == x
        assert encode_float(r, F64) == p
        assert round_real_to_float(r.to_exact(), F64) == p or x == 0
    else:
        assert math.isinf(x) or math.isnan(x)


@given(st.floats(allow_nan=False, allow_infinity=False).filter(bool))
@pytest.mark.parametrize("n", [16, 32])
def test_rounding_matches_hardware(n, x):
    # a double is exact, so numpy's conversion is a correctly rounded oracle
    want = ieee_round_bits(x, n)
    assert round_real_to_float(Fraction(x), FormatSpec.ieee(n)) == want


def test_subnormals_are_normalized():
    r = decode_float(0x0001, F16)
    assert r.cls is FloatClass.SUBNORMAL
    assert r.significand == 1 and r.exp == -24
    r = decode_float(0x0200, F16)
    assert r.exp == -15 and r.significand == 1


def test_encode_renormalizes_and_rounds():
    # sig 3 with frac_bits 0 is 3.0
    assert encode_float(RecodedFloat(FloatClass.NORMAL, 0, 1, 3, 0), F32) == struct.unpack("<I", struct.pack("<f", 6.0))[0]
    # just below the smallest subnormal's half rounds to zero; above it to 1 ulp
    assert encode_float(RecodedFloat(FloatClass.NORMAL, 0, -25, 1, 0), F16) == 0
    assert encode_float(RecodedFloat(FloatClass.NORMAL, 0, -25, 3, 1), F16) == 1
    assert encode_float(RecodedFloat(FloatClass.NORMAL, 1, 16, 1, 0), F16) == 0xFC00


def test_values_and_specials():
    assert float_value(0x7C00, F16) is None
    assert float_value(0x3C00, F16).to_fraction() == 1
    assert round_real_to_float(Fraction(70000), F16) == 0x7C00
    assert round_real_to_float(-Fraction(1, 2**30), F16) == 0x8000
    assert np.float16(1).view(np.uint16) == 0x3C00
    with pytest.raises(ValueError):
        decode_float(0x7C00, F16).to_exact()
