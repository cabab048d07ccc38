"""Reading b-posit bit patterns.

Run: python3 demos/01_fields_and_decoding.py
"""

from bposit import FormatSpec, decode_fast, decode_reference, format_fields, value_of

spec = FormatSpec.bposit(16, 6, 5)

# a few patterns: smallest positive, one, minus one, largest, NaR
for p in (0x0001, 0x4000, 0xC000, 0x7FFF, 0x8000):
    v = value_of(p, spec)
    print(f"{p:#06x}  {format_fields(p, spec):<22} {v.exact_str():<16} {v.sci_str(6)}")

# the regime never grows past 6 bits, so the fraction never drops below 4 bits
print()
for p in (0x0001, 0x03FF, 0x0400, 0x4000, 0x7C00, 0x7FFF):
    f = decode_reference(p, spec)
    print(f"{p:#06x}  regime r={f.r:>2} size={f.regime_size}  fraction bits={f.frac_bits}")

# The fast decoder does not negate first. It reads the fields of a negative
# word as they are, folds the exponent with the sign, and leaves a carry
# (exp_cin) for later when the fraction is all zeros.
print()
for p in (0xC000, 0xBFFF, 0xC001):
    d = decode_fast(p, spec)
    t = d.effective_exponent(spec)
    print(f"{p:#06x}  one-hot={''.join(map(str, d.one_hot))} regime={d.regime:>2} "
          f"exponent={d.exponent:>2} exp_cin={d.exp_cin}  T={t}+{d.exp_cin}  "
          f"value={value_of(p, spec).sci_str(6)}")
    assert d.fields == decode_reference(p, spec)
