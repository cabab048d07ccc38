"""Decimals of accuracy across magnitudes for three 32-bit formats.

Run: python3 demos/03_accuracy_curves.py [out.csv]

Prints a coarse text plot and the golden zone / fovea summary. With an
argument, the full per-binade CSV is written there too.
"""

import sys

from bposit import FormatSpec, accuracy_sweep, golden_zone_stats, sweep_csv

formats = [FormatSpec.ieee(32), FormatSpec.posit(32, 2), FormatSpec.bposit(32, 6, 5)]
samples = accuracy_sweep(formats, samples_per_binade=8, seed=0, lo=-200, hi=200)

if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as fh:
        fh.write(sweep_csv(samples, seed=0, samples_per_binade=8))
    print(f"wrote {sys.argv[1]}")

curves = {f.name: {} for f in formats}
for s in samples:
    curves[s.format.name][s.log2_magnitude] = s.decimals

# one row per 16 binades, one bar per format (10 characters a decimal)
print(f"{'log2|x|':>8}  " + "  ".join(f"{f.name:<24}" for f in formats))
for b in range(-192, 192, 16):
    cells = []
    for f in formats:
        d = curves[f.name].get(b)
        cells.append(" " * 24 if d is None else f"{'#' * round(d * 2):<18}{d:6.2f}")
    print(f"{b:>8}  " + "  ".join(cells))

print()
for spec in formats[1:]:
    r = golden_zone_stats(spec, formats[0])
    lo, hi = r.golden_zone_log2
    flo, fhi = r.fovea_log2
    print(f"{spec.name}: at least as accurate as binary32 on [2^{lo}, 2^{hi}), which holds "
          f"{float(r.pattern_fraction):.2%} of all patterns; peak {r.peak_decimals:.2f} "
          f"decimals on [2^{flo}, 2^{fhi})")

f32 = curves["ieee:32"][0]
print(f"\nnear 1: binary32 {f32:.3f}, posit32 {curves['posit:32:2'][0]:.3f}, "
      f"b-posit32 {curves['bposit:32:6:5'][0]:.3f} decimals")
