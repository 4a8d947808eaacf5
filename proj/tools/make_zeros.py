#!/usr/bin/env python3
"""Regenerate data/zeros_1000.txt: imaginary parts of the first nontrivial
zeros of the Riemann zeta function on the critical line, ascending, 18
significant digits, one per line.  Requires mpmath."""
import sys

from mpmath import mp, zetazero

mp.dps = 25

count = int(sys.argv[1]) if len(sys.argv) > 1 else 1000
out = sys.argv[2] if len(sys.argv) > 2 else "data/zeros_1000.txt"

with open(out, "w") as f:
    f.write("# imaginary parts of the first %d nontrivial zeta zeros\n" % count)
    f.write("# computed with mpmath.zetazero at 25 decimal digits\n")
    for n in range(1, count + 1):
        f.write(mp.nstr(zetazero(n).imag, 18, strip_zeros=False) + "\n")
print("wrote", out)
