"""Rational tongues of contracted rotations on a slope grid, checked by simulation.

For each tongue the midpoint b is fed to rotation_number and, independently,
to a plain float orbit; both must agree with p/q.

    python3 scripts/tongue_atlas.py --qmax 8 --grid 20 --out atlas.csv
"""

import argparse
import sys
from fractions import Fraction

from pwcontract import ContractedRotationSpec, rotation_number, tongue_atlas


def wrap_frequency(lam, b, n=20000, burn=1000):
    x, wraps = 0.0, 0
    lam, b = float(lam), float(b)
    for t in range(burn + n):
        x = lam * x + b
        if x >= 1:
            x -= 1
            wraps += t >= burn
    return wraps / n


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--qmax", type=int, default=8)
    ap.add_argument("--grid", type=int, default=20)
    ap.add_argument("--out")
    args = ap.parse_args(argv)

    grid = [Fraction(j, args.grid) for j in range(1, args.grid)]
    lines = ["lambda,p,q,b_lo,b_hi,rho_certified,rho_simulated"]
    for t in tongue_atlas(args.qmax, grid):
        mid = (t.b_lo + t.b_hi) / 2
        r = rotation_number(ContractedRotationSpec(t.lam, mid))
        lines.append(f"{t.to_row()},{r},{wrap_frequency(t.lam, mid):.6f}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
