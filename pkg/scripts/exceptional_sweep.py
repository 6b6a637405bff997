"""Undecided fraction of a slope sweep at increasing budgets.

    python3 scripts/exceptional_sweep.py --b 3/4 --grid 100 --lambda-min 1/4
"""

import argparse
from fractions import Fraction

from pwcontract import Budget
from pwcontract.complexity import sweep_lambda
from pwcontract.scalar import parse_scalar


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", default="0")
    ap.add_argument("--b", default="3/4")
    ap.add_argument("--grid", type=int, default=100)
    ap.add_argument("--lambda-min", dest="lam_min", default="1/4")
    ap.add_argument("--budgets", default="1000,10000,100000")
    args = ap.parse_args(argv)

    lo = parse_scalar(args.lam_min)
    grid = [Fraction(j, args.grid) for j in range(1, args.grid) if Fraction(j, args.grid) > lo]
    a = args.a.split(",")
    b = args.b.split(",")
    print("budget,n,undecided,undecided_fraction,undecided_slopes")
    for T in (int(v) for v in args.budgets.split(",")):
        rep = sweep_lambda(a, b, grid, Budget(T_max=T))
        lams = " ".join(str(r.lam) for r in rep.rows if r.verdict.value == "UNDECIDED")
        n_und = rep.counts.get("UNDECIDED", 0)
        print(f"{T},{len(grid)},{n_und},{float(rep.undecided_fraction):.4f},{lams}")


if __name__ == "__main__":
    main()
