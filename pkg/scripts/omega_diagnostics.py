"""Itinerary growth and box counts of omega-limit samples for a few maps.

The box-count slope is a diagnostic only; it carries no pass/fail claim.

    python3 scripts/omega_diagnostics.py
"""

import argparse
import math
from fractions import Fraction

from pwcontract import MapSpec, build_map, classify_map
from pwcontract.complexity import DEFAULT_EPS, box_dimension_estimate, entropy_profile, omega_limit_sample
from pwcontract.errors import DegenerateFit, PrecisionLoss

MAPS = {
    "remark": (["0", "1/2"], ["1/4", "-1/4"], "1/2"),
    "rotation_1/2": (["0"], ["3/4"], "1/2"),
    "rotation_slow": (["0"], ["51/100"], "49/50"),
    "three_branch": (["0", "1/3", "2/3"], ["1/7", "5/11", "-2/13"], "4/5"),
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmax", type=int, default=40)
    ap.add_argument("--transient", type=int, default=2000)
    ap.add_argument("--sample", type=int, default=20000)
    args = ap.parse_args(argv)

    print("map,verdict,alpha_10,alpha_nmax,entropy_nmax,box_slope,N_finest")
    for name, (a, b, lam) in MAPS.items():
        pmap = build_map(MapSpec.create(a, b, lam))
        verdict = classify_map(pmap).verdict.value
        prof = entropy_profile(pmap, args.nmax)
        try:
            pts = omega_limit_sample(pmap, [Fraction(0)], args.transient, args.sample)
            box = box_dimension_estimate(pts, DEFAULT_EPS)
            slope, n_fine = f"{box.slope_estimate:.4f}", box.rows[-1][1]
        except PrecisionLoss:
            # the orbit accumulates on a singular point (the "remark" map does)
            slope, n_fine = "unresolved", ""
        except DegenerateFit:
            slope, n_fine = "degenerate", len(set(pts.tolist()))
        print(f"{name},{verdict},{prof.alpha(10)},{prof.alpha(args.nmax)},"
              f"{math.log(prof.alpha(args.nmax)) / args.nmax:.4f},{slope},{n_fine}")


if __name__ == "__main__":
    main()
