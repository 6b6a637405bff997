"""Empirical complexity probes: itinerary growth, box counting, slope sweeps."""

from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateFit, PrecisionLoss, ValidationError
from .mapcore import MapSpec, PwMap, build_map, singular_levels, spec_is_Z_independent
from .orbits import Budget, Classification, Verdict, classify_map
from .parallel import pmap_ordered
from .trace import Trace


@dataclass(frozen=True)
class EntropyProfile:
    rows: tuple  # (n, alpha_n, log(alpha_n)/n)

    def alpha(self, n: int) -> int:
        return self.rows[n - 1][1]


def entropy_profile(pmap: PwMap, n_max: int) -> EntropyProfile:
    """Itinerary counts ``alpha_n`` for ``n = 1..n_max``."""
    if n_max < 2:
        raise ValidationError("n_max must be >= 2")
    rows = []
    for n, pts in enumerate(singular_levels(pmap), start=1):
        a = len(pts)
        rows.append((n, a, math.log(a) / n))
        if n == n_max:
            break
    return EntropyProfile(tuple(rows))


def omega_limit_sample(pmap: PwMap, seeds, T_transient: int, T_sample: int, exact_steps: int = 200) -> np.ndarray:
    """Orbit points with indices in ``[T_transient, T_transient + T_sample)``, as floats."""
    if T_transient < 1 or T_sample < 1:
        raise ValidationError("T_transient and T_sample must be >= 1")
    out = []
    for s in seeds:
        tr = Trace(pmap, Fraction(s), exact_steps)
        last = T_transient + T_sample - 1
        for t in range(last + 1):
            if t >= T_transient:
                out.append(float(tr.value))
            if t < last and not tr.step():
                raise PrecisionLoss(f"orbit of {s} unresolved at step {tr.t}")
    return np.asarray(out, dtype=float)


@dataclass(frozen=True)
class BoxCountProfile:
    rows: tuple  # (epsilon, N_eps)
    slope_estimate: float


def box_dimension_estimate(points, eps_list) -> BoxCountProfile:
    """Occupied ``eps``-boxes of a grid anchored at 0, with a log-log slope.

    The slope is fitted over the epsilons within two decades of the finest.
    """
    eps = [float(e) for e in eps_list]
    if len(eps) < 2 or any(b >= a for a, b in zip(eps, eps[1:])) or eps[-1] <= 0:
        raise ValidationError("need at least two strictly decreasing positive epsilons")
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise DegenerateFit("empty point set")
    counts = [int(np.unique(np.floor(pts / e)).size) for e in eps]
    if len(set(counts)) < 2:
        raise DegenerateFit("box counts do not vary over the epsilon ladder")
    window = [i for i, e in enumerate(eps) if e <= eps[-1] * 100]
    if len(window) < 2:
        window = [len(eps) - 2, len(eps) - 1]
    x = np.log([1 / eps[i] for i in window])
    y = np.log([counts[i] for i in window])
    slope = float(np.polyfit(x, y, 1)[0])
    return BoxCountProfile(tuple(zip(eps, counts)), slope)


DEFAULT_EPS = tuple(2.0 ** -k for k in range(4, 17))


@dataclass(frozen=True)
class SweepRow:
    lam: Fraction
    verdict: Verdict
    n_cycles: int
    max_period: int
    undecided_reason: str


@dataclass(frozen=True)
class SweepReport:
    grid: tuple
    rows: tuple

    @property
    def verdicts(self) -> tuple:
        return tuple(r.verdict for r in self.rows)

    @property
    def counts(self) -> Counter:
        return Counter(v.value for v in self.verdicts)

    @property
    def undecided_fraction(self) -> Fraction:
        n = sum(v is Verdict.UNDECIDED for v in self.verdicts)
        return Fraction(n, len(self.rows)) if self.rows else Fraction(0)


def _sweep_one(args) -> SweepRow:
    spec, budget = args
    c: Classification = classify_map(build_map(spec), budget)
    return SweepRow(
        spec.lam,
        c.verdict,
        len(c.cycles),
        max((cy.period for cy in c.cycles), default=0),
        c.undecided_reason,
    )


def sweep_lambda(a, b, lambda_grid, budget: Budget = Budget(), threads: int | None = None) -> SweepReport:
    """Classify ``f_{a,b,lambda}`` at every slope of the grid."""
    base = MapSpec.create(a, b, Fraction(1, 2))
    if not spec_is_Z_independent(base):
        warnings.warn("tuples a, b are not Z-independent; the generic picture may fail", stacklevel=2)
    grid = tuple(sorted(Fraction(v) for v in lambda_grid))
    jobs = [(base.with_lambda(lam), budget) for lam in grid]
    rows = pmap_ordered(_sweep_one, jobs, threads)
    return SweepReport(grid, tuple(rows))
