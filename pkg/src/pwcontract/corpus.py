"""Seeded random corpora of rational maps for property checks and experiments."""

from __future__ import annotations

import random
from fractions import Fraction

from .mapcore import MapSpec, build_map
from .orbits import Budget, bound_report, classify_map
from .parallel import pmap_ordered


def random_fraction(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int) -> Fraction:
    """Uniform-ish rational strictly inside ``(lo, hi)`` with denominator <= max_den."""
    while True:
        q = rng.randint(2, max_den)
        p = rng.randint(int(lo * q) - 1, int(hi * q) + 1)
        f = Fraction(p, q)
        if lo < f < hi:
            return f


def random_spec(rng: random.Random, k: int, max_den: int = 50) -> MapSpec:
    cuts = set()
    while len(cuts) < k - 1:
        cuts.add(random_fraction(rng, Fraction(0), Fraction(1), max_den))
    a = [Fraction(0)] + sorted(cuts)
    b = [random_fraction(rng, Fraction(-1), Fraction(2), max_den) for _ in range(k)]
    lam = random_fraction(rng, Fraction(0), Fraction(1), max_den)
    return MapSpec.create(a, b, lam)


def random_corpus(n: int, seed: int = 0, k_max: int = 4, max_den: int = 50) -> list:
    rng = random.Random(seed)
    return [random_spec(rng, rng.randint(1, k_max), max_den) for _ in range(n)]


def _bound_row(args):
    spec, budget = args
    pmap = build_map(spec)
    cls = classify_map(pmap, budget)
    return cls, bound_report(pmap, cls)


def bound_suite(specs, budget: Budget = Budget(), threads: int | None = None) -> list:
    """``(Classification, BoundReport)`` per spec, in input order.

    ``bound_report`` raises :class:`BoundViolation` on the first map whose
    certified cycles exceed ``min(k, n_disc + 1 - ell)``.
    """
    return pmap_ordered(_bound_row, [(s, budget) for s in specs], threads)
