"""Orbits, certified periodic cycles and asymptotic-periodicity classification.

A word ``omega`` of length ``p`` is certified as a cycle when the fixed point
``x* = H_omega / (1 - lambda**p)`` of the composed affine branch lies in the
half-open interval ``J`` of points realising ``omega``.  ``J`` is then mapped
into itself by ``f^p`` (an affine contraction on ``J``), so ``x*`` is a genuine
periodic point and ``J`` is a trap: every orbit that visits ``J`` at the
matching phase converges to the cycle.

Candidate words come from repeating windows in the itineraries of singular
points and of one representative per component of ``[0,1) - S^(depth)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import scalar
from .errors import BoundViolation, EmptyItinerary, FloatModeUnsupported, PrecisionLoss, ValidationError
from .mapcore import (
    Itinerary,
    PwMap,
    _check_point,
    _check_word,
    _locate,
    evaluate,
    offset_polynomial,
    singular_points,
)
from .scalar import DOWN, UP, Mode
from .trace import Trace


@dataclass(frozen=True)
class Budget:
    T_max: int = 100_000
    p_max: int = 64
    depth: int = 8
    connection_depth: int = 64
    exact_steps: int = 200
    stride: int = 16

    def __post_init__(self):
        for name in ("T_max", "p_max", "depth", "connection_depth", "exact_steps", "stride"):
            if getattr(self, name) < 1:
                raise ValidationError(f"budget field {name} must be positive")


@dataclass(frozen=True)
class OrbitRecord:
    start: object
    points: tuple
    itinerary: Itinerary
    wraps: tuple


def iterate_orbit(pmap: PwMap, x, T: int) -> OrbitRecord:
    """``T`` steps of the orbit of ``x``.

    Exact maps iterate exactly.  Float maps carry outward-rounded enclosures
    ``(lo, hi)`` and raise :class:`PrecisionLoss` when one straddles a
    singular point.
    """
    if T < 1:
        raise ValidationError("T must be >= 1")
    x = _check_point(pmap, x)
    wraps_of = [br.wrap for br in pmap.branches]
    if pmap.mode is Mode.EXACT:
        pts, itin = [x], []
        for _ in range(T):
            j = _locate(pmap, x)
            itin.append(j)
            x = pmap.lam * x + pmap.deltas[j - 1]
            pts.append(x)
        return OrbitRecord(pts[0], tuple(pts), tuple(itin), tuple(wraps_of[j - 1] for j in itin))

    lam, deltas = pmap.lam, pmap.deltas
    lo = hi = x
    pts, itin = [(lo, hi)], []
    for _ in range(T):
        j = _locate(pmap, lo)
        if _locate(pmap, hi) != j:
            raise PrecisionLoss(f"enclosure [{lo}, {hi}] straddles a singular point")
        itin.append(j)
        lo = DOWN.add(DOWN.mul(lam, lo), deltas[j - 1])
        hi = UP.add(UP.mul(lam, hi), deltas[j - 1])
        pts.append((lo, hi))
    return OrbitRecord(x, tuple(pts), tuple(itin), tuple(wraps_of[j - 1] for j in itin))


def maximal_itinerary_interval(pmap: PwMap, omega: Sequence[int]):
    """Half-open ``(u, v)`` of all points whose order-p itinerary is ``omega``, or None."""
    _check_word(pmap, omega)
    lam = pmap.lam
    u, v = 0 * lam, 0 * lam + 1
    h, lam_t = 0 * lam, 0 * lam + 1
    for j in omega:
        br = pmap.branches[j - 1]
        u = max(u, (br.lo - h) / lam_t)
        v = min(v, (br.hi - h) / lam_t)
        if u >= v:
            return None
        h = lam * h + br.delta
        lam_t *= lam
    return (u, v)


def primitive_root(omega: Sequence[int]) -> tuple:
    w = tuple(omega)
    p = len(w)
    for d in range(1, p + 1):
        if p % d == 0 and w[:d] * (p // d) == w:
            return w[:d]
    return w


@dataclass(frozen=True)
class CertifiedCycle:
    period: int
    omega: Itinerary
    point: Fraction
    trap: tuple

    def orbit(self, pmap: PwMap) -> tuple:
        pts = [self.point]
        for j in self.omega[:-1]:
            pts.append(pmap.lam * pts[-1] + pmap.deltas[j - 1])
        return tuple(pts)

    def wrap_total(self, pmap: PwMap) -> int:
        """Total integer shift over one period (minus the sum of the wraps)."""
        return -sum(pmap.branches[j - 1].wrap for j in self.omega)

    def canonical(self, pmap: PwMap) -> "CertifiedCycle":
        """The same cycle rotated to start at its smallest point."""
        pts = self.orbit(pmap)
        r = min(range(self.period), key=pts.__getitem__)
        if r == 0:
            return self
        word = self.omega[r:] + self.omega[:r]
        return CertifiedCycle(self.period, word, pts[r], maximal_itinerary_interval(pmap, word))

    def to_json(self, decimal: bool = False) -> dict:
        return {
            "period": self.period,
            "point": scalar.fmt(self.point, decimal),
            "omega": list(self.omega),
            "trap": [scalar.fmt(self.trap[0], decimal), scalar.fmt(self.trap[1], decimal)],
        }


def certify_cycle(pmap: PwMap, omega: Sequence[int]) -> Optional[CertifiedCycle]:
    """Certify the cycle coded by ``omega`` (reduced to its primitive root), or None."""
    if not omega:
        raise EmptyItinerary("cannot certify an empty word")
    if pmap.mode is not Mode.EXACT:
        raise FloatModeUnsupported("certification needs exact arithmetic")
    w = primitive_root(omega)
    p = len(w)
    lam_p = pmap.lam ** p
    h = offset_polynomial(pmap, w)
    x_star = h / (1 - lam_p)
    trap = maximal_itinerary_interval(pmap, w)
    if trap is None:
        return None
    u, v = trap
    if not u <= x_star < v:
        return None
    if not (lam_p * u + h >= u and lam_p * v + h <= v):
        return None
    return CertifiedCycle(p, w, x_star, trap)


# -- harvesting ---------------------------------------------------------------


@dataclass
class SeedOutcome:
    seed: Fraction
    cycle: Optional[Fraction] = None  # smallest point of the limit cycle
    steps: int = 0
    entry: Optional[int] = None  # time at which the orbit sat in the trap
    reason: str = ""  # why the seed is unresolved


@dataclass
class Harvest:
    cycles: dict  # smallest point -> canonical CertifiedCycle
    outcomes: list
    words_tried: int = 0

    def sorted_cycles(self) -> list:
        return [self.cycles[k] for k in sorted(self.cycles)]


def seed_points(pmap: PwMap, depth: int) -> list:
    """Singular points plus the midpoint of every component of ``[0,1) - S^(depth)``."""
    pts = list(singular_points(pmap, depth).points)
    ends = pts[1:] + [Fraction(1)]
    mids = [(u + v) / 2 for u, v in zip(pts, ends)]
    return sorted(set(pmap.singular) | set(mids))


def _scan_windows(itin, p_max: int, certify) -> Optional[tuple]:
    n = len(itin)
    for p in range(1, min(p_max, n // 2) + 1):
        if itin[n - p:] == itin[n - 2 * p:n - p]:
            cyc = certify(bytes(itin[n - p:]))
            if cyc is not None:
                return cyc, n - p
    return None


def harvest(pmap: PwMap, budget: Budget = Budget(), seeds=None) -> Harvest:
    if pmap.mode is not Mode.EXACT:
        raise FloatModeUnsupported("cycle search needs an exact-mode map")
    cache: dict = {}

    def certify(word: bytes):
        if word not in cache:
            cyc = certify_cycle(pmap, tuple(word))
            cache[word] = cyc.canonical(pmap) if cyc is not None else None
        return cache[word]

    if seeds is None:
        seeds = seed_points(pmap, budget.depth)
    cycles: dict = {}
    outcomes = []
    for s in seeds:
        tr = Trace(pmap, s, budget.exact_steps)
        out = SeedOutcome(Fraction(s))
        while tr.t < budget.T_max:
            if not tr.step():
                out.reason = "unresolved"
                break
            if tr.t % budget.stride == 0 or tr.t == budget.T_max:
                hit = _scan_windows(tr.itin, budget.p_max, certify)
                if hit is not None:
                    cyc, entry = hit
                    cycles.setdefault(cyc.point, cyc)
                    out.cycle, out.entry = cyc.point, entry
                    break
        else:
            out.reason = "budget"
        out.steps = tr.t
        outcomes.append(out)
    return Harvest(cycles, outcomes, len(cache))


def find_periodic_orbits(pmap: PwMap, budget: Budget = Budget()) -> list:
    """Certified cycles reachable from the seed orbits, sorted by smallest point."""
    return harvest(pmap, budget).sorted_cycles()


# -- classification -------------------------------------------------------------


class Verdict(str, enum.Enum):
    ASYMPTOTICALLY_PERIODIC = "ASYMPTOTICALLY_PERIODIC"
    SINGULAR_CONNECTION = "SINGULAR_CONNECTION"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    cycles: tuple
    singular_assignment: dict  # singular point -> cycle index or None
    budget_used: dict
    connection: object = None
    undecided_reason: str = ""

    def to_json(self, decimal: bool = False) -> dict:
        out = {
            "verdict": self.verdict.value,
            "cycles": [c.to_json(decimal) for c in self.cycles],
            "assignment": {
                scalar.fmt(s, decimal): cid for s, cid in self.singular_assignment.items()
            },
            "budget_used": self.budget_used,
        }
        if self.connection is not None:
            out["connection"] = self.connection.to_json(decimal)
        return out


def classify_map(pmap: PwMap, budget: Budget = Budget()) -> Classification:
    from .singular import detect_connection

    h = harvest(pmap, budget)
    cycles = tuple(h.sorted_cycles())
    index = {c.point: i for i, c in enumerate(cycles)}
    by_seed = {o.seed: o for o in h.outcomes}
    assignment = {}
    for s in pmap.singular:
        o = by_seed[s]
        assignment[s] = index[o.cycle] if o.cycle is not None else None
    used = {
        "T_max": budget.T_max,
        "p_max": budget.p_max,
        "depth": budget.depth,
        "seeds": len(h.outcomes),
        "steps": sum(o.steps for o in h.outcomes),
        "max_steps": max(o.steps for o in h.outcomes),
        "words_certified": h.words_tried,
        "max_period": max((c.period for c in cycles), default=0),
    }
    conn = detect_connection(pmap, budget.connection_depth)
    pending = [o for o in h.outcomes if o.cycle is None]
    reason = ""
    if conn is not None:
        verdict = Verdict.SINGULAR_CONNECTION
    elif not pending:
        verdict = Verdict.ASYMPTOTICALLY_PERIODIC
    else:
        verdict = Verdict.UNDECIDED
        reason = "unresolved" if any(o.reason == "unresolved" for o in pending) else "budget"
    return Classification(verdict, cycles, assignment, used, conn, reason)


@dataclass(frozen=True)
class BoundReport:
    k: int
    n_disc: int
    ell: int
    n_classes: Optional[int]
    n_cycles: int

    @property
    def bound(self) -> int:
        return min(self.n_disc + 1 - self.ell, self.k)


def bound_report(pmap: PwMap, classification: Classification) -> BoundReport:
    """Check the cycle count against ``n + 1 - ell`` and against ``k``."""
    n_disc = pmap.n_branches - 1
    ell = sum(1 for s in pmap.singular[1:] if evaluate(pmap, s) == 0)
    k = pmap.spec.k
    n_cycles = len(classification.cycles)
    assigned = classification.singular_assignment.values()
    n_classes = len(set(assigned)) if all(c is not None for c in assigned) else None
    rep = BoundReport(k, n_disc, ell, n_classes, n_cycles)
    if n_cycles > n_disc + 1 - ell or n_cycles > k:
        raise BoundViolation(f"{n_cycles} cycles exceed the bound: {rep}")
    if n_classes is not None and n_cycles > n_classes:
        raise BoundViolation(f"{n_cycles} cycles but only {n_classes} singular classes")
    return rep
