"""Contracted rotations ``x -> lambda*x + b (mod 1)`` and their rational tongues."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import scalar
from .errors import BadRange, NotCoprime, ParameterOutsideTriangle
from .mapcore import MapSpec, PwMap, build_map
from .orbits import Budget, classify_map


@dataclass(frozen=True)
class ContractedRotationSpec:
    lam: Fraction
    b: Fraction

    def __post_init__(self):
        if not 0 < 1 - self.lam < self.b < 1:
            raise ParameterOutsideTriangle(
                f"(lambda, b) = ({self.lam}, {self.b}) violates 0 < 1 - lambda < b < 1"
            )

    @classmethod
    def create(cls, lam, b) -> "ContractedRotationSpec":
        return cls(scalar.parse_scalar(lam), scalar.parse_scalar(b))

    @property
    def c(self) -> Fraction:
        """Discontinuity ``(1 - b) / lambda``."""
        return (1 - self.b) / self.lam


def contracted_rotation(lam, b) -> PwMap:
    spec = ContractedRotationSpec.create(lam, b)
    return build_map(MapSpec.create([0], [spec.b], spec.lam))


def _check_pq(p: int, q: int):
    if not 1 <= p < q:
        raise BadRange(f"need 1 <= p < q, got p={p}, q={q}")
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"{p}/{q} is not in lowest terms")


def S_coefficient(lam, p: int, q: int):
    """``S(lambda, p/q) = 1 + sum_{k=1}^{q-2} (floor((k+1)p/q) - floor(kp/q)) lambda**k``."""
    _check_pq(p, q)
    lam = scalar.parse_scalar(lam) if isinstance(lam, str) else lam
    s = 1 + 0 * lam
    for k in range(1, q - 1):
        if (k + 1) * p // q - k * p // q:
            s += lam ** k
    return s


@dataclass(frozen=True)
class Tongue:
    p: int
    q: int
    lam: Fraction
    b_lo: Fraction
    b_hi: Fraction

    @property
    def rho(self) -> Fraction:
        return Fraction(self.p, self.q)

    def interior_points(self, count: int) -> list:
        step = (self.b_hi - self.b_lo) / (count + 1)
        return [self.b_lo + step * i for i in range(1, count + 1)]

    def to_row(self, decimal: bool = False) -> str:
        f = lambda v: scalar.fmt(v, decimal)
        return f"{f(self.lam)},{self.p},{self.q},{f(self.b_lo)},{f(self.b_hi)}"


def tongue_interval(lam, p: int, q: int) -> Tongue:
    """Closed b-interval on which the rotation number equals ``p/q``."""
    lam = scalar.parse_scalar(lam) if isinstance(lam, str) else lam
    s = S_coefficient(lam, p, q)
    scale = (1 - lam) / (1 - lam ** q)
    return Tongue(p, q, lam, scale * s, scale * (s + lam ** (q - 1) - lam ** q))


def stern_brocot(q_max: int) -> list:
    """Reduced fractions in (0, 1) with denominator <= q_max, in increasing order."""
    out = []

    def walk(a, b, c, d):
        # mediants strictly between a/b and c/d
        m, n = a + c, b + d
        if n > q_max:
            return
        walk(a, b, m, n)
        out.append((m, n))
        walk(m, n, c, d)

    walk(0, 1, 1, 1)
    return out


def tongue_atlas(q_max: int, lambda_grid) -> list:
    """All tongues with ``q <= q_max`` at each grid slope, clipped to ``1 - lambda < b < 1``."""
    if q_max < 2:
        raise BadRange("q_max must be >= 2")
    rows = []
    order = stern_brocot(q_max)
    for lam in sorted(scalar.parse_scalar(v) for v in lambda_grid):
        if not 0 < lam < 1:
            raise BadRange(f"slope {lam} outside (0, 1)")
        for p, q in order:
            t = tongue_interval(lam, p, q)
            lo, hi = max(t.b_lo, 1 - lam), min(t.b_hi, Fraction(1))
            if lo < hi:
                rows.append(Tongue(p, q, lam, lo, hi))
    return rows


@dataclass(frozen=True)
class RotationResult:
    kind: str  # "EXACT" or "ESTIMATE"
    value: Fraction
    n_steps: int = 0
    history: tuple = ()  # last two Cesaro averages for an estimate

    @property
    def exact(self) -> bool:
        return self.kind == "EXACT"

    def __str__(self):
        if self.exact:
            return f"{scalar.fmt(self.value)} EXACT"
        return f"{float(self.value):.15g} ESTIMATE"


def rotation_number(spec: ContractedRotationSpec, budget: Budget = Budget()) -> RotationResult:
    """Exact ``p/q`` from a certified cycle, else the fraction of visits right of ``c``."""
    pmap = contracted_rotation(spec.lam, spec.b)
    cls = classify_map(pmap, budget)
    if cls.cycles:
        cyc = cls.cycles[0]
        return RotationResult("EXACT", Fraction(cyc.wrap_total(pmap), cyc.period))
    lam, b, c = float(spec.lam), float(spec.b), float(spec.c)
    x, hits, n = 0.0, 0, budget.T_max
    prev = 0.0
    for t in range(n):
        if x >= c:
            hits += 1
            x = lam * x + b - 1
        else:
            x = lam * x + b
        if t == n - 2:
            prev = hits / (n - 1)
    return RotationResult("ESTIMATE", Fraction(hits, n), n, (prev, hits / n))
