"""Singular connections, connection polynomials and the bifurcation set V.

A singular connection is a branch word carrying one partition point
``a_i`` (possibly as a left limit) exactly onto another ``a_j``.  Over a
parameter interval where the branch offsets are constant, each candidate
connection is a polynomial equation in ``lambda``; its roots are isolated by
exact-rational bisection.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import scalar
from .errors import FloatModeUnsupported, IdenticallyZero, ValidationError
from .mapcore import MapSpec, PwMap, _locate
from .scalar import Mode


@dataclass(frozen=True)
class Connection:
    omega: tuple
    x: Fraction
    y: Fraction
    side: str = "right"  # "left": the orbit starts from the left limit at x

    @property
    def order(self) -> int:
        return len(self.omega)

    def holds(self, pmap: PwMap) -> bool:
        """Re-check ``y == lambda**n * x + H_omega`` exactly."""
        v = self.x
        for j in self.omega:
            v = pmap.lam * v + pmap.deltas[j - 1]
        return v == self.y

    def to_json(self, decimal: bool = False) -> dict:
        return {
            "order": self.order,
            "omega": list(self.omega),
            "x": scalar.fmt(self.x, decimal),
            "y": scalar.fmt(self.y, decimal),
            "side": self.side,
        }


def detect_connection(pmap: PwMap, depth: int = 64) -> Optional[Connection]:
    """Lowest-order exact hit of the partition points by their own forward orbits.

    Each ``a_j < 1`` is followed from the right and each ``a_j > 0`` from the
    left; the left seed uses the branch ending at ``a_j`` for its first step
    and right-continuous branching afterwards.  ``a_k = 1`` only has a left
    seed.  Ties at equal order go to the first seed in the order
    ``a_0+, a_1-, a_1+, ...``.
    """
    if pmap.mode is not Mode.EXACT:
        raise FloatModeUnsupported("connections are detected in exact mode only")
    targets = set(pmap.spec.a)
    lam, deltas = pmap.lam, pmap.deltas
    # (start, side, current point, branch for next step, word so far)
    orbits = []
    for a in pmap.spec.a:
        if a > 0:
            orbits.append([a, "left", a, bisect_left(pmap.singular, a), []])
        if a < 1:
            orbits.append([a, "right", a, _locate(pmap, a), []])
    for _ in range(depth):
        for orb in orbits:
            if orb[3] is None:
                continue
            x0, side, x, j, word = orb
            word.append(j)
            x = lam * x + deltas[j - 1]
            if x in targets:
                return Connection(tuple(word), x0, x, side)
            orb[2], orb[3] = x, _locate(pmap, x)
    return None


@dataclass(frozen=True)
class ConnectionPolynomial:
    """Polynomial in lambda, coefficients in ascending powers."""

    coeffs: tuple
    meta: tuple = ()

    def __call__(self, lam):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * lam + c
        return acc

    @property
    def degree(self) -> int:
        nz = [i for i, c in enumerate(self.coeffs) if c != 0]
        return nz[-1] if nz else -1

    def derivative(self) -> "ConnectionPolynomial":
        return ConnectionPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


def connection_polynomial(omega: Sequence[int], x, y, deltas) -> ConnectionPolynomial:
    """``Q(lambda) = y - (lambda**n * x + sum_j lambda**j * delta_{omega[n-1-j]})``.

    ``deltas`` maps 1-based branch indices to offsets: either a sequence
    indexed from branch 1 or a dict.
    """
    if not omega:
        raise ValidationError("connection word must be nonempty")
    x, y = scalar.parse_scalar(x), scalar.parse_scalar(y)
    if isinstance(deltas, dict):
        get = lambda j: scalar.parse_scalar(deltas[j])
    else:
        get = lambda j: scalar.parse_scalar(deltas[j - 1])
    n = len(omega)
    coeffs = [y - get(omega[-1])]
    coeffs += [-get(omega[n - 1 - j]) for j in range(1, n)]
    coeffs.append(-x)
    poly = ConnectionPolynomial(tuple(coeffs), (x, y, tuple(omega)))
    if poly.is_zero():
        raise IdenticallyZero("connection polynomial vanishes identically (Z-dependent tuples)")
    return poly


@dataclass(frozen=True)
class RootBracket:
    """Either an exact root (``lo == hi == exact``) or a sign-change bracket."""

    lo: Fraction
    hi: Fraction
    exact: Optional[Fraction] = None

    def to_row(self, decimal: bool = False) -> str:
        ex = scalar.fmt(self.exact, decimal) if self.exact is not None else ""
        return f"{scalar.fmt(self.lo, decimal)},{scalar.fmt(self.hi, decimal)},{ex}"


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _bisect(f, lo, hi, width):
    """Shrink a sign-change bracket of ``f`` to ``width``; returns (lo, hi, exact)."""
    s_lo = _sign(f(lo))
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = _sign(f(mid))
        if s == 0:
            return mid, mid, mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi, None


def _recognise(poly, lo, hi):
    """Small-denominator rational root inside ``[lo, hi]``, if there is one."""
    if hi == lo:
        return lo if poly(lo) == 0 else None
    max_den = max(2, math.isqrt(int(1 / (hi - lo))))
    r = ((lo + hi) / 2).limit_denominator(max_den)
    if lo <= r <= hi and poly(r) == 0:
        return r
    return None


def isolate_roots(poly: ConnectionPolynomial, interval=(Fraction(0), Fraction(1)), width=Fraction(1, 1024)) -> list:
    """Roots of ``poly`` in the open ``interval``, as brackets no wider than ``width``.

    A uniform grid finds sign changes; cells without one get a single
    derivative pass, which splits at a critical point where ``poly`` changes
    sign (close pairs) or vanishes (double roots).  Roots of even multiplicity
    that are irrational may still be missed.
    """
    if poly.is_zero():
        raise IdenticallyZero("cannot isolate roots of the zero polynomial")
    lo, hi = map(scalar.parse_scalar, interval)
    width = scalar.parse_scalar(width)
    deg = max(poly.degree, 1)
    cells = max(64, 8 * deg)
    grid = [lo + (hi - lo) * i / cells for i in range(cells + 1)]
    vals = [poly(g) for g in grid]
    dpoly = poly.derivative()
    found = []

    def add(a, b, ex):
        if ex is None:
            ex = _recognise(poly, a, b)
        found.append(RootBracket(a, b, ex) if ex is None or a == b else RootBracket(ex, ex, ex))

    for i in range(cells):
        a, b = grid[i], grid[i + 1]
        va, vb = vals[i], vals[i + 1]
        if i > 0 and va == 0:
            add(a, a, a)
            continue
        if va == 0 or vb == 0:
            continue
        if _sign(va) != _sign(vb):
            add(*_bisect(poly, a, b, width))
            continue
        if dpoly.is_zero() or _sign(dpoly(a)) * _sign(dpoly(b)) >= 0:
            continue
        c_lo, c_hi, c_ex = _bisect(dpoly, a, b, min(width, (b - a) / 2 ** 20))
        c = c_ex if c_ex is not None else (c_lo + c_hi) / 2
        vc = poly(c)
        if vc == 0:
            add(c, c, c)
        elif _sign(vc) != _sign(va):
            add(*_bisect(poly, a, c, width))
            add(*_bisect(poly, c, b, width))
    return found


def v_set(spec: MapSpec) -> list:
    """Slopes in (0, 1) at which the mod-1 branch structure changes.

    ``lambda * a_j + b`` is an integer for the one-sided offset ``b`` at
    ``a_j`` (``b_j`` from the left, ``b_{j+1}`` from the right, ``b_k`` at
    the right end ``a_k = 1``).
    """
    if spec.mode is not Mode.EXACT:
        raise FloatModeUnsupported("the set V is computed in exact mode only")
    out = set()
    k = spec.k
    for j in range(1, k + 1):
        aj = spec.a[j]
        sides = [spec.b[j - 1]] + ([spec.b[j]] if j < k else [])
        for b in sides:
            # lambda = (m - b) / a_j in (0, 1)  <=>  b < m < a_j + b
            m = math.floor(b) + 1
            while m < aj + b:
                out.add((m - b) / aj)
                m += 1
    return sorted(out)
