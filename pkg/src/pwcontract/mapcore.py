"""Piecewise lambda-affine maps ``f(x) = lambda*x + b_i (mod 1)`` on [0, 1).

A :class:`MapSpec` holds the partition points ``a``, the offsets ``b`` and the
slope.  :func:`build_map` splits every partition interval where ``lambda*x + b_i``
crosses an integer, producing a :class:`PwMap` whose branches are
``x -> lambda*x + delta_j`` on half-open domains ``[lo, hi)``.

Everything is immutable.  Exact mode is the default and the only mode in
which certification is possible.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

import gmpy2

from . import scalar
from .errors import (
    BranchEscapesUnit,
    EmptyItinerary,
    FloatModeUnsupported,
    LambdaOutOfRange,
    NonMonotonePartition,
    PointOutOfDomain,
    PrecisionLoss,
    ValidationError,
)
from .scalar import Mode

Itinerary = tuple[int, ...]


@dataclass(frozen=True)
class MapSpec:
    """Partition ``0 = a_0 < ... < a_k = 1``, offsets ``b_1..b_k`` and slope."""

    a: tuple
    b: tuple
    lam: object
    mode: Mode = Mode.EXACT

    def __post_init__(self):
        if len(self.a) != len(self.b) + 1:
            raise ValidationError("need len(a) == len(b) + 1")
        if not self.b:
            raise ValidationError("need at least one branch")
        if self.a[0] != 0 or self.a[-1] != 1:
            raise NonMonotonePartition("partition must start at 0 and end at 1")
        if any(lo >= hi for lo, hi in zip(self.a, self.a[1:])):
            raise NonMonotonePartition(f"partition not strictly increasing: {self.a}")
        if not 0 < self.lam < 1:
            raise LambdaOutOfRange(f"slope must lie in (0, 1), got {self.lam}")

    @classmethod
    def create(cls, a, b, lam, mode: Mode = Mode.EXACT) -> "MapSpec":
        """Build from loose input.

        ``a`` may be given either with or without the trailing ``1`` (so both
        ``(0, 1/2)`` and ``(0, 1/2, 1)`` describe the same two-piece partition).
        Strings are parsed exactly.
        """
        a = [scalar.parse_scalar(v) for v in a]
        b = [scalar.parse_scalar(v) for v in b]
        if not a or a[-1] != 1:
            a.append(Fraction(1))
        lam = scalar.parse_scalar(lam)
        conv = (lambda v: v) if mode is Mode.EXACT else scalar.to_float
        return cls(tuple(conv(v) for v in a), tuple(conv(v) for v in b), conv(lam), mode)

    @property
    def k(self) -> int:
        return len(self.b)

    def with_lambda(self, lam) -> "MapSpec":
        return MapSpec.create(self.a, self.b, lam, self.mode)

    def to_json(self) -> dict:
        return {
            "a": [scalar.fmt(v) for v in self.a],
            "b": [scalar.fmt(v) for v in self.b],
            "lambda": scalar.fmt(self.lam),
        }

    @classmethod
    def from_json(cls, obj, mode: Mode = Mode.EXACT) -> "MapSpec":
        try:
            return cls.create(obj["a"], obj["b"], obj["lambda"], mode)
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed map spec: {exc}") from exc

    @classmethod
    def load(cls, path, mode: Mode = Mode.EXACT) -> "MapSpec":
        with open(path) as fh:
            return cls.from_json(json.load(fh), mode)


@dataclass(frozen=True)
class Branch:
    lo: object
    hi: object
    delta: object
    source_index: int
    wrap: int


@dataclass(frozen=True)
class PwMap:
    spec: MapSpec
    branches: tuple[Branch, ...]
    eps_cmp: object = field(default=scalar.EPS_CMP, compare=False)

    @property
    def mode(self) -> Mode:
        return self.spec.mode

    @property
    def lam(self):
        return self.spec.lam

    @property
    def n_branches(self) -> int:
        return len(self.branches)

    @cached_property
    def singular(self) -> tuple:
        """Singular points ``s_0 = 0 < s_1 < ... < s_{N-1}`` (branch left endpoints)."""
        return tuple(br.lo for br in self.branches)

    @cached_property
    def deltas(self) -> tuple:
        return tuple(br.delta for br in self.branches)

    def __call__(self, x):
        return evaluate(self, x)

    def dump(self) -> dict:
        return {
            "lambda": scalar.fmt(self.lam),
            "branches": [
                {
                    "lo": scalar.fmt(br.lo),
                    "hi": scalar.fmt(br.hi),
                    "delta": scalar.fmt(br.delta),
                    "wrap": br.wrap,
                    "source_index": br.source_index,
                }
                for br in self.branches
            ],
        }


def _floor(v) -> int:
    return math.floor(v) if isinstance(v, Fraction) else int(gmpy2.floor(v))


def build_map(spec: MapSpec) -> PwMap:
    """Refine the partition of ``spec`` at every integer crossing of ``lambda*x + b_i``."""
    lam = spec.lam
    exact = spec.mode is Mode.EXACT
    branches = []
    for i, b in enumerate(spec.b, start=1):
        lo, hi = spec.a[i - 1], spec.a[i]
        f_lo, f_hi = lam * lo + b, lam * hi + b
        # integers strictly inside (F(lo), F(hi)); F(hi) is only a left limit
        m0 = _floor(f_lo)
        cuts = [lo]
        m = m0 + 1
        while m < f_hi:
            cuts.append((m - b) / lam)
            m += 1
        cuts.append(hi)
        for w, (u, v) in enumerate(zip(cuts, cuts[1:])):
            wrap = -(m0 + w)
            delta = b + wrap
            if exact and not (0 <= lam * u + delta and lam * v + delta <= 1):
                raise BranchEscapesUnit(f"branch [{u}, {v}) escapes [0, 1)")
            branches.append(Branch(u, v, delta, i, wrap))
    return PwMap(spec, tuple(branches))


def _check_point(pmap: PwMap, x):
    x = scalar.check_mode(x, pmap.mode)
    if not 0 <= x < 1:
        raise PointOutOfDomain(f"{x} is outside [0, 1)")
    return x


def _locate(pmap: PwMap, x) -> int:
    j = bisect_right(pmap.singular, x)
    if pmap.mode is Mode.FLOAT:
        s = pmap.singular
        near = [t for t in (j - 1, j) if 1 <= t < len(s)]
        if any(abs(x - s[t]) < pmap.eps_cmp for t in near):
            raise PrecisionLoss(f"{x} within tolerance of a branch endpoint")
    return j


def branch_index(pmap: PwMap, x) -> int:
    """1-based index ``j`` with ``s_{j-1} <= x < s_j``."""
    return _locate(pmap, _check_point(pmap, x))


def evaluate(pmap: PwMap, x):
    x = _check_point(pmap, x)
    br = pmap.branches[_locate(pmap, x) - 1]
    return pmap.lam * x + br.delta


def itinerary_of(pmap: PwMap, x, n: int) -> Itinerary:
    """First ``n`` branch indices along the orbit of ``x``."""
    if n < 1:
        raise ValidationError("itinerary length must be >= 1")
    x = _check_point(pmap, x)
    lam, deltas = pmap.lam, pmap.deltas
    out = []
    for _ in range(n):
        j = _locate(pmap, x)
        out.append(j)
        x = lam * x + deltas[j - 1]
    return tuple(out)


def offset_polynomial(pmap: PwMap, omega: Sequence[int]):
    """``H_omega(lambda)``: the composed branches along ``omega`` applied to 0.

    ``f^n(x) = lambda**n * x + H_omega`` for every ``x`` whose order-n
    itinerary is ``omega``.
    """
    if not omega:
        raise EmptyItinerary("offset of an empty word")
    _check_word(pmap, omega)
    lam, deltas = pmap.lam, pmap.deltas
    h = 0 * lam
    for j in omega:
        h = lam * h + deltas[j - 1]
    return h


def _check_word(pmap: PwMap, omega):
    n = pmap.n_branches
    for j in omega:
        if not 1 <= j <= n:
            raise ValidationError(f"branch index {j} outside 1..{n}")


def preimages(pmap: PwMap, t) -> list:
    """All ``x`` in [0, 1) with ``f(x) = t``."""
    lam = pmap.lam
    out = []
    for br in pmap.branches:
        x = (t - br.delta) / lam
        if pmap.mode is Mode.FLOAT:
            tol = pmap.eps_cmp
            if (br.lo > 0 and abs(x - br.lo) < tol) or abs(x - br.hi) < tol:
                raise PrecisionLoss(f"preimage {x} within tolerance of a branch endpoint")
        if br.lo <= x < br.hi:
            out.append(x)
    return out


def singular_levels(pmap: PwMap) -> Iterator[frozenset]:
    """Yield ``S^(1), S^(2), ...`` (each the union of preimages up to that depth).

    Only the points added at the previous depth are pulled back, since
    ``S^(n+1) = S^(n) | f^{-1}(S^(n) - S^(n-1))``.
    """
    current = frozenset(pmap.singular)
    frontier = set(current)
    while True:
        yield current
        fresh = set()
        for t in frontier:
            for x in preimages(pmap, t):
                if x not in current:
                    fresh.add(x)
        if fresh:
            current = current | fresh
        frontier = fresh


@dataclass(frozen=True)
class SingularSet:
    depth: int
    points: tuple

    def __len__(self):
        return len(self.points)

    def __contains__(self, x):
        return x in set(self.points)


def singular_points(pmap: PwMap, n: int) -> SingularSet:
    if n < 1:
        raise ValidationError("depth must be >= 1")
    for depth, pts in enumerate(singular_levels(pmap), start=1):
        if depth == n:
            return SingularSet(n, tuple(sorted(pts)))
    raise AssertionError("unreachable")


def count_itineraries(pmap: PwMap, n: int) -> int:
    """Number of distinct order-n itineraries.

    Equal to the number of components of ``[0,1) - S^(n)``: each singular
    point shares the itinerary of its right neighbourhood, and the set of
    points realising a given word is an interval.
    """
    return len(singular_points(pmap, n))


def is_Z_independent(a: Sequence, b: Sequence) -> bool:
    """True iff ``a_i - b_j`` is never an integer.

    ``a`` uses the convention ``(a_1, ..., a_{k-1}, a_k = 1)``: the leading
    zero is dropped and the trailing one is included.
    """
    a = list(a)
    b = list(b)
    for v in a + b:
        if scalar.mode_of(v) is not Mode.EXACT:
            raise FloatModeUnsupported("integrality is decided in exact mode only")
    return all((x - y).denominator != 1 for x in map(Fraction, a) for y in map(Fraction, b))


def spec_is_Z_independent(spec: MapSpec) -> bool:
    if spec.mode is not Mode.EXACT:
        raise FloatModeUnsupported("integrality is decided in exact mode only")
    return is_Z_independent(spec.a[1:], spec.b)
