"""Rigorous orbit tracing for exact-mode maps.

An orbit starts from an exact rational.  While its point sits within
rounding distance of a singular point the orbit is advanced exactly; as soon
as a 113-bit outward-rounded enclosure lies strictly inside one branch the
tracer switches to interval arithmetic, which is cheap and never grows wider
than a few ulps over ``1 - lambda``.  An enclosure that straddles a singular
point sends the orbit back to exact arithmetic: the exact value is replayed
from the last exact anchor along the (rigorously known) itinerary, and exact
stepping continues for at most ``exact_steps`` steps before the orbit is
declared unresolved.

Exact points are stored as an integer numerator over the known denominator
``base * Q**t`` (``lambda = P/Q``), which avoids gcd work on every step.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from functools import lru_cache
from math import lcm

import gmpy2
from gmpy2 import mpfr, mpq

from .mapcore import PwMap
from .scalar import DOWN, UP, enclose


class _Kernel:
    """Integer and interval data of a map, precomputed once."""

    def __init__(self, pmap: PwMap):
        lam = pmap.lam
        self.P, self.Q = lam.numerator, lam.denominator
        deltas = pmap.deltas
        self.D = lcm(*(d.denominator for d in deltas))
        self.d = [int(d * self.D) for d in deltas]
        self.sing = [(s.numerator, s.denominator) for s in pmap.singular]
        self.n = len(self.sing)
        self.lam_lo, self.lam_hi = enclose(lam)
        enc = [enclose(d) for d in deltas]
        self.d_lo = [e[0] for e in enc]
        self.d_hi = [e[1] for e in enc]
        sing_enc = [enclose(s) for s in pmap.singular]
        self.s_dn = [e[0] for e in sing_enc]
        self.s_up = [e[1] for e in sing_enc]
        self.one = mpfr(1)

    def interval_branch(self, lo, hi) -> int:
        """1-based branch holding the whole enclosure, or 0 if undecided."""
        j = bisect_right(self.s_up, lo)
        if j == 0:
            return 0
        if j < self.n:
            return j if hi < self.s_dn[j] else 0
        return j if hi < self.one else 0


@lru_cache(maxsize=64)
def kernel(pmap: PwMap) -> _Kernel:
    return _Kernel(pmap)


class Trace:
    """Forward orbit of one exact seed with a rigorously known itinerary.

    ``itin[t]`` is the branch of ``x_t``; after ``n`` successful calls to
    :meth:`step` the tracer holds ``x_n``.
    """

    def __init__(self, pmap: PwMap, x0: Fraction, exact_steps: int = 200):
        self.k = kernel(pmap)
        self.exact_steps = exact_steps
        self.itin = bytearray() if pmap.n_branches < 256 else []
        self.t = 0
        self.resolved = True
        x0 = Fraction(x0)
        self._m0 = x0.denominator
        self._base = x0.denominator * self.k.D
        self._set_exact(x0.numerator * self.k.D, 1, 0)
        self._budget = exact_steps

    # exact state: x_t = num / (base * qpow)
    def _set_exact(self, num, qpow, t):
        self.exact = True
        self.num, self.qpow = num, qpow
        self.anchor = (num, qpow, t)

    def _exact_branch(self) -> int:
        k = self.k
        num, den = self.num, self._base * self.qpow
        lo, hi = 0, k.n
        while lo < hi:
            mid = (lo + hi) // 2
            s, q = k.sing[mid]
            if num * q >= s * den:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def _exact_advance(self, j):
        k = self.k
        self.num = k.P * self.num + k.d[j - 1] * self._m0 * self.qpow * k.Q
        self.qpow *= k.Q

    def _try_interval(self) -> bool:
        q = mpq(self.num, self._base * self.qpow)
        with gmpy2.context(DOWN):
            lo = mpfr(q)
        with gmpy2.context(UP):
            hi = mpfr(q)
        if self.k.interval_branch(lo, hi):
            self.lo, self.hi = lo, hi
            self.anchor = (self.num, self.qpow, self.t)
            self.exact = False
            return True
        return False

    def _replay(self):
        """Recompute the exact point from the anchor along the known itinerary."""
        num, qpow, t0 = self.anchor
        self.num, self.qpow = num, qpow
        for j in self.itin[t0:self.t]:
            self._exact_advance(j)
        self.exact = True
        self._budget = self.exact_steps

    @property
    def value(self):
        """Exact point (exact phase) or the enclosure midpoint as a float."""
        if self.exact:
            return Fraction(self.num, self._base * self.qpow)
        return float((self.lo + self.hi) / 2)

    def enclosure(self):
        if self.exact:
            return enclose(Fraction(self.num, self._base * self.qpow))
        return self.lo, self.hi

    def step(self) -> bool:
        """Record the branch of the current point and move to the next one."""
        if not self.resolved:
            return False
        k = self.k
        if not self.exact:
            j = k.interval_branch(self.lo, self.hi)
            if j:
                self.itin.append(j)
                self.lo = DOWN.add(DOWN.mul(k.lam_lo, self.lo), k.d_lo[j - 1])
                self.hi = UP.add(UP.mul(k.lam_hi, self.hi), k.d_hi[j - 1])
                self.t += 1
                return True
            self._replay()
        if self._budget <= 0:
            self.resolved = False
            return False
        j = self._exact_branch()
        self.itin.append(j)
        self._exact_advance(j)
        self.t += 1
        self._budget -= 1
        if not self._try_interval():
            return True
        self._budget = self.exact_steps
        return True
