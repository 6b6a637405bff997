import math
from fractions import Fraction as F

import pytest
from hypothesis import strategies as st

from pwcontract import MapSpec, build_map, contracted_rotation


@pytest.fixture
def remark():
    """Two increasing halves; the discontinuity is a left periodic singular point."""
    return build_map(MapSpec.create([0, F(1, 2)], [F(1, 4), F(-1, 4)], F(1, 2)))


@pytest.fixture
def rot():
    return contracted_rotation(F(1, 2), F(3, 4))


@pytest.fixture
def single():
    return build_map(MapSpec.create([0], [F(1, 4)], F(1, 2)))


@st.composite
def fractions_in(draw, lo, hi, max_den=20):
    """Rationals strictly inside (lo, hi) with denominator <= max_den."""
    lo, hi = F(lo), F(hi)
    q = draw(st.integers(2, max_den))
    p_lo = math.floor(lo * q) + 1
    p_hi = math.ceil(hi * q) - 1
    return F(draw(st.integers(p_lo, p_hi)), q)


@st.composite
def map_specs(draw, k_max=3, max_den=20):
    k = draw(st.integers(1, k_max))
    cuts = draw(st.sets(fractions_in(0, 1, max_den), min_size=k - 1, max_size=k - 1))
    b = draw(st.lists(fractions_in(-1, 2, max_den), min_size=k, max_size=k))
    lam = draw(fractions_in(0, 1, max_den))
    return MapSpec.create([F(0)] + sorted(cuts), b, lam)


@st.composite
def maps_and_points(draw, k_max=3, max_den=20):
    spec = draw(map_specs(k_max, max_den))
    x = draw(fractions_in(0, 1, 64) | st.just(F(0)))
    return build_map(spec), x


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
