from fractions import Fraction as F

from gmpy2 import mpfr

import pytest
from hypothesis import given, settings

from pwcontract import (
    Budget,
    MapSpec,
    Mode,
    Verdict,
    bound_report,
    build_map,
    certify_cycle,
    classify_map,
    find_periodic_orbits,
    iterate_orbit,
    maximal_itinerary_interval,
)
from pwcontract.errors import EmptyItinerary, FloatModeUnsupported, PrecisionLoss, ValidationError
from pwcontract.orbits import primitive_root
from pwcontract.trace import Trace

from conftest import map_specs


def test_iterate_examples(rot, remark, single):
    rec = iterate_orbit(rot, F(0), 4)
    assert rec.points == (0, F(3, 4), F(1, 8), F(13, 16), F(5, 32))
    assert rec.itinerary == (1, 2, 1, 2)
    rec = iterate_orbit(remark, F(0), 3)
    assert rec.points == (0, F(1, 4), F(3, 8), F(7, 16))
    assert rec.itinerary == (1, 1, 1)
    assert set(iterate_orbit(single, F(1, 2), 5).points) == {F(1, 2)}


def test_iterate_float_encloses_exact(rot):
    fm = build_map(MapSpec.create([0], ["3/4"], "1/2", Mode.FLOAT))
    exact = iterate_orbit(rot, F(0), 30).points
    for (lo, hi), x in zip(iterate_orbit(fm, mpfr(0), 30).points, exact):
        assert lo <= x <= hi


def test_iterate_float_straddle():
    fm = build_map(MapSpec.create([0, "1/2"], ["1/4", "-1/4"], "1/2", Mode.FLOAT))
    with pytest.raises(PrecisionLoss):
        # 1/2 is a fixed point of the left branch closure; the enclosure lands on it
        iterate_orbit(fm, mpfr(0.5) - mpfr(2) ** -60, 80)


def test_iterate_rejects_bad_T(rot):
    with pytest.raises(ValidationError):
        iterate_orbit(rot, F(0), 0)


def test_maximal_interval_examples(remark, rot):
    assert maximal_itinerary_interval(remark, (1,)) == (0, F(1, 2))
    assert maximal_itinerary_interval(remark, (1, 2)) is None
    assert maximal_itinerary_interval(rot, (1, 2)) == (0, F(1, 2))


def test_certify_examples(rot, remark, single):
    cyc = certify_cycle(rot, (1, 2))
    assert cyc.point == F(1, 6)
    assert set(cyc.orbit(rot)) == {F(1, 6), F(5, 6)}
    assert certify_cycle(remark, (1,)) is None
    one = certify_cycle(single, (1,))
    assert one.point == F(1, 2) and one.trap == (0, 1)
    with pytest.raises(EmptyItinerary):
        certify_cycle(rot, ())


def test_certify_float_rejected():
    fm = build_map(MapSpec.create([0], ["3/4"], "1/2", Mode.FLOAT))
    with pytest.raises(FloatModeUnsupported):
        certify_cycle(fm, (1, 2))


def test_primitive_root():
    assert primitive_root((1, 2, 1, 2)) == (1, 2)
    assert primitive_root((1, 1, 2)) == (1, 1, 2)
    assert primitive_root((3,) * 5) == (3,)


def test_find_examples(rot, remark, single):
    cycles = find_periodic_orbits(rot)
    assert len(cycles) == 1 and cycles[0].period == 2
    assert set(cycles[0].orbit(rot)) == {F(1, 6), F(5, 6)}
    assert find_periodic_orbits(remark) == []
    assert [c.period for c in find_periodic_orbits(single)] == [1]


def test_classify_examples(rot, remark, single):
    c = classify_map(rot)
    assert c.verdict is Verdict.ASYMPTOTICALLY_PERIODIC
    assert set(c.singular_assignment.values()) == {0}
    c = classify_map(remark)
    assert c.verdict is Verdict.SINGULAR_CONNECTION
    assert c.cycles == () or c.cycles == []
    assert c.connection.order == 1
    c = classify_map(single)
    assert c.verdict is Verdict.ASYMPTOTICALLY_PERIODIC and len(c.cycles) == 1


def test_classification_json(rot):
    js = classify_map(rot).to_json()
    assert js["verdict"] == "ASYMPTOTICALLY_PERIODIC"
    assert js["cycles"] == [{"period": 2, "point": "1/6", "omega": [1, 2], "trap": ["0/1", "1/2"]}]


def test_bound_examples(rot, remark, single):
    # f(1/2) = 1/4 + 3/4 - 1 = 0, so the discontinuity is mapped onto 0
    r = bound_report(rot, classify_map(rot))
    assert (r.n_disc, r.ell, r.n_cycles, r.k, r.bound) == (1, 1, 1, 1, 1)
    r = bound_report(remark, classify_map(remark))
    assert (r.n_disc, r.ell, r.n_cycles, r.bound) == (1, 1, 0, 1)
    r = bound_report(single, classify_map(single))
    assert (r.n_disc, r.ell, r.n_cycles) == (0, 0, 1)


def test_budget_validation():
    with pytest.raises(ValidationError):
        Budget(T_max=0)
    with pytest.raises(ValidationError):
        Budget(p_max=-1)


def test_undecided_is_a_verdict():
    # a tiny budget cannot settle a slowly contracting map
    pmap = build_map(MapSpec.create([0], ["3/4"], "99/100"))
    c = classify_map(pmap, Budget(T_max=20, p_max=4))
    assert c.verdict is Verdict.UNDECIDED
    assert c.undecided_reason in ("budget", "unresolved")


def test_trace_matches_exact_iteration(rot):
    tr = Trace(rot, F(0))
    rec = iterate_orbit(rot, F(0), 300)
    for _ in range(300):
        assert tr.step()
    assert tuple(tr.itin) == rec.itinerary
    lo, hi = tr.enclosure()
    assert lo <= rec.points[-1] <= hi


# -- properties ----------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(map_specs(k_max=3, max_den=16))
def test_cycle_soundness_and_bounds(spec):
    pmap = build_map(spec)
    c = classify_map(pmap, Budget(T_max=5000))
    for cyc in c.cycles:
        pts = cyc.orbit(pmap)
        rec = iterate_orbit(pmap, cyc.point, cyc.period)
        assert rec.points[-1] == cyc.point
        assert rec.itinerary == cyc.omega
        assert len(set(pts)) == cyc.period
        u, v = cyc.trap
        assert u <= cyc.point < v
    orbits = [set(cyc.orbit(pmap)) for cyc in c.cycles]
    for i in range(len(orbits)):
        for j in range(i + 1, len(orbits)):
            assert not orbits[i] & orbits[j]
    rep = bound_report(pmap, c)
    assert rep.n_cycles <= min(rep.k, rep.n_disc + 1 - rep.ell)


@settings(max_examples=40, deadline=None)
@given(map_specs(k_max=2, max_den=12))
def test_trap_contracts_at_entry_phase(spec):
    pmap = build_map(spec)
    for cyc in find_periodic_orbits(pmap, Budget(T_max=3000)):
        u, v = cyc.trap
        for x in (u, (u + v) / 2):
            rec = iterate_orbit(pmap, x, cyc.period)
            y = rec.points[-1]
            assert rec.itinerary == cyc.omega
            assert u <= y <= v
            assert abs(y - cyc.point) == pmap.lam ** cyc.period * abs(x - cyc.point)
