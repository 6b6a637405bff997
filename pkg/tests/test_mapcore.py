from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from pwcontract import (
    MapSpec,
    Mode,
    branch_index,
    build_map,
    count_itineraries,
    evaluate,
    is_Z_independent,
    itinerary_of,
    offset_polynomial,
    singular_points,
)
from pwcontract.errors import (
    FloatModeUnsupported,
    LambdaOutOfRange,
    ModeMismatch,
    NonMonotonePartition,
    PointOutOfDomain,
    PrecisionLoss,
    ValidationError,
)
from pwcontract.mapcore import preimages, singular_levels

from conftest import maps_and_points, map_specs


def _branches(pmap):
    return [(b.lo, b.hi, b.delta, b.wrap) for b in pmap.branches]


def test_build_remark(remark):
    assert _branches(remark) == [(0, F(1, 2), F(1, 4), 0), (F(1, 2), 1, F(-1, 4), 0)]
    assert remark.singular == (0, F(1, 2))


def test_build_single(single):
    assert _branches(single) == [(0, 1, F(1, 4), 0)]


def test_build_rotation_wraps(rot):
    assert _branches(rot) == [(0, F(1, 2), F(3, 4), 0), (F(1, 2), 1, F(-1, 4), -1)]


@pytest.mark.parametrize(
    "a, b, lam, err",
    [
        ([0, F(1, 2), F(1, 4)], [0, 0, 0], F(1, 2), NonMonotonePartition),
        ([0], [F(1, 4)], F(1), LambdaOutOfRange),
        ([0], [F(1, 4)], F(0), LambdaOutOfRange),
        ([0, F(1, 2)], [F(1, 4)], F(1, 2), ValidationError),
    ],
)
def test_build_rejects(a, b, lam, err):
    with pytest.raises(err):
        MapSpec.create(a, b, lam)


def test_eval_examples(remark, rot, single):
    assert evaluate(remark, F(1, 2)) == 0
    assert evaluate(rot, F(3, 4)) == F(1, 8)
    for m in (remark, rot, single):
        assert evaluate(m, F(0)) == m.deltas[0]


def test_branch_index_examples(remark, rot):
    assert branch_index(remark, F(1, 2)) == 2
    assert branch_index(remark, F(49, 100)) == 1
    assert branch_index(rot, F(1, 6)) == 1


def test_point_domain(remark):
    with pytest.raises(PointOutOfDomain):
        evaluate(remark, F(1))
    with pytest.raises(PointOutOfDomain):
        evaluate(remark, F(-1, 3))


def test_mixed_mode_rejected(remark):
    with pytest.raises(ModeMismatch):
        evaluate(remark, 0.25)


def test_float_mode_precision_loss():
    fm = build_map(MapSpec.create([0, "1/2"], ["1/4", "-1/4"], "1/2", Mode.FLOAT))
    assert abs(float(evaluate(fm, fm.singular[1] + 0.25)) - 0.125) < 1e-12
    with pytest.raises(PrecisionLoss):
        branch_index(fm, fm.singular[1] - 2.0 ** -50)
    with pytest.raises(FloatModeUnsupported):
        is_Z_independent([fm.singular[1]], [fm.deltas[0]])


def test_singular_points_examples(remark, single):
    assert singular_points(remark, 1).points == (0, F(1, 2))
    assert singular_points(remark, 2).points == (0, F(1, 2))
    for n in (1, 3, 6):
        assert singular_points(single, n).points == (0,)


def test_itinerary_examples(remark, rot, single):
    assert itinerary_of(rot, F(1, 6), 4) == (1, 2, 1, 2)
    assert itinerary_of(remark, F(0), 3) == (1, 1, 1)
    assert itinerary_of(single, F(2, 7), 5) == (1,) * 5


def test_offset_examples(remark, rot):
    assert offset_polynomial(remark, (1, 2)) == F(-1, 8)
    assert offset_polynomial(rot, (1, 2)) == F(1, 8)
    for j in (1, 2):
        assert offset_polynomial(rot, (j,)) == rot.deltas[j - 1]
    with pytest.raises(ValidationError):
        offset_polynomial(rot, ())


def test_count_itineraries_examples(remark, single):
    assert count_itineraries(remark, 1) == 2
    assert count_itineraries(remark, 2) == 2
    assert count_itineraries(single, 7) == 1


def test_z_independence_examples():
    assert is_Z_independent([F(1, 2), 1], [F(1, 4), F(-1, 4)])
    assert not is_Z_independent([F(1, 2), 1], [F(1, 2), F(1, 3)])
    assert is_Z_independent([1], [F(3, 4)])


def test_spec_json_roundtrip(tmp_path, remark):
    path = tmp_path / "m.json"
    import json

    path.write_text(json.dumps(remark.spec.to_json()))
    assert MapSpec.load(path) == remark.spec


# -- properties ----------------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(maps_and_points())
def test_composition_identity(mp):
    pmap, x = mp
    n = 12
    omega = itinerary_of(pmap, x, n)
    y = x
    for _ in range(n):
        y = evaluate(pmap, y)
    assert y == pmap.lam ** n * x + offset_polynomial(pmap, omega)


@settings(max_examples=150, deadline=None)
@given(map_specs())
def test_partition_property(spec):
    pmap = build_map(spec)
    br = pmap.branches
    assert br[0].lo == 0 and br[-1].hi == 1
    assert all(u.hi == v.lo for u, v in zip(br, br[1:]))
    for b in br:
        # the image of each half-open piece stays inside [0, 1)
        assert 0 <= pmap.lam * b.lo + b.delta
        assert pmap.lam * b.hi + b.delta <= 1


def _brute_singular(pmap, n):
    """S^(n) by solving every word of length < n, independent of the pullback."""
    from itertools import product

    pts = set(pmap.singular)
    lam = pmap.lam
    for j in range(1, n):
        for w in product(range(1, pmap.n_branches + 1), repeat=j):
            h = offset_polynomial(pmap, w)
            for s in pmap.singular:
                x = (s - h) / lam ** j
                if 0 <= x < 1 and itinerary_of(pmap, x, j) == w:
                    pts.add(x)
    return pts


@settings(max_examples=60, deadline=None)
@given(map_specs(k_max=2, max_den=12))
def test_singular_sets_match_brute_force(spec):
    pmap = build_map(spec)
    levels = singular_levels(pmap)
    prev = set()
    for n in range(1, 5):
        cur = set(next(levels))
        assert cur == _brute_singular(pmap, n)
        assert prev <= cur
        prev = cur


@settings(max_examples=60, deadline=None)
@given(map_specs(k_max=3, max_den=16))
def test_alpha_counts_two_ways(spec):
    pmap = build_map(spec)
    N = pmap.n_branches
    prev = None
    for n in range(1, 7):
        pts = singular_points(pmap, n).points
        cuts = list(pts) + [F(1)]
        samples = list(pts) + [(u + v) / 2 for u, v in zip(cuts, cuts[1:])]
        words = {itinerary_of(pmap, x, n) for x in samples}
        alpha = count_itineraries(pmap, n)
        assert len(words) == alpha
        if prev is not None:
            assert prev <= alpha <= N * prev
        prev = alpha


@settings(max_examples=100, deadline=None)
@given(maps_and_points())
def test_preimages_are_preimages(mp):
    pmap, t = mp
    for x in preimages(pmap, t):
        assert evaluate(pmap, x) == t
