from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convexfaces import exactla as la
from convexfaces import faces as fc
from convexfaces import icore
from convexfaces import polyset as ps
from convexfaces.errors import EmptySet, MethodDisagreement, NotMember, UnsupportedComposite
from convexfaces.icore import IcrMethod, Law
from convexfaces.polyset import LinearMap, cube, hset, hull
from convexfaces.sampling import icr_samples, set_samples

from checks import partition_mismatches
from corpus import MIXED, SETS

H = F(1, 2)
SQUARE = cube(2)
REDUNDANT_SEGMENT = SETS["flat-segment"]


@pytest.mark.parametrize("method", list(IcrMethod))
def test_icr_examples_for_every_method(method):
    assert icore.icr_contains(SQUARE, (H, H), method)
    assert not icore.icr_contains(SQUARE, (H, 0), method)
    assert icore.icr_contains(REDUNDANT_SEGMENT, (H, 0), method)
    assert not icore.icr_contains(REDUNDANT_SEGMENT, (0, 0), method)
    # a singleton is its own intrinsic core
    assert icore.icr_contains(SETS["point-2d"], (1, 2), method)


def test_icr_requires_membership():
    with pytest.raises(NotMember):
        icore.icr_contains(SQUARE, (2, 2))


def test_method_disagreement_carries_verdicts():
    exc = MethodDisagreement({"segments": True, "min-face": False})
    assert exc.verdicts == {"segments": True, "min-face": False}


@pytest.mark.parametrize("name", sorted(SETS) + sorted(MIXED))
def test_four_methods_agree_on_samples(name):
    C = SETS.get(name) or MIXED[name]
    pts = set_samples(C, 12, seed=5) + icr_samples(C, 4, seed=6)
    for x in pts:
        verdicts = icore.icr_verdicts(C, x)
        assert len(set(verdicts.values())) == 1, (x, verdicts)


def test_relative_interior_examples():
    R = icore.relative_interior(SQUARE)
    assert all(r.strict for r in R.ineqs) and not R.eqs
    assert ps.same_set(R, hset(2, strict=[((-1, 0), 0), ((1, 0), 1), ((0, -1), 0), ((0, 1), 1)]))
    Rs = icore.relative_interior(REDUNDANT_SEGMENT)
    assert ps.same_set(Rs, hset(2, eqs=[((0, 1), 0)], strict=[((-1, 0), 0), ((1, 0), 1)]))
    Rp = icore.relative_interior(SETS["point-2d"])
    assert ps.contains(Rp, (1, 2)) and ps.affine_dim(Rp) == 0
    with pytest.raises(EmptySet):
        icore.relative_interior(hset(1, [((1,), 0), ((-1,), -1)]))


@pytest.mark.parametrize("name", ["square-h", "flat-segment", "cone-3d", "simplex-4d", "pentagon",
                                  "half-open-square", "open-segment", "strip"])
def test_relative_interior_membership_and_idempotence(name):
    C = SETS.get(name) or MIXED[name]
    R = icore.relative_interior(C)
    RR = icore.relative_interior(R)
    for x in set_samples(C, 40, seed=1):
        assert ps.contains(R, x) == icore.icr_contains(C, x)
        assert ps.contains(RR, x) == ps.contains(R, x)


@pytest.mark.parametrize("name", ["square-h", "tetrahedron", "cone-v", "square-4d", "open-square"])
def test_icr_is_convex(name):
    C = SETS.get(name) or MIXED[name]
    pts = icr_samples(C, 20, seed=8)
    for x, y in zip(pts, pts[1:]):
        assert icore.icr_contains(C, la.barycenter([x, y]))


@pytest.mark.parametrize("name", ["square-h", "pyramid", "flat-segment", "cone-3d", "half-open-square"])
def test_half_open_segments_into_icr(name):
    C = SETS.get(name) or MIXED[name]
    xs = icr_samples(C, 10, seed=2)
    ys = set_samples(C, 10, seed=3)
    for x, y in zip(xs, ys):
        for t in (F(0), F(1, 3), F(5, 6), F(99, 100)):
            assert icore.icr_contains(C, la.add(x, la.smul(t, la.sub(y, x))))
        z, t = icore.extension_point(C, x, y)
        assert icore.icr_contains(C, z)
        if x != y:
            # x lies strictly between z and y
            assert t > 0
            assert x == la.add(la.smul(1 / (1 + t), z), la.smul(t / (1 + t), y))


def test_decompose_examples():
    assert len(icore.decompose(SQUARE)) == 9
    parts = icore.decompose(SETS["segment"])
    assert len(parts) == 3 and sorted(F.dim for F in parts) == [0, 0, 1]
    assert len(icore.decompose(SETS["point-1d"])) == 1
    assert icore.decompose(hset(1, [((1,), 0), ((-1,), -1)])) == []


def test_locate_examples():
    assert icore.locate(SQUARE, (H, 0)).indices == frozenset({2})
    assert icore.locate(SQUARE, (0, 0)).indices == frozenset({0, 2})
    assert icore.locate(SQUARE, (F(1, 3), F(2, 3))) == fc.full_face(SQUARE)
    with pytest.raises(NotMember):
        icore.locate(SQUARE, (2, 0))


@pytest.mark.parametrize("name", ["square-h", "square-v", "triangle-3d", "tetrahedron", "segment-3d"])
def test_decomposition_partitions_grid(name):
    bad, checked = partition_mismatches(SETS[name], den=4)
    assert checked > 0 and bad == []


def test_has_proper_faces_examples():
    assert not icore.has_proper_faces(SETS["line-2d"])
    assert icore.has_proper_faces(SQUARE)
    assert not icore.has_proper_faces(MIXED["open-square"])
    assert not icore.has_proper_faces(SETS["point-2d"])
    assert icore.has_proper_faces(MIXED["half-open-square"])


@pytest.mark.parametrize("name", sorted(SETS) + sorted(MIXED))
def test_faceless_iff_equal_to_core(name):
    C = SETS.get(name) or MIXED[name]
    R = icore.relative_interior(C)
    assert icore.has_proper_faces(C) == (not ps.same_set(R, C))


def test_calculus_sum_example_and_strict_variant():
    A = hset(2, [((-1, 0), 0), ((1, 0), 1)], eqs=[((0, 1), 0)])
    B = hset(2, [((0, -1), 0), ((0, 1), 1)], eqs=[((1, 0), 0)])
    v = icore.check_calculus(Law.SUM, (A, B))
    assert v.holds and v.checked == 200
    R = icore.relative_interior(ps.minkowski_sum(A, B))
    assert ps.same_set(R, MIXED["open-square"])
    # (0,1) x {0} plus {0} x [0,1]: the core is the open square, the sum is not
    C = MIXED["open-segment"]
    S = ps.sum_by_projection(C, B)
    assert icore.check_calculus(Law.SUM, (C, B)).holds
    assert ps.same_set(icore.relative_interior(S), MIXED["open-square"])
    assert not ps.same_set(S, MIXED["open-square"])
    assert ps.contains(S, (H, 0)) and not icore.icr_contains(S, (H, 0))


def test_calculus_scale_translate_image_product():
    assert icore.check_calculus(Law.SCALE, (SQUARE, -2)).holds
    assert icore.check_calculus(Law.SCALE, (SETS["cone-v"], F(1, 3))).holds
    assert icore.check_calculus(Law.TRANSLATE, (SETS["pentagon"], (1, -2))).holds
    proj = LinearMap(((1, 0),))
    v = icore.check_calculus(Law.LINEAR_IMAGE, (SQUARE, proj))
    assert v.holds
    image_core = icore.relative_interior(ps.linear_image(SQUARE, proj))
    for q in (F(0), F(1, 6), H, F(1)):
        assert ps.contains(image_core, (q,)) == (0 < q < 1)
    assert icore.check_calculus(Law.PRODUCT, (SETS["segment"], SETS["triangle-v"])).holds
    assert icore.check_calculus(Law.POSITIVE_HULL, (hull([(1, 1), (2, 1)]),)).holds


def test_calculus_is_deterministic():
    a = icore.check_calculus(Law.SUM, (SETS["triangle-v"], SETS["square-h"]), count=50, seed=3)
    b = icore.check_calculus(Law.SUM, (SETS["triangle-v"], SETS["square-h"]), count=50, seed=3)
    assert a == b


def test_calculus_unsupported_composites():
    with pytest.raises(UnsupportedComposite):
        icore.check_calculus(Law.POSITIVE_HULL, (SQUARE,))
    with pytest.raises(UnsupportedComposite):
        icore.check_calculus(Law.LINEAR_IMAGE, (MIXED["open-square"], LinearMap(((1, 0),))))
    with pytest.raises(UnsupportedComposite):
        icore.check_calculus(Law.POSITIVE_HULL, (SETS["cone-v"],))
    with pytest.raises(ValueError):
        icore.check_calculus(Law.SCALE, (SQUARE, 2), count=0)


coords = st.fractions(min_value=0, max_value=1, max_denominator=8)


@given(coords, coords, coords)
@settings(max_examples=80, deadline=None)
def test_cube_icr_is_the_open_cube(x, y, z):
    expect = all(0 < c < 1 for c in (x, y, z))
    assert icore.icr_contains(SETS["cube"], (x, y, z)) == expect
