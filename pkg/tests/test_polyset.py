from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convexfaces import exactla as la
from convexfaces import polyset as ps
from convexfaces.errors import (
    ContainsOrigin,
    DimensionMismatch,
    EmptyInput,
    EmptySet,
    TooLarge,
    UnsupportedRays,
    UnsupportedStrict,
    ZeroScale,
)
from convexfaces.polyset import HSet, LinearMap, Row, VSet, box, cube, hset, hull
from convexfaces.sampling import Lcg, grid_points, set_samples

from corpus import MIXED, SETS
from oracles import in_positive_hull

H = F(1, 2)
SQUARE = cube(2)


def test_contains_examples():
    assert ps.contains(SQUARE, (H, H))
    assert not ps.contains(SQUARE, (1, 2))
    cone = VSet(2, ((0, 0),), ((1, 0), (1, 1)))
    # (2,1) = 1*(1,0) + 1*(1,1)
    assert ps.contains(cone, (2, 1))
    assert not ps.contains(cone, (0, 1))


def test_contains_rejects_wrong_length():
    with pytest.raises(DimensionMismatch):
        ps.contains(SQUARE, (1,))


def test_vset_needs_a_point():
    with pytest.raises(EmptyInput):
        VSet(2, (), ((1, 0),))


def test_affine_hull_examples():
    base, basis = ps.affine_hull(hull([(0, 0), (1, 0)]))
    assert base == (0, 0) and basis == [(1, 0)]
    base, basis = ps.affine_hull(hull([(2, 3)]))
    assert base == (2, 3) and basis == []
    assert ps.affine_dim(SQUARE) == 2
    with pytest.raises(EmptySet):
        ps.affine_hull(hset(1, [((1,), 0), ((-1,), -1)]))


def test_affine_hull_sees_implicit_equalities():
    # redundant pair y <= 0, -y <= 0 pins the segment to the x axis
    seg = hset(2, [((-1, 0), 0), ((1, 0), 1), ((0, 1), 0), ((0, -1), 0)])
    assert ps.affine_dim(seg) == 1
    assert ps.implicit_rows(seg) == frozenset({2, 3})


def test_minkowski_examples():
    A = hset(2, [((-1, 0), 0), ((1, 0), 1)], eqs=[((0, 1), 0)])
    B = hset(2, [((0, -1), 0), ((0, 1), 1)], eqs=[((1, 0), 0)])
    assert ps.same_set(ps.minkowski_sum(A, B), SQUARE)
    seg_x, seg_y = hull([(0, 0), (1, 0)]), hull([(0, 0), (0, 1)])
    S = ps.minkowski_sum(seg_x, seg_y)
    assert sorted(S.points) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert ps.same_set(S, SQUARE)
    # adding a singleton is a translation
    pt = hull([(2, -1)])
    assert ps.same_set(ps.minkowski_sum(SQUARE, pt), ps.translate(SQUARE, (2, -1)))


def test_minkowski_rejects_strict_and_mismatch():
    with pytest.raises(UnsupportedStrict):
        ps.minkowski_sum(MIXED["open-square"], SQUARE)
    with pytest.raises(DimensionMismatch):
        ps.minkowski_sum(SQUARE, cube(3))


def test_transform_examples():
    assert ps.same_set(ps.scale(SQUARE, 2), cube(2, 2))
    assert ps.same_set(ps.product(box([0], [1]), box([0], [1])), SQUARE)
    proj = LinearMap(((1, 0),))
    assert ps.same_set(ps.linear_image(SQUARE, proj), box([0], [1]))
    with pytest.raises(ZeroScale):
        ps.scale(SQUARE, 0)
    with pytest.raises(UnsupportedStrict):
        ps.linear_image(MIXED["open-square"], proj)


def test_negative_scale_reflects():
    R = ps.scale(SQUARE, -2)
    assert ps.contains(R, (-2, -2)) and not ps.contains(R, (1, 1))
    cone = SETS["cone-v"]
    Rv = ps.scale(cone, F(-1, 3))
    assert ps.contains(Rv, (-3, -3)) and not ps.contains(Rv, (3, 3))


def test_positive_hull_examples_against_scan_oracle():
    C1 = hull([(1, 1), (2, 1)])
    expect1 = hset(2, [((-1, 1), 0), ((1, -2), 0)], strict=[((0, -1), 0)])
    C2 = hull([(0, 1)])
    C3 = hull([(1, 0), (0, 1)])
    expect3 = hset(2, [((-1, 0), 0), ((0, -1), 0)], strict=[((-1, -1), 0)])
    grid = [(F(i, 2), F(j, 2)) for i in range(-4, 9) for j in range(-4, 9)]
    for C, expect in ((C1, expect1), (C2, None), (C3, expect3)):
        D = ps.positive_hull(C)
        for z in grid:
            assert ps.contains(D, z) == in_positive_hull(C, z), (C, z)
            if expect is not None:
                assert ps.contains(expect, z) == ps.contains(D, z), (C, z)
    # the ray {(0, t) : t > 0}
    D2 = ps.positive_hull(C2)
    assert ps.contains(D2, (0, F(1, 9))) and not ps.contains(D2, (0, 0))
    assert not ps.contains(D2, (F(1, 9), 1))


def test_positive_hull_errors():
    with pytest.raises(ContainsOrigin):
        ps.positive_hull(hull([(-1, 0), (1, 0)]))
    with pytest.raises(UnsupportedRays):
        ps.positive_hull(VSet(2, ((1, 1),), ((1, 0),)))
    with pytest.raises(UnsupportedStrict):
        ps.positive_hull(MIXED["open-square"])


@pytest.mark.parametrize("name", ["triangle-v", "pentagon", "tetrahedron", "pyramid", "octahedron"])
def test_positive_hull_contains_scaled_samples_but_not_origin(name):
    C = SETS[name]
    if ps.contains(C, la.zeros(C.dim)):
        C = ps.translate(C, (1,) * C.dim)
    D = ps.positive_hull(C)
    assert not ps.contains(D, la.zeros(C.dim))
    for x in set_samples(C, 30, seed=4):
        for t in (F(1, 3), F(1), F(7, 2)):
            assert ps.contains(D, la.smul(t, x))


def _random_polytope(rng, n):
    pts = {rng.vector(n, -2, 2, 2) for _ in range(rng.randint(1, 6))}
    return hull(sorted(pts))


def test_v_to_h_round_trip_preserves_membership():
    rng = Lcg(21)
    for _ in range(30):
        n = rng.randint(1, 3)
        V = _random_polytope(rng, n)
        Hs = ps.v_to_h(V)
        back = ps.h_to_v(Hs)
        box_ = ((-3,) * n, (3,) * n)
        den = 2 if n == 3 else 4
        g1 = grid_points(V, den, box_)
        assert g1 == grid_points(Hs, den, box_) == grid_points(back, den, box_)


@pytest.mark.parametrize("name", sorted(SETS))
def test_corpus_conversions_agree(name):
    C = SETS[name]
    assert ps.same_set(ps.to_h(C), ps.to_v(C))
    for x in set_samples(C, 20):
        assert ps.contains(ps.to_h(C), x) and ps.contains(ps.to_v(C), x)


def test_conversion_rejects_large_inputs():
    with pytest.raises(TooLarge):
        # 17 points on a parabola are all vertices
        ps.v_to_h(hull([(i, i * i) for i in range(17)]))
    with pytest.raises(TooLarge):
        ps.h_to_v(cube(5))


def _split_exists(A, B, z):
    """``z = x + y`` with ``x`` in ``A``, ``y`` in ``B``: one LP over ``x``."""
    HA, HB = ps.to_h(A), ps.to_h(B)
    rows = [(r.a, r.b) for r in HA.ineqs]
    rows += [(la.smul(-1, r.a), r.b - la.dot(r.a, z)) for r in HB.ineqs]
    eqs = list(HA.eqs) + [(la.smul(-1, e), f - la.dot(e, z)) for e, f in HB.eqs]
    return la.feasible_point(rows, eqs, A.dim) is not None


def test_minkowski_membership_on_random_pairs():
    pairs = [("square-h", "triangle-v"), ("segment-3d", "tetrahedron"), ("cone-v", "pentagon"),
             ("flat-segment", "point-2d"), ("cube", "triangle-3d")]
    checked_sum, checked_split = 0, 0
    for k, (a, b) in enumerate(pairs):
        A, B = SETS[a], SETS[b]
        S = ps.minkowski_sum(A, B)
        for x, y in zip(set_samples(A, 45, seed=k), set_samples(B, 45, seed=k + 50)):
            assert ps.contains(S, la.add(x, y))
            checked_sum += 1
        for z in set_samples(S, 45, seed=k + 100):
            assert _split_exists(A, B, z)
            checked_split += 1
    assert checked_sum >= 200 and checked_split >= 200


def test_sum_by_projection_matches_minkowski_and_keeps_strictness():
    A, B = SETS["triangle-h"], SETS["square-h"]
    assert ps.same_set(ps.sum_by_projection(A, B), ps.minkowski_sum(A, B))
    # (0,1) x {0}  +  {0} x [0,1]  =  (0,1) x [0,1]
    C = hset(2, eqs=[((0, 1), 0)], strict=[((-1, 0), 0), ((1, 0), 1)])
    D = hset(2, [((0, -1), 0), ((0, 1), 1)], eqs=[((1, 0), 0)])
    S = ps.sum_by_projection(C, D)
    assert ps.contains(S, (H, 0)) and ps.contains(S, (H, 1))
    assert not ps.contains(S, (0, H)) and not ps.contains(S, (1, H))


TRANSFORM_SETS = ["square-h", "triangle-v", "cone-v", "tetrahedron", "flat-segment", "half-plane"]


@pytest.mark.parametrize("name", TRANSFORM_SETS)
def test_transforms_commute_with_membership(name):
    C = SETS[name]
    n = C.dim
    rng = Lcg(len(name))
    t = rng.vector(n, -2, 2, 3)
    lam = F(-3, 2)
    probe = set_samples(C, 12) + [rng.vector(n, -2, 3, 2) for _ in range(12)]
    T = ps.translate(C, t)
    S = ps.scale(C, lam)
    M = LinearMap(tuple(tuple(F(1) if i == j else F(i + 1, 3) * (j > i) for j in range(n))
                        for i in range(n)))
    assert M.is_injective()
    L = ps.linear_image(C, M)
    P = ps.product(C, box([0], [1]))
    for x in probe:
        inside = ps.contains(C, x)
        assert ps.contains(T, la.add(x, t)) == inside
        assert ps.contains(S, la.smul(lam, x)) == inside
        assert ps.contains(L, M(x)) == inside
        assert ps.contains(P, tuple(x) + (H,)) == inside


@pytest.mark.parametrize("name", ["half-open-square", "open-square", "cube-open-top"])
def test_h_transforms_keep_strict_rows(name):
    C = MIXED[name]
    t = (1,) * C.dim
    for x in set_samples(C, 20) + [la.zeros(C.dim), (1,) * C.dim]:
        assert ps.contains(ps.translate(C, t), la.add(x, t)) == ps.contains(C, x)
        assert ps.contains(ps.scale(C, -3), la.smul(-3, x)) == ps.contains(C, x)


def test_subset_handles_strict_rows():
    assert ps.is_subset(MIXED["open-square"], SQUARE)
    assert not ps.is_subset(SQUARE, MIXED["open-square"])
    assert ps.is_subset(MIXED["half-open-square"], ps.relax(MIXED["half-open-square"]))
    assert ps.same_set(MIXED["open-square"], MIXED["open-square"])


@pytest.mark.parametrize("name", sorted(SETS) + sorted(MIXED))
def test_json_round_trip_is_exact(name):
    C = SETS.get(name) or MIXED[name]
    assert ps.loads(ps.dumps(C)) == C


def test_json_spec_format_parses():
    text = ('{"type":"hset","dim":2,"ineqs":[{"a":["1","0"],"b":"1/2","strict":true}],'
            '"eqs":[{"e":["0","1"],"f":"-3"}]}')
    C = ps.loads(text)
    assert C == HSet(2, (Row((1, 0), H, True),), (((0, 1), -3),))
    V = ps.loads('{"type":"vset","dim":1,"points":[["2/4"]],"rays":[]}')
    assert V == VSet(1, ((H,),), ())


@pytest.mark.parametrize("text, field", [
    ('{"type":"hset","dim":2,"ineqs":[{"a":["1"],"b":"0"}]}', "ineqs[0].a"),
    ('{"type":"hset","dim":2,"ineqs":[{"a":["1","x"],"b":"0"}]}', "ineqs[0].a[1]"),
    ('{"type":"hset","dim":2,"ineqs":[{"a":["1","0"]}]}', "b"),
    ('{"type":"vset","dim":2,"points":[]}', "points"),
    ('{"type":"vset","dim":1,"points":[[0.5]]}', "points[0][0]"),
    ('{"type":"blob","dim":1}', "type"),
    ('{"type":"hset"}', "dim"),
])
def test_json_errors_name_the_field(text, field):
    with pytest.raises(ValueError) as exc:
        ps.loads(text)
    assert field in str(exc.value)


rats = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@given(st.lists(st.tuples(rats, rats), min_size=1, max_size=5),
       st.lists(st.tuples(rats, rats), max_size=2))
@settings(max_examples=40, deadline=None)
def test_vset_json_round_trip_property(points, rays):
    V = VSet(2, tuple(points), tuple(rays))
    assert ps.loads(ps.dumps(V)) == V
