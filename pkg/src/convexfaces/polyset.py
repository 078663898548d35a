"""Convex sets in inequality (H) and generator (V) form.

An :class:`HSet` is ``{x : a.x <= b (weak rows), a.x < b (strict rows), e.x = f}``.
A :class:`VSet` is ``conv(points) + cone(rays)``.  Sets with strict rows are
not linearly closed and have no V-form; everything else converts both ways
at desk scale (ambient dimension at most 4, at most 16 irredundant rows or
generators).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from . import exactla as la
from .errors import (
    ContainsOrigin,
    DimensionMismatch,
    EmptyInput,
    EmptySet,
    TooLarge,
    UnsupportedRays,
    UnsupportedStrict,
    ZeroScale,
)
from .exactla import ONE, ZERO, QVec, rat

DESK_MAX_DIM = 4
DESK_MAX_ELEMENTS = 16


@dataclass(frozen=True)
class Row:
    """One inequality ``a.x <= b`` (or ``a.x < b`` when ``strict``)."""

    a: QVec
    b: Fraction
    strict: bool = False

    def holds(self, x) -> bool:
        v = la.dot(self.a, x)
        return v < self.b if self.strict else v <= self.b

    def tight(self, x) -> bool:
        return la.dot(self.a, x) == self.b


@dataclass(frozen=True)
class HSet:
    dim: int
    ineqs: tuple = ()
    eqs: tuple = ()

    def __post_init__(self):
        rows = []
        for r in self.ineqs:
            if not isinstance(r, Row):
                r = Row(*r) if len(r) == 3 else Row(r[0], r[1])
            a = tuple(rat(v) for v in r.a)
            if len(a) != self.dim:
                raise DimensionMismatch(f"inequality of length {len(a)} in dimension {self.dim}")
            rows.append(Row(a, rat(r.b), bool(r.strict)))
        eqs = []
        for e, f in self.eqs:
            e = tuple(rat(v) for v in e)
            if len(e) != self.dim:
                raise DimensionMismatch(f"equation of length {len(e)} in dimension {self.dim}")
            eqs.append((e, rat(f)))
        if self.dim < 1:
            raise DimensionMismatch("dimension must be at least 1")
        object.__setattr__(self, "ineqs", tuple(rows))
        object.__setattr__(self, "eqs", tuple(eqs))

    @property
    def weak_indices(self) -> tuple:
        return tuple(i for i, r in enumerate(self.ineqs) if not r.strict)

    @property
    def strict_indices(self) -> tuple:
        return tuple(i for i, r in enumerate(self.ineqs) if r.strict)

    @property
    def is_closed(self) -> bool:
        return not any(r.strict for r in self.ineqs)

    def weak_rows(self) -> list:
        return [(r.a, r.b) for r in self.ineqs if not r.strict]

    def strict_rows(self) -> list:
        return [(r.a, r.b) for r in self.ineqs if r.strict]


@dataclass(frozen=True)
class VSet:
    dim: int
    points: tuple
    rays: tuple = ()

    def __post_init__(self):
        pts = tuple(tuple(rat(v) for v in p) for p in self.points)
        rays = tuple(tuple(rat(v) for v in r) for r in self.rays)
        if not pts:
            raise EmptyInput("a VSet needs at least one point")
        for v in pts + rays:
            if len(v) != self.dim:
                raise DimensionMismatch(f"generator of length {len(v)} in dimension {self.dim}")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "rays", rays)

    @property
    def is_closed(self) -> bool:
        return True


ConvexSet = Union[HSet, VSet]


@dataclass(frozen=True)
class LinearMap:
    matrix: tuple

    def __post_init__(self):
        m = la.qmat(self.matrix)
        if not m:
            raise DimensionMismatch("linear map needs at least one row")
        object.__setattr__(self, "matrix", m)

    @property
    def source_dim(self) -> int:
        return len(self.matrix[0])

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    def __call__(self, x) -> QVec:
        if len(x) != self.source_dim:
            raise DimensionMismatch(f"map expects length {self.source_dim}, got {len(x)}")
        return la.matvec(self.matrix, x)

    def is_injective(self) -> bool:
        return la.rank(self.matrix) == self.source_dim


# ---------------------------------------------------------------------------
# convenience constructors

def hset(dim: int, ineqs: Iterable = (), eqs: Iterable = (), strict: Iterable = ()) -> HSet:
    rows = [Row(a, b) for a, b in ineqs] + [Row(a, b, True) for a, b in strict]
    return HSet(dim, tuple(rows), tuple(eqs))


def box(lower: Sequence, upper: Sequence) -> HSet:
    """Axis box, rows ordered ``-x_i <= -lo_i`` then ``x_i <= hi_i`` per axis."""
    n = len(lower)
    rows = []
    for i in range(n):
        rows.append(Row(la.smul(-1, la.unit(n, i)), -rat(lower[i])))
        rows.append(Row(la.unit(n, i), rat(upper[i])))
    return HSet(n, tuple(rows))


def cube(n: int, side=1) -> HSet:
    return box([0] * n, [side] * n)


def hull(points: Iterable, rays: Iterable = ()) -> VSet:
    points = [la.qvec(p) for p in points]
    if not points:
        raise EmptyInput("hull of no points")
    return VSet(len(points[0]), tuple(points), tuple(la.qvec(r) for r in rays))


# ---------------------------------------------------------------------------
# membership

def _check_point(C: ConvexSet, x) -> QVec:
    x = tuple(rat(v) for v in x)
    if len(x) != C.dim:
        raise DimensionMismatch(f"point of length {len(x)} for a set in dimension {C.dim}")
    return x


def contains(C: ConvexSet, x) -> bool:
    x = _check_point(C, x)
    if isinstance(C, HSet):
        return (all(r.holds(x) for r in C.ineqs)
                and all(la.dot(e, x) == f for e, f in C.eqs))
    return _v_contains(C, x)


def _v_contains(V: VSet, x: QVec) -> bool:
    k, r = len(V.points), len(V.rays)
    n = V.dim
    eqs = []
    for i in range(n):
        row = tuple(p[i] for p in V.points) + tuple(q[i] for q in V.rays)
        eqs.append((row, x[i]))
    eqs.append(((ONE,) * k + (ZERO,) * r, ONE))
    out = la.lp_solve(la.zeros(k + r), (), eqs, nonneg=range(k + r))
    return out.optimal


def is_empty(C: ConvexSet) -> bool:
    if isinstance(C, VSet):
        return False
    return _h_point(C) is None


@lru_cache(maxsize=4096)
def _h_point(H: HSet) -> Optional[QVec]:
    return la.strict_feasible(H.weak_rows(), H.strict_rows(), H.eqs, H.dim)


def some_point(C: ConvexSet) -> QVec:
    if isinstance(C, VSet):
        return C.points[0]
    p = _h_point(C)
    if p is None:
        raise EmptySet("set is empty")
    return p


def relax(H: HSet) -> HSet:
    """Weak relaxation: every strict row becomes weak."""
    return HSet(H.dim, tuple(Row(r.a, r.b) for r in H.ineqs), H.eqs)


@lru_cache(maxsize=4096)
def implicit_rows(H: HSet) -> frozenset:
    """Indices of weak rows that are tight on the whole (nonempty) set.

    Computed on the weak relaxation, which has the same affine hull as the
    set itself whenever the set is nonempty.
    """
    if is_empty(H):
        raise EmptySet("set is empty")
    weak = H.weak_indices
    imp = la.implicit_equalities(H.weak_rows(), H.eqs, H.dim)
    return frozenset(weak[i] for i in imp)


def interior_point(C: ConvexSet) -> QVec:
    """A point of the intrinsic core (relative interior) of ``C``."""
    H = to_h(C)
    imp = implicit_rows(H)
    weak, strict = [], []
    eqs = list(H.eqs)
    for i, r in enumerate(H.ineqs):
        if i in imp:
            eqs.append((r.a, r.b))
        else:
            strict.append((r.a, r.b))
    p = la.strict_feasible(weak, strict, eqs, H.dim)
    if p is None:  # pragma: no cover - implicit rows guarantee a point
        raise AssertionError("relative interior unexpectedly empty")
    return p


# ---------------------------------------------------------------------------
# affine hull

def affine_hull(C: ConvexSet) -> tuple:
    """``(base, basis)`` with ``aff C = base + span(basis)``."""
    if isinstance(C, VSet):
        base = C.points[0]
        diffs = [la.sub(p, base) for p in C.points[1:]] + list(C.rays)
        return base, la.row_basis(diffs)
    if is_empty(C):
        raise EmptySet("affine hull of the empty set")
    imp = implicit_rows(C)
    normals = [e for e, _ in C.eqs] + [C.ineqs[i].a for i in sorted(imp)]
    return some_point(C), la.nullspace(normals, C.dim) if normals else [
        la.unit(C.dim, i) for i in range(C.dim)]


def affine_dim(C: ConvexSet) -> int:
    return len(affine_hull(C)[1])


# ---------------------------------------------------------------------------
# H <-> V conversion (desk scale)

def _desk_check(dim: int, count: int, what: str):
    if dim > DESK_MAX_DIM or count > DESK_MAX_ELEMENTS:
        raise TooLarge(f"{what}: dimension {dim}, {count} elements exceeds desk scale "
                       f"(dim <= {DESK_MAX_DIM}, <= {DESK_MAX_ELEMENTS})")


def _in_cone(g, others) -> bool:
    if not others:
        return not any(g)
    k = len(others)
    eqs = [(tuple(o[i] for o in others), g[i]) for i in range(len(g))]
    return la.lp_solve(la.zeros(k), (), eqs, nonneg=range(k)).optimal


def prune(V: VSet) -> VSet:
    """Drop duplicate and redundant generators (same set, fewer generators)."""
    pts = list(dict.fromkeys(V.points))
    rays = []
    seen = set()
    for r in V.rays:
        if not any(r):
            continue
        key = la.primitive(r)
        if key not in seen:
            seen.add(key)
            rays.append(r)
    gens = [p + (ONE,) for p in pts] + [r + (ZERO,) for r in rays]
    keep = list(range(len(gens)))
    for i in range(len(gens)):
        others = [gens[j] for j in keep if j != i]
        if i in keep and _in_cone(gens[i], others):
            keep.remove(i)
    n = V.dim
    new_pts = tuple(gens[i][:n] for i in keep if gens[i][n] == 1)
    new_rays = tuple(gens[i][:n] for i in keep if gens[i][n] == 0)
    return VSet(n, new_pts, new_rays)


@lru_cache(maxsize=2048)
def v_to_h(V: VSet) -> HSet:
    """Facet description of ``conv(points) + cone(rays)``.

    Works on the homogenized cone spanned by ``(p, 1)`` and ``(r, 0)``: every
    facet normal is orthogonal to ``m - 1`` independent generators, where
    ``m`` is the dimension of their span.
    """
    V = prune(V)
    n = V.dim
    gens = [p + (ONE,) for p in V.points] + [r + (ZERO,) for r in V.rays]
    _desk_check(n, len(gens), "V->H conversion")
    perp = la.nullspace(gens, n + 1)
    m = n + 1 - len(perp)
    eqs = [(e[:n], -e[n]) for e in perp]
    eq_normals = [e for e, _ in eqs]
    eq_rank = la.rank(eq_normals) if eq_normals else 0
    facets = []
    seen = set()
    for subset in itertools.combinations(range(len(gens)), m - 1):
        rows = [gens[i] for i in subset] + list(perp)
        ns = la.nullspace(rows, n + 1) if rows else [la.unit(n + 1, i) for i in range(n + 1)]
        if len(ns) != 1:
            continue
        a = ns[0]
        vals = [la.dot(a, g) for g in gens]
        if all(v <= 0 for v in vals):
            pass
        elif all(v >= 0 for v in vals):
            a = la.smul(-1, a)
        else:
            continue
        key = la.primitive(a)
        if key in seen:
            continue
        seen.add(key)
        normal = tuple(Fraction(v) for v in key[:n])
        if la.rank(eq_normals + [normal]) == eq_rank:
            continue  # constant on the affine hull: the face at infinity
        facets.append(Row(normal, Fraction(-key[n])))
    facets.sort(key=lambda r: (r.a, r.b))
    return HSet(n, tuple(facets), tuple(eqs))


@lru_cache(maxsize=2048)
def h_to_v(H: HSet) -> VSet:
    """Generators of a weak H-set (vertices, extreme rays, lines as ray pairs)."""
    if not H.is_closed:
        raise UnsupportedStrict("sets with strict rows have no V-form")
    n = H.dim
    _desk_check(n, len(H.ineqs), "H->V conversion")
    if is_empty(H):
        raise EmptySet("cannot list generators of the empty set")
    ineq = [r.a + (-r.b,) for r in H.ineqs] + [la.smul(-1, la.unit(n + 1, n))]
    eqs = [e + (-f,) for e, f in H.eqs]
    lin = la.nullspace(ineq + eqs, n + 1)
    Q = eqs + lin
    r = la.rank(Q) if Q else 0
    need = (n + 1) - r - 1
    rays_h = []
    seen = set()
    if need >= 0:
        for subset in itertools.combinations(range(len(ineq)), need):
            rows = Q + [ineq[i] for i in subset]
            ns = la.nullspace(rows, n + 1) if rows else [la.unit(n + 1, i) for i in range(n + 1)]
            if len(ns) != 1:
                continue
            g = ns[0]
            for cand in (g, la.smul(-1, g)):
                if all(la.dot(a, cand) <= 0 for a in ineq):
                    key = la.primitive(cand)
                    if key not in seen:
                        seen.add(key)
                        rays_h.append(cand)
                    break
    points, rays = [], []
    for g in rays_h:
        t = g[n]
        if t > 0:
            points.append(tuple(v / t for v in g[:n]))
        else:
            rays.append(tuple(Fraction(v) for v in la.primitive(g[:n])))
    for l in lin:
        d = tuple(Fraction(v) for v in la.primitive(l[:n]))
        rays.extend([d, la.smul(-1, d)])
    if not points:  # pragma: no cover - nonempty sets always have a vertex-like point
        raise AssertionError("no finite generator found for a nonempty set")
    return VSet(n, tuple(sorted(points)), tuple(sorted(rays)))


def to_h(C: ConvexSet) -> HSet:
    return C if isinstance(C, HSet) else v_to_h(C)


def to_v(C: ConvexSet) -> VSet:
    return C if isinstance(C, VSet) else h_to_v(C)


def is_bounded(C: ConvexSet) -> bool:
    return not to_v(C).rays


def is_subset(P: ConvexSet, Q: ConvexSet) -> bool:
    """Whether ``P`` lies inside ``Q``; both may carry strict rows.

    ``P`` is inside ``Q`` exactly when ``P`` meets the complement of no row
    of ``Q``: one strict-feasibility test per row (two per equation).
    """
    if P.dim != Q.dim:
        raise DimensionMismatch(f"subset test between dimensions {P.dim} and {Q.dim}")
    P, Q = to_h(P), to_h(Q)
    weak, strict = P.weak_rows(), P.strict_rows()
    n = P.dim
    for r in Q.ineqs:
        neg = (la.smul(-1, r.a), -r.b)
        if r.strict:
            hit = la.strict_feasible(weak + [neg], strict, P.eqs, n)
        else:
            hit = la.strict_feasible(weak, strict + [neg], P.eqs, n)
        if hit is not None:
            return False
    for e, f in Q.eqs:
        for row in ((e, f), (la.smul(-1, e), -f)):
            if la.strict_feasible(weak, strict + [row], P.eqs, n) is not None:
                return False
    return True


def same_set(P: ConvexSet, Q: ConvexSet) -> bool:
    return is_subset(P, Q) and is_subset(Q, P)


# ---------------------------------------------------------------------------
# calculus constructors

def _closed_v(C: ConvexSet, what: str) -> VSet:
    if isinstance(C, HSet) and not C.is_closed:
        raise UnsupportedStrict(f"{what} of a set with strict rows")
    return to_v(C)


def minkowski_sum(A: ConvexSet, B: ConvexSet) -> VSet:
    """``{x + y}`` as a V-set: all pairwise point sums plus both ray lists."""
    if A.dim != B.dim:
        raise DimensionMismatch(f"sum of dimensions {A.dim} and {B.dim}")
    Av, Bv = _closed_v(A, "minkowski_sum"), _closed_v(B, "minkowski_sum")
    points = tuple(la.add(p, q) for p in Av.points for q in Bv.points)
    return VSet(A.dim, points, Av.rays + Bv.rays)


def sum_by_projection(A: HSet, B: HSet) -> HSet:
    """``A + B`` for H-sets that may carry strict rows.

    Builds ``{(z, x) : x in A, z - x in B}`` and eliminates ``x`` by
    Fourier-Motzkin; strictness survives every combination it takes part in.
    """
    A, B = to_h(A), to_h(B)
    if A.dim != B.dim:
        raise DimensionMismatch(f"sum of dimensions {A.dim} and {B.dim}")
    n = A.dim
    rows = []
    z0 = la.zeros(n)
    for r in A.ineqs:
        rows.append((z0 + r.a, r.b, la.LT if r.strict else la.LE))
    for e, f in A.eqs:
        rows.append((z0 + e, f, la.EQ))
    for r in B.ineqs:
        rows.append((r.a + la.smul(-1, r.a), r.b, la.LT if r.strict else la.LE))
    for e, f in B.eqs:
        rows.append((e + la.smul(-1, e), f, la.EQ))
    out = la.fm_project(rows, range(n, 2 * n))
    if out is None:
        raise EmptySet("sum of empty sets")
    ineqs = tuple(Row(a, b, rel == la.LT) for a, b, rel in out if rel != la.EQ)
    eqs = tuple((a, b) for a, b, rel in out if rel == la.EQ)
    return HSet(n, ineqs, eqs)


def translate(C: ConvexSet, t) -> ConvexSet:
    t = _check_point(C, t)
    if isinstance(C, VSet):
        return VSet(C.dim, tuple(la.add(p, t) for p in C.points), C.rays)
    return HSet(C.dim,
                tuple(Row(r.a, r.b + la.dot(r.a, t), r.strict) for r in C.ineqs),
                tuple((e, f + la.dot(e, t)) for e, f in C.eqs))


def scale(C: ConvexSet, lam) -> ConvexSet:
    lam = rat(lam)
    if lam == 0:
        raise ZeroScale("scaling by zero collapses the set")
    if isinstance(C, VSet):
        sgn = 1 if lam > 0 else -1
        return VSet(C.dim, tuple(la.smul(lam, p) for p in C.points),
                    tuple(la.smul(sgn, r) for r in C.rays))
    # x in lam C  <=>  x / lam in C
    inv = 1 / lam
    return HSet(C.dim,
                tuple(Row(la.smul(inv, r.a), r.b, r.strict) for r in C.ineqs),
                tuple((la.smul(inv, e), f) for e, f in C.eqs))


def product(C: ConvexSet, D: ConvexSet) -> ConvexSet:
    n, m = C.dim, D.dim
    if isinstance(C, VSet) and isinstance(D, VSet):
        pts = tuple(p + q for p in C.points for q in D.points)
        rays = tuple(r + la.zeros(m) for r in C.rays) + tuple(la.zeros(n) + r for r in D.rays)
        return VSet(n + m, pts, rays)
    Ch, Dh = to_h(C), to_h(D)
    rows = tuple(Row(r.a + la.zeros(m), r.b, r.strict) for r in Ch.ineqs)
    rows += tuple(Row(la.zeros(n) + r.a, r.b, r.strict) for r in Dh.ineqs)
    eqs = tuple((e + la.zeros(m), f) for e, f in Ch.eqs)
    eqs += tuple((la.zeros(n) + e, f) for e, f in Dh.eqs)
    return HSet(n + m, rows, eqs)


def linear_image(C: ConvexSet, A: LinearMap) -> VSet:
    if A.source_dim != C.dim:
        raise DimensionMismatch(f"map from dimension {A.source_dim} applied to dimension {C.dim}")
    V = _closed_v(C, "linear_image")
    return VSet(A.target_dim, tuple(A(p) for p in V.points), tuple(A(r) for r in V.rays))


def positive_hull(C: ConvexSet) -> HSet:
    """``{t x : x in C, t > 0}`` for a polytope ``C`` not containing 0.

    This is ``cone(C)`` without the origin.  A functional ``phi`` with
    ``phi.p >= 1`` on every point of ``C`` exists because 0 is not in ``C``;
    the result is the facet description of ``cone(C)`` plus ``phi.x > 0``.
    """
    V = _closed_v(C, "positive_hull")
    if V.rays:
        raise UnsupportedRays("positive_hull expects a polytope")
    n = V.dim
    # find phi with phi.p >= 1 for every point
    rows = [(la.smul(-1, p), -ONE) for p in V.points]
    out = la.lp_solve(la.zeros(n), rows)
    if not out.optimal:
        raise ContainsOrigin("0 lies in the set; its positive hull is not representable here")
    phi = out.point
    K = v_to_h(VSet(n, (la.zeros(n),), V.points))
    return HSet(n, K.ineqs + (Row(la.smul(-1, phi), ZERO, True),), K.eqs)


# ---------------------------------------------------------------------------
# JSON

def _rat_str(q: Fraction) -> str:
    return la.fmt_rat(q)


def _vec_json(v) -> list:
    return [_rat_str(q) for q in v]


def set_to_json(C: ConvexSet) -> dict:
    if isinstance(C, HSet):
        return {
            "type": "hset",
            "dim": C.dim,
            "ineqs": [{"a": _vec_json(r.a), "b": _rat_str(r.b), "strict": r.strict}
                      for r in C.ineqs],
            "eqs": [{"e": _vec_json(e), "f": _rat_str(f)} for e, f in C.eqs],
        }
    return {
        "type": "vset",
        "dim": C.dim,
        "points": [_vec_json(p) for p in C.points],
        "rays": [_vec_json(r) for r in C.rays],
    }


def _parse_rat(value, where: str) -> Fraction:
    if isinstance(value, float):
        raise ValueError(f"{where}: floats are not exact; write rationals as strings")
    try:
        return rat(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"{where}: bad rational {value!r}") from exc


def _parse_vec(value, where: str, dim: int) -> QVec:
    if not isinstance(value, list):
        raise ValueError(f"{where}: expected a list")
    if len(value) != dim:
        raise ValueError(f"{where}: expected {dim} entries, got {len(value)}")
    return tuple(_parse_rat(v, f"{where}[{i}]") for i, v in enumerate(value))


def set_from_json(data) -> ConvexSet:
    """Parse the JSON set format; raises ValueError naming the bad field."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict):
        raise ValueError("set: expected a JSON object")
    kind = data.get("type")
    if "dim" not in data:
        raise ValueError("dim: missing")
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ValueError(f"dim: expected a positive integer, got {dim!r}")
    try:
        if kind == "hset":
            rows = []
            for i, r in enumerate(data.get("ineqs", [])):
                strict = r.get("strict", False)
                if not isinstance(strict, bool):
                    raise ValueError(f"ineqs[{i}].strict: expected true/false")
                rows.append(Row(_parse_vec(r["a"], f"ineqs[{i}].a", dim),
                                _parse_rat(r["b"], f"ineqs[{i}].b"), strict))
            eqs = [(_parse_vec(e["e"], f"eqs[{i}].e", dim), _parse_rat(e["f"], f"eqs[{i}].f"))
                   for i, e in enumerate(data.get("eqs", []))]
            return HSet(dim, tuple(rows), tuple(eqs))
        if kind == "vset":
            pts = [_parse_vec(p, f"points[{i}]", dim) for i, p in enumerate(data.get("points", []))]
            if not pts:
                raise ValueError("points: need at least one point")
            rays = [_parse_vec(r, f"rays[{i}]", dim) for i, r in enumerate(data.get("rays", []))]
            return VSet(dim, tuple(pts), tuple(rays))
    except KeyError as exc:
        raise ValueError(f"{exc.args[0]}: missing field") from exc
    except (DimensionMismatch, EmptyInput) as exc:
        raise ValueError(str(exc)) from exc
    raise ValueError(f"type: expected 'hset' or 'vset', got {kind!r}")


def dumps(C: ConvexSet) -> str:
    return json.dumps(set_to_json(C), sort_keys=True)


def loads(text: str) -> ConvexSet:
    return set_from_json(json.loads(text))
