"""Intrinsic core (relative interior) tests, decomposition and calculus checks.

Four independent membership tests are provided and can be cross-checked
against each other:

* ``SEGMENTS``: every segment from a generator through ``x`` extends past ``x``.
* ``FEASIBLE_CONE``: no non-implicit row is tight at ``x``, so the cone of
  feasible directions at ``x`` is a linear subspace.
* ``AFFINE_CORE``: ``x`` can move both ways along every affine-hull direction.
* ``MIN_FACE``: the minimal face of ``x`` is the whole set.

Sets with strict rows are handled through their closure once membership is
established; in finite dimensions a convex set and its closure share the
same intrinsic core.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import exactla as la
from . import faces as fc
from . import polyset as ps
from . import sampling
from .errors import (
    ContainsOrigin,
    EmptySet,
    MethodDisagreement,
    NotMember,
    TooLarge,
    UnsupportedComposite,
    UnsupportedRays,
    UnsupportedStrict,
    ZeroScale,
)
from .exactla import ONE, ZERO
from .polyset import HSet, Row


class IcrMethod(enum.Enum):
    SEGMENTS = "segments"
    FEASIBLE_CONE = "feasible-cone"
    AFFINE_CORE = "affine-core"
    MIN_FACE = "min-face"
    ALL = "all"


SINGLE_METHODS = (IcrMethod.SEGMENTS, IcrMethod.FEASIBLE_CONE,
                  IcrMethod.AFFINE_CORE, IcrMethod.MIN_FACE)


def _closure(C):
    if isinstance(C, HSet) and not C.is_closed:
        return ps.relax(C)
    return C


def _by_segments(K, x) -> bool:
    V = ps.to_v(K)
    k, r, n = len(V.points), len(V.rays), V.dim
    width = k + r + 1
    tcol = k + r
    bound = [(la.unit(width, tcol), ONE)]
    obj = la.unit(width, tcol)
    conv = ((ONE,) * k + (ZERO,) * (r + 1), ONE)
    for kind, g in [("p", p) for p in V.points] + [("r", q) for q in V.rays]:
        # representation of x + t(x - p), or of x - t r for a ray r
        d = la.sub(x, g) if kind == "p" else la.smul(-1, g)
        eqs = [conv]
        for i in range(n):
            row = tuple(p[i] for p in V.points) + tuple(q[i] for q in V.rays) + (-d[i],)
            eqs.append((row, x[i]))
        out = la.lp_solve(obj, bound, eqs, nonneg=range(width))
        if not out.optimal or out.value <= 0:
            return False
    return True


def _by_feasible_cone(K, x) -> bool:
    H = ps.to_h(K)
    imp = ps.implicit_rows(H)
    return not any(H.ineqs[i].tight(x) for i in H.weak_indices if i not in imp)


def _by_affine_core(K, x) -> bool:
    H = ps.to_h(K)
    _, basis = ps.affine_hull(ps.to_v(K))
    for d in basis:
        if any(la.dot(e, d) != 0 for e, _ in H.eqs):
            return False
        for sign in (1, -1):
            step = la.smul(sign, d)
            for r in H.ineqs:
                # a row that grows along the step needs slack at x
                if la.dot(r.a, step) > 0 and la.dot(r.a, x) >= r.b:
                    return False
    return True


def _by_min_face(K, x) -> bool:
    V = ps.to_v(K)
    F = fc.minimal_face(V, x)
    return len(F.points) == len(V.points) and len(F.rays) == len(V.rays)


_METHODS = {
    IcrMethod.SEGMENTS: _by_segments,
    IcrMethod.FEASIBLE_CONE: _by_feasible_cone,
    IcrMethod.AFFINE_CORE: _by_affine_core,
    IcrMethod.MIN_FACE: _by_min_face,
}


def icr_verdicts(C, x) -> dict:
    """Verdict of every single method, keyed by method value."""
    x = ps._check_point(C, x)
    if not ps.contains(C, x):
        raise NotMember("point is not in the set")
    K = _closure(C)
    return {m.value: _METHODS[m](K, x) for m in SINGLE_METHODS}


def icr_contains(C, x, method: IcrMethod = IcrMethod.ALL) -> bool:
    """Whether ``x`` lies in the intrinsic core of ``C``.

    ``ALL`` runs the four methods and raises MethodDisagreement if they split.
    """
    method = IcrMethod(method)
    if method is IcrMethod.ALL:
        verdicts = icr_verdicts(C, x)
        if len(set(verdicts.values())) != 1:
            raise MethodDisagreement(verdicts)
        return next(iter(verdicts.values()))
    x = ps._check_point(C, x)
    if not ps.contains(C, x):
        raise NotMember("point is not in the set")
    return _METHODS[method](_closure(C), x)


def relative_interior(C) -> HSet:
    """The intrinsic core as a mixed H-set.

    Implicit equalities become equations; every other row becomes strict.
    """
    H = ps.to_h(C)
    if ps.is_empty(H):
        raise EmptySet("set is empty")
    imp = ps.implicit_rows(H)
    eqs = list(H.eqs) + [(H.ineqs[i].a, H.ineqs[i].b) for i in sorted(imp)]
    rows = tuple(Row(r.a, r.b, True) for i, r in enumerate(H.ineqs) if i not in imp)
    return HSet(H.dim, rows, tuple(eqs))


def decompose(C) -> list:
    """The nonempty faces of ``C``; their intrinsic cores partition ``C``."""
    if isinstance(C, HSet) and ps.is_empty(C):
        return []
    return list(fc.face_lattice(C).nodes[1:])


def in_face_core(F: fc.FaceDescriptor, x) -> bool:
    """Whether ``x`` lies in the intrinsic core of the face ``F``."""
    if F.kind == fc.EMPTY:
        return False
    S = fc.face_set(F)
    return ps.contains(S, x) and _by_feasible_cone(S, x)


def locate(C, x) -> fc.FaceDescriptor:
    """The face of ``C`` whose intrinsic core contains ``x``.

    Found by scanning the decomposition rather than by tight rows, so it
    serves as an independent check on :func:`minimal_face`.
    """
    x = ps._check_point(C, x)
    if not ps.contains(C, x):
        raise NotMember("point is not in the set")
    hits = [F for F in decompose(C) if in_face_core(F, x)]
    if len(hits) != 1:  # pragma: no cover - the decomposition is a partition
        raise AssertionError(f"point lies in {len(hits)} face cores")
    return hits[0]


def has_proper_faces(C) -> bool:
    """Whether ``C`` has a nonempty face other than itself.

    True iff some non-implicit weak row is tight somewhere on ``C``; strict
    rows are never tight on ``C``.
    """
    H = ps.to_h(C)
    if ps.is_empty(H):
        raise EmptySet("set is empty")
    imp = ps.implicit_rows(H)
    weak, strict = H.weak_rows(), H.strict_rows()
    for i in H.weak_indices:
        if i in imp:
            continue
        r = H.ineqs[i]
        if la.strict_feasible(weak, strict, list(H.eqs) + [(r.a, r.b)], H.dim) is not None:
            return True
    return False


# ---------------------------------------------------------------------------
# calculus checks

class Law(enum.Enum):
    SUM = "sum"
    TRANSLATE = "translate"
    SCALE = "scale"
    LINEAR_IMAGE = "linear-image"
    PRODUCT = "product"
    POSITIVE_HULL = "positive-hull"


@dataclass(frozen=True)
class CalcVerdict:
    law: Law
    holds: bool
    counterexample: Optional[tuple] = None  # (point, which side failed)
    checked: int = 0


def _core(C, x) -> bool:
    return icr_contains(C, x, IcrMethod.FEASIBLE_CONE)


def _core_split(parts, z) -> bool:
    """Whether ``z = x + y`` with ``x``, ``y`` in the cores of the two parts."""
    A, B = (relative_interior(P) for P in parts)
    n = A.dim
    weak, strict, eqs = [], [], []
    for r in A.ineqs:
        (strict if r.strict else weak).append((r.a, r.b))
    eqs += list(A.eqs)
    # z - x in B:  a.(z - x) < b  <=>  -a.x < b - a.z
    for r in B.ineqs:
        (strict if r.strict else weak).append((la.smul(-1, r.a), r.b - la.dot(r.a, z)))
    eqs += [(la.smul(-1, e), f - la.dot(e, z)) for e, f in B.eqs]
    return la.strict_feasible(weak, strict, eqs, n) is not None


def _core_preimage(C, M: ps.LinearMap, z) -> bool:
    """Whether ``z = M x`` for some ``x`` in the core of ``C``."""
    R = relative_interior(C)
    eqs = list(R.eqs) + [(row, zi) for row, zi in zip(M.matrix, z)]
    return la.strict_feasible(R.weak_rows(), R.strict_rows(), eqs, R.dim) is not None


def _composite(law: Law, operands):
    try:
        if law is Law.SUM:
            A, B = operands
            if (isinstance(A, HSet) and not A.is_closed) or (isinstance(B, HSet) and not B.is_closed):
                return ps.sum_by_projection(A, B)
            return ps.minkowski_sum(A, B)
        if law is Law.TRANSLATE:
            return ps.translate(*operands)
        if law is Law.SCALE:
            return ps.scale(*operands)
        if law is Law.LINEAR_IMAGE:
            return ps.linear_image(*operands)
        if law is Law.PRODUCT:
            return ps.product(*operands)
        return ps.positive_hull(*operands)
    except (UnsupportedStrict, UnsupportedRays, ContainsOrigin, TooLarge, ZeroScale) as exc:
        raise UnsupportedComposite(f"{law.value}: {exc}") from exc


def check_calculus(law, operands, count: int = 200, seed: int = 0) -> CalcVerdict:
    """Check an intrinsic-core calculus law on reproducible samples.

    Samples are drawn from the operands and from the composite set; each is
    classified by both sides of the law and any mismatch is returned as an
    exact counterexample.  For the positive hull only the inclusion of the
    operand's core in the hull's core is checked.
    """
    law = Law(law)
    if count < 1:
        raise ValueError("count must be at least 1")
    S = _composite(law, operands)
    half = max(1, count // 2)
    checked = 0

    def fail(point, side):
        return CalcVerdict(law, False, (point, side), checked)

    if law is Law.POSITIVE_HULL:
        (C,) = operands
        for x in sampling.icr_samples(C, count, seed):
            checked += 1
            if not _core(S, x):
                return fail(x, "core point of the operand outside the core of the hull")
        return CalcVerdict(law, True, None, checked)

    if law is Law.SUM:
        A, B = operands
        xs = sampling.set_samples(A, half, seed)
        ys = sampling.set_samples(B, half, seed + 1)
        for x, y in zip(xs, ys):
            checked += 1
            lhs = _core(A, x) and _core(B, y)
            if lhs and not _core(S, la.add(x, y)):
                return fail(la.add(x, y), "sum of core points outside the core of the sum")
        for z in sampling.set_samples(S, count - half, seed + 2):
            checked += 1
            if _core(S, z) != _core_split((A, B), z):
                return fail(z, "core of the sum differs from the sum of cores")
        return CalcVerdict(law, True, None, checked)

    if law is Law.LINEAR_IMAGE:
        C, M = operands
        for x in sampling.set_samples(C, half, seed):
            checked += 1
            if _core(C, x) and not _core(S, M(x)):
                return fail(M(x), "image of a core point outside the core of the image")
        for z in sampling.set_samples(S, count - half, seed + 1):
            checked += 1
            if _core(S, z) != _core_preimage(C, M, z):
                return fail(z, "core of the image differs from the image of the core")
        return CalcVerdict(law, True, None, checked)

    if law is Law.PRODUCT:
        C, D = operands
        n = C.dim
        pts = [x + y for x, y in zip(sampling.set_samples(C, half, seed),
                                     sampling.set_samples(D, half, seed + 1))]
        pts += sampling.set_samples(S, count - half, seed + 2)
        for z in pts:
            checked += 1
            if _core(S, z) != (_core(C, z[:n]) and _core(D, z[n:])):
                return fail(z, "core of the product differs from the product of cores")
        return CalcVerdict(law, True, None, checked)

    # translate and scale: the map is a bijection, compare both ways
    C, param = operands
    if law is Law.TRANSLATE:
        t = la.qvec(param)
        fwd = lambda x: la.add(x, t)  # noqa: E731
        back = lambda z: la.sub(z, t)  # noqa: E731
    else:
        lam = la.rat(param)
        fwd = lambda x: la.smul(lam, x)  # noqa: E731
        back = lambda z: la.smul(1 / lam, z)  # noqa: E731
    for x in sampling.set_samples(C, half, seed):
        checked += 1
        if _core(C, x) != _core(S, fwd(x)):
            return fail(fwd(x), "image of the core differs from the core of the image")
    for z in sampling.set_samples(S, count - half, seed + 1):
        checked += 1
        if _core(S, z) != _core(C, back(z)):
            return fail(z, "core of the image differs from the image of the core")
    return CalcVerdict(law, True, None, checked)


def extension_point(C, x, y) -> tuple:
    """For ``x`` in the core and ``y`` in ``C``, a core point ``z`` with ``x`` in ``(z, y)``.

    Returns ``(z, t)`` where ``z = x + t (x - y)`` with ``t > 0`` the largest
    step allowed (capped at 1), halved so that ``z`` stays in the core.
    """
    x, y = la.qvec(x), la.qvec(y)
    if x == y:
        return x, ONE
    H = ps.to_h(_closure(C))
    d = la.sub(x, y)
    t = ONE
    for r in H.ineqs:
        grow = la.dot(r.a, d)
        if grow > 0:
            t = min(t, (r.b - la.dot(r.a, x)) / grow)
    if t <= 0:
        raise NotMember("x is not in the intrinsic core")
    t = t / 2
    return la.add(x, la.smul(t, d)), Fraction(t)
