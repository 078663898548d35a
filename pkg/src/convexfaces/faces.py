"""Faces, minimal faces, face lattices and chains of polyhedral sets.

A face of an H-set is named by its canonical active set: every weak row that
holds with equality on the whole face.  A face of a V-set is named by the
generators lying on it.  Both forms are canonical, so descriptor equality is
face equality.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from . import exactla as la
from . import polyset as ps
from .errors import (
    EmptyInput,
    EmptySet,
    NotMember,
    NotProperFace,
    ParentMismatch,
    UnsupportedStrict,
)
from .exactla import ONE, ZERO
from .polyset import HSet, Row, VSet

EMPTY, ACTIVE, GENERATORS = "empty", "active", "generators"


@dataclass(frozen=True)
class FaceDescriptor:
    """A face of ``parent``.

    ``kind`` is ``"empty"``, ``"active"`` (``indices`` = canonical active
    weak rows of an HSet parent) or ``"generators"`` (``points``/``rays`` =
    indices of the VSet parent's generators on the face).
    """

    parent: object
    kind: str
    indices: frozenset = frozenset()
    points: frozenset = frozenset()
    rays: frozenset = frozenset()
    dim: int = field(default=-1, compare=False)

    @property
    def is_empty(self) -> bool:
        return self.kind == EMPTY

    def label(self) -> str:
        if self.kind == EMPTY:
            return "empty"
        if self.kind == ACTIVE:
            return "active {" + ",".join(map(str, sorted(self.indices))) + "}"
        pts = ",".join(map(str, sorted(self.points)))
        rays = ",".join(map(str, sorted(self.rays)))
        return "points {" + pts + "} rays {" + rays + "}"

    def sort_key(self) -> tuple:
        if self.kind == GENERATORS:
            return (self.dim, tuple(sorted(self.points)), tuple(sorted(self.rays)))
        return (self.dim, tuple(sorted(self.indices)), ())


@dataclass(frozen=True)
class LatticeGraph:
    nodes: tuple
    covers: tuple  # (lower index, upper index) pairs

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.nodes) - 1


def empty_face(C) -> FaceDescriptor:
    return FaceDescriptor(C, EMPTY, dim=-1)


# ---------------------------------------------------------------------------
# canonical forms

def _face_rows(H: HSet, active) -> tuple:
    eqs = list(H.eqs) + [(H.ineqs[i].a, H.ineqs[i].b) for i in sorted(active)]
    return eqs


@lru_cache(maxsize=8192)
def _canonical_active(H: HSet, active: frozenset) -> Optional[frozenset]:
    """All weak rows tight on ``H`` with the rows in ``active`` set to equality.

    Returns None when that system is empty.
    """
    weak_idx = H.weak_indices
    eqs = _face_rows(H, active)
    rest = [i for i in weak_idx if i not in active]
    weak = [(H.ineqs[i].a, H.ineqs[i].b) for i in rest]
    try:
        imp = la.implicit_equalities(weak, eqs, H.dim, H.strict_rows())
    except EmptySet:
        return None
    return frozenset(active) | frozenset(rest[j] for j in imp)


def _active_dim(H: HSet, active) -> int:
    normals = [e for e, _ in H.eqs] + [H.ineqs[i].a for i in active]
    return H.dim - (la.rank(normals) if normals else 0)


def active_face(H: HSet, active) -> FaceDescriptor:
    """Canonical descriptor of ``H`` intersected with equality on ``active`` rows."""
    active = frozenset(active)
    for i in active:
        if H.ineqs[i].strict:
            raise ValueError(f"row {i} is strict and cannot be active")
    canon = _canonical_active(H, active)
    if canon is None:
        return empty_face(H)
    return FaceDescriptor(H, ACTIVE, indices=canon, dim=_active_dim(H, canon))


def _generator_dim(V: VSet, points, rays) -> int:
    pts = [V.points[i] for i in sorted(points)]
    vecs = [la.sub(p, pts[0]) for p in pts[1:]] + [V.rays[i] for i in sorted(rays)]
    return len(la.row_basis(vecs))


def generator_face(V: VSet, points, rays=()) -> FaceDescriptor:
    points, rays = frozenset(points), frozenset(rays)
    if not points:
        return empty_face(V)
    return FaceDescriptor(V, GENERATORS, points=points, rays=rays,
                          dim=_generator_dim(V, points, rays))


def full_face(C) -> FaceDescriptor:
    if isinstance(C, VSet):
        return generator_face(C, range(len(C.points)), range(len(C.rays)))
    return active_face(C, frozenset())


def face_set(F: FaceDescriptor):
    """The face as a convex set of its own (an infeasible HSet when empty)."""
    C = F.parent
    if F.kind == EMPTY:
        return HSet(C.dim, (Row(la.zeros(C.dim), -ONE),))
    if F.kind == GENERATORS:
        return VSet(C.dim, tuple(C.points[i] for i in sorted(F.points)),
                    tuple(C.rays[i] for i in sorted(F.rays)))
    return HSet(C.dim, C.ineqs, tuple(_face_rows(C, F.indices)))


def face_contains(F: FaceDescriptor, x) -> bool:
    if F.kind == EMPTY:
        return False
    return ps.contains(face_set(F), x)


def face_le(F: FaceDescriptor, G: FaceDescriptor) -> bool:
    """Inclusion of faces with a common parent."""
    _same_parent(F, G)
    if F.kind == EMPTY:
        return True
    if G.kind == EMPTY:
        return False
    if F.kind == ACTIVE:
        return G.indices <= F.indices
    return F.points <= G.points and F.rays <= G.rays


def _same_parent(F: FaceDescriptor, G: FaceDescriptor):
    if F.parent != G.parent:
        raise ParentMismatch("faces belong to different sets")


# ---------------------------------------------------------------------------
# minimal faces

def _generator_support(V: VSet, x) -> tuple:
    """Generators carrying positive weight in some representation of ``x``.

    Each round maximizes the sum of capped weights of the generators not yet
    known to be used; the positive ones join the support, and a zero optimum
    proves the rest are never used.
    """
    k, r, n = len(V.points), len(V.rays), V.dim
    g = k + r
    unknown = list(range(g))
    used = set()
    while unknown:
        u = len(unknown)
        width = g + u
        eqs = []
        for i in range(n):
            row = tuple(p[i] for p in V.points) + tuple(q[i] for q in V.rays) + (ZERO,) * u
            eqs.append((row, x[i]))
        eqs.append(((ONE,) * k + (ZERO,) * (r + u), ONE))
        ineqs = []
        for t, j in enumerate(unknown):
            cap = [ZERO] * width
            cap[g + t] = ONE
            ineqs.append((tuple(cap), ONE))
            cap = list(cap)
            cap[j] = -ONE
            ineqs.append((tuple(cap), ZERO))
        obj = (ZERO,) * g + (ONE,) * u
        out = la.lp_solve(obj, ineqs, eqs, nonneg=range(width))
        if not out.optimal:
            raise NotMember("point is not in the set")
        if out.value == 0:
            break
        new = {j for j in unknown if out.point[j] > 0}
        used |= new
        unknown = [j for j in unknown if j not in new]
    pts = frozenset(j for j in used if j < k)
    rays = frozenset(j - k for j in used if j >= k)
    return pts, rays


def minimal_face(C, x) -> FaceDescriptor:
    """The smallest face of ``C`` containing ``x``.

    For an H-set these are the weak rows tight at ``x``; no further row can
    be tight on the whole face, so the set is already canonical.
    """
    x = ps._check_point(C, x)
    if not ps.contains(C, x):
        raise NotMember("point is not in the set")
    if isinstance(C, VSet):
        pts, rays = _generator_support(C, x)
        return generator_face(C, pts, rays)
    active = frozenset(i for i in C.weak_indices if C.ineqs[i].tight(x))
    return FaceDescriptor(C, ACTIVE, indices=active, dim=_active_dim(C, active))


def minimal_face_of_set(C, S) -> FaceDescriptor:
    S = [ps._check_point(C, s) for s in S]
    if not S:
        raise EmptyInput("need at least one point")
    for s in S:
        if not ps.contains(C, s):
            raise NotMember(f"point {tuple(map(la.fmt_rat, s))} is not in the set")
    return minimal_face(C, la.barycenter(S))


def is_face(C, candidate) -> bool:
    """Whether the candidate (a descriptor or a convex subset) is a face of ``C``.

    A nonempty convex ``F`` inside ``C`` is a face exactly when it equals the
    minimal face of one of its relative-interior points.
    """
    if isinstance(candidate, FaceDescriptor):
        if candidate.kind == EMPTY:
            return True
        S = face_set(candidate)
    else:
        S = candidate
    if isinstance(S, HSet) and ps.is_empty(S):
        return True
    if not ps.is_subset(S, C):
        return False
    F = minimal_face(C, ps.interior_point(S))
    return ps.is_subset(face_set(F), S)


def face_intersection(F: FaceDescriptor, G: FaceDescriptor) -> FaceDescriptor:
    _same_parent(F, G)
    C = F.parent
    if F.kind == EMPTY or G.kind == EMPTY:
        return empty_face(C)
    if F.kind == ACTIVE:
        return active_face(C, F.indices | G.indices)
    return generator_face(C, F.points & G.points, F.rays & G.rays)


def as_active(F: FaceDescriptor) -> FaceDescriptor:
    """Re-express a generator face as an active-set face of the parent's H-form."""
    if F.kind != GENERATORS:
        return F
    H = ps.v_to_h(F.parent)
    return minimal_face(H, ps.interior_point(face_set(F)))


# ---------------------------------------------------------------------------
# lattices and chains

def _active_lattice_nodes(H: HSet) -> list:
    top = active_face(H, ())
    seen = {top.indices: top}
    queue = deque([top])
    while queue:
        F = queue.popleft()
        for i in H.weak_indices:
            if i in F.indices:
                continue
            G = active_face(H, F.indices | {i})
            if G.kind == EMPTY:
                continue
            if G.indices not in seen:
                seen[G.indices] = G
                queue.append(G)
    nodes = list(seen.values())
    nodes.sort(key=FaceDescriptor.sort_key)
    return [empty_face(H)] + nodes


def _to_generator_face(V: VSet, F: FaceDescriptor) -> FaceDescriptor:
    if F.kind == EMPTY:
        return empty_face(V)
    S = face_set(F)
    pts = [i for i, p in enumerate(V.points) if ps.contains(S, p)]
    # a ray lies on the face when the face contains p + r for a face point p
    base = V.points[pts[0]]
    rays = [j for j, r in enumerate(V.rays) if ps.contains(S, la.add(base, r))]
    return generator_face(V, pts, rays)


@lru_cache(maxsize=256)
def face_lattice(C) -> LatticeGraph:
    """All faces of a linearly closed set, ordered by inclusion.

    Nodes are sorted by (dimension, canonical indices), so the empty face
    comes first and the full face last.  Covers come from a transitive
    reduction of inclusion, not from dimension counting.
    """
    if isinstance(C, HSet) and not C.is_closed:
        raise UnsupportedStrict("face lattices need a linearly closed set")
    H = ps.to_h(C)
    ps._desk_check(H.dim, len(H.ineqs), "face lattice")
    if ps.is_empty(H):
        return LatticeGraph((empty_face(C),), ())
    nodes = _active_lattice_nodes(H)
    if isinstance(C, VSet):
        nodes = [_to_generator_face(C, F) for F in nodes]
        nodes.sort(key=FaceDescriptor.sort_key)
    less = {}
    for a, F in enumerate(nodes):
        for b, G in enumerate(nodes):
            less[a, b] = a != b and face_le(F, G)
    covers = []
    for a in range(len(nodes)):
        for b in range(len(nodes)):
            if less[a, b] and not any(less[a, c] and less[c, b] for c in range(len(nodes))):
                covers.append((a, b))
    return LatticeGraph(tuple(nodes), tuple(covers))


def maximal_chains(L: LatticeGraph) -> list:
    """Every maximal chain from the empty face to the full face."""
    up = {}
    for a, b in L.covers:
        up.setdefault(a, []).append(b)
    chains = []

    def walk(path):
        nxt = up.get(path[-1], [])
        if not nxt:
            chains.append([L.nodes[i] for i in path])
            return
        for b in sorted(nxt):
            walk(path + [b])

    walk([L.bottom])
    return chains


def lattice_to_dot(L: LatticeGraph) -> str:
    lines = ["digraph face_lattice {", "  rankdir=BT;"]
    for i, F in enumerate(L.nodes):
        lines.append(f'  n{i} [label="dim {F.dim}\\n{F.label()}"];')
    for a, b in L.covers:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# removing a face

def set_minus_face(C: HSet, F: FaceDescriptor) -> HSet:
    """``C`` without the proper nonempty face ``F``, as a mixed H-set.

    Let N be the active rows of ``F`` that are not implicit on ``C``.  On
    ``C`` the sum of the rows in N reaches its bound exactly on ``F``, so the
    single strict row ``sum(a_i).x < sum(b_i)`` removes ``F`` and nothing
    else.  When N has one element this is just that row made strict.
    """
    if not isinstance(C, HSet):
        raise UnsupportedStrict("set_minus_face expects an H-form parent")
    if not C.is_closed:
        raise UnsupportedStrict("set_minus_face expects a linearly closed set")
    if F.parent != C:
        raise ParentMismatch("face belongs to a different set")
    F = as_active(F)
    if F.kind == EMPTY:
        raise NotProperFace("the empty face")
    cut = sorted(F.indices - ps.implicit_rows(C))
    if not cut:
        raise NotProperFace("the full face")
    rows = list(C.ineqs)
    if len(cut) == 1:
        r = rows[cut[0]]
        rows[cut[0]] = Row(r.a, r.b, True)
    else:
        a = la.zeros(C.dim)
        b = ZERO
        for i in cut:
            a = la.add(a, rows[i].a)
            b += rows[i].b
        rows.append(Row(a, b, True))
    return HSet(C.dim, tuple(rows), C.eqs)
