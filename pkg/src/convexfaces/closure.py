"""Linear closure, linear boundary, support functionals and proper separation.

In finite dimensions a single relaxation step reaches the linear closure: a
nonempty set ``{weak <=, strict <, eqs}`` has closure ``{weak <=, strict <=,
eqs}``.  The infinite-dimensional situation, where one step is not enough,
is modelled only in :mod:`convexfaces.seqgallery`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import floor

from . import exactla as la
from . import icore
from . import polyset as ps
from .errors import (
    DimensionMismatch,
    EmptySet,
    IsInteriorPoint,
    NotMember,
    NotProperlySeparable,
    OverlappingInteriors,
)
from .exactla import ONE, ZERO
from .polyset import VSet


def lin_closure(C):
    if isinstance(C, VSet):
        return C
    if ps.is_empty(C):
        raise EmptySet("set is empty")
    return ps.relax(C)


def lin_contains(C, x) -> bool:
    return ps.contains(lin_closure(C), x)


def lbd_contains(C, x) -> bool:
    """Whether ``x`` is in the linear closure but not in the intrinsic core."""
    K = lin_closure(C)
    return ps.contains(K, x) and not icore.icr_contains(K, x, icore.IcrMethod.FEASIBLE_CONE)


@dataclass(frozen=True)
class SeparationCertificate:
    """``phi.a <= alpha <= phi.b`` on the two sides, with ``phi.w[0] < phi.w[1]``."""

    phi: tuple
    alpha: Fraction
    strict_witness: tuple  # (point of the low side, point of the high side)

    def verify(self, A, B) -> bool:
        """Re-check the certificate against every generator of both sides."""
        phi, alpha = self.phi, self.alpha
        if not any(phi):
            return False
        Av, Bv = ps.to_v(lin_closure(A)), ps.to_v(lin_closure(B))
        if any(la.dot(phi, p) > alpha for p in Av.points):
            return False
        if any(la.dot(phi, r) > 0 for r in Av.rays):
            return False
        if any(la.dot(phi, p) < alpha for p in Bv.points):
            return False
        if any(la.dot(phi, r) < 0 for r in Bv.rays):
            return False
        a, b = self.strict_witness
        return (ps.contains(A, a) and ps.contains(B, b)
                and la.dot(phi, a) < la.dot(phi, b))

    def to_json(self) -> dict:
        return {
            "phi": [la.fmt_rat(q) for q in self.phi],
            "alpha": la.fmt_rat(self.alpha),
            "strict_witness": [[la.fmt_rat(q) for q in w] for w in self.strict_witness],
        }

    @classmethod
    def from_json(cls, data) -> "SeparationCertificate":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(la.rat(q) for q in data["phi"]), la.rat(data["alpha"]),
                   tuple(tuple(la.rat(q) for q in w) for w in data["strict_witness"]))


def support_functional(C, x) -> SeparationCertificate:
    """A proper supporting functional of ``C`` at a boundary point ``x``.

    Uses the lowest-index weak row that is tight at ``x`` without being
    implicit on ``C``.  The witness pair is ``(y, x)`` with ``y`` a core
    point of ``C``, so ``phi.y < alpha = phi.x``.
    """
    x = ps._check_point(C, x)
    if not ps.contains(C, x):
        raise NotMember("point is not in the set")
    H = ps.to_h(C)
    imp = ps.implicit_rows(H)
    for i in H.weak_indices:
        r = H.ineqs[i]
        if i not in imp and r.tight(x):
            y = ps.interior_point(H)
            return SeparationCertificate(r.a, r.b, (y, x))
    raise IsInteriorPoint("point lies in the intrinsic core; no proper support exists")


def _cores_meet(A, B) -> bool:
    RA, RB = icore.relative_interior(A), icore.relative_interior(B)
    weak = RA.weak_rows() + RB.weak_rows()
    strict = RA.strict_rows() + RB.strict_rows()
    return la.strict_feasible(weak, strict, list(RA.eqs) + list(RB.eqs), A.dim) is not None


def properly_separate(A, B) -> SeparationCertificate:
    """A hyperplane properly separating ``A`` (below) from ``B`` (above).

    Requires disjoint intrinsic cores.  The LP over ``(phi, alpha)`` keeps
    ``phi`` in the box ``[-1, 1]^n`` and maximizes the nonnegative gap
    ``mean_B phi.b - mean_A phi.a - sum_A phi.r + sum_B phi.r``; the gap is
    positive exactly when some generator leaves the hyperplane.  A second LP
    picks the optimal ``phi`` of least 1-norm so answers are tidy.
    """
    if A.dim != B.dim:
        raise DimensionMismatch(f"separation between dimensions {A.dim} and {B.dim}")
    Av, Bv = ps.to_v(A), ps.to_v(B)
    if _cores_meet(A, B):
        raise OverlappingInteriors("intrinsic cores intersect")
    n = A.dim
    w = n + 1  # phi then alpha
    ineqs = []
    for p in Av.points:
        ineqs.append((tuple(p) + (-ONE,), ZERO))
    for p in Bv.points:
        ineqs.append((la.smul(-1, p) + (ONE,), ZERO))
    for r in Av.rays:
        ineqs.append((tuple(r) + (ZERO,), ZERO))
    for r in Bv.rays:
        ineqs.append((la.smul(-1, r) + (ZERO,), ZERO))
    for k in range(n):
        ineqs.append((la.unit(w, k), ONE))
        ineqs.append((la.smul(-1, la.unit(w, k)), ONE))
    gap = la.sub(la.barycenter(Bv.points), la.barycenter(Av.points))
    for r in Av.rays:
        gap = la.sub(gap, r)
    for r in Bv.rays:
        gap = la.add(gap, r)
    obj = tuple(gap) + (ZERO,)
    out = la.lp_solve(obj, ineqs)
    if not out.optimal or out.value <= 0:
        raise NotProperlySeparable("every separating hyperplane contains both sets")
    # tie-break: least 1-norm among optimal phi, with phi = u - v, u, v >= 0
    ext = []
    for a, b in ineqs:
        phi_part, alpha_part = a[:n], a[n]
        ext.append((tuple(phi_part) + la.smul(-1, phi_part) + (alpha_part,), b))
    opt_eq = (tuple(gap) + la.smul(-1, gap) + (ZERO,), out.value)
    obj2 = (-ONE,) * (2 * n) + (ZERO,)
    out2 = la.lp_solve(obj2, ext, [opt_eq], nonneg=range(2 * n))
    phi = tuple(out2.point[k] - out2.point[n + k] for k in range(n))
    return _certificate(phi, Av, Bv)


def _certificate(phi, Av: VSet, Bv: VSet) -> SeparationCertificate:
    # lowest point of A, then the lexicographically first point of B above it
    a = min(Av.points, key=lambda p: (la.dot(phi, p), p))
    above = sorted(p for p in Bv.points if la.dot(phi, p) > la.dot(phi, a))
    b = above[0] if above else max(Bv.points, key=lambda p: (la.dot(phi, p), p))
    sup_a = max(la.dot(phi, p) for p in Av.points)
    inf_b = min(la.dot(phi, p) for p in Bv.points)
    alpha = (sup_a + inf_b) / 2
    gap = la.dot(phi, b) - la.dot(phi, a)
    if gap <= 0:
        # strictness comes from a ray leaving the hyperplane
        down = [r for r in Av.rays if la.dot(phi, r) < 0]
        up = [r for r in Bv.rays if la.dot(phi, r) > 0]
        if down:
            r = down[0]
            k = floor(-gap / -la.dot(phi, r)) + 1
            a = la.add(a, la.smul(k, r))
        else:
            r = up[0]
            k = floor(-gap / la.dot(phi, r)) + 1
            b = la.add(b, la.smul(k, r))
    return SeparationCertificate(phi, alpha, (a, b))
