"""Independent oracles used to derive or cross-check expected values.

None of these reuse the code path they check: they work from definitions
(ray shooting, subset enumeration, elimination by hand) rather than the
library's canonical forms.
"""
from fractions import Fraction
from itertools import combinations

from convexfaces import exactla as la
from convexfaces import polyset as ps


def solve_square(M, rhs):
    """Unique solution of a square system by Gauss-Jordan, or None."""
    n = len(M)
    A = [list(map(Fraction, row)) + [Fraction(r)] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [v / p for v in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return tuple(A[r][n] for r in range(n))


def rows_of(H):
    """Weak rows plus both directions of every equation."""
    rows = [(r.a, r.b) for r in H.ineqs]
    for e, f in H.eqs:
        rows += [(e, f), (la.smul(-1, e), -f)]
    return rows


def in_rows(rows, x):
    return all(la.dot(a, x) <= b for a, b in rows)


def brute_vertices(H):
    """Vertices of a bounded weak H-set from every n-subset of rows."""
    rows = rows_of(H)
    n = H.dim
    out = set()
    for sub in combinations(rows, n):
        x = solve_square([a for a, _ in sub], [b for _, b in sub])
        if x is not None and in_rows(rows, x):
            out.add(x)
    return sorted(out)


def brute_face_count(H):
    """Faces of a polytope, counted as distinct vertex sets of
    ``P cap {rows in S tight}`` over all row subsets S, plus the empty face."""
    rows = [(r.a, r.b) for r in H.ineqs]
    verts = brute_vertices(H)
    seen = set()
    for k in range(len(rows) + 1):
        for S in combinations(range(len(rows)), k):
            vs = frozenset(v for v in verts if all(la.dot(rows[i][0], v) == rows[i][1] for i in S))
            if vs:
                seen.add(vs)
    return len(seen) + 1


def extends_beyond(rows, x, y) -> bool:
    """Whether ``x + t (x - y)`` stays in ``{rows}`` for some ``t > 0``."""
    d = la.sub(x, y)
    for a, b in rows:
        grow = la.dot(a, d)
        if grow > 0 and la.dot(a, x) >= b:
            return False
    return True


def segment_union_face(rows, x, grid):
    """Grid points of the union of all segments of the set through ``x``.

    ``y`` belongs exactly when ``y == x`` or the segment from ``y`` through
    ``x`` can be prolonged past ``x``.
    """
    # only rows tight at x can stop the prolongation
    tight = [(a, b) for a, b in rows if la.dot(a, x) >= b]
    return frozenset(y for y in grid if y == x or extends_beyond(tight, x, y))


def implicit_by_rows(H):
    """Implicit rows by minimizing each row separately."""
    out = set()
    weak = [(r.a, r.b) for r in H.ineqs]
    for i, (a, b) in enumerate(weak):
        res = la.lp_solve(la.smul(-1, a), weak, H.eqs)
        if res.optimal and -res.value == b:
            out.add(i)
    return frozenset(out)


def in_positive_hull(C, z) -> bool:
    """``z = t x`` with ``t > 0``, ``x`` in ``C``: scan ``s = 1/t`` exactly.

    ``s z`` lies in ``C`` on an interval of ``s``; intersect it with ``s > 0``.
    """
    if not any(z):
        return False
    H = ps.to_h(C)
    lo, hi = Fraction(0), None
    lo_open = True
    for a, b in rows_of(H):
        k = la.dot(a, z)
        if k > 0:
            hi = b / k if hi is None else min(hi, b / k)
        elif k < 0:
            bound = b / k
            if bound > lo:
                lo, lo_open = bound, False
        elif b < 0:
            return False
    if hi is None:
        return True
    return lo < hi or (lo == hi and not lo_open)


def separable_r2(A_pts, B_pts) -> bool:
    """Exhaustive proper-separation search for planar point sets.

    Eliminating the level from ``phi.a <= alpha <= phi.b`` leaves
    ``phi.(b - a) >= 0`` for every pair; a proper separator also needs one
    pair strictly positive.  In the plane the extreme rays of that cone are
    perpendicular to some difference, so it suffices to test +-perp(d), +-d
    and the axes.
    """
    diffs = {la.sub(b, a) for a in A_pts for b in B_pts}
    cands = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    for d in diffs:
        if any(d):
            cands += [d, (-d[1], d[0])]
    for c in list(cands):
        cands.append(la.smul(-1, c))
    for phi in cands:
        vals = [la.dot(phi, d) for d in diffs]
        if all(v >= 0 for v in vals) and any(v > 0 for v in vals):
            return True
    return False


def dual_value(c, ineqs):
    """Optimum of the dual of ``max c.x, A x <= b``: ``min b.y, A^T y = c, y >= 0``."""
    m, n = len(ineqs), len(c)
    eqs = [(tuple(ineqs[i][0][j] for i in range(m)), c[j]) for j in range(n)]
    obj = tuple(-b for _, b in ineqs)
    res = la.lp_solve(obj, (), eqs, nonneg=range(m))
    return -res.value if res.optimal else None


def calkin_wilf_bfs(count):
    """Positive rationals by breadth-first walk of the tree a/b -> a/(a+b), (a+b)/b."""
    from collections import deque
    out, queue = [], deque([(1, 1)])
    while len(out) < count:
        a, b = queue.popleft()
        out.append(Fraction(a, b))
        queue.append((a, a + b))
        queue.append((a + b, b))
    return out


def ubiq_pieces(window):
    """The ubiquitous set restricted to ``span{e_i : i in window}`` as convex pieces.

    Piece k (one per index of the window) is ``{x_k > 0, x_j = 0 for j > k}``
    in window coordinates; their union is the restriction.
    """
    n = len(window)
    pieces = []
    for k in range(n):
        strict = [(la.smul(-1, la.unit(n, k)), Fraction(0))]
        eqs = [(la.unit(n, j), Fraction(0)) for j in range(k + 1, n)]
        pieces.append(ps.hset(n, eqs=eqs, strict=strict))
    return pieces


def in_pieces(pieces, x) -> bool:
    return any(ps.contains(P, x) for P in pieces)
