"""Exact rational linear algebra and linear programming.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions and
matrices are tuples of such rows.  Nothing here touches floating point.

The LP engine is a two-phase primal simplex with Bland's rule.  Internally the
tableau is kept fraction-free (integer entries over a common positive
denominator, updated with Bareiss-style exact division), which is several
times faster than pivoting on ``Fraction`` objects.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, EmptySet

Rat = Fraction
QVec = tuple
QMat = tuple

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# scalars and vectors

def rat(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3/4"`` to a Fraction.

    Floats are rejected: a float has already lost the exact value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        return Fraction(text)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def qvec(values: Iterable) -> QVec:
    out = tuple(rat(v) for v in values)
    if not out:
        raise DimensionMismatch("vectors need at least one entry")
    return out


def qmat(rows: Iterable[Iterable]) -> QMat:
    out = tuple(tuple(rat(v) for v in row) for row in rows)
    if out and len({len(r) for r in out}) != 1:
        raise DimensionMismatch("matrix rows have different lengths")
    return out


def fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_point(text: str) -> QVec:
    """Parse ``"1/2,0"`` into a vector."""
    return qvec(part for part in text.split(","))


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"dot of lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), ZERO)


def add(u, v) -> QVec:
    if len(u) != len(v):
        raise DimensionMismatch(f"add of lengths {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v) -> QVec:
    if len(u) != len(v):
        raise DimensionMismatch(f"sub of lengths {len(u)} and {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def smul(t, u) -> QVec:
    return tuple(t * a for a in u)


def unit(n: int, i: int) -> QVec:
    return tuple(ONE if k == i else ZERO for k in range(n))


def zeros(n: int) -> QVec:
    return (ZERO,) * n


def barycenter(points: Sequence[QVec]) -> QVec:
    k = len(points)
    n = len(points[0])
    return tuple(sum((p[i] for p in points), ZERO) / k for i in range(n))


def matvec(M: Sequence[Sequence], x: Sequence) -> QVec:
    return tuple(dot(row, x) for row in M)


def primitive(v: Sequence[Fraction]) -> tuple:
    """Scale a nonzero rational vector to coprime integers (sign kept)."""
    den = lcm(*(q.denominator for q in v)) if v else 1
    ints = [int(q * den) for q in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return tuple(ints)
    return tuple(a // g for a in ints)


# ---------------------------------------------------------------------------
# row reduction

def rref(M: Sequence[Sequence]) -> tuple[QMat, list[int], int]:
    """Reduced row echelon form over the rationals.

    Returns ``(R, pivots, rank)``; ``R`` has the same shape as ``M`` with zero
    rows at the bottom.
    """
    rows = [[rat(v) for v in r] for r in M]
    if not rows:
        return (), [], 0
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), pivots, len(pivots)


def rank(M) -> int:
    return rref(M)[2] if M else 0


def nullspace(M: Sequence[Sequence], n: int) -> list[QVec]:
    """Basis of ``{x in Q^n : M x = 0}``, one vector per free column."""
    if not M:
        return [unit(n, i) for i in range(n)]
    R, pivots, _ = rref(M)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for row_idx, pc in enumerate(pivots):
            v[pc] = -R[row_idx][f]
        basis.append(tuple(v))
    return basis


def row_basis(vectors: Sequence[QVec]) -> list[QVec]:
    """A basis (in reduced form) of the span of ``vectors``."""
    if not vectors:
        return []
    R, _, k = rref(vectors)
    return [R[i] for i in range(k)]


def solve_affine(M: Sequence[Sequence], rhs: Sequence) -> Optional[QVec]:
    """One solution of ``M x = rhs`` or None."""
    n = len(M[0])
    aug = [list(r) + [rat(b)] for r, b in zip(M, rhs)]
    R, pivots, _ = rref(aug)
    if n in pivots:
        return None
    x = [ZERO] * n
    for i, pc in enumerate(pivots):
        x[pc] = R[i][n]
    return tuple(x)


def lineality_space(G: Sequence[Sequence], H: Sequence[Sequence], n: int) -> list[QVec]:
    """Basis of the lineality space of the cone ``{d : G d <= 0, H d = 0}``.

    ``d`` and ``-d`` both lie in the cone exactly when ``G d = 0`` and
    ``H d = 0``, so this is a null space.
    """
    rows = [tuple(rat(v) for v in r) for r in list(G) + list(H)]
    for r in rows:
        if len(r) != n:
            raise DimensionMismatch("cone rows must have length n")
    return nullspace(rows, n)


# ---------------------------------------------------------------------------
# simplex

@dataclass(frozen=True)
class LpOutcome:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Optional[Fraction] = None
    point: Optional[QVec] = None
    ray: Optional[QVec] = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def _int_row(coeffs: Sequence[Fraction], rhs: Fraction) -> tuple[list[int], int]:
    den = lcm(rhs.denominator, *(q.denominator for q in coeffs))
    return [int(q * den) for q in coeffs], int(rhs * den)


class _Tableau:
    """Fraction-free simplex tableau for ``max c.y, A y = b, y >= 0``.

    Every stored row equals ``D`` times the real tableau row, with ``D > 0``
    the current common denominator.
    """

    def __init__(self, rows: list[list[int]], rhs: list[int]):
        self.m = len(rows)
        self.n = len(rows[0]) if rows else 0
        # rows are already sign-normalised so rhs >= 0
        self.M = [r + [b] for r, b in zip(rows, rhs)]
        self.D = 1
        self.basis = [-1] * self.m
        self.n_struct = self.n

    def add_artificials(self):
        used = set()
        col_rows: dict[int, int] = {}
        for j in range(self.n):
            nz = [i for i in range(self.m) if self.M[i][j] != 0]
            if len(nz) == 1 and self.M[nz[0]][j] == 1:
                col_rows.setdefault(nz[0], j)
        for i in range(self.m):
            j = col_rows.get(i)
            if j is not None and j not in used:
                self.basis[i] = j
                used.add(j)
        n_art = 0
        for i in range(self.m):
            if self.basis[i] < 0:
                n_art += 1
        if n_art:
            for i in range(self.m):
                row = self.M[i]
                b = row.pop()
                row.extend([0] * n_art)
                row.append(b)
            k = self.n
            for i in range(self.m):
                if self.basis[i] < 0:
                    self.M[i][k] = 1
                    self.basis[i] = k
                    k += 1
            self.n += n_art
        return n_art

    def objective_row(self, c: list[int]) -> list[int]:
        D = self.D
        row0 = [-cj * D for cj in c] + [0]
        for i, bj in enumerate(self.basis):
            cb = c[bj]
            if cb:
                Mi = self.M[i]
                row0 = [a + cb * v for a, v in zip(row0, Mi)]
        return row0

    def pivot(self, r: int, s: int, row0: list[int]) -> list[int]:
        M = self.M
        p = M[r][s]
        D = self.D
        pr = M[r]
        for i in range(self.m):
            if i == r:
                continue
            Mi = M[i]
            f = Mi[s]
            if f == 0:
                if p != D:
                    M[i] = [(v * p) // D for v in Mi]
            else:
                M[i] = [(v * p - f * w) // D for v, w in zip(Mi, pr)]
        f = row0[s]
        if f == 0:
            row0 = [(v * p) // D for v in row0]
        else:
            row0 = [(v * p - f * w) // D for v, w in zip(row0, pr)]
        self.D = p
        self.basis[r] = s
        return row0

    def run(self, row0: list[int], allowed: int):
        """Bland iterations over columns < allowed.  Returns (status, row0, col)."""
        M = self.M
        while True:
            s = -1
            for j in range(allowed):
                if row0[j] < 0:
                    s = j
                    break
            if s < 0:
                return "optimal", row0, -1
            r = -1
            best_num = best_den = 0
            for i in range(self.m):
                a = M[i][s]
                if a > 0:
                    b = M[i][-1]
                    if r < 0:
                        r, best_num, best_den = i, b, a
                        continue
                    lhs = b * best_den
                    rhs = best_num * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[r]):
                        r, best_num, best_den = i, b, a
            if r < 0:
                return "unbounded", row0, s
            row0 = self.pivot(r, s, row0)

    def values(self) -> list[Fraction]:
        y = [ZERO] * self.n
        for i, bj in enumerate(self.basis):
            y[bj] = Fraction(self.M[i][-1], self.D)
        return y


def _standard_lp(rows: list[list[int]], rhs: list[int], c: Sequence[Fraction]):
    """Solve ``max c.y, rows y = rhs, y >= 0`` (integer data, rhs >= 0).

    Returns ``(status, y, ray_y)``.
    """
    n = len(c)
    if not rows:
        # unconstrained nonnegative orthant
        for j, cj in enumerate(c):
            if cj > 0:
                ray = [ZERO] * n
                ray[j] = ONE
                return "unbounded", [ZERO] * n, ray
        return "optimal", [ZERO] * n, None
    T = _Tableau(rows, rhs)
    n_art = T.add_artificials()
    if n_art:
        c1 = [0] * n + [-1] * n_art
        row0 = T.objective_row(c1)
        _, row0, _ = T.run(row0, T.n)
        if row0[-1] < 0:
            return "infeasible", None, None
        # drive zero-level artificials out of the basis
        i = 0
        while i < T.m:
            if T.basis[i] >= n:
                j = next((j for j in range(n) if T.M[i][j] != 0), -1)
                if j < 0:
                    del T.M[i]
                    del T.basis[i]
                    T.m -= 1
                    continue
                if T.M[i][j] < 0:
                    T.M[i] = [-v for v in T.M[i]]
                row0 = T.pivot(i, j, row0)
            i += 1
        for row in T.M:
            b = row[-1]
            del row[n:]
            row.append(b)
        T.n = n
        if T.m == 0:
            return _standard_lp([], [], c)
    den = lcm(*(q.denominator for q in c)) if c else 1
    c_int = [int(q * den) for q in c]
    row0 = T.objective_row(c_int)
    status, row0, s = T.run(row0, n)
    y = T.values()
    if status == "optimal":
        return "optimal", y, None
    ray = [ZERO] * n
    ray[s] = ONE
    for i, bj in enumerate(T.basis):
        ray[bj] = Fraction(-T.M[i][s], T.D)
    return "unbounded", y, ray


def _check_rows(rows, n, what):
    out = []
    for a, b in rows:
        a = tuple(rat(v) for v in a)
        if len(a) != n:
            raise DimensionMismatch(f"{what} row has length {len(a)}, expected {n}")
        out.append((a, rat(b)))
    return out


def lp_solve(objective: Sequence, ineqs: Iterable = (), eqs: Iterable = (),
             nonneg: Iterable[int] = ()) -> LpOutcome:
    """Maximize ``objective . x`` subject to ``a.x <= b`` and ``e.x = f``.

    ``ineqs`` and ``eqs`` are iterables of ``(coefficients, rhs)`` pairs.
    Variables listed in ``nonneg`` are constrained to be >= 0 natively (no
    extra row); all others are free.
    """
    c = tuple(rat(v) for v in objective)
    n = len(c)
    ineqs = _check_rows(ineqs, n, "inequality")
    eqs = _check_rows(eqs, n, "equation")
    nn = set(nonneg)
    # column layout: per variable u_j (and v_j when free), then slacks
    col_u, col_v = [], []
    k = 0
    for j in range(n):
        col_u.append(k)
        k += 1
        if j in nn:
            col_v.append(-1)
        else:
            col_v.append(k)
            k += 1
    n_var = k
    n_cols = n_var + len(ineqs)
    rows, rhs = [], []

    def expand(a_int):
        row = [0] * n_cols
        for j, v in enumerate(a_int):
            if v:
                row[col_u[j]] = v
                if col_v[j] >= 0:
                    row[col_v[j]] = -v
        return row

    for idx, (a, b) in enumerate(ineqs):
        a_int, b_int = _int_row(a, b)
        row = expand(a_int)
        row[n_var + idx] = 1
        if b_int < 0:
            row = [-v for v in row]
            b_int = -b_int
        rows.append(row)
        rhs.append(b_int)
    for e, f in eqs:
        e_int, f_int = _int_row(e, f)
        if not any(e_int):
            if f_int != 0:
                return LpOutcome("infeasible")
            continue
        row = expand(e_int)
        if f_int < 0:
            row = [-v for v in row]
            f_int = -f_int
        rows.append(row)
        rhs.append(f_int)
    cost = [ZERO] * n_cols
    for j in range(n):
        cost[col_u[j]] = c[j]
        if col_v[j] >= 0:
            cost[col_v[j]] = -c[j]
    status, y, ray_y = _standard_lp(rows, rhs, cost)
    if status == "infeasible":
        return LpOutcome("infeasible")

    def collapse(vec):
        return tuple(vec[col_u[j]] - (vec[col_v[j]] if col_v[j] >= 0 else ZERO)
                     for j in range(n))

    x = collapse(y)
    if status == "unbounded":
        return LpOutcome("unbounded", point=x, ray=collapse(ray_y))
    return LpOutcome("optimal", value=dot(c, x) if n else ZERO, point=x)


def feasible_point(ineqs: Iterable = (), eqs: Iterable = (), n: int = 0,
                   nonneg: Iterable[int] = ()) -> Optional[QVec]:
    out = lp_solve(zeros(n), ineqs, eqs, nonneg)
    return out.point if out.optimal else None


def strict_feasible(weak: Iterable = (), strict: Iterable = (), eqs: Iterable = (),
                    n: int = 0) -> Optional[QVec]:
    """A point satisfying ``weak`` weakly, ``strict`` strictly and ``eqs``.

    Each strict row ``c.x < d`` becomes ``c.x + eps <= d``; with ``eps <= 1``
    the LP maximizing ``eps`` is bounded and the system is strictly feasible
    exactly when the optimum is positive.
    """
    weak = _check_rows(weak, n, "weak")
    strict = _check_rows(strict, n, "strict")
    eqs = _check_rows(eqs, n, "equation")
    ext = lambda a, e: a + (e,)  # noqa: E731
    rows = [(ext(a, ZERO), b) for a, b in weak]
    rows += [(ext(a, ONE), b) for a, b in strict]
    rows.append((ext(zeros(n), ONE), ONE))
    erows = [(ext(e, ZERO), f) for e, f in eqs]
    out = lp_solve(unit(n + 1, n), rows, erows)
    if not out.optimal or out.value <= 0:
        return None
    return out.point[:n]


def implicit_equalities(weak: Sequence, eqs: Sequence = (), n: int = 0,
                        strict: Sequence = ()) -> frozenset:
    """Indices of ``weak`` rows that hold with equality on the whole set.

    The set is ``{weak <=, strict <, eqs =}``; strict rows only matter
    through nonemptiness.  Each round maximizes the sum of per-row slacks
    (each capped at 1) over the rows not yet known to be slack somewhere; rows
    with positive slack at the optimum are not implicit, and an optimum of
    zero certifies that every remaining row is.

    Raises EmptySet when the system is infeasible.
    """
    weak = _check_rows(weak, n, "weak")
    strict = _check_rows(strict, n, "strict")
    eqs = _check_rows(eqs, n, "equation")
    if strict and strict_feasible(weak, strict, eqs, n) is None:
        raise EmptySet("system has no point")
    pending = list(range(len(weak)))
    first = True
    while True:
        k = len(pending)
        slot = {i: n + t for t, i in enumerate(pending)}
        width = n + k
        rows = []
        for i, (a, b) in enumerate(weak):
            row = list(a) + [ZERO] * k
            if i in slot:
                row[slot[i]] = ONE
            rows.append((tuple(row), b))
        for t in range(k):
            rows.append((unit(width, n + t), ONE))
        erows = [(tuple(e) + (ZERO,) * k, f) for e, f in eqs]
        obj = (ZERO,) * n + (ONE,) * k
        out = lp_solve(obj, rows, erows, nonneg=range(n, width))
        if not out.optimal:
            if first:
                raise EmptySet("system has no point")
            raise AssertionError("slack LP lost feasibility")  # pragma: no cover
        first = False
        if out.value == 0:
            return frozenset(pending)
        x = out.point[:n]
        pending = [i for i in pending if dot(weak[i][0], x) == weak[i][1]
                   and out.point[slot[i]] == 0]
        if not pending:
            return frozenset()


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination on mixed systems

LE, LT, EQ = "<=", "<", "="


def _normalize_row(a, b, rel):
    nz = [abs(v) for v in a if v != 0]
    if not nz:
        return tuple(a), b, rel
    s = nz[0] if rel == EQ else min(nz)
    return tuple(v / s for v in a), b / s, rel


def fm_eliminate(rows: Sequence[tuple], var: int) -> Optional[list[tuple]]:
    """Eliminate variable ``var`` from a mixed system.

    ``rows`` are ``(a, b, rel)`` with ``rel`` in ``{"<=", "<", "="}``.  The
    variable's column is removed from the output.  Returns None when a
    trivially false row (``0 <= b<0``, ``0 < b<=0``, ``0 = b!=0``) appears,
    meaning the projection is empty.
    """
    eq = next((r for r in rows if r[2] == EQ and r[0][var] != 0), None)
    out = []
    if eq is not None:
        ea, eb, _ = eq
        piv = ea[var]
        for a, b, rel in rows:
            if (a, b, rel) == eq:
                continue
            f = a[var] / piv
            if f:
                a = tuple(x - f * y for x, y in zip(a, ea))
                b = b - f * eb
            out.append((a, b, rel))
    else:
        pos = [r for r in rows if r[0][var] > 0]
        neg = [r for r in rows if r[0][var] < 0]
        out = [r for r in rows if r[0][var] == 0]
        for pa, pb, prel in pos:
            for na, nb, nrel in neg:
                s, t = -na[var], pa[var]
                a = tuple(s * x + t * y for x, y in zip(pa, na))
                b = s * pb + t * nb
                rel = LT if LT in (prel, nrel) else LE
                out.append((a, b, rel))
    result = []
    seen = set()
    for a, b, rel in out:
        a = a[:var] + a[var + 1:]
        if not any(a):
            if (rel == LE and b < 0) or (rel == LT and b <= 0) or (rel == EQ and b != 0):
                return None
            continue
        key = _normalize_row(a, b, rel)
        if key in seen:
            continue
        seen.add(key)
        result.append(key)
    # a strict row makes the weak row with the same normal and bound redundant
    strict_keys = {(a, b) for a, b, rel in result if rel == LT}
    return [r for r in result if not (r[2] == LE and (r[0], r[1]) in strict_keys)]


def fm_project(rows: Sequence[tuple], eliminate: Sequence[int]) -> Optional[list[tuple]]:
    """Eliminate several variables (highest index first so indices stay valid)."""
    cur = [(tuple(rat(v) for v in a), rat(b), rel) for a, b, rel in rows]
    for var in sorted(eliminate, reverse=True):
        cur = fm_eliminate(cur, var)
        if cur is None:
            return None
    return cur
