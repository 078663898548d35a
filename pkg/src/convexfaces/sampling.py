"""Reproducible rational sampling of convex sets.

All randomness comes from :class:`Lcg`, a 64-bit linear congruential
generator with Knuth's MMIX constants (a = 6364136223846793005,
c = 1442695040888963407, m = 2**64).  Outputs use the top 31 bits of the
state, so a fixed seed gives the same samples on every platform.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import ceil, floor

from . import exactla as la
from . import polyset as ps

_A = 6364136223846793005
_C = 1442695040888963407
_M = 2 ** 64


class Lcg:
    def __init__(self, seed: int = 0):
        self.state = seed % _M

    def next(self) -> int:
        self.state = (_A * self.state + _C) % _M
        return self.state >> 33

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in ``[lo, hi]`` (modulo bias is irrelevant here)."""
        return lo + self.next() % (hi - lo + 1)

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]

    def rational(self, lo: int, hi: int, den: int = 6) -> Fraction:
        return Fraction(self.randint(lo * den, hi * den), den)

    def vector(self, n: int, lo: int, hi: int, den: int = 6) -> la.QVec:
        return tuple(self.rational(lo, hi, den) for _ in range(n))


def _closure_v(C) -> ps.VSet:
    if isinstance(C, ps.HSet) and not C.is_closed:
        return ps.h_to_v(ps.relax(C))
    return ps.to_v(C)


def set_samples(C, count: int, seed: int = 0) -> list:
    """``count`` points of ``C``: generators first, then random combinations.

    Convex weights are drawn from {0,...,4}, so faces get hit as often as
    interiors.  For sets with strict rows a closure sample outside ``C`` is
    pulled halfway towards a relative-interior point, which lands in ``C``.
    """
    V = _closure_v(C)
    rng = Lcg(seed)
    out = list(V.points[:count])
    strict = isinstance(C, ps.HSet) and not C.is_closed
    while len(out) < count:
        w = [rng.randint(0, 4) for _ in V.points]
        if not any(w):
            w[rng.randint(0, len(w) - 1)] = 1
        total = sum(w)
        x = la.zeros(V.dim)
        for wi, p in zip(w, V.points):
            if wi:
                x = la.add(x, la.smul(Fraction(wi, total), p))
        for r in V.rays:
            k = rng.randint(0, 3)
            if k:
                x = la.add(x, la.smul(Fraction(k, 2), r))
        out.append(x)
    if strict:
        ri = ps.interior_point(C)
        out = [x if ps.contains(C, x) else la.smul(Fraction(1, 2), la.add(x, ri)) for x in out]
    return out


def icr_samples(C, count: int, seed: int = 0) -> list:
    """Points of the intrinsic core: midpoints of a core point and set samples."""
    ri = ps.interior_point(C)
    half = Fraction(1, 2)
    return [la.smul(half, la.add(ri, x)) for x in set_samples(C, count, seed)]


def bounding_box(C) -> tuple:
    """Box containing the generators (and one step along each ray)."""
    V = _closure_v(C)
    pts = list(V.points) + [la.add(p, r) for p in V.points for r in V.rays]
    lo = tuple(min(p[i] for p in pts) for i in range(V.dim))
    hi = tuple(max(p[i] for p in pts) for i in range(V.dim))
    return lo, hi


def grid_points(C, den: int = 6, box=None) -> list:
    """All points of ``C`` whose coordinates are multiples of ``1/den`` in ``box``.

    ``box`` defaults to :func:`bounding_box`; output is in lexicographic order.
    """
    lo, hi = box if box is not None else bounding_box(C)
    axes = [range(floor(l * den), ceil(h * den) + 1) for l, h in zip(lo, hi)]
    test = ps.to_h(C)
    out = []
    for ks in itertools.product(*axes):
        x = tuple(Fraction(k, den) for k in ks)
        if ps.contains(test, x):
            out.append(x)
    return out
