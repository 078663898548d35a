"""Finite-evidence models of convex sets in spaces of finitely supported sequences.

Four sets live here, all over sequences indexed by 1, 2, 3, ...:

* the box: every coordinate in [0, 1] (its intrinsic core is empty);
* the Hilbert cube, coordinate n in [0, 1/n], through its faces F_c;
* the ubiquitous set: the nonzero sequences whose highest-index nonzero
  coordinate is positive (its linear closure is everything);
* the nonnegative orthant, whose minimal faces are the cones over finite
  index sets.

Claims about these sets that rely on topology or uncountability are replaced
by :class:`Witness` objects: explicit rational constructions that carry their
own exact verification.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Iterable, Optional

from .errors import ChainNotNested, NotMember
from .exactla import rat


@dataclass(frozen=True)
class FinSeq:
    """A finitely supported rational sequence, stored as sorted (index, value) pairs."""

    support: tuple = ()

    def __post_init__(self):
        items = {}
        for i, v in self.support:
            if not isinstance(i, int) or isinstance(i, bool) or i < 1:
                raise ValueError(f"index must be a positive integer, got {i!r}")
            if i in items:
                raise ValueError(f"index {i} given twice")
            items[i] = rat(v)
        object.__setattr__(self, "support",
                           tuple(sorted((i, v) for i, v in items.items() if v != 0)))

    @classmethod
    def of(cls, mapping) -> "FinSeq":
        return cls(tuple(dict(mapping).items()))

    @classmethod
    def unit(cls, i: int, value=1) -> "FinSeq":
        return cls(((i, value),))

    @classmethod
    def parse(cls, text: str) -> "FinSeq":
        """Parse ``"1:-5,3:2"``; an empty string or ``"0"`` is the zero sequence."""
        text = text.strip()
        if text in ("", "0"):
            return cls()
        pairs = []
        for chunk in text.split(","):
            idx, sep, val = chunk.partition(":")
            if not sep:
                raise ValueError(f"expected index:value, got {chunk!r}")
            pairs.append((int(idx), val.strip()))
        return cls(tuple(pairs))

    def __str__(self) -> str:
        if not self.support:
            return "0"
        return ",".join(f"{i}:{v}" for i, v in self.support)

    def get(self, i: int) -> Fraction:
        for j, v in self.support:
            if j == i:
                return v
        return Fraction(0)

    @property
    def indices(self) -> frozenset:
        return frozenset(i for i, _ in self.support)

    @property
    def maxindex(self) -> Optional[int]:
        return self.support[-1][0] if self.support else None

    @property
    def leading(self) -> Fraction:
        """Value at the highest nonzero index (0 for the zero sequence)."""
        return self.support[-1][1] if self.support else Fraction(0)

    def is_zero(self) -> bool:
        return not self.support

    def _combine(self, other: "FinSeq", s, t) -> "FinSeq":
        keys = self.indices | other.indices
        return FinSeq(tuple((i, s * self.get(i) + t * other.get(i)) for i in keys))

    def __add__(self, other):
        return self._combine(other, 1, 1)

    def __sub__(self, other):
        return self._combine(other, 1, -1)

    def scale(self, t) -> "FinSeq":
        t = rat(t)
        return FinSeq(tuple((i, t * v) for i, v in self.support))

    def to_json(self) -> dict:
        return {"support": [[i, str(v)] for i, v in self.support]}

    @classmethod
    def from_json(cls, data) -> "FinSeq":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(tuple((int(i), v) for i, v in data["support"]))
        except (KeyError, TypeError) as exc:
            raise ValueError("support: expected a list of [index, value] pairs") from exc


def _fresh(x: FinSeq) -> int:
    return 1 if x.is_zero() else x.maxindex + 1


# ---------------------------------------------------------------------------
# witnesses

EMPTY_ICR, LIN_MEMBER, CHAIN_GAP = "empty-icr", "lin-member", "chain-gap"
_CHECK_T = (Fraction(1, 2), Fraction(1, 3))
_LIN_T = (Fraction(1), Fraction(1, 2), Fraction(1, 7))


@dataclass(frozen=True)
class Witness:
    """An exact certificate about one of the gallery sets.

    * ``empty-icr``: ``base`` = x, ``point`` = y in the set, ``index`` = i.
      Any z with ``x = t y + (1 - t) z`` has ``z_i = -t/(1 - t) < 0``.
    * ``lin-member``: ``base`` = y, ``point`` = u; ``y + t u`` is in the set
      for every t in (0, 1], its leading coordinate being exactly t.
    * ``chain-gap``: ``index`` = g outside every member of ``chain``; the unit
      sequence e_g is in the orthant but in none of the chain's faces.
    """

    kind: str
    family: str
    base: Optional[FinSeq]
    point: Optional[FinSeq]
    index: int
    chain: tuple = field(default=())

    def algebra(self) -> str:
        i = self.index
        if self.kind == EMPTY_ICR:
            return (f"x_{i} = 0 and y_{i} = 1, so z_{i} = (x_{i} - t*y_{i})/(1 - t)"
                    f" = -t/(1 - t) < 0 for every t in (0, 1)")
        if self.kind == LIN_MEMBER:
            return (f"u = e_{i} with {i} above every index of y, so the leading"
                    f" coordinate of y + t*u is t > 0 for t in (0, 1]")
        return f"e_{i} has nonnegative entries and index {i} lies in no chain member"

    def verify(self) -> bool:
        if self.kind == EMPTY_ICR:
            return self._verify_empty_icr()
        if self.kind == LIN_MEMBER:
            return self._verify_lin_member()
        if self.kind == CHAIN_GAP:
            return self._verify_chain_gap()
        return False

    def _member(self, s: FinSeq) -> bool:
        return box_contains(s) if self.family == "box" else ubiq_contains(s)

    def _verify_empty_icr(self) -> bool:
        x, y, i = self.base, self.point, self.index
        if not (self._member(x) and self._member(y)):
            return False
        if x.get(i) != 0 or y.get(i) != 1:
            return False
        if self.family == "ubiq" and y.maxindex != i:
            return False
        for t in _CHECK_T:
            z = (x - y.scale(t)).scale(1 / (1 - t))
            if z.get(i) != -t / (1 - t) or z.get(i) >= 0:
                return False
            if self._member(z):
                return False
        return True

    def _verify_lin_member(self) -> bool:
        y, u, i = self.base, self.point, self.index
        if u != FinSeq.unit(i) or (not y.is_zero() and i <= y.maxindex):
            return False
        for t in _LIN_T:
            s = y + u.scale(t)
            if s.maxindex != i or s.leading != t or not ubiq_contains(s):
                return False
        return True

    def _verify_chain_gap(self) -> bool:
        e = FinSeq.unit(self.index)
        if not orthant_contains(e):
            return False
        return all(not orthant_face_contains(S, e) for S in self.chain)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "family": self.family, "index": self.index,
               "algebra": self.algebra(), "verified": self.verify()}
        if self.base is not None:
            out["base"] = self.base.to_json()
        if self.point is not None:
            out["point"] = self.point.to_json()
        if self.chain:
            out["chain"] = [sorted(S) for S in self.chain]
        return out


# ---------------------------------------------------------------------------
# the box {x : 0 <= x_i <= 1}

@dataclass(frozen=True)
class BoxFaceDescriptor:
    """Face of the box: coordinates in ``ones`` equal 1, ``free`` range over
    [0, 1], every other coordinate is 0."""

    ones: frozenset = frozenset()
    free: frozenset = frozenset()

    @property
    def fixed(self) -> dict:
        return {i: 1 for i in sorted(self.ones)}

    def contains(self, u: FinSeq) -> bool:
        for i, v in u.support:
            if i in self.free:
                if not 0 <= v <= 1:
                    return False
            elif not (i in self.ones and v == 1):
                return False
        return all(u.get(i) == 1 for i in self.ones)


def box_contains(x: FinSeq) -> bool:
    return all(0 <= v <= 1 for _, v in x.support)


def box_minimal_face(x: FinSeq) -> BoxFaceDescriptor:
    if not box_contains(x):
        raise NotMember(f"{x} is not in the box")
    return BoxFaceDescriptor(frozenset(i for i, v in x.support if v == 1),
                             frozenset(i for i, v in x.support if 0 < v < 1))


def box_empty_icr_witness(x: FinSeq) -> Witness:
    """A point y of the box such that no segment from y extends beyond x."""
    if not box_contains(x):
        raise NotMember(f"{x} is not in the box")
    i = _fresh(x)
    return Witness(EMPTY_ICR, "box", x, x + FinSeq.unit(i), i)


# ---------------------------------------------------------------------------
# the Hilbert cube, coordinate n in [0, 1/n]

@dataclass(frozen=True)
class CubeFaceDescriptor:
    """The face where coordinates in ``full_indices`` range over [0, 1/n]
    and all others are 0."""

    full_indices: frozenset = frozenset()

    def contains(self, x: FinSeq) -> bool:
        return all(i in self.full_indices and 0 <= v <= Fraction(1, i) for i, v in x.support)


def cube_contains(x: FinSeq) -> bool:
    return all(0 <= v <= Fraction(1, i) for i, v in x.support)


def cube_face_subset(c1: CubeFaceDescriptor, c2: CubeFaceDescriptor) -> bool:
    return c1.full_indices <= c2.full_indices


def calkin_wilf(count: int) -> list:
    """The first ``count`` positive rationals in Calkin-Wilf order.

    q_1 = 1 and q_{k+1} = 1 / (2 floor(q_k) - q_k + 1); every positive
    rational appears exactly once.
    """
    out = []
    q = Fraction(1)
    for _ in range(count):
        out.append(q)
        q = 1 / (2 * floor(q) - q + 1)
    return out


def cube_chain_from_cuts(thresholds: Iterable, prefix: int) -> list:
    """Faces F_c with c(t) = {k <= prefix : q_k < t}, one per threshold.

    The output is nested in threshold order.  Adjacent faces coincide when
    no enumerated rational falls between the thresholds; see
    :func:`coincident_links`.
    """
    ts = [rat(t) for t in thresholds]
    if any(a >= b for a, b in zip(ts, ts[1:])):
        raise ValueError("thresholds must be strictly increasing")
    if prefix < 1:
        raise ValueError("prefix length must be at least 1")
    qs = calkin_wilf(prefix)
    return [CubeFaceDescriptor(frozenset(k + 1 for k, q in enumerate(qs) if q < t)) for t in ts]


def coincident_links(chain: list) -> list:
    """Positions ``j`` where ``chain[j] == chain[j + 1]``."""
    return [j for j in range(len(chain) - 1) if chain[j] == chain[j + 1]]


# ---------------------------------------------------------------------------
# the ubiquitous set: leading coordinate positive

def ubiq_contains(x: FinSeq) -> bool:
    return not x.is_zero() and x.leading > 0


def ubiq_lin_witness(y: FinSeq) -> Witness:
    """Every sequence is an endpoint of a segment inside the ubiquitous set."""
    i = _fresh(y)
    return Witness(LIN_MEMBER, "ubiq", y, FinSeq.unit(i), i)


def ubiq_not_icr_witness(x: FinSeq) -> Witness:
    if not ubiq_contains(x):
        raise NotMember(f"{x} is not in the ubiquitous set")
    i = _fresh(x)
    return Witness(EMPTY_ICR, "ubiq", x, x + FinSeq.unit(i), i)


def ubiq_minface_contains(x: FinSeq, u: FinSeq) -> bool:
    """Whether ``u`` lies in the minimal face of ``x``."""
    if not ubiq_contains(x):
        raise NotMember(f"{x} is not in the ubiquitous set")
    return ubiq_contains(u) and u.maxindex <= x.maxindex


# ---------------------------------------------------------------------------
# the nonnegative orthant

def orthant_contains(x: FinSeq) -> bool:
    return all(v >= 0 for _, v in x.support)


def orthant_minimal_face(x: FinSeq) -> frozenset:
    """Index set of the cone that is the minimal face of ``x``."""
    if not orthant_contains(x):
        raise NotMember(f"{x} is not in the orthant")
    return x.indices


def orthant_face_contains(face: Iterable[int], u: FinSeq) -> bool:
    return orthant_contains(u) and u.indices <= frozenset(face)


def orthant_chain_gap(chain: Iterable[Iterable[int]]) -> Witness:
    """A basis index missing from every face of a nested chain.

    Finite evidence only: the union of a finitely presented chain of
    minimal faces always misses a point of the orthant.
    """
    chain = tuple(frozenset(S) for S in chain)
    for a in chain:
        for b in chain:
            if not (a <= b or b <= a):
                raise ChainNotNested(f"{sorted(a)} and {sorted(b)} are not nested")
    union = frozenset().union(*chain)
    g = 1
    while g in union:
        g += 1
    return Witness(CHAIN_GAP, "orthant", None, FinSeq.unit(g), g, chain)
