"""Exact order skeleton and finite ordered 2-coloured bipartite graphs.

Positions are exact rationals (``fractions.Fraction``) wrapped in
:class:`ExtPos`, which also carries the two infinite endpoints and the
``(q, slot)`` positions used for rational families of adjacent pairs.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, total_ordering
from typing import Iterable, Mapping, NamedTuple

from .errors import BudgetExceeded, EmptyInterval, StructureError, UnknownId

Rat = Fraction

ENUMERATION_CAP = 250_000


class Color(enum.Enum):
    RED = "r"
    BLUE = "b"

    @property
    def other(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED

    def __str__(self):
        return self.name.lower()


RED = Color.RED
BLUE = Color.BLUE

_KIND_RANK = {"ninf": (0, 0), "fin": (1, 0), "pair0": (1, 0), "pair1": (1, 1), "inf": (2, 0)}


@total_ordering
@dataclass(frozen=True)
class ExtPos:
    """A point of the extended line.

    ``kind`` is one of ``fin``, ``ninf``, ``inf``, ``pair0``, ``pair1``.
    Pair positions order lexicographically on ``(value, slot)``; infinite
    positions carry value 0.
    """

    value: Fraction = Fraction(0)
    kind: str = "fin"

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown position kind {self.kind!r}")
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))
        if self.kind in ("ninf", "inf") and self.value != 0:
            raise ValueError("infinite positions carry value 0")

    @property
    def key(self):
        rank, slot = _KIND_RANK[self.kind]
        if rank != 1:
            return (rank, Fraction(0), 0)
        return (rank, self.value, slot)

    @property
    def is_infinite(self) -> bool:
        return self.kind in ("ninf", "inf")

    @property
    def slot(self):
        return {"pair0": 0, "pair1": 1}.get(self.kind)

    def __lt__(self, other):
        if not isinstance(other, ExtPos):
            return NotImplemented
        return self.key < other.key

    def __str__(self):
        text = f"{self.value.numerator}/{self.value.denominator}"
        return text if self.kind == "fin" else f"{text}@{self.kind}"


def fin(q) -> ExtPos:
    return ExtPos(Fraction(q), "fin")


def pair_pos(q, slot: int) -> ExtPos:
    return ExtPos(Fraction(q), "pair1" if slot else "pair0")


NEG_INF = ExtPos(Fraction(0), "ninf")
POS_INF = ExtPos(Fraction(0), "inf")


def _as_rat_bound(bound, lower: bool):
    """Finite rational of a bound, ``None`` for an open end.

    Returns the string ``"empty"`` if the bound excludes everything.
    """
    if bound is None:
        return None
    if isinstance(bound, ExtPos):
        if bound.kind == "fin":
            return bound.value
        if bound.kind == "ninf":
            return None if lower else "empty"
        if bound.kind == "inf":
            return "empty" if lower else None
        raise ValueError(f"pair position {bound} is not a rational bound")
    return Fraction(bound)


def _simplest_nonneg(lo: Fraction, hi):
    # simplest rational in the open interval (lo, hi); 0 <= lo, hi may be None
    fl = lo.numerator // lo.denominator
    if hi is None or fl + 1 < hi:
        return Fraction(fl + 1)
    low, high = lo - fl, hi - fl
    y = _simplest_nonneg(1 / high, None if low == 0 else 1 / low)
    return fl + 1 / y


def mediant_between(lo=None, hi=None) -> Fraction:
    """Canonical rational strictly inside ``(lo, hi)``.

    Absent bounds are unbounded. With both bounds finite the result is the
    simplest rational in the interval (least denominator, then least
    absolute value), which is the Stern-Brocot mediant; with one bound the
    result steps by an integer away from it.
    """
    a = _as_rat_bound(lo, lower=True)
    b = _as_rat_bound(hi, lower=False)
    if a == "empty" or b == "empty":
        raise EmptyInterval(f"empty interval ({lo}, {hi})")
    if a is None and b is None:
        return Fraction(0)
    if b is None:
        return Fraction(math.floor(a) + 1)
    if a is None:
        return Fraction(math.ceil(b) - 1)
    if a >= b:
        raise EmptyInterval(f"empty interval ({lo}, {hi})")
    if a < 0 < b:
        return Fraction(0)
    if a >= 0:
        return _simplest_nonneg(a, b)
    return -_simplest_nonneg(-b, -a)


class Point(NamedTuple):
    id: int
    pos: ExtPos
    color: Color


def _norm_edge(pair, colors):
    a, b = pair
    if a not in colors:
        raise UnknownId(a)
    if b not in colors:
        raise UnknownId(b)
    if colors[a] is colors[b]:
        raise StructureError("E_MONOEDGE", f"edge {a}-{b} joins two {colors[a]} points")
    return (a, b) if colors[a] is RED else (b, a)


@dataclass(frozen=True)
class FinStruct:
    """Finite ordered 2-coloured bipartite graph in canonical form.

    Points are kept sorted by position; edges are stored as
    ``(red_id, blue_id)`` tuples.
    """

    points: tuple = ()
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        pts = []
        for p in self.points:
            pid, pos, color = p
            if not isinstance(pos, ExtPos):
                pos = fin(pos)
            pts.append(Point(int(pid), pos, Color(color)))
        pts.sort(key=lambda p: p.pos.key)
        ids = [p.id for p in pts]
        if len(set(ids)) != len(ids):
            raise StructureError("E_DUPID", "point ids are not distinct")
        keys = [p.pos.key for p in pts]
        if len(set(keys)) != len(keys):
            raise StructureError("E_DUPPOS", "point positions are not distinct")
        if sum(p.pos.is_infinite for p in pts) > 1:
            raise StructureError("E_INF", "more than one point at an infinite position")
        colors = {p.id: p.color for p in pts}
        edges = frozenset(_norm_edge(e, colors) for e in self.edges)
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "edges", edges)

    @cached_property
    def _by_id(self):
        return {p.id: p for p in self.points}

    def __len__(self):
        return len(self.points)

    def __contains__(self, pid):
        return pid in self._by_id

    @property
    def ids(self):
        return [p.id for p in self.points]

    def point(self, pid) -> Point:
        try:
            return self._by_id[pid]
        except KeyError:
            raise UnknownId(pid) from None

    def color(self, pid) -> Color:
        return self.point(pid).color

    def pos(self, pid) -> ExtPos:
        return self.point(pid).pos

    def adjacent(self, a, b) -> bool:
        return (a, b) in self.edges or (b, a) in self.edges

    def shape(self):
        """Isomorphism invariant: colour word plus edges by rank.

        Between ordered structures the only candidate isomorphism is the
        rank-preserving bijection, so equal shapes means isomorphic.
        """
        rank = {p.id: i for i, p in enumerate(self.points)}
        word = "".join(p.color.value for p in self.points)
        return word, frozenset((rank[a], rank[b]) for a, b in self.edges)


def induced_substructure(s: FinStruct, ids: Iterable[int]) -> FinStruct:
    keep = set(ids)
    for pid in keep:
        s.point(pid)
    return FinStruct(
        tuple(p for p in s.points if p.id in keep),
        frozenset(e for e in s.edges if e[0] in keep and e[1] in keep),
    )


def is_partial_iso(pairs, s: FinStruct, t: FinStruct) -> bool:
    """Whether ``pairs`` (a mapping or iterable of ``(src, dst)``) is an
    order-, colour- and edge-preserving injection from ``s`` into ``t``."""
    items = list(pairs.items()) if isinstance(pairs, Mapping) else list(pairs)
    for a, b in items:
        s.point(a)
        t.point(b)
    src = [a for a, _ in items]
    dst = [b for _, b in items]
    if len(set(src)) != len(src) or len(set(dst)) != len(dst):
        return False
    for a, b in items:
        if s.color(a) is not t.color(b):
            return False
    for (a1, b1), (a2, b2) in itertools.combinations(items, 2):
        if (s.pos(a1) < s.pos(a2)) != (t.pos(b1) < t.pos(b2)):
            return False
        if s.adjacent(a1, a2) != t.adjacent(b1, b2):
            return False
    return True


def enumerate_structures(n: int, cap: int = ENUMERATION_CAP) -> list:
    """One representative per isomorphism class of structures on ``n`` points.

    Points sit at 1/1 .. n/1 with ids 1..n. Every labelled structure
    (colour word times edge subset) is generated and deduplicated by
    :meth:`FinStruct.shape`.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    total = sum(2 ** (r * (n - r)) * math.comb(n, r) for r in range(n + 1))
    if total > cap:
        raise BudgetExceeded(f"{total} labelled structures on {n} points exceeds cap {cap}")
    seen = set()
    out = []
    for word in itertools.product((RED, BLUE), repeat=n):
        pts = tuple(Point(i + 1, fin(i + 1), c) for i, c in enumerate(word))
        cross = [(i + 1, j + 1) for i in range(n) for j in range(n)
                 if word[i] is RED and word[j] is BLUE]
        for mask in range(2 ** len(cross)):
            edges = frozenset(e for k, e in enumerate(cross) if mask >> k & 1)
            s = FinStruct(pts, edges)
            key = s.shape()
            if key not in seen:
                seen.add(key)
                out.append(s)
    return out
