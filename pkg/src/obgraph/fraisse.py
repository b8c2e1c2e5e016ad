"""Amalgamation classes of finite ordered bipartite graphs.

Class properties (HP, JEP, AP) are checked by exhaustive search over all
structures up to a small size. A pass is evidence at that size, not a
proof. :func:`limit_oracle` grows the generic limit of a class by fair
one-point extension, deciding every placement and edge by class
membership alone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import BudgetExceeded, UnknownEntry
from .oracle import LineOracle
from .order import BLUE, RED, FinStruct, Point, enumerate_structures, fin, induced_substructure

DEFAULT_SIZE_CAP = 4
EDGE_SEARCH_CAP = 1 << 16


@dataclass(frozen=True)
class ClassDescriptor:
    name: str
    predicate: Callable[[FinStruct], bool] = field(compare=False)

    def __str__(self):
        return self.name


def _all(s):
    return True


def _red_block_first(s):
    reds = [p.pos for p in s.points if p.color is RED]
    blues = [p.pos for p in s.points if p.color is BLUE]
    return not reds or not blues or max(reds) < min(blues)


def _right(s):
    return all(s.pos(a) < s.pos(b) for a, b in s.edges)


def _left(s):
    return all(s.pos(a) > s.pos(b) for a, b in s.edges)


CLASSES = {
    c.name: c
    for c in (
        ClassDescriptor("allOrdered2ColoredBipartite", _all),
        ClassDescriptor("redBlockBeforeBlue", _red_block_first),
        ClassDescriptor("rightClass", _right),
        ClassDescriptor("leftClass", _left),
    )
}


def get_class(name) -> ClassDescriptor:
    if isinstance(name, ClassDescriptor):
        return name
    try:
        return CLASSES[name]
    except KeyError:
        raise UnknownEntry(f"unknown class {name!r}; known: {', '.join(CLASSES)}") from None


def member(c, s: FinStruct) -> bool:
    return get_class(c).predicate(s)


@dataclass
class AmalgamReport:
    property: str
    max_size: int
    verdict: str
    checked: int = 0
    counterexample: Optional[tuple] = None
    free: int = 0
    identified: int = 0
    note: str = "exhaustive at this size; evidence, not proof"

    @property
    def passed(self):
        return self.verdict == "pass"


def _members(c, max_size):
    return [s for k in range(max_size + 1) for s in enumerate_structures(k) if member(c, s)]


def check_property(c, prop: str, max_size: int = 3, cap: int = DEFAULT_SIZE_CAP) -> AmalgamReport:
    c = get_class(c)
    if max_size > cap:
        raise BudgetExceeded(f"max size {max_size} exceeds cap {cap}")
    prop = prop.upper()
    if prop == "HP":
        return _check_hp(c, max_size)
    if prop == "JEP":
        return _check_jep(c, max_size)
    if prop == "AP":
        return _check_ap(c, max_size)
    raise ValueError(f"unknown property {prop!r}")


def _check_hp(c, max_size):
    rep = AmalgamReport("HP", max_size, "pass")
    for s in _members(c, max_size):
        for k in range(len(s)):
            for sub in itertools.combinations(s.ids, k):
                rep.checked += 1
                t = induced_substructure(s, sub)
                if not member(c, t):
                    rep.verdict, rep.counterexample = "fail", (s, t)
                    return rep
    return rep


def _check_jep(c, max_size):
    rep = AmalgamReport("JEP", max_size, "pass")
    mems = [s for s in _members(c, max_size) if len(s)]
    empty = FinStruct()
    for i, b in enumerate(mems):
        for cs in mems[i:]:
            rep.checked += 1
            found = amalgamate(c, empty, b, (), cs, ())
            if found is None:
                rep.verdict, rep.counterexample = "fail", (b, cs)
                return rep
            _tally(rep, found)
    return rep


def _check_ap(c, max_size):
    rep = AmalgamReport("AP", max_size, "pass")
    groups = {}
    for b in _members(c, max_size):
        for k in range(len(b) + 1):
            for sub in itertools.combinations(b.ids, k):
                a = induced_substructure(b, sub)
                if member(c, a):
                    groups.setdefault(a.shape(), []).append((a, b, sub))
    for embeds in groups.values():
        for i, (a, b, u) in enumerate(embeds):
            for _, cs, v in embeds[i:]:
                rep.checked += 1
                found = amalgamate(c, a, b, u, cs, v)
                if found is None:
                    rep.verdict, rep.counterexample = "fail", (a, b, cs)
                    return rep
                _tally(rep, found)
    return rep


def _tally(rep, found):
    if found[1]:
        rep.identified += 1
    else:
        rep.free += 1


def _linear_extensions(nodes, chains):
    """All orderings of ``nodes`` that respect each chain's order."""
    before = {n: set() for n in nodes}
    for chain in chains:
        for x, y in zip(chain, chain[1:]):
            before[y].add(x)

    def rec(placed, rest):
        if not rest:
            yield list(placed)
            return
        for n in sorted(rest, key=str):
            if before[n] <= set(placed):
                placed.append(n)
                yield from rec(placed, rest - {n})
                placed.pop()

    yield from rec([], frozenset(nodes))


def amalgamate(c, a, b, u, cs, v):
    """Find ``D`` in class ``c`` amalgamating ``b`` and ``cs`` over ``a``.

    ``u`` and ``v`` list the ids of ``b`` and ``cs`` that form the copy of
    ``a`` (in position order). Returns ``(D, identified_pairs)`` or
    ``None``. Free amalgams (no identifications) are tried first.
    """
    u, v = list(u), list(v)
    assert len(u) == len(v) == len(a)
    base = {cid: bid for bid, cid in zip(u, v)}
    bx = [p for p in b.points if p.id not in u]
    cx = [p for p in cs.points if p.id not in v]

    def gap(s, ids, p):
        return sum(1 for i in ids if s.pos(i) < p.pos)

    cid = {p.id: ("c", p.id) for p in cx}
    options = [
        (bp, cp) for bp in bx for cp in cx
        if bp.color is cp.color and gap(b, u, bp) == gap(cs, v, cp)
        and all(b.adjacent(bp.id, x) == cs.adjacent(cp.id, base_c)
                for x, base_c in zip(u, v) if b.color(x) is not bp.color)
    ]
    for r in range(len(options) + 1):
        for ident in itertools.combinations(options, r):
            if len({x.id for x, _ in ident}) < r or len({y.id for _, y in ident}) < r:
                continue
            if any(b.adjacent(x1.id, x2.id) != cs.adjacent(y1.id, y2.id)
                   for (x1, y1), (x2, y2) in itertools.combinations(ident, 2)
                   if x1.color is not x2.color):
                continue
            found = _free_amalgam(c, a, b, u, cs, v, base, bx, cx, dict((y.id, x.id) for x, y in ident), gap)
            if found is not None:
                return found, ident
    return None


def _free_amalgam(c, a, b, u, cs, v, base, bx, cx, ident, gap):
    # node names: ints are ids of b; ("c", id) are unidentified extras of cs
    def name_c(i):
        if i in base:
            return base[i]
        return ident.get(i, ("c", i))

    colors = {p.id: p.color for p in b.points}
    colors.update({("c", p.id): p.color for p in cx if p.id not in ident})
    per_gap = []
    for g in range(len(u) + 1):
        bn = [p.id for p in bx if gap(b, u, p) == g]
        cn = [name_c(p.id) for p in cx if gap(cs, v, p) == g]
        nodes = set(bn) | set(cn)
        per_gap.append(list(_linear_extensions(nodes, [bn, cn])))
    fixed = set(b.edges)
    for x, y in cs.edges:
        fixed.add((name_c(x), name_c(y)))
    bnodes = {p.id for p in bx}
    cnodes = {("c", p.id) for p in cx if p.id not in ident}
    free = [(x, y) for x in bnodes for y in cnodes if colors[x] is not colors[y]]
    free = [(x, y) if colors[x] is RED else (y, x) for x, y in free]
    if 2 ** len(free) > EDGE_SEARCH_CAP:
        raise BudgetExceeded("too many undetermined cross pairs")
    def layouts():
        for combo in itertools.product(*per_gap):
            order = []
            for g, seg in enumerate(combo):
                order.extend(seg)
                if g < len(u):
                    order.append(u[g])
            ids = {n: (n if isinstance(n, int) else 1000 + n[1]) for n in order}
            yield ids, tuple(Point(ids[n], fin(i + 1), colors[n]) for i, n in enumerate(order))

    # first pass: every interleaving with no new cross edges; then everything
    for masks in (range(1), range(2 ** len(free))):
        for ids, pts in layouts():
            for mask in masks:
                edges = set(fixed) | {e for k, e in enumerate(free) if mask >> k & 1}
                d = FinStruct(pts, frozenset((ids[x], ids[y]) for x, y in edges))
                if member(c, d):
                    return d
    return None


class ClassOracle(LineOracle):
    """Generic limit of a class, grown on the rationals.

    A fresh point may sit in a gap only if some edge choice keeps the
    sample in the class; an edge to a sample point is free when both
    choices do. Membership is evaluated on the two-point substructure
    (all built-in classes are determined by their two-point
    substructures) and the full sample is re-checked after every insert.
    """

    def __init__(self, cls, seed=0):
        super().__init__(f"limit:{cls.name}", seed, colors=(RED, BLUE))
        self.cls = cls
        self.deterministic = False

    def _options(self, q, color, y):
        py = self._pts[y]
        new = Point(0, fin(q), color)
        if py.color is color:
            return [False] if member(self.cls, FinStruct((new, py))) else []
        return [v for v in (False, True)
                if member(self.cls, FinStruct((new, py), frozenset({(0, y)} if v else ())))]

    def _viable(self, q, color):
        return all(self._options(q, color, y) for y in self._pts)

    def _status_at(self, q, color, y):
        opts = self._options(q, color, y)
        return None if len(opts) == 2 else opts[0]

    def _commit(self, pos, color, status, forced=None, coord=None):
        pid = super()._commit(pos, color, status, forced, coord)
        if not member(self.cls, self.snapshot()):
            raise RuntimeError(f"sample left class {self.cls.name} after inserting {pid}")
        return pid


def limit_oracle(c, seed: int = 0) -> ClassOracle:
    return ClassOracle(get_class(c), seed)
