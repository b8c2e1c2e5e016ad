"""Growable finite samples of fixed countable ordered bipartite graphs.

A :class:`StructureOracle` holds a finite sample of one countable structure
and answers order, colour, adjacency and extension queries about it.
Every query that can add points works the same way: the concrete family
lists *candidates* for the requested colour inside the requested interval,
which fall into three groups:

* fresh points, one representative per gap between sample coordinates
  (all points in one gap relate to the sample identically);
* latent points, finitely many fixed points of the structure that are not
  yet sampled (endpoints, partners, the points of a finite structure);
* points already in the sample.

Each candidate reports its adjacency to a sample point as ``True``,
``False`` or ``None`` (a free choice, only for generic families). A free
choice is settled by the witness constraints if any, otherwise by the
seeded stream, and is then committed for good.
"""

from __future__ import annotations

import bisect
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BudgetExceeded, EmptyInterval, MalformedSpec, SameColor, UnknownId
from .order import (BLUE, RED, Color, ExtPos, FinStruct, Point, _as_rat_bound,
                    fin, mediant_between, pair_pos)


@dataclass(frozen=True)
class WitnessSpec:
    """Request for a point of ``color`` strictly inside ``(lo, hi)``.

    ``constraints`` is a tuple of ``(point_id, sign)`` with ``sign`` True
    for "adjacent" and False for "not adjacent". ``None`` bounds are open
    ends (and admit an infinite endpoint).
    """

    color: Color
    lo: Optional[ExtPos] = None
    hi: Optional[ExtPos] = None
    constraints: tuple = ()


class _Candidate:
    __slots__ = ("status", "make", "pos")

    def __init__(self, pos, status, make):
        self.pos = pos
        self.status = status
        self.make = make


def _inside(pos, lo, hi):
    return (lo is None or lo < pos) and (hi is None or pos < hi)


def _gap_reps(lo, hi, breaks):
    """Mediant representatives of the open gaps of ``(lo, hi)`` cut at ``breaks``."""
    if lo is not None and hi is not None and lo >= hi:
        return
    start = 0 if lo is None else bisect.bisect_right(breaks, lo)
    stop = len(breaks) if hi is None else bisect.bisect_left(breaks, hi)
    cuts = [lo] + breaks[start:stop] + [hi]
    for a, b in zip(cuts, cuts[1:]):
        yield mediant_between(a, b)


class StructureOracle:
    """Base class; concrete families override ``_fresh`` and ``_latent``."""

    deterministic = True
    finite = False

    def __init__(self, entry=None, seed: int = 0):
        self.entry = entry
        self.seed = seed
        self._rng = random.Random(seed)
        self._pts = {}
        self._order = []
        self._edges = set()
        self._coord = {}
        self._next_id = 1
        self._snap = None
        self.calls = 0
        self.log = []

    def __repr__(self):
        return f"<{type(self).__name__} {self.entry} seed={self.seed} n={len(self._pts)}>"

    # sample bookkeeping

    def __len__(self):
        return len(self._pts)

    def point(self, pid) -> Point:
        try:
            return self._pts[pid]
        except KeyError:
            raise UnknownId(pid) from None

    def ids(self):
        return [pid for _, pid in self._order]

    def _commit(self, pos, color, status, forced=None, coord=None):
        forced = forced or {}
        pid = self._next_id
        self._next_id += 1
        for y in self.ids():
            py = self._pts[y]
            if py.color is color:
                continue
            st = status(y)
            if st is None:
                st = forced.get(y)
                if st is None:
                    st = self._rng.random() < 0.5
                self.log.append((pid, y, st))
            if st:
                self._edges.add((pid, y) if color is RED else (y, pid))
        self._pts[pid] = Point(pid, pos, color)
        self._coord[pid] = coord
        bisect.insort(self._order, (pos.key, pid))
        self._snap = None
        return pid

    def snapshot(self) -> FinStruct:
        if self._snap is None:
            self._snap = FinStruct(tuple(self._pts[i] for i in self.ids()), frozenset(self._edges))
        return self._snap

    sample_snapshot = snapshot

    def gaps(self):
        """Consecutive-sample intervals ``(lo, hi)``, open ends as ``None``."""
        pos = [self._pts[i].pos for i in self.ids()]
        return list(zip([None] + pos, pos + [None]))

    # queries

    def adjacent(self, a, b) -> bool:
        pa, pb = self.point(a), self.point(b)
        if pa.color is pb.color:
            raise SameColor(f"{a} and {b} are both {pa.color}")
        self.calls += 1
        return ((a, b) if pa.color is RED else (b, a)) in self._edges

    def _edge(self, a, b):
        pa = self._pts[a]
        return ((a, b) if pa.color is RED else (b, a)) in self._edges

    def _existing(self, color, lo, hi):
        for pid in self.ids():
            p = self._pts[pid]
            if p.color is color and _inside(p.pos, lo, hi):
                yield _Candidate(p.pos, lambda y, pid=pid: self._edge(pid, y),
                                 lambda forced, pid=pid: pid)

    def _candidates(self, color, lo, hi):
        yield from self._fresh(color, lo, hi)
        yield from self._latent(color, lo, hi)
        yield from self._existing(color, lo, hi)

    def _fresh(self, color, lo, hi):
        return ()

    def _latent(self, color, lo, hi):
        return ()

    def exists_between(self, lo, hi, color: Color):
        """A sample point of ``color`` strictly between ``lo`` and ``hi``.

        Creates the point if needed; returns ``None`` when the structure has
        no such point.
        """
        if lo is not None and hi is not None and not lo < hi:
            raise EmptyInterval(f"({lo}, {hi})")
        self.calls += 1
        for cand in self._candidates(color, lo, hi):
            return cand.make({})
        return None

    def realize_witness(self, spec: WitnessSpec):
        """A point of ``spec.color`` in the interval meeting every constraint, or ``None``."""
        self._validate(spec)
        self.calls += 1
        for cand in self._candidates(spec.color, spec.lo, spec.hi):
            forced = {}
            for x, sign in spec.constraints:
                st = cand.status(x)
                if st is None:
                    if forced.get(x, sign) != sign:
                        break
                    forced[x] = sign
                elif st != sign:
                    break
            else:
                return cand.make(forced)
        return None

    def _validate(self, spec):
        if spec.lo is not None and spec.hi is not None and not spec.lo < spec.hi:
            raise MalformedSpec(f"empty interval ({spec.lo}, {spec.hi})")
        for x, _ in spec.constraints:
            if x not in self._pts:
                raise MalformedSpec(f"constraint point {x} is not in the sample")
            if self._pts[x].color is spec.color:
                raise MalformedSpec(f"constraint point {x} has the witness colour")

    # growth

    def grow_to(self, n: int, max_constraints: int = 3) -> FinStruct:
        """Grow the sample to at least ``n`` points by a seeded fair schedule.

        Steps cycle red/blue; every other pair of steps is an
        ``exists_between`` that tries the sample gaps cyclically from a
        seeded start until one yields a point, the rest are witness requests
        over a random gap with up to ``max_constraints`` random signed
        constraints, and every fourth of those asks anywhere for a
        neighbour of one random sample point. A finite structure stops once saturated.
        """
        limit = 200 * n + 200
        step = 0
        stalled = 0
        while len(self._pts) < n:
            if step >= limit:
                raise BudgetExceeded(f"grow_to({n}) stuck at {len(self._pts)} points")
            before = len(self._pts)
            color = RED if step % 2 == 0 else BLUE
            gaps = self.gaps()
            if (step // 2) % 2 == 0:
                start = self._rng.randrange(len(gaps))
                for k in range(len(gaps)):
                    if self.exists_between(*gaps[(start + k) % len(gaps)], color) is not None:
                        break
            elif step % 8 == 3 and any(p.color is not color for p in self._pts.values()):
                # neighbour probe: a point adjacent to one random sample point
                opp = [i for i in self.ids() if self._pts[i].color is not color]
                self.realize_witness(WitnessSpec(color, None, None, ((self._rng.choice(opp), True),)))
            else:
                lo, hi = gaps[self._rng.randrange(len(gaps))]
                opp = [i for i in self.ids() if self._pts[i].color is not color]
                k = self._rng.randint(0, min(max_constraints, len(opp)))
                chosen = self._rng.sample(opp, k)
                cons = tuple((x, self._rng.random() < 0.5) for x in chosen)
                self.realize_witness(WitnessSpec(color, lo, hi, cons))
            step += 1
            stalled = 0 if len(self._pts) > before else stalled + 1
            if stalled > 4 * len(gaps) + 8 and self._saturated():
                break
        return self.snapshot()

    def _saturated(self):
        before = len(self._pts)
        for lo, hi in self.gaps():
            for color in (RED, BLUE):
                self.exists_between(lo, hi, color)
                if len(self._pts) > before:
                    return False
        return True


# ---------------------------------------------------------------- families


def _rule_value(mode):
    return {"empty": False, "complete": True, "generic": None}[mode]


class LineOracle(StructureOracle):
    """Points on the rationals, optionally with one infinite endpoint.

    ``colors`` are the colours that occur densely. ``right`` and ``left``
    give the edge regime between a red ``a`` and blue ``b`` with ``a < b``
    and ``a > b`` respectively (``empty``, ``complete`` or ``generic``).
    ``endpoint`` is ``(color, ExtPos, adjacent_to_all)`` or ``None``.
    """

    def __init__(self, entry=None, seed=0, *, colors=(RED, BLUE), right="empty",
                 left="empty", endpoint=None):
        super().__init__(entry, seed)
        self.colors = frozenset(colors)
        self.right = right
        self.left = left
        self.endpoint = endpoint
        self.deterministic = "generic" not in (right, left)

    def _status_at(self, q, color, y):
        py = self._pts[y]
        if py.pos.is_infinite:
            return self.endpoint[2]
        if color is RED:
            mode = self.right if q < py.pos.value else self.left
        else:
            mode = self.right if py.pos.value < q else self.left
        return _rule_value(mode)

    def _breaks(self):
        return sorted(p.pos.value for p in self._pts.values() if p.pos.kind == "fin")

    def _viable(self, q, color):
        return True

    def _fresh(self, color, lo, hi):
        if color not in self.colors:
            return
        a, b = _as_rat_bound(lo, True), _as_rat_bound(hi, False)
        if a == "empty" or b == "empty":
            return
        for q in _gap_reps(a, b, self._breaks()):
            if not self._viable(q, color):
                continue
            status = (lambda y, q=q: self._status_at(q, color, y))
            yield _Candidate(fin(q), status,
                             lambda forced, q=q, status=status: self._commit(fin(q), color, status, forced, q))

    def _latent(self, color, lo, hi):
        if self.endpoint is None:
            return
        ecolor, epos, adj = self.endpoint
        if ecolor is not color or not _inside(epos, lo, hi):
            return
        if any(p.pos == epos for p in self._pts.values()):
            return
        status = lambda y: adj
        yield _Candidate(epos, status, lambda forced: self._commit(epos, color, status, forced))


def to_neg(s: Fraction) -> Fraction:
    """Order isomorphism from the rationals onto the negative rationals."""
    return s - 1 if s <= 0 else -1 / (s + 1)


def from_neg(y: Fraction) -> Fraction:
    return y + 1 if y <= -1 else -1 / y - 1


def to_pos(s):
    return -to_neg(-s)


def from_pos(y):
    return -from_neg(-y)


class BlockOracle(StructureOracle):
    """Two consecutive copies of the rationals, one per colour.

    Every point carries a coordinate ``t``; the ``first`` colour lives on
    the negative rationals at ``to_neg(t)`` and the other on the positive
    rationals at ``to_pos(t)``, with ``t`` negated for a reversed colour.
    ``mode`` fixes adjacency between a first-block point ``tf`` and a
    second-block point ``ts``:

    ``empty``/``complete``/``generic``; ``bounded``: ``tf < ts``;
    ``matching``: ``tf == ts``; ``finite2``: ``ts - tf in {0, 1}``.
    """

    def __init__(self, entry=None, seed=0, *, first=RED, mode="empty", reversed_=()):
        super().__init__(entry, seed)
        self.first = first
        self.mode = mode
        self.rev = frozenset(reversed_)
        self.deterministic = mode != "generic"

    def exposed(self, color, t) -> ExtPos:
        s = -t if color in self.rev else t
        return fin(to_neg(s) if color is self.first else to_pos(s))

    def coordinate(self, color, q):
        s = from_neg(q) if color is self.first else from_pos(q)
        return -s if color in self.rev else s

    def _t_range(self, color, lo, hi):
        a, b = _as_rat_bound(lo, True), _as_rat_bound(hi, False)
        if a == "empty" or b == "empty":
            return None
        if color is self.first:
            b = Fraction(0) if b is None or b > 0 else b
            if a is not None and a >= b:
                return None
            tlo = None if a is None else from_neg(a)
            thi = None if b == 0 else from_neg(b)
        else:
            a = Fraction(0) if a is None or a < 0 else a
            if b is not None and a >= b:
                return None
            tlo = None if a == 0 else from_pos(a)
            thi = None if b is None else from_pos(b)
        if color in self.rev:
            tlo, thi = (None if thi is None else -thi), (None if tlo is None else -tlo)
        return tlo, thi

    def _rel(self, tf, ts):
        m = self.mode
        if m in ("empty", "complete", "generic"):
            return _rule_value(m)
        if m == "bounded":
            return tf < ts
        if m == "matching":
            return tf == ts
        if m == "finite2":
            return ts - tf in (0, 1)
        raise ValueError(m)

    def _status_at(self, t, color, y):
        ty = self._coord[y]
        return self._rel(t, ty) if color is self.first else self._rel(ty, t)

    def _partner_coords(self, y):
        """Coordinates of the opposite-colour points adjacent to sample point ``y``."""
        ty = self._coord[y]
        yfirst = self._pts[y].color is self.first
        if self.mode == "matching":
            return [ty]
        if self.mode == "finite2":
            return [ty, ty + 1] if yfirst else [ty - 1, ty]
        return []

    def _breaks(self):
        ts = set(self._coord.values())
        if self.mode == "finite2":
            ts |= {t + d for t in self._coord.values() for d in (-1, 1)}
        return sorted(ts)

    def _make(self, t, color):
        status = lambda y: self._status_at(t, color, y)
        pos = self.exposed(color, t)
        return _Candidate(pos, status, lambda forced: self._commit(pos, color, status, forced, t))

    def _fresh(self, color, lo, hi):
        rng = self._t_range(color, lo, hi)
        if rng is None:
            return
        for t in _gap_reps(rng[0], rng[1], self._breaks()):
            yield self._make(t, color)

    def _latent(self, color, lo, hi):
        if self.mode not in ("matching", "finite2"):
            return
        taken = {self._coord[i] for i, p in self._pts.items() if p.color is color}
        want = set()
        for y, py in self._pts.items():
            if py.color is not color:
                want.update(self._partner_coords(y))
        cands = [self._make(t, color) for t in want - taken]
        cands = [c for c in cands if _inside(c.pos, lo, hi)]
        yield from sorted(cands, key=lambda c: c.pos.key)


class PairOracle(StructureOracle):
    """A rational family of adjacent pairs: slot 0 ``first``, slot 1 the other.

    ``rset`` is a subset of ``{"M", "Above", "Below"}`` relating a
    first-slot point ``a`` at pair index ``qa`` to a second-slot point at
    ``qb``: M when ``qb == qa``, Above when ``qb > qa``, Below when
    ``qb < qa``. Inserting a point always inserts its whole pair.
    """

    def __init__(self, entry=None, seed=0, *, first=RED, rset=frozenset()):
        super().__init__(entry, seed)
        self.first = first
        self.rset = frozenset(rset)

    def _rel(self, qa, qb):
        if qa == qb:
            return "M" in self.rset
        return ("Above" if qb > qa else "Below") in self.rset

    def _status_at(self, q, color, y):
        qy = self._coord[y]
        return self._rel(q, qy) if color is self.first else self._rel(qy, q)

    @staticmethod
    def _q_bound(bound, lower):
        if bound is None:
            return None
        if bound.kind in ("pair0", "pair1"):
            return bound.value
        if bound.kind == "ninf":
            return None if lower else "empty"
        if bound.kind == "inf":
            return "empty" if lower else None
        raise ValueError(f"{bound} is not a position of a pair structure")

    def _fresh(self, color, lo, hi):
        a, b = self._q_bound(lo, True), self._q_bound(hi, False)
        if a == "empty" or b == "empty":
            return
        breaks = sorted(set(self._coord.values()))
        slot = 0 if color is self.first else 1
        for q in _gap_reps(a, b, breaks):
            status = (lambda y, q=q: self._status_at(q, color, y))
            yield _Candidate(pair_pos(q, slot), status,
                             lambda forced, q=q, status=status: self._make_pair(q, color, status, forced))

    def _make_pair(self, q, color, status, forced):
        second = self.first.other
        ids = {}
        for slot, c in ((0, self.first), (1, second)):
            if c is color:
                st, fc = status, forced
            else:
                st, fc = (lambda y, c=c: self._status_at(q, c, y)), None
            ids[c] = self._commit(pair_pos(q, slot), c, st, fc, q)
        return ids[color]

    def partner(self, pid):
        self.point(pid)
        q = self._coord[pid]
        for i, c in self._coord.items():
            if c == q and i != pid:
                return i
        return None


class FiniteOracle(StructureOracle):
    """A fixed finite structure; its points are latent until requested."""

    finite = True

    def __init__(self, entry=None, seed=0, *, points=(), complete=False):
        super().__init__(entry, seed)
        self.layout = tuple((fin(q), c) for q, c in points)
        self.complete = complete

    def _latent(self, color, lo, hi):
        present = {p.pos for p in self._pts.values()}
        for pos, c in self.layout:
            if c is color and pos not in present and _inside(pos, lo, hi):
                status = lambda y: self.complete
                yield _Candidate(pos, status,
                                 lambda forced, pos=pos, c=c, status=status: self._commit(pos, c, status, forced))
