"""Classification and comparison of structure oracles by finite probing.

* :func:`reduct_classify` decides which coloured linear order underlies
  an oracle, using only ``exists_between`` probes.
* :func:`edge_classify` then pins down the edge relation and returns a
  catalog entry.
* :func:`one_point_extension_test` searches for a finite partial
  isomorphism of the sample that provably has no one-point extension.
  It can refute homogeneity but only collects evidence for it.
* :func:`back_and_forth` plays a seeded extension game between two
  oracles and reports a configuration realized in one and not the other.
"""

from __future__ import annotations

import copy
import itertools
import random
from dataclasses import dataclass, field
from typing import Optional

from .catalog import CatalogEntry, closed_form, make_entry
from .errors import BudgetExceeded, Inconclusive
from .oracle import StructureOracle, WitnessSpec
from .order import BLUE, RED, FinStruct, induced_substructure, is_partial_iso

MAX_BNF_DEPTH = 8
DEFAULT_BNF_BUDGET = 2000


@dataclass
class ReductVerdict:
    case: str
    params: dict
    evidence: list = field(default_factory=list)


@dataclass
class EdgeVerdict:
    entry: CatalogEntry
    reduct: ReductVerdict
    probes: list = field(default_factory=list)


@dataclass
class HomogeneityReport:
    verdict: str
    trials: int
    sample_size: int
    partial_iso: Optional[dict] = None
    point: Optional[int] = None
    spec: Optional[WitnessSpec] = None
    sample: Optional[FinStruct] = None
    candidates: int = 0

    @property
    def exhaustive(self):
        """Whether every (partial iso, point) pair of the sample was tried."""
        return self.trials == self.candidates

    @property
    def counterexample_size(self):
        return None if self.partial_iso is None else len(self.partial_iso) + 1


@dataclass
class BnfResult:
    outcome: str
    depth: int
    calls: int = 0
    side: Optional[int] = None
    config: Optional[tuple] = None
    challenge: Optional[WitnessSpec] = None
    forced: Optional[WitnessSpec] = None
    oracles: Optional[tuple] = field(default=None, repr=False)

    @property
    def distinguished(self):
        return self.outcome == "distinguished"


class _Prober:
    """Counts and records queries against one oracle."""

    def __init__(self, o: StructureOracle, budget: int):
        self.o = o
        self.budget = budget
        self.used = 0
        self.evidence = []

    def _tick(self):
        self.used += 1
        if self.used > self.budget:
            raise BudgetExceeded(f"probe budget {self.budget} exhausted")

    def pos(self, pid):
        return self.o.point(pid).pos

    def between(self, lo, hi, color):
        self._tick()
        lo_p = None if lo is None else self.pos(lo)
        hi_p = None if hi is None else self.pos(hi)
        got = self.o.exists_between(lo_p, hi_p, color)
        self.evidence.append(("exists_between", lo, hi, color, got))
        return got

    def witness(self, color, lo, hi, constraints):
        self._tick()
        spec = WitnessSpec(color, None if lo is None else self.pos(lo),
                           None if hi is None else self.pos(hi), tuple(constraints))
        got = self.o.realize_witness(spec)
        self.evidence.append(("realize_witness", spec, got))
        return got

    def adjacent(self, a, b):
        self._tick()
        got = self.o.adjacent(a, b)
        self.evidence.append(("adjacent", a, b, got))
        return got


def _another(pr, x, color):
    return pr.between(None, x, color) or pr.between(x, None, color)


def reduct_classify(o: StructureOracle, budget: int = 64) -> ReductVerdict:
    """Which of the six coloured linear orders underlies ``o``."""
    if budget < 8:
        raise ValueError("reduct classification needs a budget of at least 8 queries")
    pr = _Prober(o, budget)

    def verdict(case, **params):
        return ReductVerdict(case, params, pr.evidence)

    r = pr.between(None, None, RED)
    b = pr.between(None, None, BLUE)
    if r is None and b is None:
        raise Inconclusive("the structure has no points")
    if r is None or b is None:
        x, c = (r, RED) if b is None else (b, BLUE)
        if _another(pr, x, c) is None:
            return verdict("i", points=str(c))
        return verdict("ii", color=c)
    r2, b2 = _another(pr, r, RED), _another(pr, b, BLUE)
    if r2 is None and b2 is None:
        first, second = (RED, BLUE) if pr.pos(r) < pr.pos(b) else (BLUE, RED)
        return verdict("i", points=f"{first}+{second}")
    if r2 is None or b2 is None:
        z, zc = (r, RED) if r2 is None else (b, BLUE)
        if pr.between(z, None, zc.other) is None:
            return verdict("iii", side="posInf", color=zc)
        if pr.between(None, z, zc.other) is None:
            return verdict("iii", side="negInf", color=zc)
        raise Inconclusive("a singleton colour class sits between points of the other colour")
    lo, hi = (r, b) if pr.pos(r) < pr.pos(b) else (b, r)
    lc = o.point(lo).color
    if pr.between(None, lo, lc.other) is None and pr.between(hi, None, lc) is None:
        return verdict("iv", order="rb" if lc is RED else "br")
    ids = o.ids()
    for x, y in zip(ids, ids[1:]):
        if pr.between(x, y, RED) is None and pr.between(x, y, BLUE) is None:
            cx, cy = o.point(x).color, o.point(y).color
            if cx is cy:
                raise Inconclusive("immediate successor of the same colour")
            return verdict("v", orient="rb" if cx is RED else "br")
    ids = o.ids()
    for x, y in zip(ids, ids[1:]):
        if o.point(x).color is not o.point(y).color:
            if pr.between(x, y, RED) is None or pr.between(x, y, BLUE) is None:
                raise Inconclusive("colours are not dense between a red and a blue point")
            return verdict("vi")
    raise Inconclusive("no red/blue neighbours in the sample")


def edge_classify(o: StructureOracle, budget: int = 64, reduct: Optional[ReductVerdict] = None) -> EdgeVerdict:
    """Identify the catalog entry realized by ``o``."""
    if reduct is None:
        reduct = reduct_classify(o, budget)
    pr = _Prober(o, budget)
    p = reduct.params
    case = reduct.case

    def done(entry):
        return EdgeVerdict(entry, reduct, pr.evidence)

    if case == "i":
        if "+" not in p["points"]:
            return done(make_entry("i", points=p["points"], rel="empty"))
        r = next(i for i in o.ids() if o.point(i).color is RED)
        b = next(i for i in o.ids() if o.point(i).color is BLUE)
        rel = "complete" if pr.adjacent(r, b) else "empty"
        return done(make_entry("i", points=p["points"], rel=rel))
    if case == "ii":
        return done(make_entry("ii", color=p["color"]))
    if case == "iii":
        zc = p["color"]
        z = next(i for i in o.ids() if o.point(i).color is zc)
        q = next(i for i in o.ids() if o.point(i).color is not zc)
        rel = "complete" if pr.adjacent(z, q) else "empty"
        return done(make_entry("iii", side=p["side"], color=zc, rel=rel))
    if case == "iv":
        return done(_edge_iv(pr, p["order"]))
    if case == "v":
        return done(_edge_v(pr, p["orient"]))
    if case == "vi":
        return done(_edge_vi(pr))
    raise ValueError(case)


def _edge_iv(pr, order):
    f = RED if order == "rb" else BLUE
    s = f.other

    def entry(rtype, rev_f=False, rev_s=False):
        flags = {f: rev_f, s: rev_s}
        return make_entry("iv", order=order, rtype=rtype, red_rev=flags[RED], blue_rev=flags[BLUE])

    a1 = pr.between(None, None, f)
    yes = pr.witness(s, None, None, [(a1, True)])
    if yes is None:
        return entry("empty")
    if pr.witness(s, None, None, [(a1, False)]) is None:
        return entry("complete")
    a2 = pr.between(a1, None, f)
    if a2 is None:
        raise Inconclusive("first colour block has no point above a sampled point")
    # a1 < a2: nested neighbour sets tell the direction of the cut map
    up = pr.witness(s, None, None, [(a1, True), (a2, False)])
    down = pr.witness(s, None, None, [(a1, False), (a2, True)])
    if up is not None and down is not None:
        return entry("unbounded_generic")
    if up is None and down is None:
        raise Inconclusive("two points of the first block have equal neighbourhoods")
    rev_f = down is not None
    rev_s = pr.witness(s, yes, None, [(a1, False)]) is not None
    return entry("bounded_generic", rev_f, rev_s)


def _edge_v(pr, orient):
    f = RED if orient == "rb" else BLUE
    s = f.other
    a = pr.between(None, None, f)
    ids = pr.o.ids()
    mate = ids[ids.index(a) + 1]
    if pr.o.point(mate).color is not s:
        raise Inconclusive("sampled point is not followed by its pair partner")
    if pr.between(a, mate, f) is not None or pr.between(a, mate, s) is not None:
        raise Inconclusive("sampled pair is not adjacent")
    rset = set()
    if pr.adjacent(a, mate):
        rset.add("M")
    if pr.witness(s, mate, None, [(a, True)]) is not None:
        rset.add("Above")
    if pr.witness(s, None, a, [(a, True)]) is not None:
        rset.add("Below")
    return make_entry("v", orient=orient, rset=rset)


def _edge_vi(pr):
    a = pr.between(None, None, RED)

    def mode(lo, hi, names):
        plus = pr.witness(BLUE, lo, hi, [(a, True)])
        minus = pr.witness(BLUE, lo, hi, [(a, False)])
        if plus is None:
            return "empty"
        return names[1] if minus is None else names[0]

    r1 = mode(a, None, ("rightGeneric", "rightComplete"))
    r2 = mode(None, a, ("leftGeneric", "leftComplete"))
    return make_entry("vi", r1=r1, r2=r2)


def classify(o: StructureOracle, budget: int = 64) -> EdgeVerdict:
    return edge_classify(o, budget, reduct_classify(o, budget))


# ------------------------------------------------------------ homogeneity


def forced_spec(s: FinStruct, p: dict, a: int) -> WitnessSpec:
    """The one-point extension type of ``a`` over ``dom p``, carried through ``p``."""
    pa = s.point(a)
    below = [x for x in p if s.pos(x) < pa.pos]
    above = [x for x in p if s.pos(x) > pa.pos]
    lo = max(below, key=lambda x: s.pos(x).key, default=None)
    hi = min(above, key=lambda x: s.pos(x).key, default=None)
    cons = tuple((p[x], s.adjacent(a, x)) for x in sorted(p, key=lambda x: s.pos(x).key)
                 if s.color(x) is not pa.color)
    return WitnessSpec(pa.color, None if lo is None else s.pos(p[lo]),
                       None if hi is None else s.pos(p[hi]), cons)


def partial_isos(s: FinStruct, max_size: Optional[int] = None):
    """Every partial isomorphism of ``s`` into itself with domain size <= ``max_size``."""
    ids = s.ids
    top = len(ids) if max_size is None else max_size
    for k in range(top + 1):
        for dom in itertools.combinations(ids, k):
            for img in itertools.combinations(ids, k):
                p = dict(zip(dom, img))
                if is_partial_iso(p, s, s):
                    yield p


def one_point_extension_test(o: StructureOracle, sample_size: int = 6, trials: int = 200,
                             seed: int = 0) -> HomogeneityReport:
    """Look for a partial isomorphism of the sample with no one-point extension.

    The sample is grown to ``sample_size``; ``trials`` pairs (p, a) of a
    partial isomorphism and an unmapped sample point are drawn by ``seed``
    and tried smallest-first; a small sample with fewer candidates is tried
    exhaustively. A counterexample is only reported when the extension's
    forced witness spec gets a definite ``None`` twice.
    """
    if sample_size > 8:
        raise BudgetExceeded("sample size above 8 is outside desk scale")
    s = o.grow_to(sample_size)
    cands = [(p, a) for p in partial_isos(s, len(s) - 1) for a in s.ids if a not in p]
    rng = random.Random(seed)
    rng.shuffle(cands)
    chosen = sorted(cands[:trials], key=lambda c: len(c[0]))
    for p, a in chosen:
        spec = forced_spec(s, p, a)
        if o.realize_witness(spec) is None and o.realize_witness(spec) is None:
            return HomogeneityReport("counterexample", len(chosen), sample_size, p, a, spec, s, len(cands))
    return HomogeneityReport("noCounterexampleFound", len(chosen), sample_size, candidates=len(cands))


def verify_counterexample(o: StructureOracle, rep: HomogeneityReport) -> bool:
    s = rep.sample
    return (is_partial_iso(rep.partial_iso, s, s)
            and rep.spec == forced_spec(s, rep.partial_iso, rep.point)
            and o.realize_witness(rep.spec) is None)


# ------------------------------------------------------------ back-and-forth


def back_and_forth(a: StructureOracle, b: StructureOracle, depth: int, seed: int = 0,
                   budget: int = DEFAULT_BNF_BUDGET) -> BnfResult:
    """Seeded extension game between ``a`` and ``b`` up to ``depth`` rounds.

    Levels 1..depth are played in turn, each with a fixed share
    ``budget // 8`` of oracle calls spent on random plays of that many
    rounds, so a deeper run replays a shallower one exactly. Every play
    starts from copies of the oracles as passed in, which keeps plays
    independent and samples small; the copies of a distinguishing play are
    kept on the result for re-verification. In each round
    the challenger picks a side, a colour, a gap of the current domain and
    signs towards every opposite-colour domain point; the challenge counts
    only if that side realizes it. The result is ``distinguished`` as soon
    as the other side has no point of the forced type.
    """
    if depth > MAX_BNF_DEPTH:
        raise BudgetExceeded(f"depth {depth} above {MAX_BNF_DEPTH}")
    share = budget // MAX_BNF_DEPTH
    total = 0
    for level in range(1, depth + 1):
        rng = random.Random(seed * 7919 + level)
        used = 0
        while used < share:
            res, spent = _play(a, b, level, rng, share - used)
            used += spent
            if res is not None:
                res.calls = total + used
                return res
        total += used
    return BnfResult("indistinguishable", depth, calls=total)


def _play(a, b, rounds, rng, allowance):
    sides = (copy.deepcopy(a), copy.deepcopy(b))
    pairs = []  # (id in a, id in b)
    spent = 0
    while len(pairs) < rounds:
        if spent >= allowance:
            return None, spent
        side = rng.randrange(2)
        x, y = sides[side], sides[1 - side]
        mine = [pr[side] for pr in pairs]
        theirs = {pr[side]: pr[1 - side] for pr in pairs}
        dom = sorted(mine, key=lambda i: x.point(i).pos.key)
        color = rng.choice((RED, BLUE))
        g = rng.randrange(len(dom) + 1)
        lo = dom[g - 1] if g > 0 else None
        hi = dom[g] if g < len(dom) else None
        cons = tuple((z, rng.random() < 0.5) for z in dom if x.point(z).color is not color)
        spec = WitnessSpec(color, None if lo is None else x.point(lo).pos,
                           None if hi is None else x.point(hi).pos, cons)
        spent += 1
        got = x.realize_witness(spec)
        if got is None:
            continue
        forced = WitnessSpec(color, None if lo is None else y.point(theirs[lo]).pos,
                             None if hi is None else y.point(theirs[hi]).pos,
                             tuple((theirs[z], sign) for z, sign in cons))
        spent += 1
        answer = y.realize_witness(forced)
        if answer is None:
            sx = induced_substructure(x.snapshot(), mine + [got])
            sy = induced_substructure(y.snapshot(), list(theirs.values()))
            return BnfResult("distinguished", len(pairs) + 1, side=side, config=(sx, sy),
                             challenge=spec, forced=forced, oracles=sides), spent
        pairs.append((got, answer) if side == 0 else (answer, got))
    return None, spent


def verify_distinction(res: BnfResult) -> bool:
    """Re-check a distinguished result against the oracles of its play."""
    if not res.distinguished:
        return False
    a, b = res.oracles
    x, y = (a, b) if res.side == 0 else (b, a)
    return x.realize_witness(res.challenge) is not None and y.realize_witness(res.forced) is None


# ------------------------------------------------------------ density and closed forms

DENSE_ENTRIES = (
    "iv.unbounded_generic",
    "vi.rightGeneric+empty",
    "vi.empty+leftGeneric",
    "vi.rightGeneric+leftGeneric",
)


@dataclass
class DensityReport:
    requested: int
    realized: int
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures


def _density_region(entry):
    """Per witness colour, which side of its constraint points the interval must lie.

    ``"any"`` allows every interval, ``"above"`` requires the interval to
    start at or after the largest constraint point, ``"below"`` to end at
    or before the smallest, ``"block"`` restricts bounds to points of the
    witness colour (the two-block orders).
    """
    if entry.case == "iv" and entry["rtype"] == "unbounded_generic":
        return {RED: "block", BLUE: "block"}
    if entry.case == "vi":
        r1, r2 = entry["r1"], entry["r2"]
        if r1 == "rightGeneric" and r2 == "leftGeneric":
            return {RED: "any", BLUE: "any"}
        if r1 == "rightGeneric" and r2 == "empty":
            return {BLUE: "above", RED: "below"}
        if r1 == "empty" and r2 == "leftGeneric":
            return {BLUE: "below", RED: "above"}
    return None


def density_applies(entry) -> bool:
    return _density_region(entry) is not None


def density_test(o: StructureOracle, entry: CatalogEntry, specs: int = 500, max_constraints: int = 3,
                 seed: int = 0, start_size: int = 8) -> DensityReport:
    """Request ``specs`` random witnesses that the entry's density promises.

    Each spec has at most ``max_constraints`` signed constraints on sample
    points and an interval with sample-point bounds inside the region where
    witnesses must be dense. A request fails if it returns no point, a
    point outside the open interval, or one that violates a constraint.
    """
    region = _density_region(entry)
    if region is None:
        raise ValueError(f"{entry.name} has no density promise")
    rng = random.Random(seed)
    o.grow_to(start_size)
    rep = DensityReport(0, 0)
    attempts = 0
    while rep.requested < specs:
        attempts += 1
        if attempts > 20 * specs:
            raise BudgetExceeded("could not draw enough valid witness specs")
        color = rng.choice((RED, BLUE))
        ids = o.ids()
        opp = [i for i in ids if o.point(i).color is not color]
        cons = tuple((x, rng.random() < 0.5) for x in rng.sample(opp, rng.randint(0, min(max_constraints, len(opp)))))
        kind = region[color]
        cpos = [o.point(x).pos for x, _ in cons]
        if kind == "block":
            bounds = [o.point(i).pos for i in ids if o.point(i).color is color]
        elif kind == "above" and cpos:
            bounds = [o.point(i).pos for i in ids if o.point(i).pos >= max(cpos)]
        elif kind == "below" and cpos:
            bounds = [o.point(i).pos for i in ids if o.point(i).pos <= min(cpos)]
        else:
            bounds = [o.point(i).pos for i in ids]
        opts = [None] + sorted(bounds)
        if kind == "above" and cpos:
            opts = sorted(bounds)
        lo = rng.choice(opts)
        his = [None] + [b for b in bounds if lo is None or b > lo]
        if kind == "below" and cpos:
            his = [b for b in bounds if lo is None or b > lo]
        if not his:
            continue
        hi = rng.choice(his)
        spec = WitnessSpec(color, lo, hi, cons)
        rep.requested += 1
        got = o.realize_witness(spec)
        if got is None:
            rep.failures.append((spec, None, "no witness"))
            continue
        pos = o.point(got).pos
        if (lo is not None and not pos > lo) or (hi is not None and not pos < hi):
            rep.failures.append((spec, got, "outside interval"))
        elif any(o.adjacent(got, x) != sign for x, sign in cons):
            rep.failures.append((spec, got, "constraint violated"))
        else:
            rep.realized += 1
    return rep


@dataclass
class ClosedFormReport:
    pairs: int
    mismatches: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.mismatches


def closed_form_test(o: StructureOracle, entry: CatalogEntry, size: int = 12) -> ClosedFormReport:
    """Compare oracle adjacency with the entry's positional rule on a grown sample."""
    rule = closed_form(entry)
    if rule is None:
        raise ValueError(f"{entry.name} has no closed form")
    s = o.grow_to(size)
    rep = ClosedFormReport(0)
    for a, b in itertools.combinations(s.ids, 2):
        pa, pb = s.point(a), s.point(b)
        if pa.color is pb.color:
            continue
        rep.pairs += 1
        want = rule(pa.pos, pa.color, pb.pos, pb.color)
        if o.adjacent(a, b) != want:
            rep.mismatches.append((a, b, want))
    return rep
