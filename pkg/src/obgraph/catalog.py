"""The catalog of countable homogeneous ordered bipartite graphs.

Identifier grammar (stable ASCII)::

    i.<points>.<R>          points: red | blue | red+blue | blue+red
                            R: empty | complete (complete needs both colours)
    ii.<colour>             monochromatic rationals, no edges
    iii.<side>.<colour>.<R> side: negInf | posInf; colour of the endpoint
    iv[.br].<type>          block order red<blue, or blue<red with ``br``
                            type: empty | complete | unbounded_generic |
                                  bounded_generic[.Rb|.rB|.RB]
    v.<rb|br>.<rset>        rset: empty, or M/Above/Below joined by ``+``
    vi.<R1>+<R2>            R1: empty | rightGeneric | rightComplete
                            R2: empty | leftGeneric | leftComplete

In the reversal suffix an upper-case letter marks a reversed colour block
(``Rb`` red reversed, ``rB`` blue reversed). "Right" edges join a red
point to a later blue point, "left" edges to an earlier one. For the
``br`` orientation of case v the rules are the colour-swapped mirror of
the ``rb`` rules: M, Above and Below are read from the point in the first
slot of each pair. That list is inferred by symmetry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import NotApplicable, UnknownEntry
from .oracle import (BlockOracle, FiniteOracle, LineOracle, PairOracle, StructureOracle,
                     from_neg, from_pos)
from .order import BLUE, NEG_INF, POS_INF, RED, Color, ExtPos

RSET_ORDER = ("M", "Above", "Below")
IV_TYPES = ("empty", "complete", "bounded_generic", "unbounded_generic")
R1_MODES = ("empty", "rightGeneric", "rightComplete")
R2_MODES = ("empty", "leftGeneric", "leftComplete")


@dataclass(frozen=True)
class CatalogEntry:
    """One structure of the catalog: a case tag plus case-specific parameters."""

    case: str
    params: tuple

    def __getitem__(self, key):
        return dict(self.params)[key]

    @property
    def name(self) -> str:
        return entry_name(self)

    def __str__(self):
        return self.name

    @property
    def deterministic(self) -> bool:
        return closed_form(self) is not None


def make_entry(case, **params) -> CatalogEntry:
    if case == "v":
        params["rset"] = frozenset(params.get("rset", ()))
    e = CatalogEntry(case, tuple(params.items()))
    _check(e)
    return e


def _check(e):
    p = dict(e.params)
    ok = {
        "i": lambda: p.get("points") in ("red", "blue", "red+blue", "blue+red")
        and p.get("rel") in ("empty", "complete")
        and (p["rel"] == "empty" or "+" in p["points"]),
        "ii": lambda: p.get("color") in (RED, BLUE),
        "iii": lambda: p.get("side") in ("negInf", "posInf") and p.get("color") in (RED, BLUE)
        and p.get("rel") in ("empty", "complete"),
        "iv": lambda: p.get("order") in ("rb", "br") and p.get("rtype") in IV_TYPES
        and isinstance(p.get("red_rev"), bool) and isinstance(p.get("blue_rev"), bool)
        and (p["rtype"] == "bounded_generic" or not (p["red_rev"] or p["blue_rev"])),
        "v": lambda: p.get("orient") in ("rb", "br") and p.get("rset") <= set(RSET_ORDER),
        "vi": lambda: p.get("r1") in R1_MODES and p.get("r2") in R2_MODES,
    }.get(e.case)
    if ok is None or not ok():
        raise UnknownEntry(f"invalid catalog parameters {e.case} {p}")


def all_entries() -> list:
    out = []
    for pts in ("red", "blue", "red+blue", "blue+red"):
        for rel in ("empty", "complete"):
            if rel == "complete" and "+" not in pts:
                continue
            out.append(make_entry("i", points=pts, rel=rel))
    for c in (RED, BLUE):
        out.append(make_entry("ii", color=c))
    for side in ("negInf", "posInf"):
        for c in (RED, BLUE):
            for rel in ("empty", "complete"):
                out.append(make_entry("iii", side=side, color=c, rel=rel))
    for order in ("rb", "br"):
        for rtype in IV_TYPES:
            flags = [(False, False), (True, False), (False, True), (True, True)]
            for rr, br in flags if rtype == "bounded_generic" else flags[:1]:
                out.append(make_entry("iv", order=order, rtype=rtype, red_rev=rr, blue_rev=br))
    for orient in ("rb", "br"):
        for mask in range(8):
            rset = {r for k, r in enumerate(RSET_ORDER) if mask >> k & 1}
            out.append(make_entry("v", orient=orient, rset=rset))
    for r1 in R1_MODES:
        for r2 in R2_MODES:
            out.append(make_entry("vi", r1=r1, r2=r2))
    return out


# ------------------------------------------------------------------ names


def entry_name(e: CatalogEntry) -> str:
    p = dict(e.params)
    if e.case == "i":
        return f"i.{p['points']}.{p['rel']}"
    if e.case == "ii":
        return f"ii.{p['color']}"
    if e.case == "iii":
        return f"iii.{p['side']}.{p['color']}.{p['rel']}"
    if e.case == "iv":
        head = "iv." if p["order"] == "rb" else "iv.br."
        if p["rtype"] != "bounded_generic" or not (p["red_rev"] or p["blue_rev"]):
            return head + p["rtype"]
        flags = ("R" if p["red_rev"] else "r") + ("B" if p["blue_rev"] else "b")
        return f"{head}bounded_generic.{flags}"
    if e.case == "v":
        rset = "+".join(r for r in RSET_ORDER if r in p["rset"]) or "empty"
        return f"v.{p['orient']}.{rset}"
    return f"vi.{p['r1']}+{p['r2']}"


_COLORS = {"red": RED, "blue": BLUE}


def parse_entry(name: str) -> CatalogEntry:
    """Parse an identifier; accepts a few aliases besides the canonical form."""
    try:
        e = _parse(name.strip())
    except (KeyError, ValueError, IndexError, AttributeError):
        e = None
    if e is None:
        raise UnknownEntry(f"unknown catalog entry {name!r}")
    return e


def _parse(name):
    case, _, rest = name.partition(".")
    parts = rest.split(".") if rest else []
    if case == "i":
        rel = parts[1] if len(parts) > 1 else "empty"
        if len(parts) > 2:
            return None
        return make_entry("i", points=parts[0], rel=rel)
    if case == "ii" and len(parts) == 1:
        return make_entry("ii", color=_COLORS[parts[0]])
    if case == "iii" and len(parts) == 3:
        return make_entry("iii", side=parts[0], color=_COLORS[parts[1]], rel=parts[2])
    if case == "iv":
        order = "rb"
        if parts and parts[0] in ("rb", "br"):
            order = parts.pop(0)
        rtype = parts.pop(0)
        rr = br = False
        if parts:
            flags = parts.pop(0)
            if rtype != "bounded_generic" or len(flags) != 2 or flags.lower() != "rb" or parts:
                return None
            rr, br = flags[0] == "R", flags[1] == "B"
        return make_entry("iv", order=order, rtype=rtype, red_rev=rr, blue_rev=br)
    if case == "v" and len(parts) == 2:
        items = [] if parts[1] == "empty" else parts[1].split("+")
        if len(set(items)) != len(items) or not set(items) <= set(RSET_ORDER):
            return None
        return make_entry("v", orient=parts[0], rset=items)
    if case == "vi" and len(parts) == 1:
        a, b = parts[0].split("+")
        if a in R2_MODES[1:] or b in R1_MODES[1:]:
            a, b = b, a
        return make_entry("vi", r1=a, r2=b)
    return None


# ----------------------------------------------------------- instantiation

_VI_MODE = {"empty": "empty", "rightGeneric": "generic", "rightComplete": "complete",
            "leftGeneric": "generic", "leftComplete": "complete"}


def instantiate(e, seed: int = 0) -> StructureOracle:
    """A fresh oracle for entry ``e`` (an entry or an identifier)."""
    if isinstance(e, str):
        e = parse_entry(e)
    p = dict(e.params)
    if e.case == "i":
        layout = [(q, _COLORS[c]) for q, c in enumerate(p["points"].split("+"))]
        return FiniteOracle(e, seed, points=layout, complete=p["rel"] == "complete")
    if e.case == "ii":
        return LineOracle(e, seed, colors=(p["color"],))
    if e.case == "iii":
        pos = POS_INF if p["side"] == "posInf" else NEG_INF
        return LineOracle(e, seed, colors=(p["color"].other,),
                          endpoint=(p["color"], pos, p["rel"] == "complete"))
    if e.case == "iv":
        first = RED if p["order"] == "rb" else BLUE
        mode = {"empty": "empty", "complete": "complete", "unbounded_generic": "generic",
                "bounded_generic": "bounded"}[p["rtype"]]
        rev = [c for c, f in ((RED, p["red_rev"]), (BLUE, p["blue_rev"])) if f]
        return BlockOracle(e, seed, first=first, mode=mode, reversed_=rev)
    if e.case == "v":
        return PairOracle(e, seed, first=RED if p["orient"] == "rb" else BLUE, rset=p["rset"])
    return LineOracle(e, seed, right=_VI_MODE[p["r1"]], left=_VI_MODE[p["r2"]])


FIXTURES = ("matching2Q", "finite2")


def fixture(name: str, seed: int = 0) -> StructureOracle:
    """Non-catalog structures on 2.Q used as negative controls.

    ``matching2Q``: a perfect matching between the red and blue blocks.
    ``finite2``: every red point has exactly two blue neighbours.
    """
    name = name.removeprefix("fixture:")
    if name == "matching2Q":
        return BlockOracle(f"fixture:{name}", seed, mode="matching")
    if name == "finite2":
        return BlockOracle(f"fixture:{name}", seed, mode="finite2")
    raise UnknownEntry(f"unknown fixture {name!r}")


def resolve(name: str, seed: int = 0) -> StructureOracle:
    if name.startswith("fixture:"):
        return fixture(name, seed)
    return instantiate(parse_entry(name), seed)


# ------------------------------------------------------------ closed forms

ClosedFormRule = Callable[[ExtPos, Color, ExtPos, Color], bool]


def closed_form(e: CatalogEntry) -> Optional[ClosedFormRule]:
    """Adjacency as a function of two positioned, coloured points.

    ``None`` for entries with a generic component.
    """
    p = dict(e.params)
    if e.case in ("i", "iii"):
        complete = p["rel"] == "complete"
        base = lambda ra, ba: complete
    elif e.case == "ii":
        base = lambda ra, ba: False
    elif e.case == "iv":
        if p["rtype"] == "unbounded_generic":
            return None
        if p["rtype"] != "bounded_generic":
            value = p["rtype"] == "complete"
            base = lambda ra, ba: value
        else:
            base = _bounded_rule(RED if p["order"] == "rb" else BLUE, p["red_rev"], p["blue_rev"])
    elif e.case == "v":
        base = _pair_rule(RED if p["orient"] == "rb" else BLUE, p["rset"])
    else:
        if "Generic" in p["r1"] or "Generic" in p["r2"]:
            return None
        right, left = p["r1"] == "rightComplete", p["r2"] == "leftComplete"
        base = lambda ra, ba: right if ra < ba else left

    def rule(pos_a, color_a, pos_b, color_b):
        if color_a is color_b:
            return False
        if color_a is RED:
            return base(pos_a, pos_b)
        return base(pos_b, pos_a)

    return rule


def _bounded_rule(first, red_rev, blue_rev):
    rev = {RED: red_rev, BLUE: blue_rev}

    def base_coord(pos, color):
        q = pos.value
        s = from_neg(q) if color is first else from_pos(q)
        return -s if rev[color] else s

    def base(red_pos, blue_pos):
        tr, tb = base_coord(red_pos, RED), base_coord(blue_pos, BLUE)
        return tr < tb if first is RED else tb < tr

    return base


def _pair_rule(first, rset):
    def base(red_pos, blue_pos):
        a, b = (red_pos, blue_pos) if first is RED else (blue_pos, red_pos)
        if a.value == b.value:
            return "M" in rset
        return ("Above" if b.value > a.value else "Below") in rset

    return base


def apply_reversal(e: CatalogEntry, which: Color) -> CatalogEntry:
    """Toggle the reversal flag of one colour block of a bounded generic entry."""
    p = dict(e.params)
    if e.case != "iv" or p["rtype"] != "bounded_generic":
        raise NotApplicable(f"{e.name} is not a bounded generic entry")
    key = "red_rev" if Color(which) is RED else "blue_rev"
    p[key] = not p[key]
    return make_entry("iv", **p)
