"""Line-based text format for finite samples.

::

    OBG v1
    # comment
    p <id> <num>/<den>[@inf|@ninf|@pair0|@pair1] <r|b>
    e <id> <id>

Points are written in position order and edges as ``e <red> <blue>``
sorted by id, so a canonical file re-serializes to identical bytes.
Every rejection raises :class:`StructureError` with a stable code.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import StructureError, UnknownId
from .order import Color, ExtPos, FinStruct, Point

HEADER = "OBG v1"

_POINT = re.compile(r"^p (\d+) (-?\d+)/(\d+)(?:@(inf|ninf|pair0|pair1))? ([rb])$")
_EDGE = re.compile(r"^e (\d+) (\d+)$")


def format_pos(pos: ExtPos) -> str:
    return str(pos)


def serialize(s: FinStruct, comments=()) -> str:
    lines = [HEADER]
    lines += [f"# {c}" for c in comments]
    for p in s.points:
        lines.append(f"p {p.id} {format_pos(p.pos)} {p.color.value}")
    for r, b in sorted(s.edges):
        lines.append(f"e {r} {b}")
    return "\n".join(lines) + "\n"


def parse(text: str) -> FinStruct:
    return parse_with_comments(text)[0]


def parse_with_comments(text: str):
    """Parse a sample file; returns ``(FinStruct, comment lines)``."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise StructureError("E_HEADER", f"first line must be {HEADER!r}")
    points, edges, comments = [], [], []
    for n, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        m = _POINT.match(line)
        if m:
            pid, num, den, kind, col = m.groups()
            num, den = int(num), int(den)
            if den == 0:
                raise StructureError("E_DEN", f"line {n}: zero denominator")
            if math.gcd(num, den) != 1:
                raise StructureError("E_GCD", f"line {n}: {num}/{den} is not in lowest terms")
            if int(pid) <= 0:
                raise StructureError("E_SYNTAX", f"line {n}: ids must be positive")
            try:
                pos = ExtPos(Fraction(num, den), kind or "fin")
            except ValueError as exc:
                raise StructureError("E_POS", f"line {n}: {exc}") from None
            points.append(Point(int(pid), pos, Color(col)))
            continue
        m = _EDGE.match(line)
        if m:
            edges.append((int(m.group(1)), int(m.group(2))))
            continue
        raise StructureError("E_SYNTAX", f"line {n}: cannot parse {raw!r}")
    try:
        return FinStruct(tuple(points), frozenset(edges)), comments
    except UnknownId as exc:
        raise StructureError("E_UNKNOWNID", f"edge names unknown point {exc}") from None


def read(path) -> FinStruct:
    with open(path, encoding="ascii") as fh:
        return parse(fh.read())


def write(path, s: FinStruct, comments=()):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(serialize(s, comments))
