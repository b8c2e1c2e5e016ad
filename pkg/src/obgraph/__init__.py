"""Countable homogeneous ordered bipartite graphs, made executable.

Exact rational order skeleton, lazily grown structure oracles for every
catalog entry, probing classifiers, a one-point-extension homogeneity
tester, a back-and-forth game and exhaustive amalgamation checks.
"""

from .catalog import CatalogEntry, all_entries, closed_form, instantiate, parse_entry, resolve
from .errors import (BudgetExceeded, EmptyInterval, Inconclusive, MalformedSpec, NotApplicable,
                     OBGError, SameColor, StructureError, UnknownEntry, UnknownId)
from .oracle import StructureOracle, WitnessSpec
from .order import BLUE, RED, Color, ExtPos, FinStruct, Point, Rat, mediant_between

__version__ = "0.1.0"
