from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from obgraph.errors import BudgetExceeded, EmptyInterval, StructureError, UnknownId
from obgraph.order import (BLUE, NEG_INF, POS_INF, RED, Color, ExtPos, FinStruct, Point,
                           enumerate_structures, fin, induced_substructure, is_partial_iso,
                           mediant_between, pair_pos)

rats = st.fractions(max_denominator=10**6).map(Fraction)


def S(*pts, edges=()):
    return FinStruct(tuple(Point(i, fin(q), c) for i, q, c in pts), frozenset(edges))


# ---- mediant_between

def test_mediant_examples():
    assert mediant_between() == 0
    assert mediant_between(fin(0), fin(1)) == Fraction(1, 2)
    assert mediant_between(fin(1), None) == 2
    assert mediant_between(None, fin(Fraction(1, 3))) == 0
    assert mediant_between(NEG_INF, POS_INF) == 0


def test_mediant_is_simplest():
    assert mediant_between(Fraction(1, 3), Fraction(1, 2)) == Fraction(2, 5)
    assert mediant_between(Fraction(-1, 2), Fraction(-1, 3)) == Fraction(-2, 5)
    assert mediant_between(Fraction(3), Fraction(7, 2)) == Fraction(10, 3)


@pytest.mark.parametrize("lo,hi", [(1, 1), (2, 1), (POS_INF, None), (None, NEG_INF)])
def test_mediant_empty(lo, hi):
    with pytest.raises(EmptyInterval):
        mediant_between(lo, hi)


@given(rats, rats)
def test_mediant_strictly_inside(a, b):
    if a == b:
        return
    lo, hi = min(a, b), max(a, b)
    m = mediant_between(lo, hi)
    assert lo < m < hi
    assert mediant_between(lo, hi) == m


@given(rats)
def test_mediant_one_sided(a):
    assert mediant_between(a, None) > a
    assert mediant_between(None, a) < a


@given(rats, rats)
def test_mediant_has_least_denominator(a, b):
    if a == b:
        return
    lo, hi = min(a, b), max(a, b)
    m = mediant_between(lo, hi)
    for d in range(1, min(m.denominator, 60)):
        n = (lo * d).__floor__() + 1
        assert not (Fraction(n, d) < hi), (lo, hi, m, d)


# ---- positions

def test_extpos_order():
    assert NEG_INF < fin(-10**9) < fin(0) < fin(10**9) < POS_INF
    assert pair_pos(0, 0) < pair_pos(0, 1) < pair_pos(Fraction(1, 10**6), 0)
    assert str(pair_pos(Fraction(-1, 2), 1)) == "-1/2@pair1"
    assert str(POS_INF) == "0/1@inf"
    with pytest.raises(ValueError):
        ExtPos(Fraction(1), "inf")


def test_color_involution():
    for c in Color:
        assert c.other.other is c and c.other is not c


# ---- FinStruct

def test_finstruct_canonical_and_invariants():
    s = S((2, 1, BLUE), (1, 0, RED), edges=[(2, 1)])
    assert s.ids == [1, 2] and s.edges == {(1, 2)}
    with pytest.raises(StructureError) as e:
        S((1, 0, RED), (1, 1, BLUE))
    assert e.value.code == "E_DUPID"
    with pytest.raises(StructureError) as e:
        S((1, 0, RED), (2, 0, BLUE))
    assert e.value.code == "E_DUPPOS"
    with pytest.raises(StructureError) as e:
        S((1, 0, RED), (2, 1, RED), edges=[(1, 2)])
    assert e.value.code == "E_MONOEDGE"
    with pytest.raises(StructureError) as e:
        FinStruct((Point(1, NEG_INF, RED), Point(2, POS_INF, BLUE)))
    assert e.value.code == "E_INF"
    with pytest.raises(UnknownId):
        S((1, 0, RED)).point(9)


def test_induced_substructure():
    path = S((1, 0, RED), (2, 1, BLUE), (3, 2, RED), edges=[(1, 2), (3, 2)])
    assert induced_substructure(path, path.ids) == path
    assert len(induced_substructure(path, [])) == 0
    ends = induced_substructure(path, [1, 3])
    assert len(ends) == 2 and not ends.edges
    with pytest.raises(UnknownId):
        induced_substructure(path, [7])


# ---- partial isomorphisms

def test_partial_iso_examples():
    a = S((1, 0, RED), (2, 1, BLUE), edges=[(1, 2)])
    b = S((1, 0, RED), (2, 1, BLUE))
    c = S((1, 0, BLUE), (2, 1, RED))
    assert is_partial_iso({}, a, b)
    assert not is_partial_iso({1: 1, 2: 2}, a, b)
    assert not is_partial_iso({1: 2, 2: 1}, b, c)
    assert is_partial_iso([(1, 1)], a, b)
    with pytest.raises(UnknownId):
        is_partial_iso({5: 1}, a, b)


@st.composite
def structures(draw, max_size=5):
    n = draw(st.integers(0, max_size))
    qs = draw(st.lists(rats, min_size=n, max_size=n, unique=True))
    cols = draw(st.lists(st.sampled_from([RED, BLUE]), min_size=n, max_size=n))
    pts = [Point(i + 1, fin(q), c) for i, (q, c) in enumerate(zip(qs, cols))]
    cross = [(p.id, r.id) for p in pts for r in pts if p.color is RED and r.color is BLUE]
    edges = draw(st.lists(st.sampled_from(cross), unique=True)) if cross else []
    return FinStruct(tuple(pts), frozenset(edges))


@settings(max_examples=150)
@given(structures(), structures(), st.randoms(use_true_random=False))
def test_partial_iso_inverse_symmetry(s, t, rnd):
    k = rnd.randint(0, min(len(s), len(t)))
    p = dict(zip(rnd.sample(s.ids, k), rnd.sample(t.ids, k)))
    inv = {b: a for a, b in p.items()}
    assert is_partial_iso(p, s, t) == is_partial_iso(inv, t, s)


@given(structures())
def test_identity_is_partial_iso(s):
    assert is_partial_iso({i: i for i in s.ids}, s, s)


# ---- enumeration

def _independent_count(n):
    # ordered structures are rigid: one class per colour word and edge set
    from math import comb
    return sum(comb(n, r) * 2 ** (r * (n - r)) for r in range(n + 1))


@pytest.mark.parametrize("n,count", [(0, 1), (1, 2), (2, 6), (3, 26)])
def test_enumeration_counts(n, count):
    assert len(enumerate_structures(n)) == count == _independent_count(n)


def test_enumeration_has_no_isomorphic_pair():
    out = enumerate_structures(3)
    for i, s in enumerate(out):
        assert [p.pos for p in s.points] == [fin(k) for k in range(1, 4)]
        for t in out[i + 1:]:
            assert not is_partial_iso(dict(zip(s.ids, t.ids)), s, t)


def test_enumeration_cap():
    with pytest.raises(BudgetExceeded):
        enumerate_structures(6, cap=1000)
