import pytest

from obgraph.analysis import (back_and_forth, classify, edge_classify, forced_spec, one_point_extension_test,
                              reduct_classify, verify_counterexample, verify_distinction)
from obgraph.catalog import all_entries, closed_form, instantiate, parse_entry, resolve
from obgraph.errors import BudgetExceeded, Inconclusive
from obgraph.order import RED, FinStruct, is_partial_iso


@pytest.mark.parametrize("name,case,params", [
    ("iv.empty", "iv", {"order": "rb"}),
    ("iv.br.complete", "iv", {"order": "br"}),
    ("v.rb.M", "v", {"orient": "rb"}),
    ("vi.rightGeneric+leftComplete", "vi", {}),
    ("ii.blue", "ii", {}),
    ("iii.posInf.blue.complete", "iii", {"side": "posInf"}),
    ("i.blue+red.complete", "i", {"points": "blue+red"}),
])
def test_reduct_examples(name, case, params):
    v = reduct_classify(instantiate(name, 1))
    assert v.case == case and v.evidence
    for k, want in params.items():
        assert v.params[k] == want


def test_reduct_budget():
    with pytest.raises(ValueError):
        reduct_classify(instantiate("vi.empty+empty"), 4)
    with pytest.raises(BudgetExceeded):
        reduct_classify(instantiate("vi.empty+empty"), 8)


def test_reduct_v_evidence_has_empty_pair_gaps():
    for e in all_entries():
        o = instantiate(e, 2)
        v = reduct_classify(o)
        if v.case != "v":
            continue
        pair_probes = [step for step in v.evidence if step[0] == "exists_between"
                       and step[1] is not None and step[2] is not None
                       and o.point(step[1]).pos.value == o.point(step[2]).pos.value]
        assert pair_probes and all(step[4] is None for step in pair_probes)


@pytest.mark.parametrize("name", ["iv.bounded_generic", "iv.unbounded_generic", "v.rb.Above",
                                  "iv.br.bounded_generic.rB", "vi.empty+leftGeneric"])
def test_edge_examples(name):
    assert classify(instantiate(name, 4)).entry == parse_entry(name)


def test_edge_classify_accepts_precomputed_reduct():
    o = instantiate("v.br.M+Below", 0)
    v = edge_classify(o, 64, reduct_classify(o))
    assert v.entry.name == "v.br.M+Below" and v.probes


def test_fixtures_are_not_homogeneous():
    for name in ("fixture:matching2Q", "fixture:finite2"):
        o = resolve(name, 0)
        rep = one_point_extension_test(o, 6, 200, 0)
        assert rep.verdict == "counterexample" and rep.counterexample_size <= 4
        assert verify_counterexample(o, rep)
        assert is_partial_iso(rep.partial_iso, rep.sample, rep.sample)


def test_homogeneous_examples():
    for name in ("iv.bounded_generic.RB", "vi.rightGeneric+leftComplete", "v.rb.M", "iii.negInf.red.empty"):
        rep = one_point_extension_test(instantiate(name, 0), 6, 200, 0)
        assert rep.verdict == "noCounterexampleFound" and rep.trials == 200


def test_homogeneity_budget():
    with pytest.raises(BudgetExceeded):
        one_point_extension_test(instantiate("ii.red"), 9, 10, 0)


def test_forced_spec_carries_constraints():
    o = instantiate("iv.bounded_generic", 0)
    s = o.grow_to(6)
    reds = [i for i in s.ids if s.color(i) is RED]
    blues = [i for i in s.ids if s.color(i) is not RED]
    p = {b: b for b in blues}
    spec = forced_spec(s, p, reds[0])
    assert spec.color is RED and len(spec.constraints) == len(blues)
    assert o.realize_witness(spec) is not None


def test_bnf_examples():
    cases = [("vi.empty+empty", "vi.rightGeneric+empty", 3),
             ("iv.bounded_generic", "iv.unbounded_generic", 4),
             ("vi.empty+leftComplete", "vi.rightComplete+empty", 2)]
    for x, y, depth in cases:
        r = back_and_forth(instantiate(x, 0), instantiate(y, 0), depth, 0)
        assert r.distinguished and r.depth <= depth
        assert verify_distinction(r)
    r = back_and_forth(instantiate("iv.bounded_generic", 0), instantiate("iv.bounded_generic", 0), 5, 0)
    assert not r.distinguished and r.depth == 5


def test_bnf_distinction_agrees_with_closed_forms():
    r = back_and_forth(instantiate("vi.empty+leftComplete", 0), instantiate("vi.rightComplete+empty", 0), 3, 0)
    sx, sy = r.config
    x, y = ("vi.empty+leftComplete", "vi.rightComplete+empty")[::1 if r.side == 0 else -1]
    rule = closed_form(parse_entry(x))
    for a, b in sx.edges:
        assert rule(sx.pos(a), sx.color(a), sx.pos(b), sx.color(b))


def test_bnf_monotone_in_depth():
    a, b = "v.rb.M", "v.rb.M+Below"
    first = back_and_forth(instantiate(a, 3), instantiate(b, 3), 6, 3)
    assert first.distinguished
    for d in range(first.depth, 7):
        r = back_and_forth(instantiate(a, 3), instantiate(b, 3), d, 3)
        assert r.distinguished and r.depth == first.depth
    for d in range(1, first.depth):
        assert not back_and_forth(instantiate(a, 3), instantiate(b, 3), d, 3).distinguished


def test_bnf_depth_cap():
    with pytest.raises(BudgetExceeded):
        back_and_forth(instantiate("ii.red"), instantiate("ii.red"), 9)
