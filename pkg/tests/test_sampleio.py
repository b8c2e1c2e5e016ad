import pytest
from hypothesis import given, settings, strategies as st

from obgraph.catalog import instantiate
from obgraph.errors import StructureError
from obgraph.sampleio import parse, parse_with_comments, read, serialize, write


def test_round_trip_file(tmp_path):
    s = instantiate("v.br.M+Below", 3).grow_to(8)
    path = tmp_path / "x.obg"
    write(path, s, ["entry hidden"])
    assert read(path) == s
    text = serialize(s)
    assert serialize(parse(text)) == text


def test_endpoint_and_comments():
    text = "OBG v1\n# hello\np 2 0/1@inf b\np 1 -3/2 r\ne 1 2\n"
    s, comments = parse_with_comments(text)
    assert comments == ["hello"] and str(s.pos(2)) == "0/1@inf"
    assert serialize(s) == "OBG v1\np 1 -3/2 r\np 2 0/1@inf b\ne 1 2\n"


@pytest.mark.parametrize("text,code", [
    ("OBG v2\n", "E_HEADER"),
    ("OBG v1\np 1 2/4 r\n", "E_GCD"),
    ("OBG v1\np 1 1/0 r\n", "E_DEN"),
    ("OBG v1\np 1 1/2 r\np 2 1/2 b\n", "E_DUPPOS"),
    ("OBG v1\np 1 1/2 r\np 1 1/3 b\n", "E_DUPID"),
    ("OBG v1\np 1 1/2 r\np 2 1/3 r\ne 1 2\n", "E_MONOEDGE"),
    ("OBG v1\np 1 1/2 r\ne 1 9\n", "E_UNKNOWNID"),
    ("OBG v1\np 1 0/1@inf r\np 2 0/1@ninf b\n", "E_INF"),
    ("OBG v1\np 1 1/1@inf r\n", "E_POS"),
    ("OBG v1\nq 1\n", "E_SYNTAX"),
    ("OBG v1\np 0 1/1 r\n", "E_SYNTAX"),
])
def test_rejections(text, code):
    with pytest.raises(StructureError) as e:
        parse(text)
    assert e.value.code == code


@settings(max_examples=60)
@given(st.sampled_from(["iii.posInf.red.complete", "v.rb.Above", "vi.rightGeneric+leftGeneric", "iv.br.bounded_generic.rB"]),
       st.integers(0, 10**6), st.integers(1, 10))
def test_samples_byte_stable(name, seed, size):
    text = serialize(instantiate(name, seed).grow_to(size))
    assert serialize(parse(text)) == text
