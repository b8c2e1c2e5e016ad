import subprocess
import sys

import pytest

from obgraph import cli
from obgraph.catalog import all_entries
from obgraph.sampleio import parse


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def kv(text):
    return dict(line.split(" = ", 1) for line in text.splitlines() if " = " in line and not line.startswith("#"))


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog")
    lines = out.splitlines()
    assert code == 0 and len(lines) == len(all_entries())
    assert "iv.bounded_generic.RB" in lines and "v.rb.M" in lines


def test_sample(capsys, tmp_path):
    code, out, _ = run(capsys, "sample", "ii.red", "--size", "3", "--seed", "4")
    s = parse(out)
    assert code == 0 and len(s) == 3 and not s.edges
    code, out, _ = run(capsys, "sample", "i.red+blue.complete", "--size", "2")
    assert len(parse(out)) == 2 and out.count("\ne ") == 1
    f1, f2 = tmp_path / "a.obg", tmp_path / "b.obg"
    run(capsys, "sample", "vi.rightGeneric+leftGeneric", "--size", "7", "--seed", "2", "--out", str(f1))
    run(capsys, "sample", "vi.rightGeneric+leftGeneric", "--size", "7", "--seed", "2", "--out", str(f2))
    assert f1.read_bytes() == f2.read_bytes()


def test_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("OBG_SEED", "9")
    _, a, _ = run(capsys, "sample", "iv.unbounded_generic", "--size", "6")
    _, b, _ = run(capsys, "sample", "iv.unbounded_generic", "--size", "6", "--seed", "9")
    assert a == b
    monkeypatch.setenv("OBG_SEED", "x")
    assert run(capsys, "sample", "ii.red")[0] == 3


def test_test_command(capsys):
    code, out, _ = run(capsys, "test", "fixture:matching2Q", "homogeneity")
    assert code == 1 and kv(out)["verdict"] == "fail" and "OBG v1" in out
    code, out, _ = run(capsys, "test", "iv.unbounded_generic", "density", "--max-constraints", "3", "--specs", "100")
    assert code == 0 and kv(out)["iv.unbounded_generic.realized"] == "100/100"
    code, out, _ = run(capsys, "test", "v.rb.M+Above", "closedform")
    assert code == 0
    code, out, _ = run(capsys, "test", "vi.rightGeneric+empty", "closedform")
    assert code == 2 and kv(out)["verdict"] == "inconclusive"


def test_classify(capsys, tmp_path):
    code, out, _ = run(capsys, "classify", "vi.rightGeneric+leftComplete")
    assert code == 0 and kv(out)["entry"] == "vi.rightGeneric+leftComplete"
    assert kv(run(capsys, "classify", "ii.blue")[1])["reduct"] == "ii"
    assert kv(run(capsys, "classify", "iii.posInf.blue.complete")[1])["reduct"] == "iii"
    f = tmp_path / "s.obg"
    run(capsys, "sample", "v.rb.M", "--size", "4", "--out", str(f))
    code, out, _ = run(capsys, "classify", str(f))
    assert code == 2 and kv(out)["mode"] == "evidence-only" and kv(out)["reduct_guess"] == "v"


def test_distinguish(capsys):
    code, out, _ = run(capsys, "distinguish", "vi.empty+empty", "vi.rightGeneric+empty", "--depth", "3")
    assert code == 0 and kv(out)["outcome"] == "distinguished" and "OBG v1" in out
    code, out, _ = run(capsys, "distinguish", "iv.bounded_generic", "iv.bounded_generic", "--depth", "5")
    assert code == 0 and kv(out)["outcome"] == "indistinguishable"
    code, out, _ = run(capsys, "distinguish", "iv.bounded_generic", "iv.unbounded_generic", "--depth", "4")
    assert code == 0


def test_fraisse(capsys):
    code, out, _ = run(capsys, "fraisse", "redBlockBeforeBlue", "all", "--max-size", "2")
    assert code == 0 and kv(out)["AP"] == "pass"
    code, out, _ = run(capsys, "fraisse", "rightClass", "HP", "--max-size", "4")
    assert code == 0


@pytest.mark.parametrize("argv", [["sample", "nope"], ["bogus"], ["fraisse", "nope", "HP"],
                                  ["classify", "/no/such/file.obg"], ["sample", "ii.red", "--out", "/no/dir/x"]])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 3


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "obgraph.cli", "catalog"], capture_output=True, text=True)
    assert out.returncode == 0 and "vi.empty+empty" in out.stdout
