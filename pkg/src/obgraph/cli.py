"""Command-line interface: ``obg <command> ...``.

Every command prints a report of ``key = value`` lines ending with a
``verdict = pass|fail|inconclusive`` line (``catalog`` prints bare
identifiers). Exit status: 0 pass, 1 fail, 2 inconclusive, 3 usage or
I/O error. ``OBG_SEED`` sets the default seed.

Entry identifiers::

    i.<red|blue|red+blue|blue+red>.<empty|complete>
    ii.<red|blue>
    iii.<negInf|posInf>.<colour>.<empty|complete>
    iv[.br].<empty|complete|unbounded_generic|bounded_generic[.Rb|.rB|.RB]>
    v.<rb|br>.<empty|M|Above|Below joined by +>
    vi.<empty|rightGeneric|rightComplete>+<empty|leftGeneric|leftComplete>

Upper case in a reversal suffix marks a reversed colour block. Negative
controls are named ``fixture:matching2Q`` and ``fixture:finite2``.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import analysis, catalog, fraisse, sampleio
from .errors import BudgetExceeded, Inconclusive, OBGError, StructureError, UnknownEntry

EXIT = {"pass": 0, "fail": 1, "inconclusive": 2}
USAGE_ERROR = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


class Report:
    def __init__(self):
        self.lines = []
        self.verdict = "inconclusive"

    def add(self, key, value):
        self.lines.append(f"{key} = {value}")

    def block(self, title, text):
        self.lines.append(f"# --- {title}")
        self.lines.extend(text.rstrip("\n").split("\n"))
        self.lines.append("# --- end")

    def render(self):
        return "\n".join(self.lines + [f"verdict = {self.verdict}"]) + "\n"


def _default_seed():
    raw = os.environ.get("OBG_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"OBG_SEED must be an integer, got {raw!r}") from None


def _targets(target):
    if target == "all":
        return [e.name for e in catalog.all_entries()]
    if target.startswith("fixture:"):
        catalog.fixture(target)
        return [target]
    return [catalog.parse_entry(target).name]


# ------------------------------------------------------------- commands


def cmd_catalog_list(args):
    return "\n".join(e.name for e in catalog.all_entries()) + "\n", 0


def cmd_sample(args):
    e = catalog.parse_entry(args.entry)
    s = catalog.instantiate(e, args.seed).grow_to(args.size)
    text = sampleio.serialize(s, [f"entry {e.name}", f"seed {args.seed}"])
    return text, 0


def cmd_test(args):
    rep = Report()
    names = _targets(args.target)
    rep.add("suite", args.suite)
    rep.add("seed", args.seed)
    failed = inconclusive = 0
    t0 = time.perf_counter()
    for name in names:
        status = _run_suite(rep, name, args)
        failed += status == "fail"
        inconclusive += status == "inconclusive"
    rep.add("elapsed_s", f"{time.perf_counter() - t0:.2f}")
    rep.add("failed", failed)
    rep.verdict = "fail" if failed else ("inconclusive" if inconclusive == len(names) else "pass")
    return rep.render(), EXIT[rep.verdict]


def _run_suite(rep, name, args):
    o = catalog.resolve(name, args.seed)
    entry = None if name.startswith("fixture:") else catalog.parse_entry(name)
    if args.suite == "homogeneity":
        r = analysis.one_point_extension_test(o, args.sample_size, args.trials, args.seed)
        rep.add(f"{name}.trials", f"{r.trials}/{r.candidates}")
        if r.verdict == "counterexample":
            rep.add(name, "fail")
            rep.add(f"{name}.counterexample_size", r.counterexample_size)
            rep.add(f"{name}.map", " ".join(f"{a}->{b}" for a, b in sorted(r.partial_iso.items())))
            rep.add(f"{name}.extra_point", r.point)
            rep.add(f"{name}.forced", _spec_text(r.spec))
            rep.block(f"{name} sample", sampleio.serialize(r.sample))
            return "fail"
        rep.add(name, "pass")
        return "pass"
    if entry is None:
        rep.add(name, "not_applicable")
        return "inconclusive"
    if args.suite == "density":
        if not analysis.density_applies(entry):
            rep.add(name, "not_applicable")
            return "inconclusive"
        r = analysis.density_test(o, entry, args.specs, args.max_constraints, args.seed)
        rep.add(name, "pass" if r.passed else "fail")
        rep.add(f"{name}.realized", f"{r.realized}/{r.requested}")
        for spec, got, why in r.failures[:5]:
            rep.add(f"{name}.failure", f"{why}: {_spec_text(spec)} -> {got}")
        return "pass" if r.passed else "fail"
    if args.suite == "closedform":
        if not entry.deterministic:
            rep.add(name, "not_applicable")
            return "inconclusive"
        r = analysis.closed_form_test(o, entry, args.sample_size)
        rep.add(name, "pass" if r.passed else "fail")
        rep.add(f"{name}.pairs", r.pairs)
        return "pass" if r.passed else "fail"
    raise UsageError(f"unknown suite {args.suite!r}")


def _spec_text(spec):
    lo = "-" if spec.lo is None else str(spec.lo)
    hi = "-" if spec.hi is None else str(spec.hi)
    cons = ",".join(f"{x}{'+' if s else '-'}" for x, s in spec.constraints) or "none"
    return f"{spec.color} in ({lo}, {hi}) signs {cons}"


def cmd_classify(args):
    rep = Report()
    if os.path.exists(args.input):
        return _classify_file(rep, args.input)
    o = catalog.resolve(args.input, args.seed)
    try:
        red = analysis.reduct_classify(o, args.budget)
        rep.add("reduct", red.case)
        for k, v in sorted(red.params.items()):
            rep.add(f"reduct.{k}", v)
        v = analysis.edge_classify(o, args.budget, red)
    except (Inconclusive, BudgetExceeded) as exc:
        rep.add("reason", exc)
        return rep.render(), EXIT["inconclusive"]
    rep.add("entry", v.entry.name)
    rep.add("probes", len(red.evidence) + len(v.probes))
    rep.verdict = "pass"
    return rep.render(), 0


def _classify_file(rep, path):
    """Reduct-level guess from a finite sample; never conclusive."""
    s = sampleio.read(path)
    rep.add("mode", "evidence-only")
    colours = {p.color for p in s.points}
    ids = s.ids
    if len(colours) < 2:
        guess = "i or ii"
    elif any(p.pos.is_infinite for p in s.points):
        guess = "iii"
    elif any(p.pos.kind.startswith("pair") for p in s.points):
        guess = "v"
    else:
        word = "".join(p.color.value for p in s.points)
        changes = sum(a != b for a, b in zip(word, word[1:]))
        guess = "i or iv" if changes == 1 else "vi"
    rep.add("points", len(ids))
    rep.add("edges", len(s.edges))
    rep.add("reduct_guess", guess)
    rep.add("reason", "a finite sample cannot witness density; classify a live entry instead")
    return rep.render(), EXIT["inconclusive"]


def cmd_distinguish(args):
    rep = Report()
    a = catalog.resolve(args.e1, args.seed)
    b = catalog.resolve(args.e2, args.seed)
    same = _canon(args.e1) == _canon(args.e2)
    r = analysis.back_and_forth(a, b, args.depth, args.seed, args.budget)
    rep.add("outcome", r.outcome)
    rep.add("depth", r.depth)
    rep.add("calls", r.calls)
    rep.add("expected", "indistinguishable" if same else "distinguished")
    if r.distinguished:
        rep.add("challenged_side", (args.e1, args.e2)[r.side])
        rep.add("challenge", _spec_text(r.challenge))
        rep.add("unanswerable", _spec_text(r.forced))
        sx, sy = r.config
        rep.block("realized configuration", sampleio.serialize(sx))
        rep.block("partial image", sampleio.serialize(sy))
    rep.verdict = "pass" if r.distinguished != same else "fail"
    return rep.render(), EXIT[rep.verdict]


def _canon(name):
    return name if name.startswith("fixture:") else catalog.parse_entry(name).name


def cmd_fraisse(args):
    rep = Report()
    props = ("HP", "JEP", "AP") if args.property.lower() == "all" else (args.property.upper(),)
    c = fraisse.get_class(args.cls)
    rep.add("class", c.name)
    rep.add("max_size", args.max_size)
    ok = True
    for prop in props:
        r = fraisse.check_property(c, prop, args.max_size, cap=max(args.max_size, fraisse.DEFAULT_SIZE_CAP))
        rep.add(prop, r.verdict)
        rep.add(f"{prop}.checked", r.checked)
        if r.counterexample:
            for k, s in enumerate(r.counterexample):
                rep.block(f"{prop} counterexample part {k + 1}", sampleio.serialize(s))
        ok &= r.passed
    rep.add("note", "exhaustive up to max_size; evidence, not proof")
    rep.verdict = "pass" if ok else "fail"
    return rep.render(), EXIT[rep.verdict]


# ---------------------------------------------------------------- parser


def build_parser():
    p = _Parser(prog="obg", description=__doc__.split("\n\n")[0],
                epilog=__doc__.split("\n\n", 2)[2], formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, seed=True):
        sp.add_argument("--out", help="also write the output to this file")
        if seed:
            sp.add_argument("--seed", type=int, default=None, help="default: $OBG_SEED or 0")
        return sp

    sp = common(sub.add_parser("catalog", help="list every catalog identifier"), seed=False)
    sp.set_defaults(func=cmd_catalog_list)

    sp = common(sub.add_parser("sample", help="write a sample of an entry as a sample file"))
    sp.add_argument("entry")
    sp.add_argument("--size", type=int, default=8)
    sp.set_defaults(func=cmd_sample)

    sp = common(sub.add_parser("test", help="run a test suite on an entry, a fixture or all"))
    sp.add_argument("target", help="entry identifier, fixture:<name> or all")
    sp.add_argument("suite", choices=("homogeneity", "density", "closedform"))
    sp.add_argument("--sample-size", type=int, default=6)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--specs", type=int, default=500)
    sp.add_argument("--max-constraints", type=int, default=3)
    sp.set_defaults(func=cmd_test)

    sp = common(sub.add_parser("classify", help="classify a live entry or a sample file"))
    sp.add_argument("input", help="entry identifier or path to a sample file")
    sp.add_argument("--budget", type=int, default=64)
    sp.set_defaults(func=cmd_classify)

    sp = common(sub.add_parser("distinguish", help="back-and-forth game between two entries"))
    sp.add_argument("e1")
    sp.add_argument("e2")
    sp.add_argument("--depth", type=int, default=6)
    sp.add_argument("--budget", type=int, default=analysis.DEFAULT_BNF_BUDGET)
    sp.set_defaults(func=cmd_distinguish)

    sp = common(sub.add_parser("fraisse", help="check HP/JEP/AP for a class of finite structures"), seed=False)
    sp.add_argument("cls", metavar="class", help=", ".join(fraisse.CLASSES))
    sp.add_argument("property", help="HP, JEP, AP or all")
    sp.add_argument("--max-size", type=int, default=3)
    sp.set_defaults(func=cmd_fraisse)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        text, code = args.func(args)
    except UsageError as exc:
        print(f"obg: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (UnknownEntry, StructureError, OSError) as exc:
        print(f"obg: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (Inconclusive, BudgetExceeded) as exc:
        text, code = f"reason = {exc}\nverdict = inconclusive\n", EXIT["inconclusive"]
    except OBGError as exc:
        print(f"obg: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    sys.stdout.write(text)
    if getattr(args, "out", None):
        try:
            with open(args.out, "w", encoding="ascii", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"obg: error: {exc}", file=sys.stderr)
            return USAGE_ERROR
    return code


if __name__ == "__main__":
    sys.exit(main())
