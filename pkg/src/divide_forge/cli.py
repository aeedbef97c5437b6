"""divide-forge command line.

Exit codes: 0 ok, 1 parse or I/O error, 2 invalid divide, 3 crosscheck
mismatch.
"""
from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from dataclasses import dataclass

from .braiding import band_word, is_quasipositive_syntactic, is_strongly_quasipositive_syntactic
from .braids import closure_diagram, parse_braid
from .converters import TreeInputError, gibson_tree_to_graph_divide, parse_tree, positive_braid_to_divide
from .divide_model import (
    DivideCounts, DivideParseError, GraphDivide, InvalidDivide, counts, parse_divide, random_divide,
    serialize, validate,
)
from .doubling import double, double_point_census
from .hirasawa import link_of_graph_divide
from .invariants import invariant_report, jones
from .layout import embed, render_svg
from .poly import LaurentPoly

EXIT_PARSE, EXIT_INVALID, EXIT_MISMATCH = 1, 2, 3


class CliError(Exception):
    def __init__(self, msg, code):
        super().__init__(msg)
        self.code = code


@dataclass(frozen=True)
class CrosscheckResult:
    name: str
    jones_A: LaurentPoly
    jones_B: LaurentPoly
    counts: DivideCounts
    chi_formula: int
    chi_nk: int

    @property
    def equal(self) -> bool:
        return self.jones_A == self.jones_B

    @property
    def chi_agree(self) -> bool:
        return self.chi_formula == self.chi_nk

    @property
    def ok(self) -> bool:
        c = self.counts
        return self.equal and self.chi_agree and 2 * c.n == c.v + 2 * c.m

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "jones_A": self.jones_A.to_json(),
            "jones_B": self.jones_B.to_json(),
            "equal": self.equal,
            "counts": self.counts.to_json(),
            "chi_s": {"formula": self.chi_formula, "n_minus_k": self.chi_nk, "agree": self.chi_agree},
        }

    def line(self) -> str:
        tag = "ok" if self.ok else "MISMATCH"
        return f"{tag} {self.name}: A={self.jones_A} B={self.jones_B} chi_s={self.chi_formula}/{self.chi_nk}"


def crosscheck(d: GraphDivide) -> CrosscheckResult:
    c = counts(d)
    bw = band_word(d)
    return CrosscheckResult(
        name=d.name,
        jones_A=jones(link_of_graph_divide(d)),
        jones_B=jones(closure_diagram(bw)),
        counts=c,
        chi_formula=c.euler_G - 2 * c.delta,
        chi_nk=bw.n - bw.k,
    )


def shrink(d: GraphDivide, failing) -> GraphDivide:
    """Greedy: drop one or two connectors while the divide stays valid and
    `failing` still holds."""
    progress = True
    while progress:
        progress = False
        conns = d.connectors
        idx = range(len(conns))
        for drop in itertools.chain(((i,) for i in idx), itertools.combinations(idx, 2)):
            cand = d.with_connectors(c for i, c in enumerate(conns) if i not in drop)
            if not cand.connectors or not validate(cand).ok:
                continue
            if failing(cand):
                d, progress = cand, True
                break
    return d


def fuzz(seed: int, count: int, size: int) -> tuple[list[CrosscheckResult], list[GraphDivide]]:
    rng = random.Random(seed)
    results, shrunk = [], []
    for i in range(count):
        d = random_divide(rng, max_connectors=size, max_ranks=rng.randint(1, 6), name=f"fuzz-{seed}-{i}")
        r = crosscheck(d)
        results.append(r)
        if not r.ok:
            shrunk.append(shrink(d, lambda x: not crosscheck(x).ok))
    return results, shrunk


# -- plumbing ------------------------------------------------------------------

def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise CliError(f"{path}: {e.strerror}", EXIT_PARSE) from None


def _load(path: str) -> GraphDivide:
    try:
        d = parse_divide(_read(path))
    except DivideParseError as e:
        raise CliError(f"{path}: {e}", EXIT_PARSE) from None
    rep = validate(d)
    if not rep.ok:
        raise CliError(f"{path}: invalid divide\n  " + "\n  ".join(rep.lines()), EXIT_INVALID)
    return d


def _write_svg(args, obj):
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as f:
            f.write(render_svg(obj))


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_validate(args) -> int:
    try:
        d = parse_divide(_read(args.file))
    except DivideParseError as e:
        raise CliError(f"{args.file}: {e}", EXIT_PARSE) from None
    rep = validate(d)
    payload = {"name": d.name, "ok": rep.ok, "violations": rep.lines()}
    if rep.ok:
        payload["counts"] = counts(d).to_json()
    _emit(args, payload, "valid" if rep.ok else "invalid\n" + "\n".join(rep.lines()))
    return 0 if rep.ok else EXIT_INVALID


def cmd_render(args) -> int:
    d = _load(args.file)
    svg = render_svg(embed(d))
    if args.svg:
        _write_svg(args, d)
    else:
        sys.stdout.write(svg)
    return 0


def cmd_double(args) -> int:
    q = double(embed(_load(args.file)))
    _write_svg(args, q)
    census = double_point_census(q)
    _emit(args, {"curves": len(q.curves), "double_points": census},
          f"{len(q.curves)} curves, double points {census}")
    return 0


def cmd_diagram(args) -> int:
    diag = link_of_graph_divide(_load(args.file))
    _write_svg(args, diag)
    if args.json:
        print(json.dumps(diag.to_json(), indent=2, sort_keys=True))
    elif args.pd or not args.svg:
        print(diag.pd_text())
    return 0


def cmd_braid(args) -> int:
    bw = band_word(_load(args.file))
    payload = bw.to_json()
    payload["quasipositive"] = is_quasipositive_syntactic(bw)
    payload["strongly_quasipositive"] = is_strongly_quasipositive_syntactic(bw)
    _emit(args, payload, bw.text())
    return 0


def _report_text(rep) -> str:
    lines = [
        f"jones        {rep.jones}",
        f"determinant  {rep.determinant}",
        f"components   {rep.components}",
        f"chi_s        {rep.chi_s}",
    ]
    if rep.clasp_exact is not None:
        lines.append(f"clasp        {rep.clasp_exact}")
    else:
        hi = "?" if rep.clasp_upper is None else rep.clasp_upper
        lines.append(f"clasp        [{rep.clasp_lower}, {hi}]")
    lines.append(f"braid index  <= {rep.braid_index_bound}")
    return "\n".join(lines)


def cmd_invariants(args) -> int:
    rep = invariant_report(_load(args.file))
    _emit(args, rep.to_json(), _report_text(rep))
    return 0


def cmd_crosscheck(args) -> int:
    r = crosscheck(_load(args.file))
    _emit(args, r.to_json(), r.line())
    return 0 if r.ok else EXIT_MISMATCH


def cmd_from_braid(args) -> int:
    try:
        w = parse_braid(args.word, args.strands)
        d = positive_braid_to_divide(w)
    except ValueError as e:
        raise CliError(str(e), EXIT_PARSE) from None
    _write_svg(args, d)
    sys.stdout.write(serialize(d))
    return 0


def cmd_from_tree(args) -> int:
    try:
        t = parse_tree(_read(args.file))
    except DivideParseError as e:
        raise CliError(f"{args.file}: {e}", EXIT_PARSE) from None
    try:
        d = gibson_tree_to_graph_divide(t, seed=args.seed)
    except (TreeInputError, InvalidDivide) as e:
        raise CliError(f"{args.file}: {e}", EXIT_INVALID) from None
    _write_svg(args, d)
    sys.stdout.write(serialize(d))
    return 0


def cmd_fuzz(args) -> int:
    seed = 1 if args.seed is None else args.seed
    results, shrunk = fuzz(seed, args.count, args.size)
    bad = [r for r in results if not r.ok]
    if args.json:
        print(json.dumps({
            "seed": seed, "count": len(results), "failures": [r.to_json() for r in bad],
            "shrunk": [serialize(d) for d in shrunk],
        }, indent=2, sort_keys=True))
    else:
        for r in bad:
            print(r.line())
        for d in shrunk:
            print("shrunk counterexample:")
            print(serialize(d))
        print(f"{len(results) - len(bad)}/{len(results)} passed (seed {seed})")
    return EXIT_MISMATCH if bad else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="JSON output")
    common.add_argument("--svg", metavar="PATH", default=argparse.SUPPRESS, help="also write an SVG picture")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed")

    p = argparse.ArgumentParser(prog="divide-forge", parents=[common],
                                description="Links of graph divides: diagrams, braids and invariants.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help, file=True):
        sp = sub.add_parser(name, parents=[common], help=help)
        if file:
            sp.add_argument("file", help="divide file, or - for stdin")
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "check a divide file")
    add("render", cmd_render, "SVG of the divide itself")
    add("double", cmd_double, "oriented divide obtained by doubling")
    sp = add("diagram", cmd_diagram, "link diagram (PD code)")
    sp.add_argument("--pd", action="store_true", help="print PD code (default)")
    add("braid", cmd_braid, "quasipositive band word")
    add("invariants", cmd_invariants, "Jones, determinant, chi_s, clasp number")
    add("crosscheck", cmd_crosscheck, "compare the two pipelines")
    sp = add("from-braid", cmd_from_braid, "divide of a positive braid closure", file=False)
    sp.add_argument("word", help='e.g. "s1 s1 s2"')
    sp.add_argument("--strands", type=int, default=None)
    add("from-tree", cmd_from_tree, "signed divide from a tree divide with degree-2 marks")
    sp = add("fuzz", cmd_fuzz, "differential test on random divides", file=False)
    sp.add_argument("--count", type=int, default=200)
    sp.add_argument("--size", type=int, default=8, help="max connectors")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for k, v in (("json", False), ("svg", None), ("seed", None)):
        if not hasattr(args, k):
            setattr(args, k, v)
    try:
        return args.fn(args)
    except CliError as e:
        print(f"divide-forge: {e}", file=sys.stderr)
        return e.code
    except InvalidDivide as e:
        print(f"divide-forge: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
