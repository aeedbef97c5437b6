"""Acceptance criteria, one test each.  Every test records a PASS/FAIL line;
the lines are printed at the end of the pytest run and when this file is
executed directly."""
from __future__ import annotations

import math
import random
import sys
import time
from functools import lru_cache
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from divide_forge import (  # noqa: E402
    band_word, braid_index_bound, clasp_number_4d, closure_diagram, counts, flip_all, flip_signs,
    gibson_tree_to_graph_divide, jones, link_of_graph_divide, parse_braid, parse_tree, positive_braid_to_divide,
    slice_euler_characteristic,
)
from divide_forge.braiding import is_quasipositive_syntactic  # noqa: E402
from divide_forge.divide_model import branch_decomposition, random_divide  # noqa: E402
from divide_forge.invariants import determinant_from_jones  # noqa: E402
from divide_forge.poly import LaurentPoly  # noqa: E402

import oracles  # noqa: E402
from conftest import ACCEPTANCE_LINES, data_text, load  # noqa: E402

ONE = LaurentPoly.one()


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def both(d):
    """Jones polynomial by the doubling pipeline and by the band word."""
    return jones(link_of_graph_divide(d)), jones(closure_diagram(band_word(d)))


def key(p: LaurentPoly) -> dict:
    return p.as_dict()


@lru_cache(maxsize=None)
def fuzz_corpus(seed=1, count=200, size=8):
    rng = random.Random(seed)
    return tuple(
        random_divide(rng, max_connectors=size, max_ranks=rng.randint(1, 6), name=f"fuzz-{i}") for i in range(count)
    )


def random_trees(count, seed=11, size=12):
    rng = random.Random(seed)
    out = []
    kinds = ("cap", "cup", "ycap", "ycup", "end", "boundary")
    while len(out) < count:
        d = random_divide(rng, max_connectors=size, kinds=kinds)
        bs = branch_decomposition(d)
        if len(bs) == 1 and bs[0].kind in ("interval", "tree"):
            out.append(d)
    return out


def test_1_unknot_suite():
    trees = random_trees(50)
    t0 = time.perf_counter()
    bad = []
    for d in trees:
        a, b = both(d)
        if not (a == b == ONE and determinant_from_jones(a) == 1):
            bad.append(d.name)
    dt = time.perf_counter() - t0
    with_y = sum(1 for d in trees if counts(d).t3)
    ok = not bad and dt < 5 and all(counts(d).delta == 0 for d in trees)
    report(1, ok, f"{len(trees) - len(bad)}/50 tree divides ({with_y} with Y vertices) give the unknot in both pipelines, {dt:.2f}s")
    assert ok


def test_2_alpha_pair():
    want = {tuple(sorted(oracles.RIGHT_TREFOIL.items())), tuple(sorted(oracles.MIRROR_5_2.items()))}
    got, agree = set(), True
    for name in ("alpha_even.div", "alpha_odd.div"):
        a, b = both(load(name))
        agree &= a == b
        got.add(tuple(sorted(key(a).items())))
    names = {tuple(sorted(oracles.RIGHT_TREFOIL.items())): "right trefoil", tuple(sorted(oracles.MIRROR_5_2.items())): "mirror 5_2"}
    seen = sorted(names.get(g, "other") for g in got)
    tails = [key(both(load("tails_inside.div"))[0])]
    ok = agree and got == want
    report(2, ok, f"alpha even/odd give {seen}, pipelines agree={agree}; "
                  f"the tails-inside divide gives mirror 5_2={tails[0] == oracles.MIRROR_5_2} (see notes)")
    assert ok


def test_3_mirror_8_21():
    # the knot itself: the worked band word closes up to mirror 8_21
    w = parse_braid("s1 s4 s4' s3 s2 s3' s4 s1 s3 s4' s3' s2 s3 s4", 5)
    word_ok = oracles.braid_jones(5, w.letters) == oracles.MIRROR_8_21 == key(jones(closure_diagram(w)))
    try:
        d = load("fish_8_21.div")
    except FileNotFoundError:
        report(3, False, f"no divide transcription reproduces mirror 8_21 at n=5, k=6 "
                         f"(reference word closure checks out: {word_ok}); see notes")
        assert False, "8_21 divide not available"
    a, b = both(d)
    c = counts(d)
    bw = band_word(d)
    cb = clasp_number_4d(d)
    parts = {
        "a": key(a) == key(b) == oracles.MIRROR_8_21,
        "b": determinant_from_jones(a) == 15,
        "c": (bw.n, bw.k) == (5, 6) and is_quasipositive_syntactic(bw),
        "d": slice_euler_characteristic(d) == c.euler_G - 2 * c.delta == bw.n - bw.k == -1,
        "e": cb.exact == 1,
        "f": braid_index_bound(d) == 5,
    }
    ok = all(parts.values())
    report(3, ok, " ".join(f"({k}) {'ok' if v else 'no'}" for k, v in parts.items()))
    assert ok


def test_4_positive_braids():
    lines, ok = [], True
    for word, n in (("s1 s1 s1", 2), ("s1 s1 s2 s1 s2 s1 s1 s2 s2 s2", 3)):
        t0 = time.perf_counter()
        w = parse_braid(word, n)
        d = positive_braid_to_divide(w)
        v = jones(link_of_graph_divide(d))
        dt = time.perf_counter() - t0
        c = counts(d)
        chi = slice_euler_characteristic(d)
        good = (
            key(v) == oracles.braid_jones(n, w.letters)
            and c.delta == 0
            and chi == n - len(w.letters)
            and dt < 30
        )
        ok &= good
        lines.append(f"{len(w.letters)} letters: Jones match={good}, chi_s={chi}, {dt:.1f}s")
    report(4, ok, "; ".join(lines))
    assert ok


def test_5_differential_fuzz():
    t0 = time.perf_counter()
    bad = 0
    for d in fuzz_corpus():
        c = counts(d)
        bw = band_word(d)
        a = jones(link_of_graph_divide(d))
        b = jones(closure_diagram(bw))
        if not (
            a == b
            and 2 * c.n == c.v + 2 * c.m
            and bw.k == 2 * c.delta + c.m + c.t3
            and bw.n - bw.k == c.euler_G - 2 * c.delta
        ):
            bad += 1
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 600
    report(5, ok, f"{200 - bad}/200 random divides agree on Jones and on all three identities, {dt:.1f}s")
    assert ok


def test_6_sign_flips():
    checked = bad = 0
    for d in fuzz_corpus()[:100]:
        v = jones(link_of_graph_divide(d))
        det = determinant_from_jones(v)
        chi = slice_euler_characteristic(d)
        if jones(link_of_graph_divide(flip_all(d))) != v:
            bad += 1
        for b in branch_decomposition(d):
            f = flip_signs(d, [b.id])
            checked += 1
            if determinant_from_jones(jones(link_of_graph_divide(f))) != det or slice_euler_characteristic(f) != chi:
                bad += 1
    ok = bad == 0
    report(6, ok, f"100 divides: full flip keeps Jones, {checked} single-branch flips keep det and chi_s, {bad} violations")
    assert ok


def test_7_slice_implies_trivial():
    slice_knots = bad = 0
    for d in fuzz_corpus():
        diag = link_of_graph_divide(d)
        if diag.n_components == 1 and slice_euler_characteristic(d) == 1:
            slice_knots += 1
            if jones(diag) != ONE:
                bad += 1
    w = parse_braid("s1 s1 s1 s2 s1' s1' s1' s2", 3)
    v = jones(closure_diagram(w))
    det = determinant_from_jones(v)
    square = math.isqrt(det) ** 2 == det
    ok = bad == 0 and slice_knots > 0 and square and v != ONE and key(v) == oracles.braid_jones(3, w.letters)
    report(7, ok, f"{slice_knots} fuzzed knots with chi_s=1 all trivial; mirror 8_20 closure det={det} (square), Jones != 1")
    assert ok


def test_8_gibson():
    plain = "chains 3\nend 2 bottom 1\nycap 1 2 3 5\nend 1 bottom 2\nend 3 bottom 3\n"
    signs = {c.sign for c in gibson_tree_to_graph_divide(parse_tree(plain)).connectors if c.sign is not None}
    inputs = {
        "tree_marks": data_text("tree_marks.tree"),
        "vertex_marks": "chains 3\nend 2 bottom 1\nend 1 bottom 2\nend 3 bottom 3\nycap 1 2 3 9\n"
                        "deg2 1 6\ndeg2 2 7\ndeg2 3 8\n",
        "with_isolated": data_text("tree_marks.tree") + "isolated 4\n",
        "long_path": "chains 3\nend 1 bottom 1\ncup 2 3 2\ncap 1 2 8\nend 3 top 9\ndeg2 1 3\ndeg2 2 4\ndeg2 3 5\n",
    }
    stable = True
    for name, src in inputs.items():
        t = parse_tree(src)
        dets = {determinant_from_jones(jones(link_of_graph_divide(gibson_tree_to_graph_divide(t, seed=s))))
                for s in range(10)}
        stable &= len(dets) == 1
    ok = signs == {-1} and stable
    report(8, ok, f"unmarked tree signs {sorted(signs)}; determinant seed-independent over 10 seeds on {len(inputs)} inputs: {stable}")
    assert ok


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
