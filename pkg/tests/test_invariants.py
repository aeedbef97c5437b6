import random

import pytest
from hypothesis import given, settings, strategies as st

from divide_forge import (
    band_word, clasp_number_4d, closure_diagram, determinant, double, embed, flip_all, flip_signs, invariant_report,
    jones, link_of_graph_divide, parse_braid, simplify, slice_euler_characteristic,
)
from divide_forge.diagram import LinkDiagram, relabel
from divide_forge.divide_model import branch_decomposition, random_divide
from divide_forge.invariants import bracket_naive, determinant_from_jones, kauffman_bracket
from divide_forge.poly import LaurentPoly

import oracles
from conftest import load


def as_key(p: LaurentPoly) -> dict:
    return p.as_dict()


def test_right_trefoil_convention():
    assert as_key(jones(closure_diagram(parse_braid("s1 s1 s1")))) == oracles.RIGHT_TREFOIL


def test_crossingless_unknot():
    assert jones(LinkDiagram((), (), 1)) == LaurentPoly.one()
    assert determinant(LinkDiagram((), (), 1)) == 1


@pytest.mark.parametrize("word, n", [
    ("s1 s1 s1", 2), ("s1 s2' s1 s2'", 3), ("s1 s1 s1 s2 s1' s2", 3), ("s1 s1", 2),
    ("s1 s2 s3 s1' s2 s3'", 4), ("s1 s1 s1 s2 s1' s1' s1' s2", 3),
])
def test_jones_matches_state_sum_oracle(word, n):
    w = parse_braid(word, n)
    assert as_key(jones(closure_diagram(w))) == oracles.braid_jones(n, w.letters)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=9))
def test_sweep_bracket_equals_naive(letters):
    from divide_forge.braids import BraidWord

    diag = closure_diagram(BraidWord(4, tuple(letters)))
    assert kauffman_bracket(diag) == bracket_naive(diag)
    assert as_key(jones(diag, reduce=False)) == oracles.jones_oracle(diag.crossings, diag.signs, diag.free_loops)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=10))
def test_simplify_and_relabel_preserve_jones(letters):
    from divide_forge.braids import BraidWord

    diag = closure_diagram(BraidWord(3, tuple(letters)))
    v = jones(diag, reduce=False)
    assert jones(simplify(diag), reduce=False) == v
    assert jones(relabel(diag), reduce=False) == v
    assert len(simplify(diag)) <= len(diag)


def test_determinant_from_jones():
    assert determinant_from_jones(LaurentPoly.from_dict(oracles.MIRROR_8_21)) == 15
    assert determinant_from_jones(LaurentPoly.from_dict(oracles.POSITIVE_HOPF)) == 2


def test_unknot_divide(unknot):
    rep = invariant_report(unknot)
    assert rep.jones == LaurentPoly.one()
    assert (rep.determinant, rep.components, rep.chi_s, rep.clasp_exact, rep.braid_index_bound) == (1, 1, 1, 0, 1)


def test_alpha_report(alpha):
    rep = invariant_report(alpha)
    assert as_key(rep.jones) == oracles.RIGHT_TREFOIL
    assert (rep.chi_s, rep.clasp_exact, rep.braid_index_bound) == (-1, 1, 2)


def test_circle_is_positive_hopf_link(circle):
    diag = link_of_graph_divide(circle)
    assert diag.n_components == 2
    assert as_key(jones(diag)) == oracles.POSITIVE_HOPF
    cb = clasp_number_4d(circle)
    assert cb.exact is None and cb.lower == 1 and cb.upper is None


def test_tails_inside_divide_gives_both_knots():
    d = load("tails_inside.div")
    assert as_key(jones(link_of_graph_divide(d))) == oracles.MIRROR_5_2
    (b,) = branch_decomposition(d)
    first = min(i for i, c in enumerate(d.connectors) if c.kind == "end")
    odd = d.with_connectors(
        c.__class__(c.kind, c.ranks, c.h, c.side, -c.sign) if i == first else c for i, c in enumerate(d.connectors)
    )
    assert as_key(jones(link_of_graph_divide(odd))) == oracles.RIGHT_TREFOIL


@pytest.mark.parametrize("name", ["unknot.div", "alpha_even.div", "tails_inside.div", "circle.div"])
def test_pipeline_a_matches_s3_projection(name):
    d = load(name)
    q = double(embed(d))
    ref = oracles.tangent_link_diagram(q.curves)
    assert as_key(jones(link_of_graph_divide(d))) == oracles.jones_oracle(*_small(ref))


def _small(diag):
    diag = simplify(diag)
    assert len(diag) <= 16
    return diag.crossings, diag.signs, diag.free_loops


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_flip_properties(seed):
    d = random_divide(random.Random(seed), max_connectors=7)
    v = jones(link_of_graph_divide(d))
    assert jones(link_of_graph_divide(flip_all(d))) == v
    det = determinant_from_jones(v)
    chi = slice_euler_characteristic(d)
    for b in branch_decomposition(d):
        f = flip_signs(d, [b.id])
        assert determinant_from_jones(jones(link_of_graph_divide(f))) == det
        assert slice_euler_characteristic(f) == chi


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_slice_knots_are_trivial(seed):
    d = random_divide(random.Random(seed), max_connectors=8)
    diag = link_of_graph_divide(d)
    if diag.n_components == 1 and slice_euler_characteristic(d) == 1:
        assert jones(diag) == LaurentPoly.one()


def test_chi_s_two_ways(alpha):
    bw = band_word(alpha)
    assert slice_euler_characteristic(alpha) == bw.n - bw.k == -1
