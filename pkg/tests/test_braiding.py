import random

from hypothesis import given, settings, strategies as st

from divide_forge import band_word, braid_index_bound, closure_diagram, counts, jones, link_of_graph_divide
from divide_forge.braiding import is_quasipositive_syntactic, is_strongly_quasipositive_syntactic
from divide_forge.braids import Band, BandWord, BraidWord, parse_braid
from divide_forge.divide_model import random_divide


def test_unknot_word(unknot):
    bw = band_word(unknot)
    assert (bw.n, bw.k) == (1, 0)
    assert braid_index_bound(unknot) == 1


def test_alpha_word(alpha):
    bw = band_word(alpha)
    assert bw.flatten().letters == (1, 1, 1)
    assert braid_index_bound(alpha) == 2


def test_parse_and_format_braid():
    w = parse_braid("s1 s4 s4' s3")
    assert w.letters == (1, 4, -4, 3) and w.n == 5
    assert parse_braid(w.text(), 5) == w


def test_syntactic_checks():
    assert is_quasipositive_syntactic(BandWord(4, (Band((3, -2), 1), Band((), 2))))
    assert not is_quasipositive_syntactic(BandWord(3, (Band((), -1),)))
    embedded = BandWord(4, (Band((3, 2), 1),))
    assert is_strongly_quasipositive_syntactic(embedded)
    assert not is_strongly_quasipositive_syntactic(BandWord(4, (Band((-3, 2), 1),)))
    assert is_strongly_quasipositive_syntactic(BraidWord(2, (1, 1)))


def test_band_letters_are_conjugates():
    b = Band((3, -2), 1)
    assert b.letters() == (3, -2, 1, 2, -3)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_band_word_accounting(seed):
    d = random_divide(random.Random(seed), max_connectors=8)
    c = counts(d)
    bw = band_word(d)
    assert bw.n == c.n
    assert bw.k == 2 * c.delta + c.m + c.t3
    assert is_quasipositive_syntactic(bw)
    assert braid_index_bound(d) == (c.v + 2 * c.m) // 2 == c.n


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_band_word_closure_matches_pipeline_a(seed):
    d = random_divide(random.Random(seed), max_connectors=7)
    assert jones(closure_diagram(band_word(d))) == jones(link_of_graph_divide(d))
