import random

import pytest
from hypothesis import given, settings, strategies as st

from divide_forge.divide_model import (
    DivideParseError, branch_decomposition, counts, flip_all, flip_signs, parse_divide, random_divide,
    serialize, validate,
)


def test_parse_unknot(unknot):
    assert unknot.name == "unknot"
    assert unknot.n_chains == 1
    assert [c.kind for c in unknot.connectors] == ["end", "end"]


@pytest.mark.parametrize("text, needle", [
    ("chains 2\ncross 1", "cross"),
    ("chains 1\nend 1 bottom 0 x", "sign"),
    ("chains 1\nwibble 1 2", "wibble"),
    ("chains 2\nend 1 bottom 0 -\nend 2 bottom 0 -", "height"),
])
def test_parse_errors_carry_position(text, needle):
    with pytest.raises(DivideParseError) as e:
        parse_divide(text)
    assert "line" in str(e.value)


def test_counts(unknot, alpha):
    c = counts(unknot)
    assert (c.n, c.delta, c.m, c.e1, c.t3, c.euler_G) == (1, 0, 0, 2, 0, 1)
    c = counts(alpha)
    assert (c.n, c.delta, c.m, c.e1, c.t3, c.euler_G) == (2, 1, 1, 2, 0, 1)
    assert 2 * c.n == c.v + 2 * c.m


def test_validate_reports_unconsumed_end():
    d = parse_divide("chains 2\nend 1 bottom 0 -\ncross 1 3\nend 1 top 5 -\n")
    rep = validate(d)
    assert not rep.ok
    assert any("rank 2" in line for line in rep.lines())


def test_branches(unknot, circle):
    (b,) = branch_decomposition(unknot)
    assert b.kind == "interval" and b.euler == 1
    (b,) = branch_decomposition(circle)
    assert b.kind == "circle" and not b.vertices


def test_flip_branch(alpha):
    flipped = flip_signs(alpha, [1])
    ends = [c.sign for c in flipped.connectors if c.kind == "end"]
    assert ends == [1, 1]
    assert flip_all(flipped) == alpha


def test_serialize_roundtrip(alpha):
    assert parse_divide(serialize(alpha)).connectors == alpha.connectors


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 12))
def test_random_divides_are_valid(seed, size):
    d = random_divide(random.Random(seed), max_connectors=size)
    assert validate(d).ok
    c = counts(d)
    assert 2 * c.n == c.v + 2 * c.m
    assert sum(len(b.arcs) for b in c.branches) == sum(1 for b in c.branches for _ in b.arcs)
    assert parse_divide(serialize(d)).connectors == d.connectors


def test_random_divide_rejects_tiny_budget():
    with pytest.raises(ValueError):
        random_divide(random.Random(0), max_connectors=1)
