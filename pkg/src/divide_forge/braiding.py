"""Pipeline B: the quasipositive band word of a graph divide.

Each rank of the tangle position carries a disk whose boundary is one
strand of a closed braid.  Reading a disk boundary up its left side and down
its right side gives a cyclic time; bands are emitted in that order.

  cross i       two bands s_i, one low on the ascending side and one on the
                descending side
  cap/cup i j   one band joining disks i and j at the fold height
  ycap/ycup     an extremum band (mid, j) and a vertex band (i, mid), both
                on the descending side; their order depends on the sign

A band joining i < j passes the disks strictly between them.  Over or under
is decided by what the band sees at that height, which is the terminator of
the passed chain: a hairpin, a loop, or a leg of a nested fold or Y.
"""
from __future__ import annotations

from .braids import Band, BandWord, BraidWord, closure_diagram, format_letters, parse_braid
from .divide_model import GraphDivide, counts, end_heights, require_valid

__all__ = [
    "Band", "BandWord", "BraidWord", "band_word", "closure_diagram", "braid_index_bound",
    "is_quasipositive_syntactic", "is_strongly_quasipositive_syntactic", "parse_braid",
    "format_letters",
]

# letters seen by a cap passing over a chain end; cups see the negatives
_CAP_LETTER = {
    ("end", -1): -1,
    ("end", 1): 1,
    ("fold", 0): -1,  # left leg of a nested fold
    ("fold", 1): 1,
    ("y", 0): 1,
    ("y", 2): -1,
}


def _passing_letter(term, rank: int, up: bool) -> int:
    kind = term.kind
    if kind == "boundary":
        v = _CAP_LETTER[("end", -1)]
    elif kind == "end":
        v = _CAP_LETTER[("end", term.sign)]
    elif kind in ("cap", "cup"):
        v = _CAP_LETTER[("fold", term.ranks.index(rank))]
    else:
        leg = term.ranks.index(rank)
        v = -term.sign if leg == 1 else _CAP_LETTER[("y", leg)]
    return v if up else -v


def _band(i: int, j: int, letter) -> Band:
    return Band(tuple(k * letter(k) for k in range(j - 1, i, -1)), i)


def band_word(d: GraphDivide) -> BandWord:
    require_valid(d)
    used = end_heights(d)
    items = []  # (cyclic key, band)
    for c in d.connectors:
        h = c.h
        if c.kind == "cross":
            i = c.ranks[0]
            items.append(((0, h, 0), Band((), i)))
            items.append(((1, -h, 0), Band((), i)))
            continue
        if c.kind in ("end", "boundary"):
            continue
        up = c.kind in ("cap", "ycap")
        side = "top" if up else "bottom"

        def letter(k, up=up, side=side):
            return _passing_letter(used[(k, side)][0], k, up)

        if c.kind in ("cap", "cup"):
            i, j = c.ranks
            items.append(((0, h, 0), _band(i, j, letter)))
        else:
            i, mid, j = c.ranks
            ext_first = (c.sign == -1) == up
            items.append(((1, -h, -1 if ext_first else 1), _band(mid, j, letter)))
            items.append(((1, -h, 1 if ext_first else -1), _band(i, mid, letter)))
    items.sort(key=lambda x: x[0])
    return BandWord(d.n_chains, tuple(b for _, b in items))


def braid_index_bound(d: GraphDivide) -> int:
    c = counts(d)
    return (c.v + 2 * c.m) // 2


def is_quasipositive_syntactic(b) -> bool:
    if isinstance(b, BraidWord):
        return all(x > 0 for x in b.letters)
    return all(band.core > 0 and abs(band.core) < b.n for band in b.bands)


def is_strongly_quasipositive_syntactic(b) -> bool:
    """Every band is an embedded positive band: conj = s_{j-1} ... s_{i+1}
    (positive letters, consecutive, descending) around core s_i, or empty."""
    if isinstance(b, BraidWord):
        return all(x > 0 for x in b.letters)
    for band in b.bands:
        conj = band.conj
        if not conj:
            continue
        expect = tuple(range(band.core + len(conj), band.core, -1))
        if conj != expect:
            return False
    return True
