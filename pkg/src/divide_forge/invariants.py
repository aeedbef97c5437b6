"""Kauffman bracket, Jones polynomial, determinant and diagram reduction,
plus the four-dimensional invariants of graph divides."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

from .diagram import LinkDiagram, remove_crossings
from .poly import LaurentPoly, poly_add_into, poly_divexact, poly_mul

LOOP = {2: -1, -2: -1}  # d = -A^2 - A^-2


def _smoothings(cr):
    a, b, c, d = cr
    # A-smoothing joins (a,b),(c,d); B-smoothing joins (a,d),(b,c)
    return ((1, ((a, b), (c, d))), (-1, ((a, d), (b, c))))


def sweep_order(diag: LinkDiagram) -> list[int]:
    """Greedy crossing order keeping the set of open arcs small."""
    n = len(diag.crossings)
    where: dict[int, list[int]] = {}
    for ci, cr in enumerate(diag.crossings):
        for lab in cr:
            where.setdefault(lab, []).append(ci)
    done = [False] * n
    order: list[int] = []
    open_count: dict[int, int] = {}
    score = [0] * n  # number of slots whose label is currently open
    for _ in range(n):
        best, bkey = -1, None
        cand = {ci for lab in open_count for ci in where[lab] if not done[ci]}
        if not cand:
            cand = {next(i for i in range(n) if not done[i])}
        for ci in cand:
            key = (-(2 * score[ci] - 4), ci)
            if bkey is None or key < bkey:
                best, bkey = ci, key
        done[best] = True
        order.append(best)
        for lab in diag.crossings[best]:
            if lab in open_count:
                open_count[lab] -= 1
                if open_count[lab] == 0:
                    del open_count[lab]
                    for cj in where[lab]:
                        if not done[cj]:
                            score[cj] -= 1
            else:
                open_count[lab] = 1
                for cj in where[lab]:
                    if not done[cj]:
                        score[cj] += 1
        # labels occurring twice in `best` are already closed
        for lab in set(diag.crossings[best]):
            if diag.crossings[best].count(lab) == 2:
                open_count.pop(lab, None)
    return order


def _join(m: dict[int, int], x: int, y: int) -> int:
    """Add a path x--y to the open-path matching m.  Returns loops closed."""
    if x == y:
        return 1
    a_end = x
    if x in m:
        px = m.pop(x)
        del m[px]
        if px == y:
            return 1
        a_end = px
    b_end = y
    if y in m:
        py = m.pop(y)
        del m[py]
        b_end = py
    m[a_end] = b_end
    m[b_end] = a_end
    return 0


def kauffman_bracket(diag: LinkDiagram, order: Optional[list[int]] = None) -> LaurentPoly:
    """Bracket in A with <O> = 1, by a sweep over noncrossing pairings."""
    if not diag.crossings:
        return LaurentPoly.from_dict(_dpow(diag.free_loops - 1))
    if order is None:
        order = sweep_order(diag)
    states: dict[tuple, dict[int, int]] = {(): {0: 1}}
    for ci in order:
        cr = diag.crossings[ci]
        nxt: dict[tuple, dict[int, int]] = {}
        for key, poly in states.items():
            for expo, pairs in _smoothings(cr):
                m: dict[int, int] = {}
                for p, q in key:
                    m[p] = q
                    m[q] = p
                loops = 0
                for x, y in pairs:
                    loops += _join(m, x, y)
                nkey = tuple(sorted((p, q) for p, q in m.items() if p < q))
                term = {e + expo: c for e, c in poly.items()}
                if loops:
                    term = poly_mul(term, _dpow(loops))
                acc = nxt.setdefault(nkey, {})
                poly_add_into(acc, term)
        states = {k: v for k, v in nxt.items() if v}
    total = states.get((), {})
    total = poly_divexact(total, LOOP) if total else {}
    total = poly_mul(total, _dpow(diag.free_loops))
    return LaurentPoly.from_dict(total)


_DP: dict[int, dict[int, int]] = {0: {0: 1}}


def _dpow(k: int) -> dict[int, int]:
    if k < 0:
        raise ValueError("negative loop power")
    if k not in _DP:
        _DP[k] = poly_mul(_dpow(k - 1), LOOP)
    return _DP[k]


def bracket_naive(diag: LinkDiagram) -> LaurentPoly:
    """Independent oracle: enumerate all 2^c states with union-find."""
    n = len(diag.crossings)
    if n > 16:
        raise ValueError("naive bracket limited to 16 crossings")
    labels = sorted({lab for cr in diag.crossings for lab in cr})
    idx = {lab: i for i, lab in enumerate(labels)}
    total: dict[int, int] = {}
    for bits in itertools.product((0, 1), repeat=n):
        parent = list(range(len(labels)))

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        expo = 0
        for bit, (a, b, c, d) in zip(bits, diag.crossings):
            if bit == 0:
                expo += 1
                links = ((a, b), (c, d))
            else:
                expo -= 1
                links = ((a, d), (b, c))
            for u, v in links:
                ru, rv = find(idx[u]), find(idx[v])
                if ru != rv:
                    parent[ru] = rv
        loops = len({find(i) for i in range(len(labels))}) + diag.free_loops
        poly_add_into(total, poly_mul({expo: 1}, _dpow(loops - 1)))
    if n == 0:
        total = _dpow(diag.free_loops - 1)
    return LaurentPoly.from_dict(total)


def jones_from_bracket(br: LaurentPoly, writhe: int) -> LaurentPoly:
    """V(t) = (-A^3)^(-w) <D> with A = t^(-1/4); keys are 2*exponent."""
    sign = -1 if writhe % 2 else 1
    out = {}
    for e, c in br.terms:
        ae = e - 3 * writhe
        if ae % 2:
            raise ArithmeticError("odd A-exponent in normalized bracket")
        out[-ae // 2] = sign * c
    return LaurentPoly.from_dict(out)


def jones(diag: LinkDiagram, reduce: bool = True) -> LaurentPoly:
    if reduce:
        diag = simplify(diag)
    return jones_from_bracket(kauffman_bracket(diag), diag.writhe)


def determinant_from_jones(v: LaurentPoly) -> int:
    re = im = 0
    for e, c in v.terms:
        r = e % 4  # i^e
        if r == 0:
            re += c
        elif r == 1:
            im += c
        elif r == 2:
            re -= c
        else:
            im -= c
    sq = re * re + im * im
    root = math.isqrt(sq)
    if root * root != sq:
        raise ArithmeticError("|V(-1)| is not an integer")
    return root


def determinant(diag: LinkDiagram) -> int:
    return determinant_from_jones(jones(diag))


# -- Reidemeister reduction ----------------------------------------------

def _r1_set(diag: LinkDiagram) -> set[int]:
    return {ci for ci, cr in enumerate(diag.crossings) if any(cr[s] == cr[(s + 1) % 4] for s in range(4))}


def _r2_pairs(diag: LinkDiagram) -> set[int]:
    """Crossings of pairwise disjoint Reidemeister II bigons."""
    where: dict[int, list[tuple[int, int]]] = {}
    for ci, cr in enumerate(diag.crossings):
        for s, lab in enumerate(cr):
            where.setdefault(lab, []).append((ci, s))
    taken: set[int] = set()
    for x in sorted(where):
        (c1, s1), (c2, s2) = where[x]
        if c1 == c2 or c1 in taken or c2 in taken:
            continue
        # x must be the over arc at both ends (odd slots) ...
        if s1 % 2 == 0 or s2 % 2 == 0:
            continue
        cr1, cr2 = diag.crossings[c1], diag.crossings[c2]
        # ... and share a bigon face with an under arc y
        for d1 in (1, -1):
            y = cr1[(s1 + d1) % 4]
            if y != x and cr2[(s2 - d1) % 4] == y:
                taken |= {c1, c2}
                break
    return taken


def simplify(diag: LinkDiagram) -> LinkDiagram:
    """Greedy Reidemeister I/II reduction, removing independent moves in
    batches."""
    while True:
        drop = _r1_set(diag)
        if drop:
            # a kink whose loop holds another kink: drop the inner one first
            diag = remove_crossings(diag, {min(drop)}) if len(drop) > 1 and _nested(diag, drop) else remove_crossings(diag, drop)
            continue
        drop = _r2_pairs(diag)
        if drop:
            diag = remove_crossings(diag, drop)
            continue
        return diag


def _nested(diag, drop) -> bool:
    labs = [lab for ci in drop for lab in set(diag.crossings[ci])]
    return len(labs) != len(set(labs))


# -- invariants of graph divides -------------------------------------------

def slice_euler_characteristic(d) -> int:
    from .braiding import band_word
    from .divide_model import counts

    c = counts(d)
    chi = c.euler_G - 2 * c.delta
    bw = band_word(d)
    if bw.n - bw.k != chi:
        raise AssertionError(f"chi_s mismatch: formula {chi}, n-k {bw.n - bw.k}")
    return chi


@dataclass(frozen=True)
class ClaspBound:
    lower: int
    upper: Optional[int]  # None: no upper bound known (non-tree branches)
    exact: Optional[int] = None


def clasp_number_4d(d, components: Optional[int] = None) -> ClaspBound:
    from .divide_model import branch_decomposition, counts

    c = counts(d)
    kinds = {b.kind for b in branch_decomposition(d)}
    if kinds <= {"interval", "tree"}:
        return ClaspBound(c.delta, c.delta, c.delta)
    if components is None:
        from .hirasawa import link_of_graph_divide

        components = link_of_graph_divide(d).n_components
    chi = c.euler_G - 2 * c.delta
    lower = max(0, -((chi - components) // 2))  # ceil((r - chi)/2)
    return ClaspBound(lower, None, None)


@dataclass(frozen=True)
class InvariantReport:
    jones: LaurentPoly
    determinant: int
    components: int
    chi_s: int
    clasp_lower: int
    clasp_upper: Optional[int]
    clasp_exact: Optional[int]
    braid_index_bound: int

    def to_json(self) -> dict:
        return {
            "jones": self.jones.to_json(),
            "determinant": self.determinant,
            "components": self.components,
            "chi_s": self.chi_s,
            "clasp": {"lower": self.clasp_lower, "upper": self.clasp_upper, "exact": self.clasp_exact},
            "braid_index_bound": self.braid_index_bound,
        }


def invariant_report(d) -> InvariantReport:
    from .braiding import braid_index_bound
    from .hirasawa import link_of_graph_divide

    diag = link_of_graph_divide(d)
    v = jones(diag)
    r = diag.n_components
    cb = clasp_number_4d(d, components=r)
    return InvariantReport(
        jones=v,
        determinant=determinant_from_jones(v),
        components=r,
        chi_s=slice_euler_characteristic(d),
        clasp_lower=cb.lower,
        clasp_upper=cb.upper,
        clasp_exact=cb.exact,
        braid_index_bound=braid_index_bound(d),
    )
