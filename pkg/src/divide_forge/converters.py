"""Graph divides from other presentations.

positive_braid_to_divide  closed positive braid -> ladder graph divide
gibson_tree_to_graph_divide  tree divide with degree-2 marks -> signed divide
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .braids import BraidWord
from .divide_model import (
    Connector, GraphDivide, boundary, cap, cross, cup, end, require_valid, ycap, ycup,
)


class Sweep:
    """Builds a divide bottom to top on an ordered list of active chains.

    New chains are inserted into a global column order between their active
    neighbours, so folds only ever pass dead (caps) or unborn (cups) columns
    and the result is valid by construction.
    """

    def __init__(self):
        self.columns: list[int] = []  # chain ids, left to right
        self.active: list[int] = []
        self.events: list[tuple] = []
        self._next = 0

    def _new(self, k: int, at: int) -> list[int]:
        ids = list(range(self._next, self._next + k))
        self._next += k
        if at < len(self.active):
            col = self.columns.index(self.active[at])
        else:
            col = len(self.columns)
        self.columns[col:col] = ids
        self.active[at:at] = ids
        return ids

    def _kill(self, ids):
        for c in ids:
            self.active.remove(c)

    def start(self, at: int, sign: int | None) -> int:
        (c,) = self._new(1, at)
        self.events.append(("start", (c,), sign))
        return c

    def stop(self, c: int, sign: int | None):
        self._kill([c])
        self.events.append(("stop", (c,), sign))

    def cup(self, at: int) -> list[int]:
        ids = self._new(2, at)
        self.events.append(("cup", tuple(ids), None))
        return ids

    def ycup(self, at: int, sign: int) -> list[int]:
        ids = self._new(3, at)
        self.events.append(("ycup", tuple(ids), sign))
        return ids

    def cap(self, a: int, b: int):
        self._join("cap", (a, b), None)

    def ycap(self, a: int, b: int, c: int, sign: int):
        self._join("ycap", (a, b, c), sign)

    def _join(self, kind, ids, sign):
        pos = [self.active.index(c) for c in ids]
        if pos != list(range(pos[0], pos[0] + len(ids))):
            raise ValueError(f"{kind} on non-adjacent chains")
        self._kill(ids)
        self.events.append((kind, tuple(ids), sign))

    def cross(self, a: int):
        i = self.active.index(a)
        b = self.active[i + 1]
        ca, cb = self.columns.index(a), self.columns.index(b)
        if cb != ca + 1:
            raise ValueError("crossing chains are not in adjacent columns")
        self.events.append(("cross", (a,), None))

    def divide(self, name: str) -> GraphDivide:
        if self.active:
            raise ValueError("open chains remain")
        rank = {c: i + 1 for i, c in enumerate(self.columns)}
        conns: list[Connector] = []
        for h, (kind, ids, sign) in enumerate(self.events, start=1):
            rs = tuple(rank[c] for c in ids)
            if kind == "start":
                conns.append(end(rs[0], "bottom", h, sign) if sign else boundary(rs[0], "bottom", h))
            elif kind == "stop":
                conns.append(end(rs[0], "top", h, sign) if sign else boundary(rs[0], "top", h))
            elif kind == "cross":
                conns.append(cross(rs[0], h))
            else:
                ctor = {"cup": cup, "cap": cap, "ycup": ycup, "ycap": ycap}[kind]
                conns.append(ctor(*rs, h, sign) if sign else ctor(*rs, h))
        d = GraphDivide(name, len(self.columns), tuple(conns))
        require_valid(d)
        return d


# vertex signs of a rung: left end, right end
RUNG_SIGNS = (1, -1)
END_SIGN = -1


def positive_braid_to_divide(w: BraidWord, name: str = "positive-braid") -> GraphDivide:
    """Ladder divide: one vertical path per strand, one rung per letter.

    A rung between strands i and i+1 is two Y vertices.  The left one is a
    ycup whose left leg caps onto strand i below; its right leg runs over a
    cap into the left leg of the right vertex, whose right leg caps onto
    strand i+1 below.  Both middle legs carry the strands upward.
    """
    if any(x <= 0 for x in w.letters):
        raise ValueError("positive_braid_to_divide needs a positive braid word")
    s = w.n
    sw = Sweep()
    strand = [sw.start(i, END_SIGN) for i in range(s)]
    for x in w.letters:
        p, q = strand[x - 1], strand[x]
        at = sw.active.index(q)
        a, b, c = sw.ycup(at, RUNG_SIGNS[0])
        sw.cap(p, a)
        at = sw.active.index(q)
        d, e, f = sw.ycup(at, RUNG_SIGNS[1])
        sw.cap(c, d)
        sw.cap(f, q)
        strand[x - 1], strand[x] = b, e
    for c in strand:
        sw.stop(c, END_SIGN)
    return sw.divide(name)


# -- tree divides with degree-2 marks ------------------------------------------

class TreeInputError(ValueError):
    pass


@dataclass(frozen=True)
class TreeDivideInput:
    """An unsigned tree divide plus degree-2 marks (rank, height) and
    isolated vertices (height)."""
    divide: GraphDivide
    marks: tuple[tuple[int, int], ...] = ()
    isolated: tuple[int, ...] = ()


_UNSIGNED = {"end": 3, "ycap": 4, "ycup": 4}


def parse_tree(source: str) -> TreeDivideInput:
    """Divide format without signs, plus `deg2 <rank> <h>` and
    `isolated <h>` records."""
    from .divide_model import DivideParseError, _tokens, parse_divide

    marks, isolated, kept = [], [], []
    for lineno, raw in enumerate(source.splitlines(), start=1):
        toks = _tokens(raw)
        if not toks:
            kept.append(raw)
            continue
        kw = toks[0][0]
        args = [t for t, _ in toks[1:]]
        try:
            if kw == "deg2":
                r, h = (int(x) for x in args)
                marks.append((r, h))
                kept.append("")
                continue
            if kw == "isolated":
                (h,) = (int(x) for x in args)
                isolated.append(h)
                kept.append("")
                continue
        except ValueError:
            raise DivideParseError(f"bad {kw} record", lineno) from None
        if kw in _UNSIGNED:
            if len(args) != _UNSIGNED[kw]:
                raise DivideParseError(f"{kw} in a tree file takes {_UNSIGNED[kw]} arguments and no sign", lineno)
            raw = raw.split("#", 1)[0] + " -"
        kept.append(raw)
    d = parse_divide("\n".join(kept))
    heights = {c.h for c in d.connectors}
    for r, h in marks:
        if h in heights:
            raise TreeInputError(f"deg2 mark at height {h} collides with a connector")
    return TreeDivideInput(d, tuple(marks), tuple(isolated))


def _with_isolated(t: TreeDivideInput):
    """Each isolated vertex becomes a short interval on a new rightmost rank."""
    if not t.isolated:
        return t.divide, list(t.marks)
    if len(set(t.isolated)) != len(t.isolated):
        raise TreeInputError("isolated vertices need distinct heights")
    d = t.divide
    conns = [Connector(c.kind, c.ranks, 2 * c.h, c.side, c.sign) for c in d.connectors]
    n = d.n_chains
    for h in sorted(t.isolated):
        n += 1
        conns.append(end(n, "bottom", 2 * h, -1))
        conns.append(end(n, "top", 2 * h + 1, -1))
    return GraphDivide(d.name, n, tuple(conns)), [(r, 2 * h) for r, h in t.marks]


def gibson_tree_to_graph_divide(t: TreeDivideInput, seed: int | None = None) -> GraphDivide:
    """Signed graph divide with the same link as the tree divide.

    A degree-2 mark is a half twist of the doubled ribbon.  Next to an
    endpoint it turns the hairpin into a loop (sign +); three of them around
    a trivalent vertex turn it into a + vertex.  Any other mark is slid to
    the nearest leaf, flipping every vertex it passes, which amounts to
    flipping all vertices on that side of the mark.

    `seed` picks a random orientation of each doubled component; a branch
    whose orientation is reversed gets all its signs flipped.
    """
    from .divide_model import _piece_graph, chain_pieces, flip_signs

    d, marks = _with_isolated(t)
    require_valid(d)
    arcs, adj, vertex_of, ends = _piece_graph(d)
    _require_forest(adj)
    crosses = chain_pieces(d)
    bot = {r: min(c.h for c in d.connectors if (r, "bottom") in c.chain_ends()) for r in range(1, d.n_chains + 1)}
    top = {r: min(c.h for c in d.connectors if (r, "top") in c.chain_ends()) for r in range(1, d.n_chains + 1)}

    on_arc: dict[tuple, list[int]] = {}
    for mi, (r, h) in enumerate(marks):
        if not 1 <= r <= d.n_chains or not bot[r] < h < top[r]:
            raise TreeInputError(f"deg2 mark ({r}, {h}) is not on a chain")
        p = sum(1 for x in crosses[r] if x < h)
        on_arc.setdefault((r, p), []).append(mi)
    nodes_of = ends.__getitem__

    def first_mark(start, arc, alive):
        """First live mark met walking from node `start` along `arc`."""
        prev, cur = None, start
        while True:
            lo, hi = nodes_of(arc)
            here = sorted((marks[m][1], m) for m in on_arc.get(arc, []) if m in alive)
            if here:
                return (here if cur == lo else here[::-1])[0][1]
            nxt = hi if cur == lo else lo
            if nxt in vertex_of:
                return None
            others = [a for a, _ in adj[nxt] if a != arc]
            if len(others) != 1:
                return None
            cur, arc = nxt, others[0]

    sign = {i: -1 for i, c in enumerate(d.connectors) if c.sign is not None}
    alive = set(range(len(marks)))
    # rule 1: trivalent vertex surrounded by three marks
    for node, vi in sorted(vertex_of.items(), key=lambda x: x[1]):
        if d.connectors[vi].kind not in ("ycap", "ycup"):
            continue
        found = [first_mark(node, arc, alive) for arc, _ in adj[node]]
        if len(found) == 3 and None not in found and len(set(found)) == 3:
            sign[vi] = 1
            alive -= set(found)
    # rule 2: endpoint next to a mark
    for node, vi in sorted(vertex_of.items(), key=lambda x: x[1]):
        if d.connectors[vi].kind != "end":
            continue
        m = first_mark(node, adj[node][0][0], alive)
        if m is not None:
            sign[vi] = 1
            alive.discard(m)
    # remaining marks: flip the side holding the nearest leaf
    for m in sorted(alive):
        r, h = marks[m]
        arc = (r, sum(1 for x in crosses[r] if x < h))
        sides = [_side(adj, vertex_of, d, start, arc) for start in nodes_of(arc)]
        best = min(sides, key=lambda s: s[0])
        for vi in best[1]:
            if vi in sign:
                sign[vi] = -sign[vi]
    out = d.with_connectors(
        Connector(c.kind, c.ranks, c.h, c.side, sign[i]) if i in sign else c for i, c in enumerate(d.connectors)
    )
    if seed is not None:
        from .divide_model import branch_decomposition

        rng = random.Random(seed)
        flips = [b.id for b in branch_decomposition(out) if rng.random() < 0.5]
        out = flip_signs(out, flips)
    require_valid(out)
    return out


def _require_forest(adj):
    seen = set()
    for start in adj:
        if start in seen:
            continue
        comp, arcs, stack = {start}, set(), [start]
        while stack:
            x = stack.pop()
            for arc, y in adj[x]:
                arcs.add(arc)
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        if len(arcs) != len(comp) - 1:
            raise TreeInputError("the graph of a tree divide must not contain a cycle")


def _side(adj, vertex_of, d, start, cut):
    """((hops to the nearest leaf, its rank), vertex connectors) of the part
    of the tree reached from `start` without using arc `cut`."""
    dist = {start: 0}
    order = [start]
    for x in order:
        for arc, y in adj[x]:
            if arc != cut and y not in dist:
                dist[y] = dist[x] + 1
                order.append(y)
    leaves = [(dist[x], d.connectors[vertex_of[x]].ranks[0]) for x in order
              if x in vertex_of and d.connectors[vertex_of[x]].kind in ("end", "boundary")]
    return min(leaves), [vertex_of[x] for x in order if x in vertex_of]
