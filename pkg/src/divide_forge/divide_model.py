"""Graph divides in tangle position: data model, parser, validation,
counts and branch decomposition."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

KINDS = ("cross", "cap", "cup", "ycap", "ycup", "end", "boundary")
SIGNED = ("ycap", "ycup", "end")


@dataclass(frozen=True)
class Connector:
    kind: str
    ranks: tuple[int, ...]
    h: int
    side: Optional[str] = None  # 'top' | 'bottom' for end/boundary
    sign: Optional[int] = None  # +1 / -1 for end, ycap, ycup

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown connector kind {self.kind!r}")

    def chain_ends(self) -> list[tuple[int, str]]:
        """The (rank, top|bottom) chain ends this connector consumes."""
        k = self.kind
        if k in ("cap", "ycap"):
            return [(r, "top") for r in self.ranks]
        if k in ("cup", "ycup"):
            return [(r, "bottom") for r in self.ranks]
        if k in ("end", "boundary"):
            return [(self.ranks[0], self.side)]
        return []

    def line(self) -> str:
        s = "+" if self.sign == 1 else "-"
        r = " ".join(map(str, self.ranks))
        if self.kind in ("cross", "cap", "cup"):
            return f"{self.kind} {r} {self.h}"
        if self.kind in ("ycap", "ycup"):
            return f"{self.kind} {r} {self.h} {s}"
        if self.kind == "end":
            return f"end {r} {self.side} {self.h} {s}"
        return f"boundary {r} {self.side} {self.h}"


def cross(i, h):
    return Connector("cross", (i,), h)


def cap(i, j, h):
    return Connector("cap", (i, j), h)


def cup(i, j, h):
    return Connector("cup", (i, j), h)


def ycap(i, mid, j, h, sign):
    return Connector("ycap", (i, mid, j), h, sign=_sign(sign))


def ycup(i, mid, j, h, sign):
    return Connector("ycup", (i, mid, j), h, sign=_sign(sign))


def end(i, side, h, sign):
    return Connector("end", (i,), h, side=side, sign=_sign(sign))


def boundary(i, side, h):
    return Connector("boundary", (i,), h, side=side)


def _sign(s) -> int:
    if s in ("+", 1, +1):
        return 1
    if s in ("-", -1):
        return -1
    raise ValueError(f"bad sign {s!r}")


@dataclass(frozen=True)
class GraphDivide:
    name: str
    n_chains: int
    connectors: tuple[Connector, ...]

    def sorted_connectors(self) -> list[Connector]:
        return sorted(self.connectors, key=lambda c: c.h)

    def with_connectors(self, conns: Iterable[Connector]) -> "GraphDivide":
        return GraphDivide(self.name, self.n_chains, tuple(conns))


# -- parsing ------------------------------------------------------------------

class DivideParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {msg}")
        self.line, self.col = line, col


_ARITY = {"cross": 2, "cap": 3, "cup": 3, "ycap": 5, "ycup": 5, "end": 4, "boundary": 3}


def _tokens(raw: str):
    """Yield (token, column) pairs, stopping at a comment."""
    col, out = 0, []
    text = raw.split("#", 1)[0]
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace():
            j += 1
        out.append((text[i:j], i + 1))
        i = j
    return out


def _int(tok, lineno, positive=False):
    s, col = tok
    try:
        v = int(s)
    except ValueError:
        raise DivideParseError(f"expected integer, got {s!r}", lineno, col) from None
    if positive and v < 1:
        raise DivideParseError(f"expected positive index, got {v}", lineno, col)
    return v


def _parse_sign(tok, lineno):
    s, col = tok
    if s not in ("+", "-"):
        raise DivideParseError(f"expected sign + or -, got {s!r}", lineno, col)
    return 1 if s == "+" else -1


def _parse_side(tok, lineno):
    s, col = tok
    if s not in ("top", "bottom"):
        raise DivideParseError(f"expected top or bottom, got {s!r}", lineno, col)
    return s


def parse_divide(source: str, extra: Optional[dict] = None) -> GraphDivide:
    """Parse the line-oriented divide format.

    `extra` maps additional keywords to handlers (used by the tree format).
    """
    name, n = "divide", None
    conns: list[Connector] = []
    heights: dict[int, int] = {}
    for lineno, raw in enumerate(source.splitlines(), start=1):
        toks = _tokens(raw)
        if not toks:
            continue
        kw, kcol = toks[0]
        args = toks[1:]
        if kw == "divide":
            if len(args) != 1:
                raise DivideParseError("divide takes one name", lineno, kcol)
            name = args[0][0]
            continue
        if kw == "chains":
            if len(args) != 1:
                raise DivideParseError("chains takes one count", lineno, kcol)
            n = _int(args[0], lineno)
            if n < 0:
                raise DivideParseError("chain count must be non-negative", lineno, args[0][1])
            continue
        if extra and kw in extra:
            c = extra[kw](args, lineno)
        elif kw in _ARITY:
            if len(args) != _ARITY[kw]:
                raise DivideParseError(f"{kw} takes {_ARITY[kw]} arguments, got {len(args)}", lineno, kcol)
            c = _parse_connector(kw, args, lineno)
        else:
            raise DivideParseError(f"unknown keyword {kw!r}", lineno, kcol)
        if c.h in heights:
            raise DivideParseError(f"duplicate connector height {c.h} (first on line {heights[c.h]})", lineno, kcol)
        heights[c.h] = lineno
        conns.append(c)
    if n is None:
        raise DivideParseError("missing 'chains' line", 1)
    return GraphDivide(name, n, tuple(conns))


def _parse_connector(kw, args, lineno) -> Connector:
    if kw == "cross":
        return cross(_int(args[0], lineno, True), _int(args[1], lineno))
    if kw in ("cap", "cup"):
        return Connector(kw, (_int(args[0], lineno, True), _int(args[1], lineno, True)), _int(args[2], lineno))
    if kw in ("ycap", "ycup"):
        ranks = tuple(_int(a, lineno, True) for a in args[:3])
        return Connector(kw, ranks, _int(args[3], lineno), sign=_parse_sign(args[4], lineno))
    if kw == "end":
        return end(_int(args[0], lineno, True), _parse_side(args[1], lineno), _int(args[2], lineno), _parse_sign(args[3], lineno))
    return boundary(_int(args[0], lineno, True), _parse_side(args[1], lineno), _int(args[2], lineno))


def serialize(d: GraphDivide) -> str:
    lines = [f"divide {d.name}", f"chains {d.n_chains}"]
    lines += [c.line() for c in d.connectors]
    return "\n".join(lines) + "\n"


# -- validation ---------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    rule: str
    connector: Optional[Connector]
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        return [f"{v.rule}: {v.connector.line() if v.connector else '-'} {v.detail}".rstrip() for v in self.violations]


def end_heights(d: GraphDivide) -> dict[tuple[int, str], list[Connector]]:
    used: dict[tuple[int, str], list[Connector]] = {}
    for c in d.connectors:
        for e in c.chain_ends():
            used.setdefault(e, []).append(c)
    return used


def validate(d: GraphDivide) -> ValidationReport:
    v: list[Violation] = []
    n = d.n_chains
    if n < 1:
        v.append(Violation("no chains", None))
    seen_h: dict[int, Connector] = {}
    for c in d.connectors:
        if c.h in seen_h:
            v.append(Violation("duplicate height", c, f"shared with {seen_h[c.h].line()}"))
        seen_h.setdefault(c.h, c)
        hi = max(c.ranks) + (1 if c.kind == "cross" else 0)
        if min(c.ranks) < 1 or hi > n:
            v.append(Violation("rank out of range", c))
        if len(c.ranks) > 1 and list(c.ranks) != sorted(set(c.ranks)):
            v.append(Violation("ranks not increasing", c))
        if c.kind in SIGNED and c.sign not in (1, -1):
            v.append(Violation("missing sign", c))
        if c.kind in ("end", "boundary") and c.side not in ("top", "bottom"):
            v.append(Violation("bad side", c))
    used = end_heights(d)
    for r in range(1, n + 1):
        for side in ("bottom", "top"):
            lst = used.get((r, side), [])
            if not lst:
                v.append(Violation("chain end not consumed", None, f"rank {r} {side}"))
            elif len(lst) > 1:
                for c in lst[1:]:
                    v.append(Violation("chain end consumed twice", c, f"rank {r} {side}"))
    if v:
        return ValidationReport(tuple(v))

    top = {r: used[(r, "top")][0].h for r in range(1, n + 1)}
    bot = {r: used[(r, "bottom")][0].h for r in range(1, n + 1)}
    for r in range(1, n + 1):
        if bot[r] >= top[r]:
            v.append(Violation("empty chain extent", used[(r, "top")][0], f"rank {r}"))
    for c in d.connectors:
        if c.kind in ("cap", "ycap"):
            lo, hi = c.ranks[0], c.ranks[-1]
            for k in range(lo + 1, hi):
                if k not in c.ranks and top[k] >= c.h:
                    v.append(Violation("fold over taller chain", c, f"rank {k}"))
                elif k not in c.ranks and used[(k, "top")][0].kind == "boundary":
                    v.append(Violation("boundary end enclosed", c, f"rank {k}"))
        elif c.kind in ("cup", "ycup"):
            lo, hi = c.ranks[0], c.ranks[-1]
            for k in range(lo + 1, hi):
                if k not in c.ranks and bot[k] <= c.h:
                    v.append(Violation("fold under lower chain", c, f"rank {k}"))
                elif k not in c.ranks and used[(k, "bottom")][0].kind == "boundary":
                    v.append(Violation("boundary end enclosed", c, f"rank {k}"))
        elif c.kind == "cross":
            i = c.ranks[0]
            if i + 1 <= n:
                for k in (i, i + 1):
                    if not bot[k] < c.h < top[k]:
                        v.append(Violation("cross outside chain extent", c, f"rank {k}"))
                        break
    return ValidationReport(tuple(v))


class InvalidDivide(ValueError):
    pass


def require_valid(d: GraphDivide) -> None:
    rep = validate(d)
    if not rep.ok:
        raise InvalidDivide("; ".join(rep.lines()))


# -- counts and branches ------------------------------------------------------

@dataclass(frozen=True)
class Branch:
    id: int
    kind: str  # interval | tree | circle | graph-with-cycle
    connectors: tuple[int, ...]  # indices into d.connectors
    arcs: tuple[tuple[int, int], ...]  # (rank, piece index from bottom)
    vertices: tuple[int, ...]  # connector indices that carry a vertex
    edges: tuple[tuple[int, int], ...]  # G-edges as pairs of vertex connector indices

    @property
    def euler(self) -> int:
        return len(self.vertices) - len(self.edges)


@dataclass(frozen=True)
class DivideCounts:
    n: int
    delta: int
    m: int
    e1: int
    t3: int
    branches: tuple[Branch, ...] = ()

    @property
    def v(self) -> int:
        return self.e1 + self.t3

    @property
    def euler_G(self) -> int:
        return (self.e1 - self.t3) // 2

    @property
    def k(self) -> int:
        return 2 * self.delta + self.m + self.t3

    def to_json(self) -> dict:
        return {
            "n": self.n, "delta": self.delta, "m": self.m, "e1": self.e1, "t3": self.t3,
            "v": self.v, "euler_G": self.euler_G, "k": self.k,
            "branches": [{"id": b.id, "kind": b.kind, "vertices": len(b.vertices), "edges": len(b.edges)} for b in self.branches],
        }


def counts(d: GraphDivide) -> DivideCounts:
    require_valid(d)
    kinds = [c.kind for c in d.connectors]
    t3 = kinds.count("ycap") + kinds.count("ycup")
    return DivideCounts(
        n=d.n_chains,
        delta=kinds.count("cross"),
        m=kinds.count("cap") + kinds.count("cup") + t3,
        e1=kinds.count("end") + kinds.count("boundary"),
        t3=t3,
        branches=tuple(branch_decomposition(d)),
    )


def chain_pieces(d: GraphDivide) -> dict[int, list[int]]:
    """Heights of the crossings on each rank, sorted bottom to top."""
    out: dict[int, list[int]] = {r: [] for r in range(1, d.n_chains + 1)}
    for c in d.connectors:
        if c.kind == "cross":
            i = c.ranks[0]
            out[i].append(c.h)
            out[i + 1].append(c.h)
    for r in out:
        out[r].sort()
    return out


def _piece_graph(d: GraphDivide):
    """Nodes are ('v', connector index) for vertices and ('j', ...) for
    degree-two junctions; returns adjacency lists keyed by node, with each
    adjacency entry tagged by the chain-arc it travels along, and the
    (bottom, top) nodes of every arc."""
    crosses = chain_pieces(d)
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    def top_of(r):
        return ("t", r, len(crosses[r]))

    def bottom_of(r):
        return ("b", r, 0)

    for idx, c in enumerate(d.connectors):
        k = c.kind
        if k == "cross":
            i, h = c.ranks[0], c.h
            a, b = crosses[i].index(h), crosses[i + 1].index(h)
            union(("t", i, a), ("b", i + 1, b + 1))
            union(("t", i + 1, b), ("b", i, a + 1))
        elif k in ("cap", "cup"):
            end_of = top_of if k == "cap" else bottom_of
            union(end_of(c.ranks[0]), end_of(c.ranks[1]))
        elif k in ("ycap", "ycup"):
            end_of = top_of if k == "ycap" else bottom_of
            for r in c.ranks:
                union(end_of(r), ("v", idx))
        else:
            end_of = top_of if c.side == "top" else bottom_of
            union(end_of(c.ranks[0]), ("v", idx))
    arcs = [(r, p) for r in range(1, d.n_chains + 1) for p in range(len(crosses[r]) + 1)]
    adj: dict = {}
    ends: dict = {}
    for r, p in arcs:
        a, b = find(("b", r, p)), find(("t", r, p))
        ends[(r, p)] = (a, b)
        adj.setdefault(a, []).append(((r, p), b))
        adj.setdefault(b, []).append(((r, p), a))
    vertex_of = {}
    for idx, c in enumerate(d.connectors):
        if c.kind in ("ycap", "ycup", "end", "boundary"):
            vertex_of[find(("v", idx))] = idx
    return arcs, adj, vertex_of, ends


def branch_decomposition(d: GraphDivide) -> list[Branch]:
    require_valid(d)
    arcs, adj, vertex_of, _ = _piece_graph(d)
    # connected components over nodes
    comp_of: dict = {}
    # deterministic: iterate arcs in rank order, flood from their endpoints
    arc_nodes = {}
    for node, lst in adj.items():
        for arc, other in lst:
            arc_nodes.setdefault(arc, set()).update({node, other})
    cid = 0
    for arc in arcs:
        start = next(iter(sorted(arc_nodes[arc], key=repr)))
        if start in comp_of:
            continue
        cid += 1
        stack = [start]
        comp_of[start] = cid
        while stack:
            x = stack.pop()
            for _, y in adj[x]:
                if y not in comp_of:
                    comp_of[y] = cid
                    stack.append(y)
    branches = []
    for b in range(1, cid + 1):
        b_nodes = [x for x, k in comp_of.items() if k == b]
        b_arcs = sorted(a for a in arcs if comp_of[next(iter(arc_nodes[a]))] == b)
        verts = sorted(vertex_of[x] for x in b_nodes if x in vertex_of)
        # G-edges: walk from each vertex along each incident arc to the next vertex
        edges = []
        used_arcs: set = set()
        for x in b_nodes:
            if x not in vertex_of:
                continue
            for arc, y in adj[x]:
                if arc in used_arcs:
                    continue
                used_arcs.add(arc)
                prev, cur = arc, y
                while cur not in vertex_of:
                    (nxt_arc, nxt), = [(a2, y2) for a2, y2 in adj[cur] if a2 != prev] or [(None, None)]
                    if nxt_arc is None:
                        break
                    used_arcs.add(nxt_arc)
                    prev, cur = nxt_arc, nxt
                edges.append(tuple(sorted((vertex_of[x], vertex_of[cur]))))
        t3 = sum(1 for i in verts if d.connectors[i].kind in ("ycap", "ycup"))
        if not verts:
            kind = "circle"
        elif len(verts) - len(edges) == 1:
            kind = "tree" if t3 else "interval"
        else:
            kind = "graph-with-cycle"
        members = sorted(_members(d, b_arcs, verts))
        branches.append(Branch(b, kind, tuple(members), tuple(b_arcs), tuple(verts), tuple(sorted(edges))))
    return branches


def _members(d: GraphDivide, b_arcs, verts) -> set[int]:
    ranks = {r for r, _ in b_arcs}
    crosses = chain_pieces(d)
    out = set(verts)
    arcset = set(b_arcs)
    for idx, c in enumerate(d.connectors):
        if c.kind in ("cap", "cup") and c.ranks[0] in ranks:
            end_piece = len(crosses[c.ranks[0]]) if c.kind == "cap" else 0
            if (c.ranks[0], end_piece) in arcset:
                out.add(idx)
        elif c.kind == "cross":
            i = c.ranks[0]
            a = crosses[i].index(c.h)
            if (i, a) in arcset or (i, a + 1) in arcset:
                out.add(idx)
    return out


def flip_signs(d: GraphDivide, branch_ids: Iterable[int]) -> GraphDivide:
    branches = {b.id: b for b in branch_decomposition(d)}
    targets: set[int] = set()
    for bid in branch_ids:
        if bid not in branches:
            raise KeyError(f"unknown branch id {bid}")
        targets.update(branches[bid].vertices)
    conns = [replace(c, sign=-c.sign) if (i in targets and c.sign is not None) else c
             for i, c in enumerate(d.connectors)]
    return d.with_connectors(conns)


def flip_all(d: GraphDivide) -> GraphDivide:
    return flip_signs(d, [b.id for b in branch_decomposition(d)])


def random_divide(rng, max_connectors: int = 8, max_ranks: int = 6, kinds=None, name: str = "fuzz") -> GraphDivide:
    """A random valid divide, built by a bottom-to-top sweep.

    Each rank carries one chain and goes unborn -> active -> dead.  Folds
    may only pass over dead ranks (caps) or under unborn ones (cups), which
    is exactly what validation demands.
    """
    if max_connectors < 2:
        raise ValueError("a divide needs at least two connectors")
    kinds = set(kinds or KINDS)
    while True:
        d = _try_random(rng, max_connectors, max_ranks, kinds, name)
        if d is not None:
            return d


def _try_random(rng, budget, n, kinds, name):
    state = ["unborn"] * (n + 2)  # 1-based, sentinels unused
    conns: list[Connector] = []
    h = 0

    def sign():
        return rng.choice((1, -1))

    def span_ok(ranks, want):
        lo, hi = ranks[0], ranks[-1]
        return all(state[k] == want for k in range(lo + 1, hi) if k not in ranks)

    for _ in range(6 * budget):
        if len(conns) >= budget:
            break
        active = [r for r in range(1, n + 1) if state[r] == "active"]
        unborn = [r for r in range(1, n + 1) if state[r] == "unborn"]
        opts = []
        if unborn:
            if "end" in kinds or "boundary" in kinds:
                opts.append("start")
            if len(unborn) >= 2 and "cup" in kinds:
                opts.append("cup")
            if len(unborn) >= 3 and "ycup" in kinds:
                opts.append("ycup")
        if active:
            opts.append("stop")
            if "cross" in kinds and any(state[r + 1] == "active" for r in active if r < n):
                opts += ["cross", "cross"]
            if len(active) >= 2 and "cap" in kinds:
                opts.append("cap")
            if len(active) >= 3 and "ycap" in kinds:
                opts.append("ycap")
        if not opts:
            break
        op = rng.choice(opts)
        h += 1
        if op == "start":
            r = rng.choice(unborn)
            ks = [k for k in ("end", "boundary") if k in kinds]
            k = rng.choice(ks)
            conns.append(end(r, "bottom", h, sign()) if k == "end" else boundary(r, "bottom", h))
            state[r] = "active"
        elif op == "stop":
            r = rng.choice(active)
            ks = [k for k in ("end", "boundary") if k in kinds] or ["end"]
            k = rng.choice(ks)
            conns.append(end(r, "top", h, sign()) if k == "end" else boundary(r, "top", h))
            state[r] = "dead"
        elif op == "cross":
            r = rng.choice([r for r in active if r < n and state[r + 1] == "active"])
            conns.append(cross(r, h))
        elif op in ("cup", "ycup", "cap", "ycap"):
            pool = unborn if op in ("cup", "ycup") else active
            want = "unborn" if op in ("cup", "ycup") else "dead"
            size = 2 if op in ("cup", "cap") else 3
            cands = []
            for _ in range(10):
                rs = tuple(sorted(rng.sample(pool, size)))
                if span_ok(rs, want):
                    cands.append(rs)
            if not cands:
                h -= 1
                continue
            rs = cands[0]
            if op == "cup":
                conns.append(cup(*rs, h))
            elif op == "cap":
                conns.append(cap(*rs, h))
            elif op == "ycup":
                conns.append(ycup(*rs, h, sign()))
            else:
                conns.append(ycap(*rs, h, sign()))
            for r in rs:
                state[r] = "active" if want == "unborn" else "dead"
    # close what is still open
    for r in range(1, n + 1):
        if state[r] == "active":
            h += 1
            conns.append(end(r, "top", h, sign()))
            state[r] = "dead"
    if not conns or len(conns) > budget:
        return None
    used = sorted({r for c in conns for r in c.ranks} | {c.ranks[0] + 1 for c in conns if c.kind == "cross"})
    remap = {r: i + 1 for i, r in enumerate(used)}
    out = []
    for c in conns:
        out.append(replace(c, ranks=tuple(remap[r] for r in c.ranks)))
    # a removed rank between two crossing ranks cannot happen: crossings use active neighbours
    d = GraphDivide(name, len(used), tuple(out))
    return d if validate(d).ok else None
