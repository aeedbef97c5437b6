"""Planar realization of a graph divide on an integer grid, slope
normalization and SVG rendering."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .divide_model import GraphDivide, chain_pieces, end_heights, require_valid

Point = tuple[int, int]

COL = 16  # horizontal distance between ranks
ARM = COL // 2  # half-width of a crossing


@dataclass(frozen=True)
class GVertex:
    pos: Point
    kind: str  # end | boundary | y
    sign: Optional[int]
    connector: int  # index into the source divide's connectors


@dataclass(frozen=True)
class GEdge:
    u: int  # vertex index, -1 for a circle
    v: int
    points: tuple[Point, ...]  # polyline u -> v (closed for circles)


@dataclass(frozen=True)
class GridImmersion:
    vertices: tuple[GVertex, ...]
    edges: tuple[GEdge, ...]
    double_points: tuple[Point, ...]
    source_m: int = 0

    def bbox(self):
        pts = [p for e in self.edges for p in e.points]
        xs, ys = [p[0] for p in pts], [p[1] for p in pts]
        return min(xs), min(ys), max(xs), max(ys)


def _height_scale(d: GraphDivide) -> int:
    return 32 * d.n_chains + 64


def _y_geometry(c, xs, Y, up: int):
    """Fold and vertex polylines of a Y-tangle.  up=+1 for ycap."""
    i, mid, j = c.ranks
    Xi, Xm, Xj = xs[i], xs[mid], xs[j]
    XA = Xm + ARM
    T = max(XA - Xi, Xj - XA) + 2 * ARM
    apex = (XA, Y + up * T)
    V = (Xm, Y + up * (T - ARM))
    left = [V, (Xi, Y + up * (T - (XA - Xi))), (Xi, Y)]
    right = [V, apex, (Xj, Y + up * (T - (Xj - XA))), (Xj, Y)]
    midleg = [V, (Xm, Y)]
    return V, [left, right, midleg]


def embed(d: GraphDivide) -> GridImmersion:
    """Chains become vertical polylines at x = COL*rank; connector heights are
    replaced by their order so every connector owns a horizontal strip."""
    require_valid(d)
    xs = {r: COL * r for r in range(1, d.n_chains + 1)}
    H = _height_scale(d)
    level = {h: H * k for k, h in enumerate(sorted(c.h for c in d.connectors))}
    crosses = chain_pieces(d)
    used = end_heights(d)

    paths: list[list[Point]] = []
    vertices: list[GVertex] = []
    vertex_at: dict[Point, int] = {}
    doubles: list[Point] = []

    def add_vertex(p, kind, sign, idx):
        vertex_at[p] = len(vertices)
        vertices.append(GVertex(p, kind, sign, idx))

    # chain pieces between crossings
    for r in range(1, d.n_chains + 1):
        x = xs[r]
        ys = [level[used[(r, "bottom")][0].h]]
        for h in crosses[r]:
            ys += [level[h] - ARM, level[h] + ARM]
        ys.append(level[used[(r, "top")][0].h])
        for a, b in zip(ys[::2], ys[1::2]):
            paths.append([(x, a), (x, b)])

    for idx, c in enumerate(d.connectors):
        Y = level[c.h]
        if c.kind == "cross":
            i = c.ranks[0]
            paths.append([(xs[i], Y - ARM), (xs[i + 1], Y + ARM)])
            paths.append([(xs[i + 1], Y - ARM), (xs[i], Y + ARM)])
            doubles.append((xs[i] + ARM, Y))
        elif c.kind in ("cap", "cup"):
            i, j = c.ranks
            up = 1 if c.kind == "cap" else -1
            paths.append([(xs[i], Y), ((xs[i] + xs[j]) // 2, Y + up * (xs[j] - xs[i]) // 2), (xs[j], Y)])
        elif c.kind in ("ycap", "ycup"):
            V, legs = _y_geometry(c, xs, Y, 1 if c.kind == "ycap" else -1)
            add_vertex(V, "y", c.sign, idx)
            paths.extend(legs)
        else:
            add_vertex((xs[c.ranks[0]], Y), c.kind, c.sign, idx)

    edges = _assemble(paths, vertex_at)
    kinds = [c.kind for c in d.connectors]
    m = sum(kinds.count(k) for k in ("cap", "cup", "ycap", "ycup"))
    return GridImmersion(tuple(vertices), tuple(edges), tuple(doubles), m)


def _assemble(paths: list[list[Point]], vertex_at: dict[Point, int]) -> list[GEdge]:
    """Glue polylines at shared endpoints into vertex-to-vertex edges."""
    ends: dict[Point, list[tuple[int, int]]] = {}
    for pi, p in enumerate(paths):
        ends.setdefault(p[0], []).append((pi, 0))
        ends.setdefault(p[-1], []).append((pi, -1))
    for pt, lst in ends.items():
        if pt not in vertex_at and len(lst) != 2:
            raise AssertionError(f"junction {pt} has {len(lst)} ends")
    used = [False] * len(paths)

    def walk(start_pt, pi, at):
        pts = [start_pt]
        while True:
            used[pi] = True
            seg = paths[pi] if at == 0 else paths[pi][::-1]
            pts.extend(seg[1:])
            pt = pts[-1]
            if pt in vertex_at:
                return pts
            other = -1 if at == 0 else 0
            nxt = [x for x in ends[pt] if x != (pi, other)][0]
            if used[nxt[0]]:
                return pts
            pi, at = nxt

    edges = []
    for pt in sorted(vertex_at):
        for pi, at in sorted(ends.get(pt, [])):
            if used[pi]:
                continue
            pts = walk(pt, pi, at)
            edges.append(GEdge(vertex_at[pt], vertex_at[pts[-1]], _simplify(tuple(pts))))
    for pi in range(len(paths)):
        if used[pi]:
            continue
        start = paths[pi][0]
        pts = walk(start, pi, 0)
        if pts[-1] != start:
            raise AssertionError("open circle")
        edges.append(GEdge(-1, -1, _simplify(tuple(pts))))
    return edges


def _simplify(pts: tuple[Point, ...]) -> tuple[Point, ...]:
    """Drop repeated and collinear interior points."""
    out: list[Point] = []
    for p in pts:
        if out and out[-1] == p:
            continue
        if len(out) >= 2:
            (ax, ay), (bx, by) = out[-2], out[-1]
            if (bx - ax) * (p[1] - by) - (by - ay) * (p[0] - bx) == 0 and \
                    (bx - ax) * (p[0] - bx) + (by - ay) * (p[1] - by) > 0:
                out[-1] = p
                continue
        out.append(p)
    return tuple(out)


# -- slope normalization ------------------------------------------------------

def _zigzag(a: Point, b: Point) -> list[Point]:
    """Replace segment a->b by slope +-1 pieces; returns points after a."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    if abs(dx) == abs(dy):
        return [b]
    if dx == 0 or dy == 0:
        L = abs(dx) + abs(dy)
        teeth = max(1, L // 8)
        while L % (2 * teeth):
            teeth -= 1
            if teeth == 0:
                raise ValueError(f"segment length {L} cannot be zigzagged on this grid")
        s = L // (2 * teeth)
        ux, uy = (dx // L, dy // L)
        # turnbacks go to the right of the page (+x) for verticals, up for horizontals
        px, py = (1, 0) if dx == 0 else (0, 1)
        out = []
        x, y = a
        for t in range(teeth):
            out.append((x + ux * s + px * s, y + uy * s + py * s))
            x, y = x + 2 * ux * s, y + 2 * uy * s
            out.append((x, y))
        return out
    # mixed slope: diagonal part then axis-parallel remainder
    k = min(abs(dx), abs(dy))
    mid = (a[0] + k * (1 if dx > 0 else -1), a[1] + k * (1 if dy > 0 else -1))
    return [mid] + _zigzag(mid, b)


def normalize_slopes(g: GridImmersion) -> GridImmersion:
    edges = []
    for e in g.edges:
        pts = [e.points[0]]
        for a, b in zip(e.points, e.points[1:]):
            pts.extend(_zigzag(a, b))
        edges.append(GEdge(e.u, e.v, tuple(pts)))
    return GridImmersion(g.vertices, tuple(edges), g.double_points, g.source_m)


def x2_extrema(g: GridImmersion) -> int:
    """Corners where the vertical direction reverses, graph vertices excluded."""
    count = 0
    for e in g.edges:
        pts = list(e.points)
        closed = e.u == -1
        if closed:
            pts = pts[:-1]
        n = len(pts)
        idxs = range(n) if closed else range(1, n - 1)
        for i in idxs:
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            if (b[1] - a[1]) * (c[1] - b[1]) < 0:
                count += 1
    return count


def segment_crossings(g: GridImmersion) -> list[tuple]:
    """Brute-force transversal intersections between distinct edge segments."""
    from .geometry import seg_intersection

    segs = []
    for ei, e in enumerate(g.edges):
        for si, (a, b) in enumerate(zip(e.points, e.points[1:])):
            segs.append((ei, si, a, b))
    out = []
    for x in range(len(segs)):
        for y in range(x + 1, len(segs)):
            e1, s1, a, b = segs[x]
            e2, s2, c, d = segs[y]
            if (e1 == e2 and abs(s1 - s2) <= 1) or {a, b} & {c, d}:
                continue  # neighbours along an edge, or meeting at a vertex
            hit = seg_intersection(a, b, c, d)
            if hit is not None:
                out.append(hit)
    return out


# -- SVG -----------------------------------------------------------------------

SVG_SIZE = 480
_PAD = 24


def _fmt(v: float) -> str:
    s = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


class _Canvas:
    """Maps world coordinates (y up) into a square SVG viewport.  The axes
    are scaled separately: layouts are much taller than wide, and an affine
    map keeps every crossing."""

    def __init__(self, pts):
        xs = [p[0] for p in pts] or [0.0]
        ys = [p[1] for p in pts] or [0.0]
        self.x0, self.y1 = min(xs), max(ys)
        inner = SVG_SIZE - 2 * _PAD
        self.kx = inner / max(max(xs) - self.x0, 1e-9)
        self.ky = inner / max(self.y1 - min(ys), 1e-9)
        self.body: list[str] = []

    def px(self, p) -> tuple[float, float]:
        return _PAD + (p[0] - self.x0) * self.kx, _PAD + (self.y1 - p[1]) * self.ky

    def pt(self, p) -> str:
        x, y = self.px(p)
        return f"{_fmt(x)},{_fmt(y)}"

    def poly(self, pts, closed=False, **attrs):
        tag = "polygon" if closed else "polyline"
        extra = "".join(f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items())
        self.body.append(f'<{tag} points="{" ".join(self.pt(p) for p in pts)}" fill="none"{extra}/>')

    def circle(self, p, r, **attrs):
        extra = "".join(f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items())
        x, y = self.pt(p).split(",")
        self.body.append(f'<circle cx="{x}" cy="{y}" r="{_fmt(r)}"{extra}/>')

    def text(self) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_SIZE}" height="{SVG_SIZE}" '
            f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">\n'
            '<defs><marker id="arrow" viewBox="0 0 10 10" refX="5" refY="5" markerWidth="6" markerHeight="6" '
            'orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="black"/></marker></defs>\n'
            f'<rect width="{SVG_SIZE}" height="{SVG_SIZE}" fill="white"/>\n'
        )
        return head + "\n".join(self.body) + "\n</svg>\n"


def _arrow_points(pts, closed):
    """Midpoints of the longest segments, used to place direction markers."""
    segs = list(zip(pts, pts[1:] + (pts[:1] if closed else [])))
    segs = sorted(range(len(segs)), key=lambda i: -abs(segs[i][1][0] - segs[i][0][0]) - abs(segs[i][1][1] - segs[i][0][1]))
    out = []
    for i in sorted(segs[:2]):
        a, b = pts[i], pts[(i + 1) % len(pts)]
        m = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        out.append((a, m, b))
    return out


def render_svg(obj) -> str:
    """SVG 1.1 picture of a GridImmersion, OrientedDivide, LinkDiagram or
    GraphDivide (which is embedded first).  Output is deterministic."""
    from .diagram import LinkDiagram
    from .doubling import OrientedDivide

    if isinstance(obj, GraphDivide):
        obj = embed(obj)
    if isinstance(obj, GridImmersion):
        cv = _Canvas([p for e in obj.edges for p in e.points])
        for e in obj.edges:
            cv.poly(e.points, closed=e.u == -1, stroke="black", stroke_width="2")
        for v in obj.vertices:
            if v.kind == "boundary":
                cv.circle(v.pos, 3, fill="gray")
            elif v.kind == "end":
                cv.circle(v.pos, 5, fill="black" if v.sign == 1 else "white", stroke="black")
            else:
                cv.circle(v.pos, 5, fill="crimson" if v.sign == 1 else "royalblue", stroke="black")
        for p in obj.double_points:
            cv.circle(p, 2, fill="orange")
        return cv.text()
    if isinstance(obj, OrientedDivide):
        cv = _Canvas([p for c in obj.curves for p in c])
        for c in obj.curves:
            pts = list(c)
            cv.poly(pts, closed=True, stroke="black", stroke_width="1.5")
            for a, m, b in _arrow_points(pts, True):
                cv.poly([a, m, b], stroke="none", marker_mid="url(#arrow)")
        return cv.text()
    if isinstance(obj, LinkDiagram):
        return _render_link(obj)
    raise TypeError(f"cannot render {type(obj).__name__}")


def _render_link(diag) -> str:
    dr = diag.drawing
    if dr is None:
        return _render_gauss(diag)
    cv = _Canvas([p for path in dr.paths for p in path])
    for path, closed in zip(dr.paths, dr.closed):
        cv.poly(path, closed=closed, stroke="black", stroke_width="2")
    for p, d in dr.overs:
        x, y = cv.px(p)
        u = (d[0] * cv.kx, -d[1] * cv.ky)
        norm = (u[0] ** 2 + u[1] ** 2) ** 0.5 or 1.0
        u = (u[0] / norm * 6, u[1] / norm * 6)
        seg = f"{_fmt(x - u[0])},{_fmt(y - u[1])} {_fmt(x + u[0])},{_fmt(y + u[1])}"
        cv.body.append(f'<polyline points="{seg}" fill="none" stroke="white" stroke-width="8"/>')
        cv.body.append(f'<polyline points="{seg}" fill="none" stroke="black" stroke-width="2"/>')
    return cv.text()


def _render_gauss(diag) -> str:
    """Fallback without planar geometry: each component as a circle with its
    crossings marked in travel order; chords join the two visits of a
    crossing, solid from the over visit."""
    import math

    comps = diag.components()
    cv = _Canvas([(-1.2, -1.2 * len(comps) * 2.6), (1.2 + 2.6 * len(comps), 1.2)])
    where = {}
    for k, comp in enumerate(comps):
        cx = 2.6 * k
        ring = [(cx + math.cos(2 * math.pi * t / 96), math.sin(2 * math.pi * t / 96)) for t in range(96)]
        cv.poly(ring, closed=True, stroke="black", stroke_width="2")
        head, _ = diag.heads_and_tails()
        for idx, lab in enumerate(comp):
            ci, slot = head[lab]
            ang = 2 * math.pi * idx / max(1, len(comp))
            p = (cx + math.cos(ang), math.sin(ang))
            over = slot % 2 == 1
            cv.circle(p, 3, fill="black" if over else "white", stroke="black")
            where.setdefault(ci, []).append(p)
    for ci in sorted(where):
        if len(where[ci]) == 2:
            cv.poly(where[ci], stroke="gray", stroke_width="1")
    return cv.text()
