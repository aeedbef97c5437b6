"""Doubling of a signed graph divide into an oriented divide.

Every branch is replaced by the clockwise boundary of a thin neighbourhood
(the region lies to the right of the curve).  Near vertices the boundary is
redrawn according to the sign: a hairpin or a loop at endpoints, a left or
right turn at trivalent vertices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .layout import GridImmersion

HALF = 1.0  # neighbourhood half-width
PORT = 3.0  # distance from a vertex where edge strands stop
SCALE = 64  # float -> integer grid factor of the output

# '+' endpoint curl in local (across, along) coordinates, between the ports
LOOP = ((-1, 0), (2, 3), (0, 5), (-2, 3), (1, 0))


@dataclass(frozen=True)
class Mark:
    origin: str  # sharp | loop | vertex-turn
    center: tuple[int, int]
    radius: int


@dataclass(frozen=True)
class OrientedDivide:
    curves: tuple[tuple[tuple[int, int], ...], ...]  # closed: last point != first, implicit closing segment
    marks: tuple[Mark, ...] = ()

    def segments(self):
        for ci, c in enumerate(self.curves):
            n = len(c)
            for si in range(n):
                yield ci, si, c[si], c[(si + 1) % n]

    def reversed(self) -> "OrientedDivide":
        return OrientedDivide(tuple(tuple(reversed(c)) for c in self.curves), self.marks)


def _unit(v):
    n = math.hypot(v[0], v[1])
    return (v[0] / n, v[1] / n)


def _ccw(v):
    return (-v[1], v[0])


def _cw(v):
    return (v[1], -v[0])


def _add(p, *terms):
    x, y = p
    for k, v in terms:
        x += k * v[0]
        y += k * v[1]
    return (x, y)


def _offset(points, side: float, closed: bool):
    """Offset a polyline by side*HALF along its left normal, mitred joins."""
    pts = list(points)
    if closed and pts[0] == pts[-1]:
        pts = pts[:-1]
    n = len(pts)
    segs = n if closed else n - 1
    dirs = [_unit((pts[(i + 1) % n][0] - pts[i][0], pts[(i + 1) % n][1] - pts[i][1])) for i in range(segs)]
    out = []
    for i in range(n):
        if closed:
            d1, d2 = dirs[i - 1], dirs[i % segs]
        elif i == 0:
            d1 = d2 = dirs[0]
        elif i == n - 1:
            d1 = d2 = dirs[-1]
        else:
            d1, d2 = dirs[i - 1], dirs[i]
        n1, n2 = _ccw(d1), _ccw(d2)
        k = 1.0 + n1[0] * n2[0] + n1[1] * n2[1]
        mx, my = (n1[0] + n2[0]) / k, (n1[1] + n2[1]) / k
        out.append((pts[i][0] + side * HALF * mx, pts[i][1] + side * HALF * my))
    return out


def _angle(v):
    return math.atan2(v[1], v[0]) % (2 * math.pi)


def double(g: GridImmersion) -> OrientedDivide:
    """Clockwise doubling with the sign rules at vertices."""
    for vx in g.vertices:
        if vx.kind != "boundary" and vx.sign not in (1, -1):
            raise ValueError(f"missing sign on vertex at {vx.pos}")

    # incident edge ends per vertex: (edge index, at_start, unit direction into the edge)
    incident: dict[int, list] = {i: [] for i in range(len(g.vertices))}
    for ei, e in enumerate(g.edges):
        if e.u < 0:
            continue
        p = e.points
        incident[e.u].append((ei, True, _unit((p[1][0] - p[0][0], p[1][1] - p[0][1]))))
        incident[e.v].append((ei, False, _unit((p[-2][0] - p[-1][0], p[-2][1] - p[-1][1]))))

    def port(vi, u, out: bool):
        V = g.vertices[vi].pos
        return _add(V, (PORT, u), (HALF, _ccw(u) if out else _cw(u)))

    # strands: key (vertex, edge, at_start) of the in-port they end at -> polyline
    strands_from: dict[tuple, tuple] = {}  # out-port key -> (points, in-port key)
    closed_curves = []
    for ei, e in enumerate(g.edges):
        if e.u < 0:
            left = _offset(e.points, +1, True)
            right = _offset(e.points, -1, True)
            closed_curves.append(left)
            closed_curves.append(right[::-1])
            continue
        u0 = [x for x in incident[e.u] if x[0] == ei and x[1]][0][2]
        u1 = [x for x in incident[e.v] if x[0] == ei and not x[1]][0][2]
        fwd = _offset(e.points, +1, False)
        fwd[0] = port(e.u, u0, True)
        fwd[-1] = port(e.v, u1, False)
        bwd = _offset(e.points, -1, False)[::-1]
        bwd[0] = port(e.v, u1, True)
        bwd[-1] = port(e.u, u0, False)
        strands_from[(e.u, ei, True)] = (fwd, (e.v, ei, False))
        strands_from[(e.v, ei, False)] = (bwd, (e.u, ei, True))

    # connectors at vertices: in-port key -> (points between, out-port key)
    connect: dict[tuple, tuple] = {}
    marks: list[Mark] = []
    for vi, vx in enumerate(g.vertices):
        inc = incident[vi]
        V = vx.pos
        if len(inc) == 1:
            ei, at, u = inc[0]
            key = (vi, ei, at)
            f = (-u[0], -u[1])
            if vx.kind == "end" and vx.sign == 1:
                # loop with one self-crossing, turning +180 degrees
                r = _cw(f)
                pts = [_add(V, (x * HALF, r), (y * HALF, f)) for x, y in LOOP]
                marks.append(Mark("loop", V, 7))
            else:
                pts = [_add(V, (HALF, f))]
            connect[key] = (pts, key)
        elif len(inc) == 3:
            inc = sorted(inc, key=lambda x: _angle(x[2]))
            sign = vx.sign
            for k, (ei, at, u) in enumerate(inc):
                if sign == -1:
                    nb = inc[k - 1]  # clockwise neighbour
                    lo, hi = nb[2], u
                    rho_on = "miter"
                else:
                    nb = inc[(k + 1) % 3]  # counterclockwise neighbour
                    lo, hi = u, nb[2]
                    rho_on = "inner"
                sweep = (_angle(hi) - _angle(lo)) % (2 * math.pi)
                mid = _angle(lo) + sweep / 2
                bis = (math.cos(mid), math.sin(mid))
                if rho_on == "miter":
                    rho = HALF / max(math.sin(sweep / 2), 0.35)
                else:
                    rho = HALF
                connect[(vi, ei, at)] = ([_add(V, (rho, bis))], (vi, nb[0], nb[1]))
            if sign == 1:
                marks.append(Mark("vertex-turn", V, 4))
        else:
            raise ValueError(f"vertex of degree {len(inc)}")
    for p in g.double_points:
        marks.append(Mark("sharp", p, 3))

    curves = []
    pending = set(strands_from)
    while pending:
        start = min(pending)
        key = start
        pts: list = []
        while True:
            pending.discard(key)
            poly, in_key = strands_from[key]
            pts.extend(poly)
            between, out_key = connect[in_key]
            pts.extend(between)
            key = out_key
            if key == start:
                break
        curves.append(pts)
    curves.extend(closed_curves)

    out = tuple(_snap(c) for c in curves)
    marks_i = tuple(Mark(m.origin, (m.center[0] * SCALE, m.center[1] * SCALE), m.radius * SCALE) for m in marks)
    return OrientedDivide(out, marks_i)


def _snap(pts) -> tuple[tuple[int, int], ...]:
    out = []
    for x, y in pts:
        p = (round(x * SCALE), round(y * SCALE))
        if out and out[-1] == p:
            continue
        out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return tuple(out)


def double_point_census(q: OrientedDivide) -> dict[str, int]:
    """Double points of q classified by the construction step that made them."""
    from .hirasawa import find_intersections

    out = {"sharp": 0, "loop": 0, "vertex-turn": 0, "pre-existing": 0}
    for hit in find_intersections(q.curves):
        x, y = hit.point
        origin = "pre-existing"
        for m in q.marks:
            if (x - m.center[0]) ** 2 + (y - m.center[1]) ** 2 <= m.radius ** 2:
                origin = m.origin
                break
        out[origin] += 1
    return out
