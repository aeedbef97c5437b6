"""From oriented divides to link diagrams (pipeline A).

The link of an oriented divide Q is the set of its unit tangent vectors in
D x S^1 with the fibres over the boundary collapsed.  Projecting to D along
the angle coordinate, measured from a cut direction c, gives a diagram in
which the strand with the smaller angle lies over.  The lift meets the cut
page only at corners where the tangent sweeps past c; each such point is
dragged out to the boundary along a thin finger whose incoming leg lies over
everything and whose outgoing leg lies under everything (or the reverse,
depending on the turning direction).  With c = +x1 these corners are the
rightward-tangent x2-extrema.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .diagram import Drawing, LinkDiagram
from .doubling import OrientedDivide, double
from .geometry import Degenerate, angle_key, cross, seg_intersection
from .layout import embed, normalize_slopes

OVER_LEG, UNDER_LEG, FAR, PLAIN = "O", "U", "C", "N"


@dataclass(frozen=True)
class Hit:
    a: tuple[int, int]  # (curve, segment)
    b: tuple[int, int]
    ta: Fraction
    tb: Fraction
    point: tuple[Fraction, Fraction]


def _segments(curves):
    segs = []
    for ci, c in enumerate(curves):
        n = len(c)
        for si in range(n):
            segs.append((ci, si, c[si], c[(si + 1) % n]))
    return segs


def _seg_arrays(segs):
    a = np.array([x[2] for x in segs], dtype=np.int64)
    b = np.array([x[3] for x in segs], dtype=np.int64)
    return a, b


def _orient(p, q, r):
    return (q[..., 0] - p[..., 0]) * (r[..., 1] - p[..., 1]) - (q[..., 1] - p[..., 1]) * (r[..., 0] - p[..., 0])


def _candidate_pairs(a, b, chunk=512):
    """Index pairs i < j of segments whose bounding boxes meet."""
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    n = len(a)
    out_i, out_j = [], []
    for s0 in range(0, n, chunk):
        s1 = min(n, s0 + chunk)
        ok = (lo[s0:s1, None, 0] <= hi[None, :, 0]) & (lo[None, :, 0] <= hi[s0:s1, None, 0])
        ok &= (lo[s0:s1, None, 1] <= hi[None, :, 1]) & (lo[None, :, 1] <= hi[s0:s1, None, 1])
        ii, jj = np.nonzero(ok)
        ii = ii + s0
        keep = ii < jj
        out_i.append(ii[keep])
        out_j.append(jj[keep])
    return np.concatenate(out_i), np.concatenate(out_j)


def find_intersections(curves) -> list[Hit]:
    """All transversal crossings between segments of closed polylines."""
    segs = _segments(curves)
    if not segs:
        return []
    sizes = [len(c) for c in curves]
    a, b = _seg_arrays(segs)
    ii, jj = _candidate_pairs(a, b)
    cid = np.array([x[0] for x in segs])
    sid = np.array([x[1] for x in segs])
    nsz = np.array(sizes)[cid]
    same = cid[ii] == cid[jj]
    gap = (sid[ii] - sid[jj]) % nsz[ii]
    adjacent = same & ((gap == 1) | (gap == nsz[ii] - 1))
    tiny = same & (nsz[ii] <= 2)
    for i, j in zip(ii[adjacent & ~tiny], jj[adjacent & ~tiny]):
        _, _, p, q = segs[i]
        _, _, r, t = segs[j]
        d1 = (q[0] - p[0], q[1] - p[1])
        d2 = (t[0] - r[0], t[1] - r[1])
        if cross(*d1, *d2) == 0 and d1[0] * d2[0] + d1[1] * d2[1] < 0:
            raise Degenerate("cusp")
    rest = ~adjacent & ~tiny
    ii, jj = ii[rest], jj[rest]
    A, B, C, D = a[ii], b[ii], a[jj], b[jj]
    o1, o2 = _orient(A, B, C), _orient(A, B, D)
    o3, o4 = _orient(C, D, A), _orient(C, D, B)
    proper = (np.sign(o1) * np.sign(o2) < 0) & (np.sign(o3) * np.sign(o4) < 0)
    touchy = (o1 == 0) | (o2 == 0) | (o3 == 0) | (o4 == 0)
    hits = []
    for i, j in zip(ii[touchy], jj[touchy]):
        seg_intersection(segs[i][2], segs[i][3], segs[j][2], segs[j][3])  # raises if they meet
    for i, j in zip(ii[proper], jj[proper]):
        ci, si, p, q = segs[i]
        cj, sj, r, t = segs[j]
        tu = seg_intersection(p, q, r, t)
        ta, tb = tu
        pt = (p[0] + ta * (q[0] - p[0]), p[1] + ta * (q[1] - p[1]))
        hits.append(Hit((ci, si), (cj, sj), ta, tb, pt))
    pts = [h.point for h in hits]
    if len(set(pts)) != len(pts):
        raise Degenerate("triple point")
    return hits


def _level(tag, direction, c):
    if tag == OVER_LEG:
        return (-1,)
    if tag == UNDER_LEG:
        return (2,)
    return (0,) + angle_key(c, direction)


def _corner_kind(d_in, d_out, c) -> int:
    """+1 if the tangent sweeps clockwise past c at this corner, -1 if
    counterclockwise, 0 if it does not pass c."""
    turn = cross(*d_in, *d_out)
    if turn == 0:
        return 0
    a = cross(*d_in, *c)
    b = cross(*c, *d_out)
    if turn < 0 and a < 0 and b < 0:
        return 1
    if turn > 0 and a > 0 and b > 0:
        return -1
    return 0


def _parallel_free(curves, v) -> bool:
    for c in curves:
        n = len(c)
        for i in range(n):
            a, b = c[i], c[(i + 1) % n]
            if cross(b[0] - a[0], b[1] - a[1], *v) == 0:
                return False
    return True


CUTS = [(1, 0), (1000, 1), (997, -3), (991, 7), (983, -11)]
# extra directions tried when searching for a small diagram
MORE_CUTS = [(-1000, 1), (1, -1000), (-1, 1000), (-1000, -1), (-1, -1000), (1, 1000), (-1, 0)]


def _fingered(curves, c, w, choose=True):
    """Insert fingers at cut corners.  Returns (curves, tags) with tags[i][k]
    the level class of segment k of curve i."""
    xs = [p[0] for cv in curves for p in cv]
    ys = [p[1] for cv in curves for p in cv]
    lo = (min(xs) - 8, min(ys) - 8)
    hi = (max(xs) + 8, max(ys) + 8)
    # leg offset: axis vector on the counterclockwise side of w
    p = (-1, 0) if abs(w[1]) >= abs(w[0]) else (0, 1)
    if cross(*w, *p) < 0:
        p = (-p[0], -p[1])

    def reach(P, f):
        # smallest integer t with P + t f outside the box
        best = None
        for k in (0, 1):
            if f[k] > 0:
                t = -(-(hi[k] - P[k]) // f[k])
            elif f[k] < 0:
                t = -(-(P[k] - lo[k]) // -f[k])
            else:
                continue
            best = t if best is None else min(best, t)
        return best + 2

    plain = _seg_arrays(_segments(curves))
    new_curves, new_tags = [], []
    for cv in curves:
        n = len(cv)
        pts, tags = [], []
        for i in range(n):
            P, prev, nxt = cv[i], cv[i - 1], cv[(i + 1) % n]
            d_in = (P[0] - prev[0], P[1] - prev[1])
            d_out = (nxt[0] - P[0], nxt[1] - P[1])
            kind = _corner_kind(d_in, d_out, c)
            if kind == 0:
                pts.append(P)
                tags.append(PLAIN)
                continue
            f = w if kind == 1 else (-w[0], -w[1])
            if choose:
                f = min((f, (-f[0], -f[1])), key=lambda g: _ray_cost(P, g, reach(P, g), plain))
            pf = p if f == w else (-p[0], -p[1])
            back = (-d_in[0], -d_in[1])
            s = 1 if angle_key(f, back) < angle_key(f, d_out) else -1
            t = reach(P, f)
            b_in = (P[0] + s * pf[0], P[1] + s * pf[1])
            b_out = (P[0] - s * pf[0], P[1] - s * pf[1])
            far_in = (b_in[0] + t * f[0], b_in[1] + t * f[1])
            far_out = (b_out[0] + t * f[0], b_out[1] + t * f[1])
            leg_in, leg_out = (OVER_LEG, UNDER_LEG) if kind == 1 else (UNDER_LEG, OVER_LEG)
            pts += [b_in, far_in, far_out, b_out]
            tags += [leg_in, FAR, leg_out, PLAIN]
        new_curves.append(tuple(pts))
        new_tags.append(tuple(tags))
    return new_curves, new_tags


def _ray_cost(P, f, t, segs) -> int:
    """Number of segments met by the finger ray (a heuristic, so touching
    counts as a hit)."""
    a, b = segs
    Q = np.array((P[0] + t * f[0], P[1] + t * f[1]), dtype=np.int64)
    P = np.array(P, dtype=np.int64)
    o1, o2 = _orient(P, Q, a), _orient(P, Q, b)
    o3, o4 = _orient(a, b, P), _orient(a, b, Q)
    return int(np.count_nonzero((np.sign(o1) * np.sign(o2) <= 0) & (np.sign(o3) * np.sign(o4) <= 0)))


def diagram_of_oriented_divide(q: OrientedDivide, choose_fingers: bool = True, best_of: int = 1) -> LinkDiagram:
    """Diagram of L_ori(q) from the first generic cut direction.

    Every generic cut gives the same link.  With best_of > 1 that many cuts
    are tried and the one whose Reidemeister-reduced diagram is smallest is
    returned (already reduced).
    """
    curves = [tuple(c) for c in q.curves]
    last = None
    found = []
    for c in CUTS + (MORE_CUTS if best_of > 1 else []):
        if not _parallel_free(curves, c):
            continue
        for K in (101, 103, 107, 109, 113, 127, 131, 137):
            w = (-c[1] + c[0] // K if c[0] >= K else 1, K) if c == (1, 0) else _perp_family(c, K)
            if not _parallel_free(curves, w):
                continue
            try:
                diag = _build(curves, c, w, choose_fingers)
            except Degenerate as exc:
                last = exc
                continue
            if best_of <= 1:
                return diag
            found.append(diag)
            break
        if len(found) >= best_of:
            break
    if not found:
        raise Degenerate(f"no generic cut found: {last}")
    from .invariants import simplify

    return min((simplify(x) for x in found), key=lambda x: len(x.crossings))


def _perp_family(c, K):
    # nearly perpendicular to c, counterclockwise side
    return (-c[1] * K + (1 if c[0] else 0), c[0] * K // max(1, abs(c[0])) if c[0] else 1)


def _build(curves, c, w, choose) -> LinkDiagram:
    fc, tags = _fingered(curves, c, w, choose)
    hits = find_intersections(fc)
    events: dict[int, list] = {i: [] for i in range(len(fc))}
    info = []
    for hid, h in enumerate(hits):
        (ca, sa), (cb, sb) = h.a, h.b
        ta, tb = tags[ca][sa], tags[cb][sb]
        if FAR in (ta, tb):
            raise Degenerate("finger end crosses the diagram")
        da = _dir(fc[ca], sa)
        db = _dir(fc[cb], sb)
        la, lb = _level(ta, da, c), _level(tb, db, c)
        if la == lb:
            raise Degenerate("equal levels at a crossing")
        if la < lb:  # a is over
            over, under = (ca, sa, h.ta, da), (cb, sb, h.tb, db)
        else:
            over, under = (cb, sb, h.tb, db), (ca, sa, h.ta, da)
        info.append((over, under))
        events[over[0]].append((over[1], over[2], hid, "o"))
        events[under[0]].append((under[1], under[2], hid, "u"))
    slots: dict[tuple[int, str], tuple[int, int]] = {}  # (hit, role) -> (in label, out label)
    label = 0
    free = 0
    for ci in range(len(fc)):
        ev = sorted(events[ci])
        if not ev:
            free += 1
            continue
        first = label + 1
        m = len(ev)
        for k, (_, _, hid, role) in enumerate(ev):
            lab_in = first + (k - 1) % m
            lab_out = first + k
            slots[(hid, role)] = (lab_in, lab_out)
        label += m
    crossings, signs = [], []
    for hid, (over, under) in enumerate(info):
        ui, uo = slots[(hid, "u")]
        oi, oo = slots[(hid, "o")]
        if cross(*under[3], *over[3]) > 0:
            crossings.append((ui, oi, uo, oo))
            signs.append(-1)
        else:
            crossings.append((ui, oo, uo, oi))
            signs.append(1)
    drawing = Drawing(
        tuple(tuple((float(x), float(y)) for x, y in cv) for cv in fc),
        (True,) * len(fc),
        tuple(((float(h.point[0]), float(h.point[1])), tuple(float(x) for x in o[3])) for h, (o, _) in zip(hits, info)),
    )
    return LinkDiagram(tuple(crossings), tuple(signs), free, drawing)


def _dir(curve, si):
    a, b = curve[si], curve[(si + 1) % len(curve)]
    return (b[0] - a[0], b[1] - a[1])


# doubled curves with more segments than this get a cut search
SEARCH_ABOVE = 150


def link_of_graph_divide(d, normalize: bool = False, best_of: int | None = None) -> LinkDiagram:
    """Pipeline A: embed, optionally normalize slopes, double, visualize."""
    g = embed(d)
    if normalize:
        g = normalize_slopes(g)
    q = double(g)
    if best_of is None:
        best_of = 6 if sum(len(c) for c in q.curves) > SEARCH_ABOVE else 1
    return diagram_of_oriented_divide(q, best_of=best_of)
