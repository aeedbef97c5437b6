"""Exact planar primitives on integer points."""
from __future__ import annotations

from fractions import Fraction


class Degenerate(Exception):
    """Non-generic position: touching, overlapping or triple intersections."""


def cross(ax, ay, bx, by) -> int:
    return ax * by - ay * bx


def seg_intersection(a, b, c, d):
    """Intersection of segments ab and cd.

    Returns None when disjoint, otherwise (t, u) with the crossing at
    a + t(b-a) = c + u(d-c), both strictly inside (0, 1).  Raises Degenerate
    when they touch at an endpoint or overlap.
    """
    rx, ry = b[0] - a[0], b[1] - a[1]
    sx, sy = d[0] - c[0], d[1] - c[1]
    if max(a[0], b[0]) < min(c[0], d[0]) or max(c[0], d[0]) < min(a[0], b[0]):
        return None
    if max(a[1], b[1]) < min(c[1], d[1]) or max(c[1], d[1]) < min(a[1], b[1]):
        return None
    den = cross(rx, ry, sx, sy)
    qx, qy = c[0] - a[0], c[1] - a[1]
    if den == 0:
        if cross(qx, qy, rx, ry) != 0:
            return None  # parallel, distinct lines
        # collinear: overlapping if projections overlap
        rr = rx * rx + ry * ry
        t0 = qx * rx + qy * ry
        t1 = (d[0] - a[0]) * rx + (d[1] - a[1]) * ry
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > rr:
            return None
        raise Degenerate("collinear overlap")
    tn = cross(qx, qy, sx, sy)
    un = cross(qx, qy, rx, ry)
    if den < 0:
        den, tn, un = -den, -tn, -un
    if tn < 0 or tn > den or un < 0 or un > den:
        return None
    if tn == 0 or tn == den or un == 0 or un == den:
        raise Degenerate("segments touch at an endpoint")
    return Fraction(tn, den), Fraction(un, den)


def angle_key(c, v):
    """Sort key for the counterclockwise angle from direction c to v in [0, 2pi)."""
    X = c[0] * v[0] + c[1] * v[1]
    Y = cross(c[0], c[1], v[0], v[1])
    s = abs(X) + abs(Y)
    if Y > 0 or (Y == 0 and X > 0):
        return (0, Fraction(-X, s))
    return (1, Fraction(X, s))
