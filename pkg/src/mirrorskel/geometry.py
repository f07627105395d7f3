"""Exact planar geometry on integer / Fraction coordinates.

Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Optional, Sequence, Tuple, Union

Number = Union[int, Fraction]
Vec = Tuple[Number, Number]


def sub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def add(a: Vec, b: Vec) -> Vec:
    return (a[0] + b[0], a[1] + b[1])


def scale(a: Vec, t: Number) -> Vec:
    return (a[0] * t, a[1] * t)


def dot(a: Vec, b: Vec) -> Number:
    return a[0] * b[0] + a[1] * b[1]


def cross(a: Vec, b: Vec) -> Number:
    return a[0] * b[1] - a[1] * b[0]


def orient(a: Vec, b: Vec, c: Vec) -> Number:
    """Twice the signed area of (a, b, c); positive when counterclockwise."""
    return cross(sub(b, a), sub(c, a))


def rot_cw(v: Vec) -> Vec:
    """Clockwise quarter turn (x, y) -> (y, -x)."""
    return (v[1], -v[0])


def positively_proportional(a: Vec, b: Vec) -> bool:
    return cross(a, b) == 0 and dot(a, b) > 0


def _half(v: Vec) -> int:
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def angle_cmp(a: Vec, b: Vec) -> int:
    """Compare nonzero vectors by counterclockwise angle from the +x axis."""
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return -1 if ha < hb else 1
    c = cross(a, b)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


angle_key = cmp_to_key(angle_cmp)


def polygon_area2(pts: Sequence[Vec]) -> Number:
    """Twice the signed area of a simple polygon."""
    n = len(pts)
    return sum(cross(pts[i], pts[(i + 1) % n]) for i in range(n))


def convex_hull(points: Sequence[Vec]) -> list[Vec]:
    """Strictly convex hull, counterclockwise, starting at the lexicographic minimum."""
    pts = sorted(set((p[0], p[1]) for p in points))
    if len(pts) <= 2:
        return pts

    def half_hull(seq):
        out: list[Vec] = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half_hull(pts)
    upper = half_hull(reversed(pts))
    return lower[:-1] + upper[:-1]


# A drawn piece is a segment (base, direction, 1) or a ray (base, direction, None):
# points base + t * direction with 0 <= t <= tmax.
Piece = Tuple[Vec, Vec, Optional[int]]


def _in_range(t: Fraction, tmax: Optional[int]) -> bool:
    return t >= 0 and (tmax is None or t <= tmax)


def piece_intersection(p: Piece, q: Piece) -> Optional[tuple[str, object]]:
    """Intersect two pieces exactly.

    Returns None when disjoint, ``("point", (t, u))`` for a single crossing
    with parameters on each piece, and ``("overlap", None)`` when they share
    a segment of positive length.
    """
    (a, d, tmax), (b, e, umax) = p, q
    den = cross(d, e)
    w = sub(b, a)
    if den != 0:
        t = Fraction(cross(w, e)) / den
        u = Fraction(cross(w, d)) / den
        if _in_range(t, tmax) and _in_range(u, umax):
            return ("point", (t, u))
        return None
    if cross(w, d) != 0:
        return None
    # collinear: project q onto p's parameter line
    dd = dot(d, d)
    u0 = Fraction(dot(w, d)) / dd
    step = Fraction(dot(e, d)) / dd
    lo_p, hi_p = Fraction(0), (None if tmax is None else Fraction(tmax))
    if umax is None:
        lo_q, hi_q = (u0, None) if step > 0 else (None, u0)
    else:
        ends = sorted([u0, u0 + step * umax])
        lo_q, hi_q = ends
    lo = lo_p if lo_q is None else max(lo_p, lo_q)
    if hi_p is None:
        hi = hi_q
    elif hi_q is None:
        hi = hi_p
    else:
        hi = min(hi_p, hi_q)
    if hi is not None and hi < lo:
        return None
    if hi is not None and hi == lo:
        # single touching point; recover parameter on q
        u = (lo - u0) / step
        return ("point", (lo, u))
    return ("overlap", None)
