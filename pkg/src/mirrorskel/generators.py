"""Seeded generators for triangulations, ribbon graphs and representations."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .geometry import convex_hull, orient, polygon_area2
from .lattice import LatticePolytope, Triangulation, convex_heights
from .quiver import Quiver, QuiverRep, wheel_to_quiver
from .ribbon import Contraction, Expansion, RibbonGraph, Subdivision, is_connected


def standard_triangulation(d: int) -> Triangulation:
    """The unimodular subdivision of the dilated unit triangle into d^2 triangles."""
    if d < 1:
        raise ValueError("d must be positive")
    pts = [(i, j) for i in range(d + 1) for j in range(d + 1 - i)]
    idx = {p: k for k, p in enumerate(pts)}
    tris = []
    for i in range(d):
        for j in range(d - i):
            tris.append((idx[(i, j)], idx[(i + 1, j)], idx[(i, j + 1)]))
            if i + j <= d - 2:
                tris.append((idx[(i + 1, j)], idx[(i + 1, j + 1)], idx[(i, j + 1)]))
    return Triangulation.from_points(pts, tris)


def unit_triangle() -> Triangulation:
    return Triangulation.from_points([(0, 0), (1, 0), (0, 1)], [(0, 1, 2)])


def two_triangles() -> Triangulation:
    return Triangulation.from_points([(0, 0), (1, 0), (0, 1), (1, 1)], [(0, 1, 2), (1, 3, 2)])


def placing_triangulation(points) -> tuple[list[tuple[int, int, int]], list[tuple[int, int]]]:
    """Triangulate all given points by inserting them in lexicographic order.

    Returns the triangles and the sorted point list they index into.
    """
    pts = sorted(set(points))
    n = len(pts)
    k = 2
    while k < n and orient(pts[0], pts[1], pts[k]) == 0:
        k += 1
    if k == n:
        raise ValueError("points are collinear")
    chain = list(range(k))
    apex = k
    tris = []
    for i in range(k - 1):
        tris.append((chain[i], chain[i + 1], apex))
    # hull as a counterclockwise cycle of indices, collinear points kept
    if orient(pts[0], pts[k - 1], pts[apex]) > 0:
        hull = chain + [apex]
    else:
        hull = [apex] + chain[::-1]
    for p in range(k + 1, n):
        m = len(hull)
        vis = [orient(pts[hull[i]], pts[hull[(i + 1) % m]], pts[p]) < 0 for i in range(m)]
        for i in range(m):
            if vis[i]:
                tris.append((hull[(i + 1) % m], hull[i], p))
        # visible edges are contiguous; splice p in place of their interior vertices
        start = next(i for i in range(m) if vis[i] and not vis[i - 1])
        end = start
        while vis[end % m]:
            end += 1
        keep = [hull[(end + j) % m] for j in range(m - (end - start) + 1)]
        hull = keep + [p]
    return tris, pts


def _flip(t_pts, tris, rng: random.Random, rounds: int):
    tris = [tuple(t) for t in tris]
    for _ in range(rounds):
        edges: dict = {}
        for ti, tri in enumerate(tris):
            for a in range(3):
                p, q = tri[a], tri[(a + 1) % 3]
                edges.setdefault((min(p, q), max(p, q)), []).append(ti)
        interior = sorted(k for k, v in edges.items() if len(v) == 2)
        if not interior:
            return tris
        p, q = rng.choice(interior)
        t1, t2 = edges[(p, q)]
        (r,) = set(tris[t1]) - {p, q}
        (s,) = set(tris[t2]) - {p, q}
        P, Q, R, S = (t_pts[i] for i in (p, q, r, s))
        if orient(R, S, P) * orient(R, S, Q) < 0 and orient(P, Q, R) * orient(P, Q, S) < 0:
            tris[t1] = (r, s, p)
            tris[t2] = (r, s, q)
    return tris


def random_polygon(rng: random.Random, max_area2: int = 20, box: int = 5) -> LatticePolytope:
    while True:
        k = rng.randint(3, 6)
        pts = [(rng.randint(0, box), rng.randint(0, box)) for _ in range(k)]
        hull = convex_hull(pts)
        if len(hull) >= 3 and 1 <= polygon_area2(hull) <= max_area2:
            return LatticePolytope(tuple(hull))


def random_triangulation(
    seed: Optional[int] = None, max_triangles: int = 20, rng: Optional[random.Random] = None
) -> Triangulation:
    """A random regular unimodular triangulation using every lattice point of
    a random lattice polygon (so it has ``area2`` triangles)."""
    rng = rng or random.Random(seed)
    while True:
        poly = random_polygon(rng, max_area2=max_triangles)
        lp = poly.lattice_points()
        tris, pts = placing_triangulation(lp)
        tris = _flip(pts, tris, rng, rng.randint(0, 3 * len(tris)))
        t = Triangulation.from_points(pts, tris)
        if convex_heights(t) is not None:
            return t


def random_corpus(n: int, seed: int = 0, max_triangles: int = 20) -> list[Triangulation]:
    rng = random.Random(seed)
    return [random_triangulation(rng=rng, max_triangles=max_triangles) for _ in range(n)]


# ---------------------------------------------------------------------------
# ribbon graphs


def random_ribbon_graph(rng: random.Random, max_edges: int = 6) -> RibbonGraph:
    """A connected closed ribbon graph with random pairing and cyclic orders."""
    while True:
        e = rng.randint(1, max_edges)
        darts = list(range(2 * e))
        rng.shuffle(darts)
        sigma = {}
        for i in range(0, 2 * e, 2):
            a, b = darts[i], darts[i + 1]
            sigma[a], sigma[b] = b, a
        nv = rng.randint(1, max(1, e))
        order = list(range(2 * e))
        rng.shuffle(order)
        cuts = sorted(rng.sample(range(1, 2 * e), nv - 1)) if nv > 1 else []
        groups, prev = [], 0
        for c in cuts + [2 * e]:
            groups.append(order[prev:c])
            prev = c
        x = RibbonGraph.from_orders(sigma, {v: tuple(gp) for v, gp in enumerate(groups)})
        if is_connected(x):
            return x


def random_move(x: RibbonGraph, rng: random.Random):
    """A random applicable contraction, expansion or subdivision (or None)."""
    kinds = ["contract", "expand", "subdivide"]
    rng.shuffle(kinds)
    for kind in kinds:
        if kind == "contract":
            cands = [d for d in x.darts if not x.is_external(d) and not x.is_loop(d)]
            cands = [d for d in cands if len(x.darts_at(x.vertex_of[d])) + len(x.darts_at(x.vertex_of[x.sigma[d]])) > 2]
            if cands:
                return Contraction(rng.choice(cands))
        elif kind == "expand":
            vs = [v for v in x.vertices if len(x.darts_at(v)) >= 2]
            if vs:
                v = rng.choice(vs)
                order = x.cyclic_order(v)
                k = len(order)
                r = rng.randrange(k)
                cut = rng.randint(1, k - 1)
                rot = order[r:] + order[:r]
                return Expansion(v, rot[:cut], rot[cut:])
        else:
            cands = [d for d in x.darts if not x.is_external(d)]
            if cands:
                return Subdivision(rng.choice(cands))
    return None


# ---------------------------------------------------------------------------
# representations


def random_pattern(rng: random.Random, max_len: int = 5) -> str:
    return "".join(rng.choice("+-") for _ in range(rng.randint(1, max_len)))


def random_rep(q: Quiver, rng: random.Random, max_dim: int = 4, dims=None) -> QuiverRep:
    dims = dims or [rng.randint(0, max_dim) for _ in q.vertices]
    mats = []
    for s, t in q.arrows:
        mats.append(
            [[Fraction(rng.randint(-2, 2)) for _ in range(dims[s])] for _ in range(dims[t])]
        )
    return QuiverRep(q, tuple(dims), tuple(mats))


def random_wheel_quiver(rng: random.Random, max_len: int = 5) -> Quiver:
    return wheel_to_quiver(random_pattern(rng, max_len), rng.choice((1, -1)))


__all__ = [
    "placing_triangulation",
    "random_corpus",
    "random_move",
    "random_pattern",
    "random_rep",
    "random_ribbon_graph",
    "random_triangulation",
    "random_wheel_quiver",
    "standard_triangulation",
    "two_triangles",
    "unit_triangle",
]
