"""Lattice polygons, unimodular triangulations, and their dual tropical curves.

The dual curve is realized as an honest tropical curve: a height function
``h`` on the triangulation points that is strictly convex across every
interior edge is found, and the vertex dual to triangle ``T`` is placed at
the gradient of the affine interpolant of ``h`` on ``T``. Edges then point
along the momenta by construction and the drawing is an embedding (it is the
corner locus of ``max_p (<p, x> - h(p))``).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .errors import StructuralError, TriangulationError
from .geometry import Vec, convex_hull, orient, polygon_area2, rot_cw, sub
from .report import ValidationReport

log = logging.getLogger(__name__)

Point = tuple[int, int]

#: Recorded in every dual graph's metadata.
MOMENTUM_CONVENTION = "clockwise quarter-turn (x,y)->(y,-x) of the counterclockwise primal edge"


@dataclass(frozen=True)
class LatticePolytope:
    """A strictly convex lattice polygon, vertices counterclockwise."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        vs = self.vertices
        if len(vs) < 3:
            raise StructuralError("a lattice polygon needs at least 3 vertices")
        for v in vs:
            if len(v) != 2 or not all(isinstance(c, int) for c in v):
                raise StructuralError(f"non-integer vertex {v!r}")
        n = len(vs)
        for i in range(n):
            if orient(vs[i - 1], vs[i], vs[(i + 1) % n]) <= 0:
                raise StructuralError("polygon vertices must be strictly convex and counterclockwise")

    @classmethod
    def hull_of(cls, points: Sequence[Point]) -> "LatticePolytope":
        return cls(tuple(convex_hull(points)))

    @property
    def area2(self) -> int:
        return polygon_area2(self.vertices)

    def contains(self, p: Vec) -> bool:
        n = len(self.vertices)
        return all(orient(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0 for i in range(n))

    def on_boundary(self, p: Vec) -> bool:
        n = len(self.vertices)
        return self.contains(p) and any(
            orient(self.vertices[i], self.vertices[(i + 1) % n], p) == 0 for i in range(n)
        )

    def lattice_points(self) -> list[Point]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return [
            (x, y)
            for x in range(min(xs), max(xs) + 1)
            for y in range(min(ys), max(ys) + 1)
            if self.contains((x, y))
        ]

    def cone_generators(self) -> tuple[tuple[int, int, int], ...]:
        """Generators of the cone over the polygon placed at height one (metadata only)."""
        return tuple((1, x, y) for x, y in self.vertices)


@dataclass(frozen=True)
class Triangulation:
    polytope: LatticePolytope
    points: tuple[Point, ...]
    triangles: tuple[tuple[int, int, int], ...]

    @classmethod
    def from_points(
        cls,
        points: Sequence[Sequence[int]],
        triangles: Sequence[Sequence[int]],
        hull: Optional[Sequence[Sequence[int]]] = None,
    ) -> "Triangulation":
        pts = tuple((int(p[0]), int(p[1])) for p in points)
        tris = tuple(tuple(int(i) for i in t) for t in triangles)
        for t in tris:
            if len(t) != 3:
                raise StructuralError(f"triangle {t!r} does not have three indices")
        if hull is not None:
            poly = LatticePolytope(tuple((int(p[0]), int(p[1])) for p in hull))
        else:
            if len(set(pts)) < 3:
                raise StructuralError("need at least three distinct points")
            try:
                poly = LatticePolytope.hull_of(pts)
            except StructuralError as exc:
                raise StructuralError(f"points do not span a polygon: {exc}") from None
        return cls(poly, pts, tris)

    def triangle_points(self, i: int) -> tuple[Point, Point, Point]:
        a, b, c = self.triangles[i]
        return self.points[a], self.points[b], self.points[c]

    def ccw_triangle(self, i: int) -> tuple[int, int, int]:
        """Indices of triangle ``i`` reordered counterclockwise."""
        a, b, c = self.triangles[i]
        if orient(self.points[a], self.points[b], self.points[c]) < 0:
            return (a, c, b)
        return (a, b, c)

    def edge_incidence(self) -> dict[tuple[int, int], list[tuple[int, tuple[int, int]]]]:
        """Map sorted point-index pair -> [(triangle, ccw-directed edge)]."""
        inc: dict[tuple[int, int], list[tuple[int, tuple[int, int]]]] = {}
        for ti in range(len(self.triangles)):
            a, b, c = self.ccw_triangle(ti)
            for p, q in ((a, b), (b, c), (c, a)):
                inc.setdefault((min(p, q), max(p, q)), []).append((ti, (p, q)))
        return inc

    def interior_edges(self) -> list[tuple[int, int]]:
        return sorted(k for k, v in self.edge_incidence().items() if len(v) == 2)

    def boundary_edges(self) -> list[tuple[int, int]]:
        return sorted(k for k, v in self.edge_incidence().items() if len(v) == 1)

    def fan_cones(self) -> list[tuple[tuple[int, int, int], ...]]:
        """Rays (at height one) of the maximal cones of the fan, one per triangle."""
        return [tuple((1,) + p for p in self.triangle_points(i)) for i in range(len(self.triangles))]


def _check_indices(t: Triangulation) -> None:
    n = len(t.points)
    for k, tri in enumerate(t.triangles):
        for i in tri:
            if not 0 <= i < n:
                raise StructuralError(f"triangle {k} references point {i}, only {n} points given")


def _interiors_disjoint(p: Sequence[Point], q: Sequence[Point]) -> bool:
    # Separating-axis test on the edges of both (counterclockwise) triangles.
    for tri, other in ((p, q), (q, p)):
        for i in range(3):
            a, b = tri[i], tri[(i + 1) % 3]
            if all(orient(a, b, x) <= 0 for x in other):
                return True
    return False


def validate_triangulation(t: Triangulation) -> ValidationReport:
    """Check unimodularity, containment, disjointness and coverage.

    Raises :class:`StructuralError` for out-of-range indices; every other
    defect is reported through the returned report.
    """
    _check_indices(t)
    problems: list[str] = []
    items: list[dict] = []
    if len(set(t.points)) != len(t.points):
        problems.append("duplicate points")
    ccw = []
    for k, tri in enumerate(t.triangles):
        pa, pb, pc = (t.points[i] for i in tri)
        det = orient(pa, pb, pc)
        inside = all(t.polytope.contains(x) for x in (pa, pb, pc))
        items.append({"triangle": k, "det": det, "inside": inside, "overlaps": []})
        if abs(det) != 1:
            problems.append(f"triangle {k} has determinant {det}")
        if not inside:
            problems.append(f"triangle {k} leaves the polygon")
        ccw.append((pa, pb, pc) if det >= 0 else (pa, pc, pb))
    for i, j in combinations(range(len(ccw)), 2):
        if 0 in (items[i]["det"], items[j]["det"]):
            continue
        if not _interiors_disjoint(ccw[i], ccw[j]):
            items[i]["overlaps"].append(j)
            items[j]["overlaps"].append(i)
            problems.append(f"triangles {i} and {j} overlap")
    covered = sum(abs(it["det"]) for it in items)
    if covered != t.polytope.area2:
        problems.append(f"triangles cover area {covered}/2, polygon has {t.polytope.area2}/2")
    for v in t.polytope.vertices:
        if v not in t.points:
            problems.append(f"polygon vertex {v} is not a triangulation point")
    return ValidationReport(ok=not problems, items=items, problems=problems)


def _barycentric(tri: Sequence[Point], s: Point) -> tuple[Fraction, Fraction, Fraction]:
    a, b, c = tri
    d = orient(a, b, c)
    return (
        Fraction(orient(s, b, c), d),
        Fraction(orient(a, s, c), d),
        Fraction(orient(a, b, s), d),
    )


def _fold_rows(t: Triangulation) -> list[dict[int, Fraction]]:
    """One linear form in the heights per interior edge; positive <=> locally convex."""
    inc = t.edge_incidence()
    rows = []
    for key in sorted(inc):
        if len(inc[key]) != 2:
            continue
        (t1, _), (t2, _) = inc[key]
        tri1 = t.triangles[t1]
        (s,) = [i for i in t.triangles[t2] if i not in key]
        lam = _barycentric([t.points[i] for i in tri1], t.points[s])
        row: dict[int, Fraction] = {s: Fraction(1)}
        for idx, l in zip(tri1, lam):
            row[idx] = row.get(idx, Fraction(0)) - l
        rows.append(row)
    return rows


def _folds_ok(rows, h: Sequence[Fraction]) -> bool:
    return all(sum(c * h[i] for i, c in row.items()) > 0 for row in rows)


def convex_heights(t: Triangulation) -> Optional[tuple[Fraction, ...]]:
    """A height function strictly convex across every interior edge, or None.

    None means the triangulation is not regular. The LP is solved in floating
    point, then the candidate is rationalized and re-verified exactly.
    """
    rows = _fold_rows(t)
    n = len(t.points)
    if not rows:
        return tuple(Fraction(0) for _ in range(n))
    from scipy.optimize import linprog

    a_ub = [[-float(row.get(i, 0)) for i in range(n)] for row in rows]
    b_ub = [-1.0] * len(rows)
    fixed = set(t.triangles[0])
    bounds = [(0, 0) if i in fixed else (-1e4, 1e4) for i in range(n)]
    # minimize total fold so the solution stays small and sits at a vertex
    c = [0.0] * n
    for row in rows:
        for i, v in row.items():
            c[i] += float(v)
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if res.status != 0:
        return None
    for denom in (1, 2, 6, 12, 60, 840, 10**6):
        h = tuple(Fraction(x).limit_denominator(denom) for x in res.x)
        if _folds_ok(rows, h):
            return h
    log.warning("LP heights could not be rationalized; triangulation treated as non-regular")
    return None


def _gradient(tri: Sequence[Point], hs: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    (p0, p1, p2), (h0, h1, h2) = tri, hs
    u, v = sub(p1, p0), sub(p2, p0)
    d = u[0] * v[1] - u[1] * v[0]
    r1, r2 = h1 - h0, h2 - h0
    return (Fraction(r1 * v[1] - r2 * u[1], d), Fraction(u[0] * r2 - v[0] * r1, d))


def dual_tropical_graph(t: Triangulation):
    """The balanced trivalent tropical curve dual to a unimodular triangulation.

    Vertex ``i`` is dual to triangle ``i``; finite edges are dual to interior
    edges and rays to boundary edges (``meta["primal_edge"]`` records which).
    The momentum leaving the vertex of triangle ``T`` across primal edge
    ``s`` is the clockwise quarter turn of ``s`` traversed counterclockwise
    around ``T``.
    """
    from .tropical import FiniteEdge, InfiniteEdge, TropicalGraph

    rep = validate_triangulation(t)
    if not rep.ok:
        raise TriangulationError("invalid triangulation: " + "; ".join(rep.problems))
    heights = convex_heights(t)
    if heights is None:
        raise TriangulationError("triangulation is not regular: no dual tropical curve realizes it")
    positions = []
    for i, tri in enumerate(t.triangles):
        positions.append(_gradient([t.points[k] for k in tri], [heights[k] for k in tri]))

    finite, infinite, primal = [], [], {}
    inc = t.edge_incidence()
    for key in sorted(inc):
        entries = inc[key]
        (t1, (p, q)) = entries[0]
        mom = rot_cw(sub(t.points[q], t.points[p]))
        if len(entries) == 2:
            t2 = entries[1][0]
            primal[f"e{len(finite)}"] = key
            finite.append(FiniteEdge(t1, t2, mom))
        else:
            primal[f"r{len(infinite)}"] = key
            infinite.append(InfiniteEdge(t1, mom))
    meta = {
        "momentum_convention": MOMENTUM_CONVENTION,
        "heights": tuple(heights),
        "primal_edge": primal,
        "vertex_triangle": tuple(range(len(t.triangles))),
    }
    return TropicalGraph(tuple(positions), tuple(finite), tuple(infinite), meta=meta)


@dataclass(frozen=True)
class Chart:
    triangle: int
    coordinates: frozenset[Point]


@dataclass(frozen=True)
class ChartSet:
    """The toric affine charts of the fan and their pairwise overlaps."""

    charts: tuple[Chart, ...]
    adjacencies: tuple[tuple[int, int, frozenset[Point]], ...]
    meta: dict = field(default_factory=dict, compare=False)


def fan_charts(t: Triangulation) -> ChartSet:
    rep = validate_triangulation(t)
    if not rep.ok:
        raise TriangulationError("invalid triangulation: " + "; ".join(rep.problems))
    charts = tuple(
        Chart(i, frozenset(t.triangle_points(i))) for i in range(len(t.triangles))
    )
    adj = []
    for key, entries in sorted(t.edge_incidence().items()):
        if len(entries) == 2:
            a, b = sorted(e[0] for e in entries)
            adj.append((a, b, frozenset(t.points[k] for k in key)))
    cone = t.polytope.cone_generators()
    return ChartSet(charts, tuple(adj), meta={"singular_cone": cone})
