"""Balanced trivalent tropical graphs with a straight-line planar embedding."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from math import gcd
from typing import Optional, Sequence

from .errors import StructuralError
from .geometry import (
    Vec,
    add,
    angle_cmp,
    cross,
    dot,
    piece_intersection,
    positively_proportional,
    sub,
)
from .report import ValidationReport


@dataclass(frozen=True)
class FiniteEdge:
    """Edge ``tail -> head``; ``momentum`` is for that orientation."""

    tail: int
    head: int
    momentum: tuple[int, int]


@dataclass(frozen=True)
class InfiniteEdge:
    """Ray leaving ``vertex``; ``momentum`` is for the outgoing orientation."""

    vertex: int
    momentum: tuple[int, int]


@dataclass(frozen=True)
class TropicalGraph:
    positions: tuple[tuple[Fraction, Fraction], ...]
    finite_edges: tuple[FiniteEdge, ...]
    infinite_edges: tuple[InfiniteEdge, ...]
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        pos = tuple((Fraction(p[0]), Fraction(p[1])) for p in self.positions)
        object.__setattr__(self, "positions", pos)
        n = len(pos)
        for e in self.finite_edges:
            if not (0 <= e.tail < n and 0 <= e.head < n):
                raise StructuralError(f"edge {e} references a missing vertex")
        for r in self.infinite_edges:
            if not 0 <= r.vertex < n:
                raise StructuralError(f"ray {r} references a missing vertex")

    @property
    def num_vertices(self) -> int:
        return len(self.positions)

    def edge_ids(self) -> list[str]:
        return [f"e{i}" for i in range(len(self.finite_edges))] + [
            f"r{i}" for i in range(len(self.infinite_edges))
        ]

    def edge(self, eid: str):
        kind, idx = eid[0], int(eid[1:])
        return self.finite_edges[idx] if kind == "e" else self.infinite_edges[idx]

    def momentum(self, eid: str, at: int) -> tuple[int, int]:
        """Momentum of edge ``eid`` oriented away from vertex ``at``."""
        e = self.edge(eid)
        if isinstance(e, InfiniteEdge):
            return e.momentum
        if e.tail == at:
            return e.momentum
        return (-e.momentum[0], -e.momentum[1])

    def incidences(self) -> list[list[tuple[str, tuple[int, int]]]]:
        """Per vertex, the (edge id, outgoing momentum) pairs, loops listed twice."""
        out: list[list[tuple[str, tuple[int, int]]]] = [[] for _ in self.positions]
        for i, e in enumerate(self.finite_edges):
            m = e.momentum
            out[e.tail].append((f"e{i}", m))
            out[e.head].append((f"e{i}", (-m[0], -m[1])))
        for i, r in enumerate(self.infinite_edges):
            out[r.vertex].append((f"r{i}", r.momentum))
        return out

    def require_trivalent(self) -> None:
        for v, inc in enumerate(self.incidences()):
            if len(inc) != 3:
                raise StructuralError(f"vertex {v} has valency {len(inc)}, expected 3")

    def components(self) -> list[list[int]]:
        parent = list(range(self.num_vertices))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in self.finite_edges:
            parent[find(e.tail)] = find(e.head)
        groups: dict[int, list[int]] = {}
        for v in range(self.num_vertices):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())


# ---------------------------------------------------------------------------
# validators


def check_balanced(g: TropicalGraph) -> ValidationReport:
    g.require_trivalent()
    items, problems = [], []
    for v, inc in enumerate(g.incidences()):
        # inward momentum is the negated outgoing one
        s = (-sum(m[0] for _, m in inc), -sum(m[1] for _, m in inc))
        items.append({"vertex": v, "inward_sum": list(s)})
        if s != (0, 0):
            problems.append(f"vertex {v}: inward momenta sum to {s}")
    return ValidationReport(not problems, items, problems)


def _lattice_span(ms: Sequence[tuple[int, int]]) -> bool:
    d = 0
    for a, b in combinations(ms, 2):
        d = gcd(d, cross(a, b))
    return d == 1


def check_nondegenerate(g: TropicalGraph) -> ValidationReport:
    """Momenta at each vertex must not be all proportional.

    Whether they also generate Z^2 as a lattice is reported per vertex but
    does not affect the verdict.
    """
    g.require_trivalent()
    items, problems = [], []
    for v, inc in enumerate(g.incidences()):
        ms = [m for _, m in inc]
        proportional = all(cross(a, b) == 0 for a, b in combinations(ms, 2))
        items.append({"vertex": v, "all_proportional": proportional, "spans_lattice": _lattice_span(ms)})
        if proportional:
            problems.append(f"vertex {v}: momenta {ms} are all proportional")
    return ValidationReport(not problems, items, problems)


def _pieces(g: TropicalGraph) -> list[tuple[str, tuple[int, ...], tuple]]:
    out = []
    for i, e in enumerate(g.finite_edges):
        a, b = g.positions[e.tail], g.positions[e.head]
        out.append((f"e{i}", (e.tail, e.head), (a, sub(b, a), 1)))
    for i, r in enumerate(g.infinite_edges):
        out.append((f"r{i}", (r.vertex,), (g.positions[r.vertex], r.momentum, None)))
    return out


def check_embedding(g: TropicalGraph) -> ValidationReport:
    """Directions follow momenta and edges meet only at shared endpoints."""
    items, problems = [], []
    for i, e in enumerate(g.finite_edges):
        if e.momentum == (0, 0):
            raise StructuralError(f"edge e{i} has zero momentum")
        d = sub(g.positions[e.head], g.positions[e.tail])
        ok = positively_proportional(d, e.momentum)
        items.append({"edge": f"e{i}", "direction_ok": ok})
        if not ok:
            problems.append(f"edge e{i}: direction {d} not positively proportional to {e.momentum}")
    for i, r in enumerate(g.infinite_edges):
        if r.momentum == (0, 0):
            raise StructuralError(f"ray r{i} has zero momentum")
    crossings = []
    pieces = _pieces(g)
    for (ia, va, pa), (ib, vb, pb) in combinations(pieces, 2):
        hit = piece_intersection(pa, pb)
        if hit is None:
            continue
        if hit[0] == "point":
            t, u = hit[1]
            pt = add(pa[0], (pa[1][0] * t, pa[1][1] * t))
            shared = [v for v in set(va) & set(vb) if g.positions[v] == pt]
            if shared:
                continue
        crossings.append((ia, ib))
        problems.append(f"{ia} and {ib} intersect away from a shared vertex")
    return ValidationReport(not problems, items + [{"crossings": crossings}], problems)


@dataclass(frozen=True)
class InfiniteEdgeCount:
    count: int
    consistent: bool  # False would contradict the maximum principle


def infinite_edge_count(g: TropicalGraph) -> InfiniteEdgeCount:
    n = len(g.infinite_edges)
    return InfiniteEdgeCount(n, n >= 2)


def check_gprime(g: TropicalGraph, ray: str) -> bool:
    """Diagnostic: remove the vertex ``v0`` of ``ray`` together with its rays.

    When ``v0`` also has a finite edge, some ray of ``g`` not incident to
    ``v0`` must survive. An isolated tripod is reported as vacuously true.
    """
    v0 = g.edge(ray).vertex
    if all(e.tail != v0 and e.head != v0 for e in g.finite_edges):
        return True
    return any(r.vertex != v0 for r in g.infinite_edges)


# ---------------------------------------------------------------------------
# rotation system and regions


def _ray_order(g: TropicalGraph) -> list[int]:
    """Rays in counterclockwise order at infinity."""

    def cmp(i, j):
        ri, rj = g.infinite_edges[i], g.infinite_edges[j]
        c = angle_cmp(ri.momentum, rj.momentum)
        if c:
            return c
        ci = cross(ri.momentum, g.positions[ri.vertex])
        cj = cross(rj.momentum, g.positions[rj.vertex])
        return (ci > cj) - (ci < cj)

    return sorted(range(len(g.infinite_edges)), key=cmp_to_key(cmp))


Dart = tuple  # ("e", i, +1/-1) along a finite edge, ("r", i, "out"/"in") along a ray


@dataclass(frozen=True)
class Region:
    id: str
    bounded: bool
    darts: tuple


@dataclass(frozen=True)
class RegionAssignment:
    """Complementary regions of an embedded graph and their local views.

    ``around_vertex[v]`` is the set of regions meeting at ``v`` (size 3 for a
    trivalent vertex) and ``flanking[e]`` the two regions on either side of
    edge ``e``. ``sector[(v, eid)]`` is the region swept counterclockwise from
    edge ``eid`` at ``v``.
    """

    regions: tuple[Region, ...]
    around_vertex: dict
    flanking: dict
    sector: dict

    @property
    def bounded_count(self) -> int:
        return sum(1 for r in self.regions if r.bounded)


def _out_darts(g: TropicalGraph) -> list[list[tuple[Dart, tuple[int, int]]]]:
    out: list[list] = [[] for _ in g.positions]
    for i, e in enumerate(g.finite_edges):
        m = e.momentum
        out[e.tail].append((("e", i, 1), m))
        out[e.head].append((("e", i, -1), (-m[0], -m[1])))
    for i, r in enumerate(g.infinite_edges):
        out[r.vertex].append((("r", i, "out"), r.momentum))
    return out


def trace_regions(g: TropicalGraph) -> RegionAssignment:
    """Face tracing on the rotation system given by the angular order of momenta.

    Each dart keeps its region on the left; rays are joined at infinity in
    their counterclockwise order, so every walk is exactly one region and a
    walk is bounded iff it uses no ray.
    """
    rho_inv: dict = {}
    for v, darts in enumerate(_out_darts(g)):
        ordered = sorted(darts, key=cmp_to_key(lambda a, b: angle_cmp(a[1], b[1])))
        for k, (d, _) in enumerate(ordered):
            rho_inv[d] = ordered[k - 1][0]
    order = _ray_order(g)
    ccw_next_ray = {order[k]: order[(k + 1) % len(order)] for k in range(len(order))}

    def nxt(d):
        if d[0] == "e":
            return rho_inv[("e", d[1], -d[2])]
        if d[2] == "in":
            return rho_inv[("r", d[1], "out")]
        return ("r", ccw_next_ray[d[1]], "in")

    def sort_key(d):
        return (d[0], d[1], str(d[2]))

    all_darts = sorted(
        [("e", i, s) for i in range(len(g.finite_edges)) for s in (1, -1)]
        + [("r", i, s) for i in range(len(g.infinite_edges)) for s in ("out", "in")],
        key=sort_key,
    )
    face_of: dict = {}
    regions = []
    for d in all_darts:
        if d in face_of:
            continue
        walk = []
        x = d
        while x not in face_of:
            face_of[x] = len(regions)
            walk.append(x)
            x = nxt(x)
        regions.append(walk)
    ids = [f"R{k}" for k in range(len(regions))]
    region_objs = tuple(
        Region(ids[k], not any(w[0] == "r" for w in walk), tuple(walk)) for k, walk in enumerate(regions)
    )

    def rid(d):
        return ids[face_of[d]]

    around, flank, sector = {}, {}, {}
    for v, darts in enumerate(_out_darts(g)):
        around[v] = frozenset(rid(d) for d, _ in darts)
        for d, _ in darts:
            sector[(v, ("e" if d[0] == "e" else "r") + str(d[1]))] = rid(d)
    for i in range(len(g.finite_edges)):
        flank[f"e{i}"] = frozenset({rid(("e", i, 1)), rid(("e", i, -1))})
    for i in range(len(g.infinite_edges)):
        flank[f"r{i}"] = frozenset({rid(("r", i, "out")), rid(("r", i, "in"))})
    return RegionAssignment(region_objs, around, flank, sector)


def mirror_invariants(g: TropicalGraph) -> tuple[int, int]:
    """(genus, punctures): bounded complementary regions and unbounded edges."""
    return trace_regions(g).bounded_count, len(g.infinite_edges)


def first_betti(g: TropicalGraph) -> int:
    return len(g.finite_edges) - g.num_vertices + len(g.components())


# ---------------------------------------------------------------------------
# sweep decomposition


CASE_TAGS = {0: "three-infinite", 1: "two-infinite", 2: "one-infinite"}


@dataclass(frozen=True)
class GluingStep:
    """One vertex added during the sweep.

    ``glue_edges`` are the finite edges joining the new vertex to vertices
    placed earlier; ``new_open_edges`` are its remaining edges, noncompact in
    the partial graph. ``case`` names how many edges of the new vertex are
    noncompact at this stage.
    """

    vertex: int
    height: Fraction
    position: tuple[Fraction, Fraction]
    glue_edges: tuple[str, ...]
    new_open_edges: tuple[str, ...]
    case: str
    edges: tuple[tuple[str, object], ...]


def _perturbed(direction: Vec, v: Vec) -> tuple:
    # lexicographic perturbation d.v + eps*x + eps^2*y
    return (dot(direction, v), v[0], v[1])


def sweep_decompose(g: TropicalGraph, direction: Sequence[int] = (0, 1)) -> list[GluingStep]:
    """Order vertices by a generic linear height and record each attachment."""
    g.require_trivalent()
    direction = (int(direction[0]), int(direction[1]))
    if direction == (0, 0):
        raise ValueError("sweep direction must be nonzero")
    order = sorted(range(g.num_vertices), key=lambda v: _perturbed(direction, g.positions[v]) + (v,))
    placed: set[int] = set()
    steps = []
    inc = g.incidences()
    for v in order:
        glue, open_ = [], []
        seen = set()
        for eid, _ in inc[v]:
            if eid in seen:
                continue
            seen.add(eid)
            e = g.edge(eid)
            if isinstance(e, FiniteEdge):
                other = e.head if e.tail == v else e.tail
                (glue if other in placed else open_).append(eid)
            else:
                open_.append(eid)
        pos = g.positions[v]
        steps.append(
            GluingStep(
                vertex=v,
                height=Fraction(dot(direction, pos)),
                position=pos,
                glue_edges=tuple(glue),
                new_open_edges=tuple(open_),
                case=CASE_TAGS.get(len(glue), f"{len(glue)}-glue"),
                edges=tuple((eid, g.edge(eid)) for eid in sorted(seen)),
            )
        )
        placed.add(v)
    return steps


def replay_steps(steps: Sequence[GluingStep], num_vertices: Optional[int] = None) -> TropicalGraph:
    """Reassemble the graph from its sweep steps."""
    n = num_vertices if num_vertices is not None else len(steps)
    positions: list = [None] * n
    edges: dict[str, object] = {}
    for s in steps:
        positions[s.vertex] = s.position
        for eid, e in s.edges:
            edges.setdefault(eid, e)
    fin = sorted((k for k in edges if k[0] == "e"), key=lambda k: int(k[1:]))
    inf = sorted((k for k in edges if k[0] == "r"), key=lambda k: int(k[1:]))
    return TropicalGraph(tuple(positions), tuple(edges[k] for k in fin), tuple(edges[k] for k in inf))
