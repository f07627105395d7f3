"""Labeled chart diagrams on the B side.

Objects carry a coordinate set and a chart type; arrows are restrictions
that invert exactly one coordinate. Two constructions are provided (from a
tropical graph and from the fan of a triangulation) together with an
isomorphism test that renames coordinates consistently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Hashable, Iterable, Mapping, Optional

from .errors import StructuralError, TriangulationError
from .lattice import Triangulation, validate_triangulation
from .tropical import FiniteEdge, RegionAssignment, TropicalGraph, check_embedding, trace_regions

VERTEX_CHART = "A^3"
EDGE_CHART = "G_m x A^2"


@dataclass(frozen=True)
class ChartObject:
    kind: str  # "vertex" or "edge"
    coordinates: frozenset
    chart_type: str

    @property
    def function(self) -> str:
        """Symbolic superpotential: the product of the coordinates."""
        return "*".join(f"t_{c}" for c in sorted(map(str, self.coordinates)))


@dataclass(frozen=True)
class Arrow:
    source: Hashable
    target: Hashable
    inverted: Hashable

    def mapping(self, kept: Iterable[Hashable]) -> str:
        parts = [f"t_{c}->t_{c}" for c in sorted(map(str, kept))]
        return ", ".join(parts + [f"t_{self.inverted}->u"])


@dataclass(frozen=True)
class ChartDiagram:
    objects: Mapping[Hashable, ChartObject]
    arrows: tuple[Arrow, ...]
    meta: dict = field(default_factory=dict, compare=False)

    def arrow_mapping(self, a: Arrow) -> str:
        return a.mapping(self.objects[a.target].coordinates)

    def vertex_keys(self) -> list:
        return [k for k, o in self.objects.items() if o.kind == "vertex"]

    def edge_keys(self) -> list:
        return [k for k, o in self.objects.items() if o.kind == "edge"]


def regions(g: TropicalGraph) -> RegionAssignment:
    """Complementary regions of an embedded graph with per-vertex and per-edge views."""
    rep = check_embedding(g)
    if not rep.ok:
        raise StructuralError("graph is not embedded: " + "; ".join(rep.problems))
    return trace_regions(g)


def _check_arrows(objects, arrows) -> None:
    for a in arrows:
        src, tgt = objects[a.source].coordinates, objects[a.target].coordinates
        if not tgt <= src or src - tgt != {a.inverted}:
            raise StructuralError(f"arrow {a} does not invert exactly one coordinate")


def build_B_diagram(g: TropicalGraph) -> ChartDiagram:
    for i, e in enumerate(g.finite_edges):
        if e.tail == e.head:
            raise StructuralError(f"edge e{i} is a loop")
    g.require_trivalent()
    ra = regions(g)
    objects = {}
    for v in range(g.num_vertices):
        objects[("v", v)] = ChartObject("vertex", ra.around_vertex[v], VERTEX_CHART)
    arrows = []
    for eid in g.edge_ids():
        objects[("e", eid)] = ChartObject("edge", ra.flanking[eid], EDGE_CHART)
        e = g.edge(eid)
        ends = (e.tail, e.head) if isinstance(e, FiniteEdge) else (e.vertex,)
        for v in ends:
            (j,) = ra.around_vertex[v] - ra.flanking[eid]
            arrows.append(Arrow(("v", v), ("e", eid), j))
    _check_arrows(objects, arrows)
    return ChartDiagram(objects, tuple(arrows), {"source": "tropical"})


def build_cech_diagram(t: Triangulation) -> ChartDiagram:
    rep = validate_triangulation(t)
    if not rep.ok:
        raise TriangulationError("invalid triangulation: " + "; ".join(rep.problems))
    objects = {}
    for i in range(len(t.triangles)):
        objects[("T", i)] = ChartObject("vertex", frozenset(t.triangle_points(i)), VERTEX_CHART)
    arrows = []
    for key, entries in sorted(t.edge_incidence().items()):
        shared = frozenset(t.points[k] for k in key)
        objects[("E", key)] = ChartObject("edge", shared, EDGE_CHART)
        for ti, _ in sorted(entries):
            (opp,) = set(t.triangle_points(ti)) - shared
            arrows.append(Arrow(("T", ti), ("E", key), opp))
    _check_arrows(objects, arrows)
    return ChartDiagram(objects, tuple(arrows), {"source": "fan"})


@dataclass(frozen=True)
class DiagramIso:
    ok: bool
    object_map: dict = field(default_factory=dict)
    coordinate_map: dict = field(default_factory=dict)
    witness: Optional[str] = None
    canonical: bool = False

    def __bool__(self) -> bool:
        return self.ok


def _verify(d1: ChartDiagram, d2: ChartDiagram, omap: Mapping, cmap: Mapping) -> Optional[str]:
    if set(omap) != set(d1.objects) or set(omap.values()) != set(d2.objects):
        return "object map is not a bijection"
    if len(set(cmap.values())) != len(cmap):
        return "coordinate map is not injective"
    for k, o in d1.objects.items():
        o2 = d2.objects[omap[k]]
        if o.kind != o2.kind or o.chart_type != o2.chart_type:
            return f"object {k} has a different type than {omap[k]}"
        try:
            image = frozenset(cmap[c] for c in o.coordinates)
        except KeyError as exc:
            return f"coordinate {exc.args[0]!r} is not mapped"
        if image != o2.coordinates:
            return f"coordinates of {k} do not map onto those of {omap[k]}"
    a1 = sorted((repr(omap[a.source]), repr(omap[a.target]), repr(cmap.get(a.inverted))) for a in d1.arrows)
    a2 = sorted((repr(a.source), repr(a.target), repr(a.inverted)) for a in d2.arrows)
    if a1 != a2:
        return "arrows do not correspond"
    return None


def canonical_bijection(g: TropicalGraph, t: Triangulation) -> tuple[dict, dict]:
    """Triangle <-> dual vertex and triangulation point <-> complementary region.

    The region swept between two consecutive edges at a vertex corresponds to
    the point shared by their primal edges.
    """
    primal = g.meta.get("primal_edge")
    vt = g.meta.get("vertex_triangle")
    if primal is None or vt is None:
        raise StructuralError("graph carries no record of its triangulation")
    omap = {("v", v): ("T", vt[v]) for v in range(g.num_vertices)}
    omap.update({("e", eid): ("E", tuple(primal[eid])) for eid in g.edge_ids()})
    ra = trace_regions(g)
    cmap: dict = {}
    for v, inc in enumerate(g.incidences()):
        for eid, _ in inc:
            (j,) = ra.around_vertex[v] - ra.flanking[eid]
            tri = set(t.triangle_points(vt[v]))
            (opp,) = tri - {t.points[k] for k in primal[eid]}
            if cmap.setdefault(j, opp) != opp:
                raise StructuralError(f"region {j} corresponds to two points")
    return omap, cmap


def diagram_isomorphic(
    d1: ChartDiagram, d2: ChartDiagram, hint: Optional[tuple[Mapping, Mapping]] = None
) -> DiagramIso:
    """Find a label-preserving bijection of objects, arrows and coordinates.

    A supplied ``hint`` (object map, coordinate map) is verified first;
    otherwise a backtracking search runs.
    """
    for kind in ("vertex", "edge"):
        n1 = sum(1 for o in d1.objects.values() if o.kind == kind)
        n2 = sum(1 for o in d2.objects.values() if o.kind == kind)
        if n1 != n2:
            return DiagramIso(False, witness=f"{kind} object count {n1} != {n2}")
    if len(d1.arrows) != len(d2.arrows):
        return DiagramIso(False, witness=f"arrow count {len(d1.arrows)} != {len(d2.arrows)}")
    if hint is not None:
        omap, cmap = dict(hint[0]), dict(hint[1])
        err = _verify(d1, d2, omap, cmap)
        if err is None:
            return DiagramIso(True, omap, cmap, canonical=True)
    return _search(d1, d2)


def _search(d1: ChartDiagram, d2: ChartDiagram) -> DiagramIso:
    out1: dict = {k: [] for k in d1.objects}
    in1: dict = {k: [] for k in d1.objects}
    for a in d1.arrows:
        out1[a.source].append(a)
        in1[a.target].append(a)
    arrows2 = {}
    for a in d2.arrows:
        arrows2.setdefault((a.source, a.target), []).append(a.inverted)
    deg2 = {k: 0 for k in d2.objects}
    for a in d2.arrows:
        deg2[a.source] += 1
        deg2[a.target] += 1

    # visit objects so that each new one is adjacent to an earlier one
    order, seen = [], set()
    for start in sorted(d1.objects, key=repr):
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        while stack:
            k = stack.pop(0)
            order.append(k)
            for a in out1[k] + in1[k]:
                for nb in (a.source, a.target):
                    if nb not in seen:
                        seen.add(nb)
                        stack.append(nb)

    omap: dict = {}
    cmap: dict = {}
    used: set = set()

    all1 = set().union(*(o.coordinates for o in d1.objects.values())) if d1.objects else set()
    all2 = set().union(*(o.coordinates for o in d2.objects.values())) if d2.objects else set()

    def complete() -> bool:
        # coordinates that no arrow inverts are matched by brute force
        free1 = sorted(all1 - set(cmap), key=repr)
        free2 = sorted(all2 - set(cmap.values()), key=repr)
        if len(free1) != len(free2) or len(free1) > 7:
            return False
        for perm in permutations(free2):
            cmap.update(zip(free1, perm))
            if _verify(d1, d2, omap, cmap) is None:
                return True
            for c in free1:
                del cmap[c]
        return False

    def extend(i: int) -> bool:
        if i == len(order):
            return complete()
        k = order[i]
        o = d1.objects[k]
        deg = len(out1[k]) + len(in1[k])
        for cand in sorted(d2.objects, key=repr):
            if cand in used:
                continue
            o2 = d2.objects[cand]
            if o2.kind != o.kind or o2.chart_type != o.chart_type or deg2[cand] != deg:
                continue
            if len(o2.coordinates) != len(o.coordinates):
                continue
            added = []
            ok = True
            for a in out1[k] + in1[k]:
                other = a.target if a.source == k else a.source
                if other not in omap and other != k:
                    continue
                src = cand if a.source == k else omap[a.source]
                tgt = cand if a.target == k else omap[a.target]
                invs = arrows2.get((src, tgt))
                if not invs:
                    ok = False
                    break
                if a.inverted in cmap:
                    if cmap[a.inverted] not in invs:
                        ok = False
                        break
                elif len(set(invs)) == 1:
                    if invs[0] in cmap.values():
                        ok = False
                        break
                    cmap[a.inverted] = invs[0]
                    added.append(a.inverted)
            if ok:
                omap[k] = cand
                used.add(cand)
                if extend(i + 1):
                    return True
                del omap[k]
                used.discard(cand)
            for c in added:
                del cmap[c]
        return False

    if extend(0):
        return DiagramIso(True, dict(omap), dict(cmap))
    return DiagramIso(False, witness="no label-preserving bijection exists")


def restrict_diagram(d: ChartDiagram, sub: Iterable[Hashable]) -> ChartDiagram:
    """The full sub-diagram on ``sub``; a vertex object drags in all its edges."""
    keep = set(sub)
    unknown = keep - set(d.objects)
    if unknown:
        raise StructuralError(f"unknown objects {sorted(map(repr, unknown))}")
    for a in d.arrows:
        if a.source in keep and a.target not in keep:
            raise StructuralError(f"not a subgraph: {a.source} is kept but its edge {a.target} is not")
    objects = {k: o for k, o in d.objects.items() if k in keep}
    arrows = tuple(a for a in d.arrows if a.source in keep and a.target in keep)
    return ChartDiagram(objects, arrows, dict(d.meta))
