"""Ribbon graphs as combinatorial maps.

Darts are integers. ``sigma`` pairs the two darts of an internal edge and
fixes the single dart of an external (open) edge. ``rho`` sends each dart to
its counterclockwise successor at the same vertex. Faces are orbits of
``h -> rho[sigma[h]]``, which reflects at external darts automatically.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Optional, Sequence, Union

from ..errors import RibbonError, StructuralError
from ..report import ValidationReport


@dataclass(frozen=True)
class RibbonGraph:
    sigma: Mapping[int, int]
    vertex_of: Mapping[int, int]
    rho: Mapping[int, int]
    face_labels: Mapping[Hashable, int] = field(default_factory=dict)

    @classmethod
    def from_orders(
        cls,
        sigma: Mapping[int, int],
        orders: Mapping[int, Sequence[int]],
        face_labels: Optional[Mapping[Hashable, int]] = None,
    ) -> "RibbonGraph":
        vertex_of, rho = {}, {}
        for v, order in orders.items():
            for k, d in enumerate(order):
                if d in vertex_of:
                    raise StructuralError(f"dart {d} listed at two vertices")
                vertex_of[d] = v
                rho[d] = order[(k + 1) % len(order)]
        return cls(dict(sigma), vertex_of, rho, dict(face_labels or {}))

    # -- basic accessors -------------------------------------------------

    @property
    def darts(self) -> list[int]:
        return sorted(self.vertex_of)

    @property
    def vertices(self) -> list[int]:
        return sorted(set(self.vertex_of.values()))

    def darts_at(self, v: int) -> list[int]:
        return [d for d in self.darts if self.vertex_of[d] == v]

    def cyclic_order(self, v: int, start: Optional[int] = None) -> tuple[int, ...]:
        if start is None:
            start = min(self.darts_at(v))
        out = [start]
        d = self.rho[start]
        while d != start:
            out.append(d)
            d = self.rho[d]
        return tuple(out)

    def orders(self) -> dict[int, tuple[int, ...]]:
        return {v: self.cyclic_order(v) for v in self.vertices}

    def is_external(self, d: int) -> bool:
        return self.sigma[d] == d

    def edge_id(self, d: int) -> int:
        return min(d, self.sigma[d])

    def edges(self) -> list[int]:
        """Edge ids (the smaller dart of each sigma orbit)."""
        return sorted({self.edge_id(d) for d in self.vertex_of})

    def edge_darts(self, e: int) -> tuple[int, ...]:
        s = self.sigma[e]
        return (e,) if s == e else (min(e, s), max(e, s))

    def is_loop(self, d: int) -> bool:
        s = self.sigma[d]
        return s != d and self.vertex_of[s] == self.vertex_of[d]

    def external_darts(self) -> list[int]:
        return [d for d in self.darts if self.sigma[d] == d]

    @property
    def num_vertices(self) -> int:
        return len(set(self.vertex_of.values()))

    @property
    def num_edges(self) -> int:
        return len(self.edges())

    def next_dart(self, d: int) -> int:
        return self.rho[self.sigma[d]]

    def face_darts(self, d: int) -> tuple[int, ...]:
        out = [d]
        x = self.next_dart(d)
        while x != d:
            out.append(x)
            x = self.next_dart(x)
        return tuple(out)

    def label_dart(self, label: Hashable) -> int:
        try:
            return self.face_labels[label]
        except KeyError:
            raise RibbonError(f"no face labeled {label!r}") from None

    def label_of_face(self, d: int) -> Optional[Hashable]:
        fd = set(self.face_darts(d))
        for lab, m in self.face_labels.items():
            if m in fd:
                return lab
        return None

    def with_labels(self, labels: Mapping[Hashable, int]) -> "RibbonGraph":
        return RibbonGraph(dict(self.sigma), dict(self.vertex_of), dict(self.rho), dict(labels))


@dataclass(frozen=True)
class FaceWalk:
    darts: tuple[int, ...]
    edges: frozenset
    vertices: frozenset
    is_cycle: bool
    label: Optional[Hashable] = None


def _walk_info(x: RibbonGraph, walk: Sequence[int]) -> FaceWalk:
    ws = set(walk)
    has_external = any(x.sigma[d] == d for d in walk)
    edge_twice = any(x.sigma[d] in ws and x.sigma[d] != d for d in walk)
    per_vertex: dict[int, int] = {}
    for d in walk:
        v = x.vertex_of[d]
        per_vertex[v] = per_vertex.get(v, 0) + 1
    cyc = not has_external and not edge_twice and all(c == 1 for c in per_vertex.values())
    return FaceWalk(
        tuple(walk),
        frozenset(x.edge_id(d) for d in walk),
        frozenset(per_vertex),
        cyc,
        x.label_of_face(walk[0]),
    )


def faces(x: RibbonGraph) -> list[FaceWalk]:
    """All face walks, each starting at its smallest dart, sorted by that dart."""
    seen: set[int] = set()
    out = []
    for d in x.darts:
        if d in seen:
            continue
        walk = x.face_darts(d)
        seen.update(walk)
        out.append(_walk_info(x, walk))
    return out


def face_walk(x: RibbonGraph, d: int) -> FaceWalk:
    walk = x.face_darts(d)
    k = walk.index(min(walk))
    return _walk_info(x, walk[k:] + walk[:k])


def face_by_label(x: RibbonGraph, label: Hashable) -> FaceWalk:
    return face_walk(x, x.label_dart(label))


def validate_ribbon(x: RibbonGraph) -> ValidationReport:
    items: list[dict] = []
    problems: list[str] = []
    H = set(x.vertex_of)
    if set(x.sigma) != H:
        problems.append("sigma is not defined on exactly the darts")
    else:
        bad = [d for d in H if x.sigma[d] not in H or x.sigma[x.sigma[d]] != d]
        items.append({"check": "sigma_involution", "ok": not bad})
        if bad:
            problems.append(f"sigma is not an involution at darts {sorted(bad)}")
    if set(x.rho) != H or set(x.rho.values()) != H:
        problems.append("rho is not a permutation of the darts")
        items.append({"check": "rho_permutation", "ok": False})
    else:
        moved = [d for d in H if x.vertex_of[x.rho[d]] != x.vertex_of[d]]
        if moved:
            problems.append(f"rho leaves the vertex at darts {sorted(moved)}")
        for v in sorted(set(x.vertex_of.values())):
            at_v = {d for d in H if x.vertex_of[d] == v}
            start = min(at_v)
            orbit = {start}
            d = x.rho[start]
            while d != start and d in at_v and d not in orbit:
                orbit.add(d)
                d = x.rho[d]
            single = orbit == at_v
            items.append({"vertex": v, "single_cycle": single})
            if not single:
                problems.append(f"rho at vertex {v} is not a single cycle")
    if not problems:
        seen_faces = {}
        for lab, m in x.face_labels.items():
            if m not in H:
                problems.append(f"label {lab!r} points at missing dart {m}")
                continue
            key = min(x.face_darts(m))
            if key in seen_faces:
                problems.append(f"labels {seen_faces[key]!r} and {lab!r} name the same face")
            seen_faces[key] = lab
    return ValidationReport(not problems, items, problems)


def require_valid(x: RibbonGraph) -> None:
    rep = validate_ribbon(x)
    if not rep.ok:
        raise StructuralError("invalid ribbon graph: " + "; ".join(rep.problems))


def components(x: RibbonGraph) -> list[set[int]]:
    """Vertex sets of the connected components, ordered by smallest vertex."""
    adj: dict[int, set[int]] = {v: set() for v in x.vertices}
    for d in x.darts:
        adj[x.vertex_of[d]].add(x.vertex_of[x.sigma[d]])
    seen: set[int] = set()
    out = []
    for v in sorted(adj):
        if v in seen:
            continue
        comp = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        out.append(comp)
    return out


def is_connected(x: RibbonGraph) -> bool:
    return len(components(x)) <= 1


def induced(x: RibbonGraph, verts: Iterable[int]) -> RibbonGraph:
    """Restriction to a union of components (dart ids kept)."""
    vs = set(verts)
    ds = [d for d in x.darts if x.vertex_of[d] in vs]
    dset = set(ds)
    for d in ds:
        if x.sigma[d] not in dset:
            raise RibbonError("vertex set is not a union of components")
    labels = {k: m for k, m in x.face_labels.items() if m in dset}
    return RibbonGraph(
        {d: x.sigma[d] for d in ds}, {d: x.vertex_of[d] for d in ds}, {d: x.rho[d] for d in ds}, labels
    )


def component_graphs(x: RibbonGraph) -> list[RibbonGraph]:
    return [induced(x, c) for c in components(x)]


def surface_invariants(x: RibbonGraph) -> tuple[int, int]:
    """(genus, punctures) of the surface retracting onto a connected closed graph."""
    require_valid(x)
    if x.external_darts():
        raise RibbonError("surface invariants need a graph without external edges")
    if not x.vertex_of:
        raise RibbonError("empty graph")
    if not is_connected(x):
        raise RibbonError("graph is disconnected; use per-component invariants")
    n = len(faces(x))
    twice_g = 2 - n - x.num_vertices + x.num_edges
    if twice_g < 0 or twice_g % 2:
        raise StructuralError(f"inconsistent Euler characteristic (2g = {twice_g})")
    return twice_g // 2, n


def component_invariants(x: RibbonGraph) -> list[tuple[int, int]]:
    return [surface_invariants(c) for c in component_graphs(x)]


# ---------------------------------------------------------------------------
# unions and renaming


def _shifted(x: RibbonGraph, dshift: int, vshift: int) -> RibbonGraph:
    return RibbonGraph(
        {d + dshift: s + dshift for d, s in x.sigma.items()},
        {d + dshift: v + vshift for d, v in x.vertex_of.items()},
        {d + dshift: r + dshift for d, r in x.rho.items()},
        {k: m + dshift for k, m in x.face_labels.items()},
    )


def next_ids(x: RibbonGraph) -> tuple[int, int]:
    """Smallest unused dart id and vertex id."""
    return (max(x.vertex_of, default=-1) + 1, max(x.vertex_of.values(), default=-1) + 1)


def disjoint_union(x: RibbonGraph, y: RibbonGraph) -> tuple[RibbonGraph, int, int]:
    """Union with ``y`` shifted past ``x``; returns (graph, dart shift, vertex shift)."""
    clash = set(x.face_labels) & set(y.face_labels)
    if clash:
        raise RibbonError(f"face labels {sorted(map(repr, clash))} occur on both sides")
    ds, vs = next_ids(x)
    ys = _shifted(y, ds, vs)
    return (
        RibbonGraph(
            {**x.sigma, **ys.sigma},
            {**x.vertex_of, **ys.vertex_of},
            {**x.rho, **ys.rho},
            {**x.face_labels, **ys.face_labels},
        ),
        ds,
        vs,
    )


def union_all(parts: Sequence[RibbonGraph]) -> RibbonGraph:
    out = RibbonGraph({}, {}, {}, {})
    for p in parts:
        out = disjoint_union(out, p)[0]
    return out


def compact(x: RibbonGraph) -> tuple[RibbonGraph, dict[int, int], dict[int, int]]:
    """Renumber darts 0..H-1 and vertices 0..V-1 preserving order."""
    dmap = {d: i for i, d in enumerate(x.darts)}
    vmap = {v: i for i, v in enumerate(x.vertices)}
    return (
        RibbonGraph(
            {dmap[d]: dmap[s] for d, s in x.sigma.items()},
            {dmap[d]: vmap[v] for d, v in x.vertex_of.items()},
            {dmap[d]: dmap[r] for d, r in x.rho.items()},
            {k: dmap[m] for k, m in x.face_labels.items()},
        ),
        dmap,
        vmap,
    )


def _label_key(lab) -> str:
    return repr(lab)


def canonical_form(x: RibbonGraph) -> tuple:
    """A complete invariant of labeled ribbon graphs up to dart/vertex renaming."""
    codes = []
    for comp in components(x):
        best = None
        for start in sorted(d for d in x.darts if x.vertex_of[d] in comp):
            num = {start: 0}
            order = [start]
            i = 0
            while i < len(order):
                d = order[i]
                i += 1
                for nb in (x.sigma[d], x.rho[d]):
                    if nb not in num:
                        num[nb] = len(num)
                        order.append(nb)
            code = [(num[x.sigma[d]], num[x.rho[d]]) for d in order]
            labs = []
            for lab, m in x.face_labels.items():
                if m in num:
                    labs.append((_label_key(lab), min(num[f] for f in x.face_darts(m))))
            key = (tuple(code), tuple(sorted(labs)))
            if best is None or key < best:
                best = key
        codes.append(best)
    return tuple(sorted(codes))


def isomorphic(x: RibbonGraph, y: RibbonGraph) -> bool:
    return canonical_form(x) == canonical_form(y)


# ---------------------------------------------------------------------------
# moves


@dataclass(frozen=True)
class Subdivision:
    """Subdivide the edge of ``dart`` with new darts ``new_darts`` at ``new_vertex``."""

    dart: int
    new_darts: Optional[tuple[int, int]] = None
    new_vertex: Optional[int] = None


@dataclass(frozen=True)
class Contraction:
    dart: int


@dataclass(frozen=True)
class Expansion:
    """Split ``vertex``: ``first`` stays (after new dart a), ``second`` moves
    to ``new_vertex`` (after new dart b). ``first + second`` must be a
    rotation of the vertex's cyclic order."""

    vertex: int
    first: tuple[int, ...]
    second: tuple[int, ...]
    new_darts: Optional[tuple[int, int]] = None
    new_vertex: Optional[int] = None


Move = Union[Subdivision, Contraction, Expansion]


def _copy(x: RibbonGraph):
    return dict(x.sigma), dict(x.vertex_of), dict(x.rho), dict(x.face_labels)


def subdivide_edge(x: RibbonGraph, d: int, new_darts=None, new_vertex=None) -> RibbonGraph:
    """Insert a two-valent vertex in the middle of the internal edge of ``d``."""
    return _subdivide(x, Subdivision(d, new_darts, new_vertex))


def _subdivide(x: RibbonGraph, m: Subdivision) -> RibbonGraph:
    h1 = m.dart
    if h1 not in x.sigma:
        raise RibbonError(f"no dart {h1}")
    h2 = x.sigma[h1]
    if h2 == h1:
        raise RibbonError("cannot subdivide an external edge")
    dn, vn = next_ids(x)
    h1p, h2p = m.new_darts or (dn, dn + 1)
    ve = vn if m.new_vertex is None else m.new_vertex
    if {h1p, h2p} & set(x.sigma) or ve in set(x.vertex_of.values()):
        raise RibbonError("new ids collide with existing ones")
    sigma, vertex_of, rho, labels = _copy(x)
    sigma.update({h1: h1p, h1p: h1, h2: h2p, h2p: h2})
    vertex_of.update({h1p: ve, h2p: ve})
    rho.update({h1p: h2p, h2p: h1p})
    return RibbonGraph(sigma, vertex_of, rho, labels)


def _contract(x: RibbonGraph, a: int) -> tuple[RibbonGraph, Expansion]:
    if a not in x.sigma:
        raise RibbonError(f"no dart {a}")
    b = x.sigma[a]
    if b == a:
        raise RibbonError("cannot contract an external edge")
    u, w = x.vertex_of[a], x.vertex_of[b]
    if u == w:
        raise RibbonError("cannot contract a loop")
    first = x.cyclic_order(u, a)[1:]
    second = x.cyclic_order(w, b)[1:]
    if not first and not second:
        raise RibbonError("cannot contract an isolated edge")
    sigma, vertex_of, rho, labels = _copy(x)
    for k, m in list(labels.items()):
        if m in (a, b):
            for f in x.face_darts(m):
                if f not in (a, b):
                    labels[k] = f
                    break
            else:
                raise RibbonError("contraction would delete a labeled face")
    merged = first + second
    for d in (a, b):
        del sigma[d], vertex_of[d], rho[d]
    for k, d in enumerate(merged):
        vertex_of[d] = u
        rho[d] = merged[(k + 1) % len(merged)]
    inverse = Expansion(u, tuple(first), tuple(second), (a, b), w)
    return RibbonGraph(sigma, vertex_of, rho, labels), inverse


def _expand(x: RibbonGraph, m: Expansion) -> tuple[RibbonGraph, Contraction]:
    u = m.vertex
    at_u = x.darts_at(u)
    if not at_u:
        raise RibbonError(f"no vertex {u}")
    seq = tuple(m.first) + tuple(m.second)
    if not seq or len(seq) != len(at_u):
        raise RibbonError("arcs must partition the darts at the vertex")
    if seq != x.cyclic_order(u, seq[0]):
        raise RibbonError("arcs are not contiguous in the cyclic order")
    dn, vn = next_ids(x)
    a, b = m.new_darts or (dn, dn + 1)
    w = vn if m.new_vertex is None else m.new_vertex
    if {a, b} & set(x.sigma) or a == b or w in set(x.vertex_of.values()):
        raise RibbonError("new ids collide with existing ones")
    sigma, vertex_of, rho, labels = _copy(x)
    sigma.update({a: b, b: a})
    for v, arc, d0 in ((u, m.first, a), (w, m.second, b)):
        cyc = (d0,) + tuple(arc)
        for k, d in enumerate(cyc):
            vertex_of[d] = v
            rho[d] = cyc[(k + 1) % len(cyc)]
    return RibbonGraph(sigma, vertex_of, rho, labels), Contraction(a)


def apply_move(x: RibbonGraph, m: Move) -> RibbonGraph:
    """Apply one move; face labels follow their faces."""
    return apply_move_with_inverse(x, m)[0]


def apply_move_with_inverse(x: RibbonGraph, m: Move) -> tuple[RibbonGraph, Optional[Move]]:
    if isinstance(m, Contraction):
        return _contract(x, m.dart)
    if isinstance(m, Expansion):
        return _expand(x, m)
    if isinstance(m, Subdivision):
        return _subdivide(x, m), None
    raise TypeError(f"unknown move {m!r}")


def contraction_inverse(x: RibbonGraph, d: int) -> Expansion:
    return _contract(x, d)[1]
