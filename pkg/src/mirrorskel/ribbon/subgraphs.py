"""Closed subgraphs, tubular neighborhoods, closed covers, and wheels."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from ..errors import RibbonError
from .core import RibbonGraph, components, induced


@dataclass(frozen=True)
class Subgraph:
    """Vertices plus edges (edge id = smaller dart of the edge)."""

    vertices: frozenset
    edges: frozenset

    @classmethod
    def of(cls, vertices: Iterable[int], edges: Iterable[int]) -> "Subgraph":
        return cls(frozenset(vertices), frozenset(edges))

    @classmethod
    def whole(cls, x: RibbonGraph) -> "Subgraph":
        return cls(frozenset(x.vertices), frozenset(x.edges()))

    def __and__(self, other: "Subgraph") -> "Subgraph":
        return Subgraph(self.vertices & other.vertices, self.edges & other.edges)

    def __or__(self, other: "Subgraph") -> "Subgraph":
        return Subgraph(self.vertices | other.vertices, self.edges | other.edges)


def _check_in(x: RibbonGraph, z: Subgraph) -> None:
    vs, es = set(x.vertices), set(x.edges())
    if not z.vertices <= vs or not z.edges <= es:
        raise RibbonError("not a subgraph: unknown vertices or edges")


def is_closed_subgraph(x: RibbonGraph, z: Subgraph) -> bool:
    _check_in(x, z)
    return all(x.vertex_of[d] in z.vertices for e in z.edges for d in x.edge_darts(e))


def valency_in(x: RibbonGraph, z: Subgraph) -> dict[int, int]:
    val = {v: 0 for v in z.vertices}
    for e in z.edges:
        for d in x.edge_darts(e):
            val[x.vertex_of[d]] += 1
    return val


def is_good(x: RibbonGraph, z: Subgraph) -> bool:
    """Closed and without vertices of valency one."""
    return is_closed_subgraph(x, z) and all(c != 1 for c in valency_in(x, z).values())


def tubular_neighborhood(x: RibbonGraph, z: Subgraph) -> RibbonGraph:
    """``z`` plus an open stub for every end of an outside edge at a vertex of ``z``."""
    if not is_closed_subgraph(x, z):
        raise RibbonError("tubular neighborhood needs a closed subgraph")
    ds = [d for d in x.darts if x.vertex_of[d] in z.vertices]
    sigma = {d: (x.sigma[d] if x.edge_id(d) in z.edges else d) for d in ds}
    return RibbonGraph(sigma, {d: x.vertex_of[d] for d in ds}, {d: x.rho[d] for d in ds}, {})


@dataclass(frozen=True)
class ClosedSubgraphReport:
    is_closed: bool
    is_good: bool
    valency: dict
    neighborhood: Optional[RibbonGraph]


def closed_subgraph_ops(x: RibbonGraph, z: Subgraph) -> ClosedSubgraphReport:
    closed = is_closed_subgraph(x, z)
    if not closed:
        return ClosedSubgraphReport(False, False, {}, None)
    val = valency_in(x, z)
    return ClosedSubgraphReport(True, all(c != 1 for c in val.values()), val, tubular_neighborhood(x, z))


# ---------------------------------------------------------------------------
# wheels


@dataclass(frozen=True)
class Wheel:
    graph: RibbonGraph
    pattern: str
    circle_darts: tuple[int, ...]  # outgoing circle dart at each vertex, in order

    @property
    def counts(self) -> tuple[int, int]:
        return self.pattern.count("+"), self.pattern.count("-")


def wheel(n1: int, n2: int, pattern: Optional[str] = None) -> Wheel:
    """A circle with one vertex per spoke; ``+`` spokes lie between the
    outgoing and incoming circle darts in the cyclic order, ``-`` after."""
    if pattern is None:
        pattern = "+" * n1 + "-" * n2
    if set(pattern) - {"+", "-"} or pattern.count("+") != n1 or pattern.count("-") != n2:
        raise RibbonError(f"pattern {pattern!r} does not describe a wheel with {n1}+{n2} spokes")
    k = len(pattern)
    if k == 0:
        g = RibbonGraph.from_orders({0: 1, 1: 0}, {0: (0, 1)})
        return Wheel(g, "", (0,))
    sigma, orders = {}, {}
    for i, c in enumerate(pattern):
        out, inn, spoke = 3 * i, 3 * i + 1, 3 * i + 2
        j = (i + 1) % k
        sigma[out], sigma[3 * j + 1] = 3 * j + 1, out
        sigma[spoke] = spoke
        orders[i] = (out, spoke, inn) if c == "+" else (out, inn, spoke)
    return Wheel(RibbonGraph.from_orders(sigma, orders), pattern, tuple(3 * i for i in range(k)))


def _swap(p: str) -> str:
    return p.translate(str.maketrans("+-", "-+"))


def canonical_pattern(p: str) -> str:
    """Least rotation of the pattern or of its reversed, class-swapped form."""
    if not p:
        return p
    cands = []
    for q in (p, _swap(p)[::-1]):
        cands.extend(q[i:] + q[:i] for i in range(len(q)))
    return min(cands)


@dataclass(frozen=True)
class WheelClass:
    pair: tuple[int, int]  # spoke counts of the two classes, sorted
    pattern: str  # canonical cyclic pattern
    raw_pattern: str  # pattern read along ``circle_darts``
    circle_darts: tuple[int, ...]
    spokes: tuple[tuple[int, str], ...]  # (spoke dart, class) in reading order


def classify_wheel(x: RibbonGraph) -> WheelClass:
    """Recognize a circle with open spokes; raise :class:`RibbonError` otherwise."""
    if not x.vertex_of:
        raise RibbonError("not a wheel: empty graph")
    if len(components(x)) != 1:
        raise RibbonError("not a wheel: disconnected")
    internal: dict[int, list[int]] = {v: [] for v in x.vertices}
    for d in x.darts:
        if not x.is_external(d):
            internal[x.vertex_of[d]].append(d)
    bad = [v for v, ds in internal.items() if len(ds) != 2]
    if bad:
        raise RibbonError(f"not a wheel: vertices {bad} do not have exactly two circle darts")
    v0 = min(internal)
    out = min(internal[v0])
    circle, raw, spokes = [], [], []
    seen = set()
    while x.vertex_of[out] not in seen:
        v = x.vertex_of[out]
        seen.add(v)
        circle.append(out)
        inn = next(d for d in internal[v] if d != out)
        order = x.cyclic_order(v, out)
        pos = order.index(inn)
        left, right = order[1:pos], order[pos + 1 :]
        raw.append("+" * len(left) + "-" * len(right))
        spokes.extend((d, "+") for d in reversed(left))
        spokes.extend((d, "-") for d in right)
        nxt_in = x.sigma[out]
        w = x.vertex_of[nxt_in]
        out = next(d for d in internal[w] if d != nxt_in)
    if len(seen) != len(internal):
        raise RibbonError("not a wheel: circle darts do not form a single circle")
    rp = "".join(raw)
    pair = tuple(sorted((rp.count("+"), rp.count("-"))))
    return WheelClass(pair, canonical_pattern(rp), rp, tuple(circle), tuple(spokes))


def is_wheel(x: RibbonGraph) -> bool:
    try:
        classify_wheel(x)
    except RibbonError:
        return False
    return True


# ---------------------------------------------------------------------------
# closed covers


@dataclass(frozen=True)
class OpenSubgraph:
    vertices: frozenset
    edges: frozenset


@dataclass(frozen=True)
class GluingCertificate:
    ok: bool
    failure: Optional[str]
    U1: Optional[OpenSubgraph] = None
    U2: Optional[OpenSubgraph] = None
    U12: Optional[RibbonGraph] = None
    U1_o: Optional[OpenSubgraph] = None
    U2_o: Optional[OpenSubgraph] = None
    U1_e: Optional[OpenSubgraph] = None
    U2_e: Optional[OpenSubgraph] = None
    wheels: tuple = ()
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        def sg(s):
            return None if s is None else {"vertices": sorted(s.vertices), "edges": sorted(s.edges)}

        return {
            "ok": self.ok,
            "failure": self.failure,
            "U1": sg(self.U1),
            "U2": sg(self.U2),
            "U1_o": sg(self.U1_o),
            "U2_o": sg(self.U2_o),
            "U1_e": sg(self.U1_e),
            "U2_e": sg(self.U2_e),
            "wheels": [{"pair": list(w.pair), "pattern": w.pattern} for w in self.wheels],
        }


def _fail(name: str) -> GluingCertificate:
    return GluingCertificate(False, name)


def gluing_cover_check(x: RibbonGraph, z1: Subgraph, z2: Subgraph) -> GluingCertificate:
    """Check that ``z1``, ``z2`` form a closed cover glued along circles.

    Returns the decomposition into ``U1``, ``U2``, the wheel ``U12`` and the
    open pieces ``U^o`` and spoke pieces ``U^e`` on success; otherwise the
    certificate names the first hypothesis that fails.
    """
    for name, z in (("Z1", z1), ("Z2", z2)):
        try:
            if not is_closed_subgraph(x, z):
                return _fail(f"{name} is not a closed subgraph")
        except RibbonError:
            return _fail(f"{name} is not a subgraph")
    if (z1 | z2) != Subgraph.whole(x):
        return _fail("Z1 and Z2 do not cover X")
    for name, z in (("Z1", z1), ("Z2", z2)):
        if not is_good(x, z):
            return _fail(f"{name} is not good")
    z12 = z1 & z2
    val = valency_in(x, z12)
    if any(c != 2 for c in val.values()) or any(x.is_external(e) for e in z12.edges):
        return _fail("intersection not circles")
    n12 = tubular_neighborhood(x, z12)
    wheels = []
    spoke_edges = set()
    for comp in components(n12) if n12.vertex_of else []:
        part = induced(n12, comp)
        try:
            wc = classify_wheel(part)
        except RibbonError:
            return _fail("neighborhood of the intersection is not a wheel")
        sides = {1: set(), 2: set()}
        for d, cls in wc.spokes:
            e = x.edge_id(d)
            spoke_edges.add(e)
            sides[1 if e in z1.edges else 2].add(cls)
        if len(sides[1]) > 1 or len(sides[2]) > 1 or (sides[1] and sides[1] == sides[2]):
            return _fail("spokes of Z1 and Z2 are not on opposite sides of the circle")
        wheels.append(wc)
    u1 = OpenSubgraph(z1.vertices, z1.edges | spoke_edges)
    u2 = OpenSubgraph(z2.vertices, z2.edges | spoke_edges)
    u1o = OpenSubgraph(z1.vertices - z12.vertices, z1.edges - z12.edges)
    u2o = OpenSubgraph(z2.vertices - z12.vertices, z2.edges - z12.edges)
    u1e = OpenSubgraph(frozenset(), frozenset(spoke_edges & u1o.edges))
    u2e = OpenSubgraph(frozenset(), frozenset(spoke_edges & u2o.edges))
    return GluingCertificate(
        True,
        None,
        u1,
        u2,
        n12,
        u1o,
        u2o,
        u1e,
        u2e,
        tuple(wheels),
        {"circles": len(wheels)},
    )
