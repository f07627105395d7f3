"""Skeleton synthesis: glue pairs of pants along the sweep of a tropical curve.

Each vertex of the sweep contributes a pants skeleton. Face labels of the
partial skeleton are the ids of the tropical edges that are still open, so
the face to glue along is always found by label.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Hashable, Optional, Sequence

from .errors import RibbonError
from .ribbon import (
    DEFAULT_BUDGET,
    GluingCertificate,
    RibbonGraph,
    Subgraph,
    component_invariants,
    disjoint_union,
    dumbbell,
    ensure_cycle_at_face,
    face_walk,
    faces,
    gluing_cover_check,
    theta,
    union_all,
    validate_ribbon,
)
from .ribbon.core import next_ids
from .tropical import TropicalGraph, mirror_invariants, sweep_decompose

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GlueResult:
    graph: RibbonGraph
    z1: Subgraph
    z2: Subgraph
    circles: tuple[tuple[int, ...], ...]  # slot vertices of each new circle, in order
    offsets: tuple[int, ...]


def _identify(z: RibbonGraph, lab_a: Hashable, lab_b: Hashable, offset: int):
    """Replace two vertex-disjoint cycle-faces by one circle carrying the
    spokes of both: first the ``a`` side, then the ``b`` side reversed."""
    wa = face_walk(z, z.label_dart(lab_a))
    wb = face_walk(z, z.label_dart(lab_b))
    if not (wa.is_cycle and wb.is_cycle):
        raise RibbonError("gluing needs cycle-faces on both sides")
    if wa.vertices & wb.vertices:
        raise RibbonError("faces to identify share a vertex")
    xs, ys = wa.darts, wb.darts
    k, m = len(xs), len(ys)
    slots_a = [(z.vertex_of[xs[i]], xs[i], z.sigma[xs[i - 1]]) for i in range(k)]
    # along the reversed walk the new circle leaves w_j towards w_{j-1}
    rev = [(z.vertex_of[ys[j]], z.sigma[ys[j - 1]], ys[j]) for j in range(m)][::-1]
    off = offset % m
    slots = slots_a + rev[off:] + rev[:off]
    base, _ = next_ids(z)
    K = len(slots)
    rep: dict[int, int] = {}
    sigma, vertex_of, rho = dict(z.sigma), dict(z.vertex_of), dict(z.rho)
    removed = set(xs) | {z.sigma[d] for d in xs} | set(ys) | {z.sigma[d] for d in ys}
    for s, (v, out_old, in_old) in enumerate(slots):
        rep[out_old], rep[in_old] = base + 2 * s, base + 2 * s + 1
    for s, (v, out_old, in_old) in enumerate(slots):
        order = [rep.get(d, d) for d in z.cyclic_order(v, out_old)]
        for i, d in enumerate(order):
            vertex_of[d] = v
            rho[d] = order[(i + 1) % len(order)]
        o, i_next = base + 2 * s, base + 2 * ((s + 1) % K) + 1
        sigma[o], sigma[i_next] = i_next, o
    for d in removed:
        if d not in rep.values():
            sigma.pop(d, None)
            vertex_of.pop(d, None)
            rho.pop(d, None)
    labels = {}
    for lab, mk in z.face_labels.items():
        if lab in (lab_a, lab_b):
            continue
        labels[lab] = rep.get(mk, mk)
    circle_darts = set(range(base, base + 2 * K))
    return RibbonGraph(sigma, vertex_of, rho, labels), tuple(v for v, _, _ in slots), circle_darts


def glue_along_cycles_detailed(
    x: RibbonGraph,
    cycles_x: Sequence[Hashable],
    y: RibbonGraph,
    cycles_y: Sequence[Hashable],
    offsets: Optional[Sequence[int]] = None,
) -> GlueResult:
    if len(cycles_x) != len(cycles_y) or len(cycles_x) not in (1, 2):
        raise RibbonError("glue along one or two matched pairs of faces")
    offsets = tuple(offsets) if offsets is not None else (0,) * len(cycles_x)
    if len(offsets) != len(cycles_x):
        raise RibbonError("one offset per pair")
    for side, cyc in ((x, cycles_x), (y, cycles_y)):
        walks = [face_walk(side, side.label_dart(lab)) for lab in cyc]
        if not all(w.is_cycle for w in walks):
            raise RibbonError("gluing needs cycle-faces")
        if len(walks) == 2 and walks[0].vertices & walks[1].vertices:
            raise RibbonError("the two cycles on one side must be disjoint")
    clash = set(x.face_labels) & set(y.face_labels)
    if clash:
        y = y.with_labels({("y", k) if k in clash else k: v for k, v in y.face_labels.items()})
        cycles_y = [("y", c) if c in clash else c for c in cycles_y]
    u, ds, _ = disjoint_union(x, y)
    x_darts = set(x.sigma)
    y_darts = {d + ds for d in y.sigma}
    x_verts = set(x.vertices)
    y_verts = set(u.vertices) - x_verts
    cur, circles, circ_darts = u, [], set()
    for a, b, off in zip(cycles_x, cycles_y, offsets):
        cur, slots, cd = _identify(cur, a, b, off)
        circles.append(slots)
        circ_darts |= cd
    circ_verts = {v for c in circles for v in c}
    e_circ = {cur.edge_id(d) for d in circ_darts}
    z1 = Subgraph.of(x_verts | circ_verts, {cur.edge_id(d) for d in cur.darts if d in x_darts} | e_circ)
    z2 = Subgraph.of(y_verts | circ_verts, {cur.edge_id(d) for d in cur.darts if d in y_darts} | e_circ)
    return GlueResult(cur, z1, z2, tuple(circles), offsets)


def glue_along_cycles(x, cycles_x, y, cycles_y, offsets=None) -> RibbonGraph:
    """Glue ``x`` and ``y`` along matched cycle-faces.

    One pair gives invariants (g1+g2, n1+n2-2) and two pairs on a connected
    ``x`` give (g1+g2+1, n1+n2-4).
    """
    return glue_along_cycles_detailed(x, cycles_x, y, cycles_y, offsets).graph


# ---------------------------------------------------------------------------
# the induction


@dataclass
class PartialSkeleton:
    """Components of the skeleton built so far.

    ``components[i]`` carries one face label per open tropical edge it owns.
    """

    components: list[RibbonGraph] = field(default_factory=list)

    @property
    def open_cycles(self) -> dict[Hashable, int]:
        return {lab: i for i, c in enumerate(self.components) for lab in c.face_labels}

    def owner(self, label: Hashable) -> int:
        for i, c in enumerate(self.components):
            if label in c.face_labels:
                return i
        raise RibbonError(f"open edge {label!r} has no face")

    @property
    def graph(self) -> RibbonGraph:
        return union_all(self.components)


@dataclass(frozen=True)
class StepRecord:
    vertex: int
    case: str
    glue_edges: tuple[str, ...]
    pants: str
    prepared: tuple[dict, ...]
    offsets: tuple[int, ...]
    cover: Optional[GluingCertificate]
    open_labels: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex,
            "case": self.case,
            "glue_edges": list(self.glue_edges),
            "pants": self.pants,
            "prepared": list(self.prepared),
            "offsets": list(self.offsets),
            "cover": None if self.cover is None else self.cover.to_dict(),
            "open_labels": list(self.open_labels),
        }


@dataclass(frozen=True)
class SynthCertificate:
    steps: tuple[StepRecord, ...]
    tropical_invariants: tuple[int, int]
    skeleton_invariants: tuple[int, int]
    labels_match: bool
    direction: tuple[int, int]
    seed: int

    @property
    def covers_ok(self) -> bool:
        return all(s.cover is None or s.cover.ok for s in self.steps)

    @property
    def ok(self) -> bool:
        return self.covers_ok and self.labels_match and self.tropical_invariants == self.skeleton_invariants

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "tropical_invariants": list(self.tropical_invariants),
            "skeleton_invariants": list(self.skeleton_invariants),
            "labels_match": self.labels_match,
            "direction": list(self.direction),
            "seed": self.seed,
            "steps": [s.to_dict() for s in self.steps],
        }


def _labeled_pants(kind: str, labels: Sequence[Hashable]) -> RibbonGraph:
    if kind == "theta":
        x = theta()
        return x.with_labels({lab: fw.darts[0] for lab, fw in zip(labels, faces(x))})
    x = dumbbell()
    # loop faces {0} and {4}, outer face through dart 1
    return x.with_labels(dict(zip(labels, (0, 4, 1))))


def _prep(comp: RibbonGraph, targets, budget, disjoint=False):
    out, mlog = ensure_cycle_at_face(comp, targets, budget=budget, disjoint=disjoint)
    return out, {"targets": list(targets), "explicit": mlog.explicit, "moves": len(mlog.moves)}


def synthesize(
    g: TropicalGraph,
    direction: Sequence[int] = (0, 1),
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> tuple[RibbonGraph, SynthCertificate]:
    """Build a skeleton for the mirror curve of ``g``, one pants per vertex."""
    direction = (int(direction[0]), int(direction[1]))
    part = PartialSkeleton()
    records = []
    for step in sweep_decompose(g, direction):
        glue = step.glue_edges
        new = step.new_open_edges
        prepared: list[dict] = []
        cover = None
        offsets: tuple[int, ...] = ()
        if not glue:
            pants = "theta"
            part.components.append(_labeled_pants("theta", new))
        elif len(glue) == 1:
            pants = "theta"
            (e,) = glue
            ci = part.owner(e)
            comp, info = _prep(part.components[ci], [e], budget)
            prepared.append(info)
            res = glue_along_cycles_detailed(comp, [e], _labeled_pants("theta", ("#g0",) + new), ["#g0"])
            cover = gluing_cover_check(res.graph, res.z1, res.z2)
            offsets = res.offsets
            part.components[ci] = res.graph
        else:
            pants = "dumbbell"
            e1, e2 = glue
            c1, c2 = part.owner(e1), part.owner(e2)
            if c1 == c2:
                x, info = _prep(part.components[c1], [e1, e2], budget, disjoint=True)
                prepared.append(info)
                drop = [c1]
            else:
                xa, ia = _prep(part.components[c1], [e1], budget)
                xb, ib = _prep(part.components[c2], [e2], budget)
                prepared += [ia, ib]
                x = disjoint_union(xa, xb)[0]
                drop = [c1, c2]
            y = _labeled_pants("dumbbell", ("#g0", "#g1") + new)
            res = glue_along_cycles_detailed(x, [e1, e2], y, ["#g0", "#g1"])
            cover = gluing_cover_check(res.graph, res.z1, res.z2)
            offsets = res.offsets
            part.components = [c for i, c in enumerate(part.components) if i not in drop] + [res.graph]
        if cover is not None and not cover.ok:
            log.warning("gluing at vertex %s failed its cover check: %s", step.vertex, cover.failure)
        records.append(
            StepRecord(step.vertex, step.case, glue, pants, tuple(prepared), offsets, cover,
                       tuple(sorted(map(str, part.open_cycles))))
        )
    result = part.graph
    inv = component_invariants(result)
    sk = (sum(a for a, _ in inv), sum(b for _, b in inv))
    rays = {f"r{i}" for i in range(len(g.infinite_edges))}
    labels_match = (
        set(result.face_labels) == rays
        and len(faces(result)) == len(rays)
        and validate_ribbon(result).ok
    )
    cert = SynthCertificate(tuple(records), mirror_invariants(g), sk, labels_match, direction, seed)
    return result, cert
