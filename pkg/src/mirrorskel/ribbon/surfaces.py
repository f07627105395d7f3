"""Standard skeleta, end connect sums, and cycle preparation at faces."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Optional, Sequence

from ..errors import InfeasibleError, RibbonError
from .core import (
    Contraction,
    Expansion,
    Move,
    RibbonGraph,
    apply_move,
    disjoint_union,
    face_walk,
    faces,
    is_connected,
    next_ids,
    require_valid,
    subdivide_edge,
    surface_invariants,
)

DEFAULT_BUDGET = 64


def resolve_face(x: RibbonGraph, f) -> int:
    """A dart on face ``f``, given as a label (preferred) or a dart id."""
    if f in x.face_labels:
        return x.face_labels[f]
    if isinstance(f, int) and f in x.sigma:
        return f
    raise RibbonError(f"{f!r} is neither a face label nor a dart")


def label_all_faces(x: RibbonGraph, prefix: str = "f") -> RibbonGraph:
    """Label every face ``prefix + k`` in order of smallest dart."""
    return x.with_labels({f"{prefix}{k}": fw.darts[0] for k, fw in enumerate(faces(x))})


def circle() -> RibbonGraph:
    return RibbonGraph.from_orders({0: 1, 1: 0}, {0: (0, 1)})


def figure_eight() -> RibbonGraph:
    return RibbonGraph.from_orders({0: 2, 2: 0, 1: 3, 3: 1}, {0: (0, 1, 2, 3)})


def theta() -> RibbonGraph:
    return theta_n(3)


def theta_n(k: int) -> RibbonGraph:
    """Two vertices joined by ``k`` parallel edges; every face is a cycle."""
    if k < 2:
        raise RibbonError("a generalized theta graph needs at least two edges")
    sigma = {}
    for i in range(k):
        sigma[i], sigma[k + i] = k + i, i
    return RibbonGraph.from_orders(sigma, {0: tuple(range(k)), 1: tuple(range(2 * k - 1, k - 1, -1))})


def dumbbell() -> RibbonGraph:
    sigma = {0: 1, 1: 0, 2: 3, 3: 2, 4: 5, 5: 4}
    return RibbonGraph.from_orders(sigma, {0: (1, 0, 2), 1: (5, 4, 3)})


def end_connect_sum(
    x1: RibbonGraph, f1, x2: RibbonGraph, f2, label: Optional[Hashable] = None
) -> RibbonGraph:
    """Join face ``f1`` of ``x1`` and face ``f2`` of ``x2`` by one new edge.

    The new darts sit just before the chosen darts in their cyclic orders.
    The merged face keeps ``label`` if given, else the label of ``f1`` or
    ``f2``; any other label of the two faces is dropped.
    """
    h1 = resolve_face(x1, f1)
    h2 = resolve_face(x2, f2)
    lab1, lab2 = x1.label_of_face(h1), x2.label_of_face(h2)
    l2 = {k: v for k, v in x2.face_labels.items() if k != lab2}
    x2 = x2.with_labels(l2)
    u, ds, _ = disjoint_union(x1.with_labels({k: v for k, v in x1.face_labels.items() if k != lab1}), x2)
    h2 += ds
    c1, _ = next_ids(u)
    c2 = c1 + 1
    sigma, vertex_of, rho, labels = dict(u.sigma), dict(u.vertex_of), dict(u.rho), dict(u.face_labels)
    for c, h in ((c1, h1), (c2, h2)):
        prev = next(d for d, r in u.rho.items() if r == h)
        rho[prev] = c
        rho[c] = h
        vertex_of[c] = u.vertex_of[h]
    sigma[c1], sigma[c2] = c2, c1
    merged = label if label is not None else (lab1 if lab1 is not None else lab2)
    if merged is not None:
        labels[merged] = h1
    return RibbonGraph(sigma, vertex_of, rho, labels)


def standard_skeleton(g: int, n: int) -> RibbonGraph:
    """Figure-eights and circles joined by end connect sums.

    Faces are labeled ``p0`` (the face carrying every connection) and
    ``p1 .. p{n-1}``, which are pairwise vertex-disjoint loop cycles.
    """
    if g < 0 or n < 1:
        raise RibbonError("need g >= 0 and n >= 1")
    if (g, n) == (0, 1):
        raise RibbonError("the disc has no skeleton of this kind")
    acc: Optional[RibbonGraph] = None
    for _ in range(g):
        piece = figure_eight().with_labels({"p0": 0})
        acc = piece if acc is None else end_connect_sum(acc, "p0", piece, "p0", label="p0")
    for k in range(1, n):
        piece = circle().with_labels({f"p{k}": 0, "outer": 1})
        if acc is None:
            acc = piece.with_labels({f"p{k}": 0, "p0": 1})
        else:
            acc = end_connect_sum(acc, "p0", piece, "outer", label="p0")
    return acc


# ---------------------------------------------------------------------------
# cycles at faces


def has_cycle_at_face(x: RibbonGraph, f) -> bool:
    return face_walk(x, resolve_face(x, f)).is_cycle


@dataclass(frozen=True)
class MoveLog:
    """Record of ``ensure_cycle_at_face``.

    When ``explicit`` the moves replay from the input to the output. Otherwise
    the output was rebuilt from scratch with the same invariants and
    ``certificate`` explains how labels were assigned.
    """

    moves: tuple[Move, ...]
    explicit: bool
    certificate: dict = field(default_factory=dict)

    def replay(self, x: RibbonGraph) -> list[RibbonGraph]:
        if not self.explicit:
            raise RibbonError("a re-synthesis log has no move sequence")
        out = [x]
        for m in self.moves:
            out.append(apply_move(out[-1], m))
        return out


def _cycles_ok(x: RibbonGraph, labels: Iterable[Hashable]) -> bool:
    return all(face_walk(x, x.face_labels[lab]).is_cycle for lab in labels)


def _disjoint_ok(x: RibbonGraph, labels: Sequence[Hashable]) -> bool:
    vs = [face_walk(x, x.face_labels[lab]).vertices for lab in labels]
    return all(not (a & b) for a, b in combinations(vs, 2))


def _local_candidates(x: RibbonGraph, target: Hashable):
    walk = face_walk(x, x.face_labels[target]).darts
    ws = set(walk)
    for d in sorted(ws):
        s = x.sigma[d]
        if s != d and s in ws and d < s and not x.is_loop(d):
            yield Contraction(d)
    counts: dict[int, int] = {}
    for d in walk:
        counts[x.vertex_of[d]] = counts.get(x.vertex_of[d], 0) + 1
    for v in sorted(v for v, c in counts.items() if c >= 2):
        order = x.cyclic_order(v)
        k = len(order)
        tc = {i for i, d in enumerate(order) if d in ws}
        for i, j in combinations(range(k), 2):
            if i in tc or j in tc:
                continue
            if not any(i < t < j for t in tc) or all(i < t < j for t in tc):
                continue
            yield Expansion(v, order[i:j], order[j:] + order[:i])


def ensure_cycle_at_face(
    x: RibbonGraph,
    targets: Sequence[Hashable],
    preserve: Sequence[Hashable] = (),
    budget: int = DEFAULT_BUDGET,
    disjoint: bool = False,
) -> tuple[RibbonGraph, MoveLog]:
    """Rewrite ``x`` so every target (and preserved) label is a cycle-face.

    A local pass contracts non-loop edges the target runs along twice and
    expands vertices the target visits twice, rejecting any move that breaks
    a cycle already in place. If the budget runs out, a standard skeleton
    with the same invariants is built instead and labels are reassigned so
    the requested faces are disjoint loop cycles.
    """
    require_valid(x)
    targets, preserve = list(targets), list(preserve)
    if set(targets) & set(preserve):
        raise RibbonError("targets and preserved labels overlap")
    for lab in targets + preserve:
        x.label_dart(lab)
    if not is_connected(x) or x.external_darts():
        raise RibbonError("cycle preparation needs a connected graph without external edges")
    g, n = surface_invariants(x)
    if n < 2:
        raise InfeasibleError("no cyclable face: the graph has a single face")
    if not _cycles_ok(x, preserve):
        raise RibbonError("preserved faces must already be cycles")

    def done(y):
        return _cycles_ok(y, targets + preserve) and (not disjoint or _disjoint_ok(y, targets))

    cur, moves = x, []
    for _ in range(budget):
        if done(cur):
            return cur, MoveLog(tuple(moves), True, {"steps": len(moves)})
        pending = [t for t in targets if not _cycles_ok(cur, [t])]
        if not pending:
            break
        protected = preserve + [t for t in targets if t not in pending]
        for m in _local_candidates(cur, pending[0]):
            nxt = apply_move(cur, m)
            if _cycles_ok(nxt, protected):
                cur = nxt
                moves.append(m)
                break
        else:
            break
    if done(cur):
        return cur, MoveLog(tuple(moves), True, {"steps": len(moves)})
    return _resynthesize(x, g, n, targets + preserve, disjoint)


def _resynthesize(x: RibbonGraph, g: int, n: int, need: list, disjoint: bool):
    if len(need) <= n - 1:
        y = standard_skeleton(g, n)
        slots = [f"p{k}" for k in range(1, n)] + ["p0"]
        kind = "standard"
    elif not disjoint and g == 0 and len(need) <= n:
        y = label_all_faces(theta_n(n), "p")
        slots = [f"p{k}" for k in range(n)]
        kind = "theta"
    else:
        raise InfeasibleError(
            f"cannot make {len(need)} {'disjoint ' if disjoint else ''}cycle-faces on a ({g},{n}) skeleton"
        )
    others = [lab for lab in x.face_labels if lab not in need]
    labels, assignment = {}, {}
    for lab, slot in zip(need + others, slots):
        labels[lab] = y.face_labels[slot]
        assignment[repr(lab)] = slot
    out = RibbonGraph(dict(y.sigma), dict(y.vertex_of), dict(y.rho), labels)
    cert = {"reason": "local rewrite budget exhausted", "skeleton": kind, "invariants": [g, n],
            "assignment": assignment}
    return out, MoveLog((), False, cert)


# ---------------------------------------------------------------------------
# splitting along a cycle


@dataclass(frozen=True)
class SplitResult:
    rest: RibbonGraph
    wheel: RibbonGraph
    r: int
    pairs: tuple[tuple[int, int], ...]  # (spoke dart on the wheel, its partner in rest)
    subdivided: RibbonGraph
    label: Hashable


def split_at_cycle(x: RibbonGraph, f) -> SplitResult:
    """Cut ``x`` along the cycle bounding face ``f``.

    Edges leaving the cycle and landing on it again are subdivided first, so
    every non-cycle edge at the cycle has exactly one end there. The wheel
    part keeps those ends as external spokes; ``rest`` keeps the far ends as
    external edges.
    """
    d0 = resolve_face(x, f)
    walk = face_walk(x, d0)
    if not walk.is_cycle:
        raise RibbonError("face is not a cycle")
    label = x.label_of_face(d0)
    cyc = set(walk.darts) | {x.sigma[d] for d in walk.darts}
    on_s = set(walk.vertices)
    for d in sorted(x.darts):
        if x.vertex_of[d] in on_s and d not in cyc:
            s = x.sigma[d]
            if s != d and x.vertex_of[s] in on_s:
                x = subdivide_edge(x, d)
    wheel_darts = [d for d in x.darts if x.vertex_of[d] in on_s]
    rest_darts = [d for d in x.darts if x.vertex_of[d] not in on_s]
    pairs = []
    ws = set(wheel_darts)
    w_sigma = {}
    for d in wheel_darts:
        s = x.sigma[d]
        if d in cyc or s == d:
            w_sigma[d] = s
        else:
            w_sigma[d] = d
            pairs.append((d, s))
    rs = set(rest_darts)
    r_sigma = {d: (x.sigma[d] if x.sigma[d] in rs else d) for d in rest_darts}
    wheel_labels = {label: x.face_labels[label]} if label is not None else {}
    rest_labels = {k: m for k, m in x.face_labels.items() if m in rs}
    wheel = RibbonGraph(w_sigma, {d: x.vertex_of[d] for d in ws}, {d: x.rho[d] for d in ws}, wheel_labels)
    rest = RibbonGraph(r_sigma, {d: x.vertex_of[d] for d in rs}, {d: x.rho[d] for d in rs}, rest_labels)
    spokes = sum(1 for d in wheel_darts if d not in cyc)
    return SplitResult(rest, wheel, spokes, tuple(pairs), x, label)


def reconnect(s: SplitResult) -> RibbonGraph:
    """Glue the two parts of a split back together along the recorded pairs."""
    sigma = {**s.rest.sigma, **s.wheel.sigma}
    for a, b in s.pairs:
        sigma[a], sigma[b] = b, a
    return RibbonGraph(
        sigma,
        {**s.rest.vertex_of, **s.wheel.vertex_of},
        {**s.rest.rho, **s.wheel.rho},
        dict(s.subdivided.face_labels),
    )


def close_up(x: RibbonGraph, f) -> RibbonGraph:
    """Collapse the cycle at face ``f`` to a point, filling that puncture."""
    walk = face_walk(x, resolve_face(x, f))
    if not walk.is_cycle:
        raise RibbonError("face is not a cycle")
    label = x.label_of_face(walk.darts[0])
    cur = x
    for d in walk.darts[:-1]:
        cur = apply_move(cur, Contraction(d))
    loop = walk.darts[-1]
    a, b = loop, cur.sigma[loop]
    v = cur.vertex_of[a]
    remaining = [d for d in cur.cyclic_order(v, a) if d not in (a, b)]
    if not remaining and cur.num_vertices == 1:
        raise RibbonError("closing up a circle leaves no skeleton")
    sigma, vertex_of, rho = dict(cur.sigma), dict(cur.vertex_of), dict(cur.rho)
    for d in (a, b):
        del sigma[d], vertex_of[d], rho[d]
    for k, d in enumerate(remaining):
        rho[d] = remaining[(k + 1) % len(remaining)]
    labels = {}
    for k, m in cur.face_labels.items():
        if k == label:
            continue
        if m in (a, b):
            m = next(d for d in cur.face_darts(m) if d not in (a, b))
        labels[k] = m
    return RibbonGraph(sigma, vertex_of, rho, labels)

