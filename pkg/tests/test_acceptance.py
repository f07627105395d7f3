"""Acceptance criteria 1-9; each records a verdict line for the run summary."""

from __future__ import annotations

import random

from oracles import arrangement_bounded_regions, polygon_counts, ribbon_oracle

from mirrorskel.charts import build_B_diagram, build_cech_diagram, canonical_bijection, diagram_isomorphic
from mirrorskel.generators import random_move, random_rep, random_ribbon_graph, random_wheel_quiver, standard_triangulation
from mirrorskel.lattice import dual_tropical_graph
from mirrorskel.quiver import KRONECKER, QuiverRep, euler_form, hom_complex, wheel_to_quiver, quivers_isomorphic
from mirrorskel.ribbon import (
    apply_move,
    dumbbell,
    ensure_cycle_at_face,
    faces,
    has_cycle_at_face,
    label_all_faces,
    standard_skeleton,
    surface_invariants,
    theta,
)
from mirrorskel.synth import synthesize
from mirrorskel.tropical import (
    check_balanced,
    check_nondegenerate,
    infinite_edge_count,
    mirror_invariants,
    replay_steps,
    sweep_decompose,
)


def test_criterion_1_pants_skeleta(criterion):
    got = []
    for name, x, cycles in (("theta", theta(), 3), ("dumbbell", dumbbell(), 2)):
        inv = surface_invariants(x)
        n_cyc = sum(1 for f in faces(x) if f.is_cycle)
        got.append((name, inv, n_cyc, inv == (0, 3) and n_cyc == cycles))
    ok = all(g[-1] for g in got)
    criterion(1, ok, "; ".join(f"{n} {inv} with {c} cycle-faces" for n, inv, c, _ in got))
    assert ok, got


def test_criterion_2_standard_skeleta(criterion):
    bad = []
    for g in range(1, 4):
        for n in range(1, 5):
            x = standard_skeleton(g, n)
            if surface_invariants(x) != (g, n) or ribbon_oracle(x.sigma, x.rho) != (g, n):
                bad.append((g, n))
    criterion(2, not bad, f"12 cases, failures {bad}" if bad else "12 cases")
    assert not bad


def test_criterion_3_maximum_principle(criterion, corpus, corpus_duals):
    assert len(corpus) == 200 and all(len(t.triangles) <= 20 for t in corpus)
    bad = []
    for i, g in enumerate(corpus_duals):
        cnt = infinite_edge_count(g)
        if not (check_balanced(g).ok and check_nondegenerate(g).ok and cnt.consistent and cnt.count >= 2):
            bad.append(i)
    criterion(3, not bad, f"{len(corpus_duals)} duals" + (f", failures {bad[:5]}" if bad else ""))
    assert not bad


def test_criterion_4_sweep_soundness(criterion, corpus_duals):
    bad = []
    for i, g in enumerate(corpus_duals):
        steps = sweep_decompose(g)
        rebuilt = replay_steps(steps, g.num_vertices)
        exact = (
            rebuilt.positions == g.positions
            and rebuilt.finite_edges == g.finite_edges
            and rebuilt.infinite_edges == g.infinite_edges
        )
        if not exact or any(len(s.glue_edges) > 2 for s in steps):
            bad.append(i)
    criterion(4, not bad, f"{len(corpus_duals)} sweeps" + (f", failures {bad[:5]}" if bad else ""))
    assert not bad


def test_criterion_5_end_to_end(criterion, corpus_duals):
    bad = []
    for i, g in enumerate(corpus_duals):
        x, cert = synthesize(g)
        covers = all(s.cover is None or s.cover.ok for s in cert.steps)
        if surface_invariants(x) != mirror_invariants(g) or not covers or not cert.ok:
            bad.append(i)
    fixed = {}
    for d, want in ((1, (0, 3)), (2, (0, 6)), (3, (1, 9)), (4, (3, 12))):
        t = standard_triangulation(d)
        g = dual_tropical_graph(t)
        x, cert = synthesize(g)
        regions = arrangement_bounded_regions(
            g.positions,
            [(e.tail, e.head) for e in g.finite_edges],
            [(r.vertex, r.momentum) for r in g.infinite_edges],
        )
        interior, _ = polygon_counts(t.polytope.vertices)
        genus = (d - 1) * (d - 2) // 2
        fixed[d] = (
            mirror_invariants(g) == want
            and surface_invariants(x) == want
            and cert.ok
            and regions == genus == interior
        )
    ok = not bad and all(fixed.values())
    criterion(5, ok, f"{len(corpus_duals)} syntheses, dilates {sorted(d for d, v in fixed.items() if v)} exact")
    assert not bad, bad[:5]
    assert all(fixed.values()), fixed


def test_criterion_6_diagram_iso(criterion, corpus, corpus_duals):
    bad = []
    for i, (t, g) in enumerate(zip(corpus, corpus_duals)):
        iso = diagram_isomorphic(build_B_diagram(g), build_cech_diagram(t), canonical_bijection(g, t))
        if not (iso.ok and iso.canonical):
            bad.append(i)
    criterion(6, not bad, f"{len(corpus)} pairs via the canonical bijection")
    assert not bad


def test_criterion_7_quiver_euler(criterion):
    rng = random.Random(7)
    bad = []
    for k in range(100):
        q = random_wheel_quiver(rng)
        m, n = random_rep(q, rng), random_rep(q, rng)
        h = hom_complex(q, m, n)
        chi = euler_form(q, m.dims, n.dims)
        if not (chi == h.h0 - h.h1 == h.c0 - h.c1):
            bad.append(k)
    q11 = wheel_to_quiver("+-")
    s0 = QuiverRep(KRONECKER, (1, 0), ([], []))
    s1 = QuiverRep(KRONECKER, (0, 1), ([[]], [[]]))
    fixed = (
        quivers_isomorphic(q11, KRONECKER)
        and euler_form(KRONECKER, (1, 0), (0, 1)) == -2
        and hom_complex(KRONECKER, s0, s1).as_tuple() == (0, 2, 0, 2)
    )
    ok = not bad and fixed
    criterion(7, ok, "100 random representations; Kronecker <(1,0),(0,1)> = -2")
    assert not bad
    assert fixed


def test_criterion_8_move_invariance(criterion):
    rng = random.Random(8)
    bad = []
    for k in range(500):
        x = label_all_faces(random_ribbon_graph(rng, max_edges=5))
        inv, labels = surface_invariants(x), set(x.face_labels)
        for _ in range(rng.randint(1, 6)):
            m = random_move(x, rng)
            if m is None:
                break
            x = apply_move(x, m)
            face_labels = {f.label for f in faces(x)}
            if surface_invariants(x) != inv or set(x.face_labels) != labels or face_labels != labels:
                bad.append(k)
                break
    criterion(8, not bad, "500 random move sequences")
    assert not bad


def test_criterion_9_dumbbell_cycle(criterion):
    x = dumbbell().with_labels({"outer": 1, "a": 0, "b": 4})
    assert not has_cycle_at_face(x, "outer")
    y, mlog = ensure_cycle_at_face(x, ["outer"])
    ok = surface_invariants(y) == (0, 3) and has_cycle_at_face(y, "outer") and len(mlog.moves) <= 64
    if mlog.explicit:
        chain = mlog.replay(x)
        ok = ok and all(surface_invariants(z) == (0, 3) for z in chain)
        ok = ok and chain[-1] == y
    criterion(9, ok, f"explicit log of {len(mlog.moves)} moves" if mlog.explicit else "re-synthesized")
    assert ok
