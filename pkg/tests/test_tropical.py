from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from oracles import arrangement_bounded_regions, polygon_counts

from mirrorskel.generators import random_triangulation, standard_triangulation, two_triangles, unit_triangle
from mirrorskel.lattice import dual_tropical_graph
from mirrorskel.tropical import (
    FiniteEdge,
    InfiniteEdge,
    TropicalGraph,
    check_balanced,
    check_embedding,
    check_gprime,
    check_nondegenerate,
    first_betti,
    infinite_edge_count,
    mirror_invariants,
    replay_steps,
    sweep_decompose,
    trace_regions,
)

seeds = st.integers(min_value=0, max_value=10**6)


def tripod(*moms, pos=(0, 0)) -> TropicalGraph:
    return TropicalGraph((pos,), (), tuple(InfiniteEdge(0, m) for m in moms))


def regions_oracle(g):
    return arrangement_bounded_regions(
        g.positions, [(e.tail, e.head) for e in g.finite_edges], [(r.vertex, r.momentum) for r in g.infinite_edges]
    )


def test_balanced_tripod():
    assert check_balanced(tripod((0, -1), (1, 1), (-1, 0))).ok


def test_unbalanced_tripod():
    rep = check_balanced(tripod((1, 0), (0, 1), (0, -1)))
    assert not rep.ok
    assert rep.items[0]["inward_sum"] == [-1, 0]


def test_nondegenerate():
    assert check_nondegenerate(tripod((0, -1), (1, 1), (-1, 0))).ok
    rep = check_nondegenerate(tripod((1, 0), (-2, 0), (1, 0)))
    assert not rep.ok


def test_embedding_unit_and_three_delta():
    assert check_embedding(dual_tropical_graph(unit_triangle())).ok
    assert check_embedding(dual_tropical_graph(standard_triangulation(3))).ok


def test_crossing_rays_reported():
    g = TropicalGraph(
        ((0, 0), (2, 0)),
        (),
        (InfiniteEdge(0, (1, 1)), InfiniteEdge(1, (-1, 1))),
    )
    rep = check_embedding(g)
    assert not rep.ok
    assert rep.items[-1]["crossings"]


def test_edge_direction_mismatch_reported():
    g = TropicalGraph(((0, 0), (1, 1)), (FiniteEdge(0, 1, (1, 0)),), ())
    assert not check_embedding(g).ok


def test_infinite_edge_counts():
    assert infinite_edge_count(dual_tropical_graph(unit_triangle())).count == 3
    assert infinite_edge_count(dual_tropical_graph(standard_triangulation(3))).count == 9


def test_sweep_unit():
    (step,) = sweep_decompose(dual_tropical_graph(unit_triangle()))
    assert step.glue_edges == () and step.case == "three-infinite"


def test_sweep_two_triangles():
    steps = sweep_decompose(dual_tropical_graph(two_triangles()), (0, 1))
    assert len(steps) == 2
    assert len(steps[0].glue_edges) == 0 and len(steps[1].glue_edges) == 1


def test_sweep_three_delta_has_double_glue():
    steps = sweep_decompose(dual_tropical_graph(standard_triangulation(3)))
    assert len(steps) == 9
    assert any(len(s.glue_edges) == 2 for s in steps)


@pytest.mark.parametrize("d,want", [(1, (0, 3)), (2, (0, 6)), (3, (1, 9)), (4, (3, 12))])
def test_mirror_invariants_dilates(d, want):
    g = dual_tropical_graph(standard_triangulation(d))
    assert mirror_invariants(g) == want
    assert regions_oracle(g) == want[0] == (d - 1) * (d - 2) // 2


def test_region_views():
    ra = trace_regions(dual_tropical_graph(unit_triangle()))
    assert len(ra.regions) == 3 and ra.bounded_count == 0
    assert len(ra.around_vertex[0]) == 3
    g2 = dual_tropical_graph(two_triangles())
    ra2 = trace_regions(g2)
    assert len(ra2.regions) == 4
    flank = ra2.flanking["e0"]
    assert len(flank) == 2
    assert flank <= ra2.around_vertex[0] and flank <= ra2.around_vertex[1]
    ra3 = trace_regions(dual_tropical_graph(standard_triangulation(3)))
    assert len(ra3.regions) == 10 and ra3.bounded_count == 1


def test_gprime_diagnostic():
    assert check_gprime(dual_tropical_graph(unit_triangle()), "r0")
    g = dual_tropical_graph(two_triangles())
    assert all(check_gprime(g, f"r{i}") for i in range(len(g.infinite_edges)))


@given(seeds)
def test_dual_properties(seed):
    t = random_triangulation(seed)
    g = dual_tropical_graph(t)
    assert check_balanced(g).ok
    nd = check_nondegenerate(g)
    assert nd.ok and all(item["spans_lattice"] for item in nd.items)
    assert check_embedding(g).ok
    cnt = infinite_edge_count(g)
    assert cnt.consistent and cnt.count >= 2
    genus, n = mirror_invariants(g)
    inside, boundary = polygon_counts(t.polytope.vertices)
    assert (genus, n) == (inside, boundary)
    assert genus == first_betti(g) == regions_oracle(g)


@given(seeds, st.sampled_from([(0, 1), (1, 0), (1, 2), (-3, 1), (2, -5)]))
def test_sweep_properties(seed, direction):
    g = dual_tropical_graph(random_triangulation(seed))
    steps = sweep_decompose(g, direction)
    heights = [s.height for s in steps]
    assert heights == sorted(heights)
    assert all(len(s.glue_edges) <= 2 for s in steps)
    assert steps[0].glue_edges == ()
    # partial components: a fresh start per empty glue, merges only through glued edges
    comp = {}
    for s in steps:
        ends = set()
        for eid in s.glue_edges:
            e = g.edge(eid)
            other = e.head if e.tail == s.vertex else e.tail
            assert other in comp
            ends.add(comp[other])
        label = min(ends) if ends else s.vertex
        for v, c in comp.items():
            if c in ends:
                comp[v] = label
        comp[s.vertex] = label
    assert len(set(comp.values())) == 1
    rebuilt = replay_steps(steps, g.num_vertices)
    assert rebuilt.positions == g.positions
    assert rebuilt.finite_edges == g.finite_edges
    assert rebuilt.infinite_edges == g.infinite_edges
    assert all(isinstance(c, Fraction) for p in rebuilt.positions for c in p)
