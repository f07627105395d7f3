from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from mirrorskel.charts import (
    EDGE_CHART,
    VERTEX_CHART,
    build_B_diagram,
    build_cech_diagram,
    canonical_bijection,
    diagram_isomorphic,
    regions,
    restrict_diagram,
)
from mirrorskel.errors import StructuralError
from mirrorskel.generators import random_triangulation, standard_triangulation, two_triangles, unit_triangle
from mirrorskel.lattice import dual_tropical_graph
from mirrorskel.tropical import FiniteEdge, InfiniteEdge, TropicalGraph


def census(d):
    kinds = [o.kind for o in d.objects.values()]
    return kinds.count("vertex"), kinds.count("edge"), len(d.arrows)


def test_unit_B_diagram():
    d = build_B_diagram(dual_tropical_graph(unit_triangle()))
    assert census(d) == (1, 3, 3)
    (v,) = d.vertex_keys()
    assert len(d.objects[v].coordinates) == 3 and d.objects[v].chart_type == VERTEX_CHART
    assert all(d.objects[k].chart_type == EDGE_CHART for k in d.edge_keys())


def test_two_triangle_B_diagram():
    d = build_B_diagram(dual_tropical_graph(two_triangles()))
    assert census(d) == (2, 5, 6)
    into_shared = [a for a in d.arrows if a.target == ("e", "e0")]
    assert len(into_shared) == 2
    for k in d.edge_keys():
        if k != ("e", "e0"):
            assert sum(1 for a in d.arrows if a.target == k) == 1


def test_loop_rejected():
    g = TropicalGraph(((0, 0),), (FiniteEdge(0, 0, (1, 0)),), (InfiniteEdge(0, (0, 1)),))
    with pytest.raises(StructuralError):
        build_B_diagram(g)


def test_cech_census():
    assert census(build_cech_diagram(unit_triangle())) == (1, 3, 3)
    two = build_cech_diagram(two_triangles())
    assert census(two)[:2] == (2, 5)
    shared = ("E", (1, 2))
    inverted = {a.inverted for a in two.arrows if a.target == shared}
    assert inverted == {(0, 0), (1, 1)}
    four = build_cech_diagram(standard_triangulation(2))
    interior = [k for k in four.edge_keys() if sum(1 for a in four.arrows if a.target == k) == 2]
    assert census(four)[0] == 4 and len(interior) == 3 and len(four.edge_keys()) - len(interior) == 6


def test_regions_via_charts():
    ra = regions(dual_tropical_graph(standard_triangulation(3)))
    assert len(ra.regions) == 10


@pytest.mark.parametrize("make", [unit_triangle, two_triangles, lambda: standard_triangulation(2),
                                  lambda: standard_triangulation(3)])
def test_B_equals_cech(make):
    t = make()
    g = dual_tropical_graph(t)
    b, c = build_B_diagram(g), build_cech_diagram(t)
    iso = diagram_isomorphic(b, c, canonical_bijection(g, t))
    assert iso.ok and iso.canonical
    searched = diagram_isomorphic(b, c)
    assert searched.ok and not searched.canonical


def test_unit_vs_two_triangles_fails_with_witness():
    a = build_B_diagram(dual_tropical_graph(unit_triangle()))
    b = build_B_diagram(dual_tropical_graph(two_triangles()))
    iso = diagram_isomorphic(a, b)
    assert not iso.ok and "count" in iso.witness


def test_wrong_hint_falls_back_to_search():
    t = two_triangles()
    g = dual_tropical_graph(t)
    b, c = build_B_diagram(g), build_cech_diagram(t)
    omap, cmap = canonical_bijection(g, t)
    bad = dict(cmap)
    k1, k2 = list(bad)[:2]
    bad[k1], bad[k2] = bad[k2], bad[k1]
    iso = diagram_isomorphic(b, c, (omap, bad))
    assert iso.ok and not iso.canonical


def test_restrict_identity_and_vertex():
    two = build_B_diagram(dual_tropical_graph(two_triangles()))
    assert restrict_diagram(two, two.objects) == two
    keep = [("v", 0)] + [a.target for a in two.arrows if a.source == ("v", 0)]
    sub = restrict_diagram(two, keep)
    unit = build_B_diagram(dual_tropical_graph(unit_triangle()))
    assert census(sub) == (1, 3, 3)
    assert diagram_isomorphic(sub, unit).ok


def test_restrict_requires_edges_of_kept_vertices():
    two = build_B_diagram(dual_tropical_graph(two_triangles()))
    with pytest.raises(StructuralError):
        restrict_diagram(two, [("v", 0)])


def test_restrict_composes():
    d = build_B_diagram(dual_tropical_graph(standard_triangulation(2)))
    edges = set(d.edge_keys())
    a = set(edges) | {("v", 0), ("v", 1)}
    b = set(edges) | {("v", 1), ("v", 2)}
    assert restrict_diagram(restrict_diagram(d, a), a & b) == restrict_diagram(d, a & b)


@given(st.integers(0, 10**6))
def test_random_B_equals_cech(seed):
    t = random_triangulation(seed)
    g = dual_tropical_graph(t)
    iso = diagram_isomorphic(build_B_diagram(g), build_cech_diagram(t), canonical_bijection(g, t))
    assert iso.ok and iso.canonical
