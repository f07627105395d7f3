from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st
from oracles import ribbon_oracle

from mirrorskel.errors import RibbonError
from mirrorskel.generators import random_move, random_ribbon_graph
from mirrorskel.ribbon import (
    Contraction,
    Expansion,
    RibbonGraph,
    Subdivision,
    apply_move,
    apply_move_with_inverse,
    canonical_form,
    circle,
    dumbbell,
    faces,
    figure_eight,
    isomorphic,
    label_all_faces,
    subdivide_edge,
    surface_invariants,
    theta,
    validate_ribbon,
)

rngs = st.integers(min_value=0, max_value=10**6).map(random.Random)


def test_circle_valid():
    x = RibbonGraph.from_orders({0: 1, 1: 0}, {0: (0, 1)})
    assert validate_ribbon(x).ok


def test_sigma_three_cycle_invalid():
    x = RibbonGraph({0: 1, 1: 2, 2: 0}, {0: 0, 1: 0, 2: 0}, {0: 1, 1: 2, 2: 0}, {})
    rep = validate_ribbon(x)
    assert not rep.ok


def test_rho_split_invalid():
    x = RibbonGraph({0: 1, 1: 0, 2: 3, 3: 2}, {d: 0 for d in range(4)}, {0: 1, 1: 0, 2: 3, 3: 2}, {})
    assert not validate_ribbon(x).ok


def test_face_counts():
    assert len(faces(circle())) == 2
    assert len(faces(figure_eight())) == 1
    assert len(faces(theta())) == 3


@pytest.mark.parametrize(
    "make,want", [(circle, (0, 2)), (figure_eight, (1, 1)), (theta, (0, 3)), (dumbbell, (0, 3))]
)
def test_small_invariants(make, want):
    x = make()
    assert surface_invariants(x) == want == ribbon_oracle(x.sigma, x.rho)


def test_cycle_faces_of_pants():
    assert sum(f.is_cycle for f in faces(theta())) == 3
    assert sum(f.is_cycle for f in faces(dumbbell())) == 2


def test_subdivide_circle():
    x = subdivide_edge(circle(), 0)
    assert x.num_vertices == 2 and x.num_edges == 2
    assert surface_invariants(x) == (0, 2)


def test_subdivide_theta_and_repeat():
    x = theta()
    v, e, f = x.num_vertices, x.num_edges, len(faces(x))
    for k in range(1, 6):
        x = apply_move(x, Subdivision(min(x.darts)))
        assert (x.num_vertices, x.num_edges, len(faces(x))) == (v + k, e + k, f)
        assert surface_invariants(x) == (0, 3)


def test_contract_dumbbell_bridge():
    x = apply_move(dumbbell(), Contraction(2))
    assert x.num_vertices == 1 and len(x.darts_at(x.vertices[0])) == 4
    assert surface_invariants(x) == (0, 3)


def test_contract_theta_edge():
    x = apply_move(theta(), Contraction(0))
    assert x.num_vertices == 1 and x.num_edges == 2
    assert surface_invariants(x) == (0, 3)
    # two loops, not interleaved: some loop has its darts adjacent
    order = x.cyclic_order(x.vertices[0])
    k = len(order)
    assert any(x.sigma[order[i]] == order[(i + 1) % k] for i in range(k))


def test_contraction_inverse_restores():
    x = label_all_faces(theta())
    y, inv = apply_move_with_inverse(x, Contraction(1))
    z = apply_move(y, inv)
    assert (z.sigma, z.vertex_of, z.rho) == (x.sigma, x.vertex_of, x.rho)
    # label markers may move along their face
    assert {lab: set(z.face_darts(d)) for lab, d in z.face_labels.items()} == {
        lab: set(x.face_darts(d)) for lab, d in x.face_labels.items()
    }


def test_loop_contraction_rejected():
    with pytest.raises(RibbonError):
        apply_move(circle(), Contraction(0))


def test_expansion_splits_vertex():
    x = apply_move(figure_eight(), Expansion(0, (0, 1), (2, 3)))
    assert x.num_vertices == 2
    assert surface_invariants(x) == (1, 1)


def test_isomorphic_ignores_numbering():
    x = theta()
    y = RibbonGraph({d + 10: s + 10 for d, s in x.sigma.items()}, {d + 10: v + 5 for d, v in x.vertex_of.items()},
                    {d + 10: r + 10 for d, r in x.rho.items()}, {})
    assert isomorphic(x, y)
    assert canonical_form(x) == canonical_form(y)
    assert not isomorphic(x, dumbbell())


@given(rngs)
def test_random_graph_invariants_match_oracle(rng):
    x = random_ribbon_graph(rng, max_edges=7)
    assert validate_ribbon(x).ok
    assert surface_invariants(x) == ribbon_oracle(x.sigma, x.rho)


@given(rngs)
def test_moves_preserve_invariants_and_labels(rng):
    x = label_all_faces(random_ribbon_graph(rng, max_edges=5))
    inv, labels = surface_invariants(x), set(x.face_labels)
    for _ in range(8):
        m = random_move(x, rng)
        if m is None:
            break
        y, back = apply_move_with_inverse(x, m)
        assert validate_ribbon(y).ok
        assert surface_invariants(y) == inv == ribbon_oracle(y.sigma, y.rho)
        assert {f.label for f in faces(y)} == labels
        if back is not None:
            assert isomorphic(apply_move(y, back), x)
        x = y
