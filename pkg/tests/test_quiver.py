from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from oracles import hom_dim_oracle, sympy_rank

from mirrorskel.errors import RibbonError, StructuralError
from mirrorskel.generators import random_rep
from mirrorskel.quiver import (
    KRONECKER,
    Quiver,
    QuiverRep,
    euler_form,
    hom_complex,
    k0_rank,
    quivers_isomorphic,
    rank,
    wheel_to_quiver,
)
from mirrorskel.ribbon import wheel

patterns = st.text(alphabet="+-", min_size=1, max_size=6)


def test_one_one_is_kronecker():
    q = wheel_to_quiver(wheel(1, 1).pattern)
    assert q.num_vertices == 2
    assert len(set(q.arrows)) == 1 and len(q.arrows) == 2
    assert quivers_isomorphic(q, KRONECKER)


def test_one_zero_is_a_loop():
    assert wheel_to_quiver("+") == Quiver(1, ((0, 0),))


@pytest.mark.parametrize("n", [2, 3, 5])
def test_all_plus_is_oriented_cycle(n):
    q = wheel_to_quiver("+" * n)
    cycle = Quiver(n, tuple((i, (i + 1) % n) for i in range(n)))
    assert quivers_isomorphic(q, cycle)


def test_orientation_gives_opposite():
    q = wheel_to_quiver("++-+-")
    assert wheel_to_quiver("++-+-", -1) == q.opposite()


def test_wheel_graph_input():
    w = wheel(2, 1, "+-+")
    assert wheel_to_quiver(w) == wheel_to_quiver(w.graph) == wheel_to_quiver("+-+")


def test_spokeless_circle_excluded():
    with pytest.raises(RibbonError):
        wheel_to_quiver("")


def test_bad_orientation():
    with pytest.raises(ValueError):
        wheel_to_quiver("+", 2)


def _simple(q, v):
    dims = [0] * q.num_vertices
    dims[v] = 1
    mats = [[[] for _ in range(dims[t])] for s, t in q.arrows]
    return QuiverRep(q, tuple(dims), tuple(mats))


def test_hom_simple_source_to_itself():
    s0 = _simple(KRONECKER, 0)
    assert hom_complex(KRONECKER, s0, s0).as_tuple() == (1, 0, 1, 0)


def test_hom_source_to_sink():
    assert hom_complex(KRONECKER, _simple(KRONECKER, 0), _simple(KRONECKER, 1)).as_tuple() == (0, 2, 0, 2)


def test_hom_kronecker_one_zero():
    m = QuiverRep(KRONECKER, (1, 1), ([[1]], [[0]]))
    h = hom_complex(KRONECKER, m, m)
    assert h.as_tuple() == (2, 2, 1, 1)
    assert hom_dim_oracle(KRONECKER, m, m) == 1


def test_euler_forms():
    one = Quiver(1, ())
    assert euler_form(one, (3,), (4,)) == 12
    assert euler_form(KRONECKER, (1, 0), (0, 1)) == -2
    assert euler_form(KRONECKER, (1, 1), (1, 1)) == 0


def test_k0_rank():
    assert k0_rank(wheel_to_quiver("+-")) == 2
    assert k0_rank(wheel_to_quiver("+++--")) == 5
    assert k0_rank(wheel_to_quiver("++++")) == 4


def test_rep_shape_checked():
    with pytest.raises(StructuralError):
        QuiverRep(KRONECKER, (1, 1), ([[1, 2]], [[0]]))
    with pytest.raises(StructuralError):
        Quiver(2, ((0, 2),))


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=0, max_size=4))
def test_rank_against_sympy(rows):
    fr = [[Fraction(v) for v in r] for r in rows]
    assert rank(fr) == sympy_rank(fr)


@given(patterns, st.sampled_from([1, -1]), st.integers(0, 10**6))
def test_hom_properties(p, orientation, seed):
    rng = random.Random(seed)
    q = wheel_to_quiver(p, orientation)
    m, n = random_rep(q, rng, max_dim=3), random_rep(q, rng, max_dim=3)
    h = hom_complex(q, m, n)
    assert h.h0 == hom_dim_oracle(q, m, n)
    assert euler_form(q, m.dims, n.dims) == h.h0 - h.h1 == h.c0 - h.c1
    assert h.h0 >= 0 and h.h1 >= 0
