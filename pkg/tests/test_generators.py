from __future__ import annotations

from hypothesis import given, strategies as st

from mirrorskel.generators import placing_triangulation, random_corpus, random_triangulation
from mirrorskel.lattice import validate_triangulation


def test_seed_is_deterministic():
    assert random_triangulation(42) == random_triangulation(42)
    assert random_corpus(5, 7) == random_corpus(5, 7)


def test_placing_keeps_collinear_hull_points():
    tris, pts = placing_triangulation([(0, 0), (1, 0), (2, 0), (0, 1), (1, 1)])
    assert len(pts) == 5 and len(tris) == 3


@given(st.integers(0, 10**6), st.integers(1, 20))
def test_random_triangulations_are_valid(seed, cap):
    t = random_triangulation(seed, max_triangles=cap)
    assert validate_triangulation(t).ok and len(t.triangles) <= max(cap, 1)
