"""Wheel quivers and the two-term Hom complex of their representations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import RibbonError, StructuralError
from .ribbon import RibbonGraph, Wheel, classify_wheel

Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class Quiver:
    num_vertices: int
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for s, t in self.arrows:
            if not (0 <= s < self.num_vertices and 0 <= t < self.num_vertices):
                raise StructuralError(f"arrow {(s, t)} leaves the vertex range")

    @property
    def vertices(self) -> range:
        return range(self.num_vertices)

    def opposite(self) -> "Quiver":
        return Quiver(self.num_vertices, tuple((t, s) for s, t in self.arrows))

    def arrow_multiset(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.arrows))


KRONECKER = Quiver(2, ((0, 1), (0, 1)))


def _as_matrix(rows, nrows: int, ncols: int) -> Matrix:
    m = tuple(tuple(Fraction(v) for v in row) for row in rows)
    if len(m) != nrows or any(len(r) != ncols for r in m):
        raise StructuralError(f"expected a {nrows}x{ncols} matrix")
    return m


@dataclass(frozen=True)
class QuiverRep:
    """Dimension per vertex and, per arrow ``s -> t``, a ``dim t x dim s`` matrix."""

    quiver: Quiver
    dims: tuple[int, ...]
    matrices: tuple[Matrix, ...]

    def __post_init__(self):
        q = self.quiver
        if len(self.dims) != q.num_vertices or any(d < 0 for d in self.dims):
            raise StructuralError("one nonnegative dimension per vertex")
        if len(self.matrices) != len(q.arrows):
            raise StructuralError("one matrix per arrow")
        fixed = tuple(
            _as_matrix(m, self.dims[t], self.dims[s]) for m, (s, t) in zip(self.matrices, q.arrows)
        )
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "matrices", fixed)


def _pattern_of(w: Union[Wheel, RibbonGraph, str]) -> str:
    if isinstance(w, str):
        if set(w) - {"+", "-"}:
            raise StructuralError(f"bad wheel pattern {w!r}")
        return w
    if isinstance(w, Wheel):
        return w.pattern
    return classify_wheel(w).raw_pattern


def wheel_to_quiver(w: Union[Wheel, RibbonGraph, str], orientation: int = 1) -> Quiver:
    """One vertex per arc of the central circle, one arrow per marked point.

    Arc ``i`` runs from marked point ``i`` to ``i+1``. With ``orientation=1``
    the successor of arc ``i-1`` is arc ``i``; a ``+`` point then gives the
    arrow ``i-1 -> i`` and a ``-`` point the reverse. ``orientation=-1``
    reverses the successor and hence every arrow.
    """
    if orientation not in (1, -1):
        raise ValueError("orientation must be 1 or -1")
    p = _pattern_of(w)
    k = len(p)
    if k == 0:
        raise RibbonError("no quiver model; the spokeless circle is handled as a special label")
    arrows = []
    for i, c in enumerate(p):
        prev, cur = (i - 1) % k, i
        fwd = (c == "+") == (orientation == 1)
        arrows.append((prev, cur) if fwd else (cur, prev))
    return Quiver(k, tuple(arrows))


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank by Gaussian elimination over the rationals."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        for i in range(r + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


@dataclass(frozen=True)
class HomDims:
    c0: int
    c1: int
    h0: int
    h1: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.c0, self.c1, self.h0, self.h1)


def hom_complex(q: Quiver, m: QuiverRep, n: QuiverRep) -> HomDims:
    """Dimensions of ``C0 -> C1`` with ``d(f)_a = f_t M_a - N_a f_s``."""
    if m.quiver != q or n.quiver != q:
        raise StructuralError("representations are not of this quiver")
    # coordinates of C0: (v, i, j) for f_v[i][j], f_v : M_v -> N_v
    col = {}
    for v in q.vertices:
        for i in range(n.dims[v]):
            for j in range(m.dims[v]):
                col[(v, i, j)] = len(col)
    rows = []
    for a, (s, t) in enumerate(q.arrows):
        ma, na = m.matrices[a], n.matrices[a]
        for i in range(n.dims[t]):
            for j in range(m.dims[s]):
                row = [Fraction(0)] * len(col)
                # (f_t M_a)[i][j] = sum_k f_t[i][k] M_a[k][j]
                for k in range(m.dims[t]):
                    if ma[k][j]:
                        row[col[(t, i, k)]] += ma[k][j]
                # (N_a f_s)[i][j] = sum_k N_a[i][k] f_s[k][j]
                for k in range(n.dims[s]):
                    if na[i][k]:
                        row[col[(s, k, j)]] -= na[i][k]
                rows.append(row)
    c0, c1 = len(col), len(rows)
    r = rank(rows) if c0 and c1 else 0
    return HomDims(c0, c1, c0 - r, c1 - r)


def euler_form(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    if len(d) != q.num_vertices or len(e) != q.num_vertices:
        raise StructuralError("dimension vectors must be indexed by the vertices")
    return sum(d[v] * e[v] for v in q.vertices) - sum(d[s] * e[t] for s, t in q.arrows)


def k0_rank(q: Quiver) -> int:
    """Rank of the Grothendieck group of finite-dimensional representations."""
    return q.num_vertices


def quivers_isomorphic(a: Quiver, b: Quiver) -> bool:
    """Brute-force check up to vertex renaming (small quivers only)."""
    from itertools import permutations

    if a.num_vertices != b.num_vertices or len(a.arrows) != len(b.arrows):
        return False
    target = sorted(b.arrows)
    return any(
        sorted((p[s], p[t]) for s, t in a.arrows) == target for p in permutations(range(a.num_vertices))
    )
