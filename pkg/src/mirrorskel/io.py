"""JSON file formats, DOT and SVG exports, and their parsers.

Every DOT and SVG export carries the JSON form of the exported object in a
comment (DOT) or ``<metadata>`` element (SVG), so exports parse back to the
same value. The drawing itself is for display only.
"""

from __future__ import annotations

import html
import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .charts import Arrow, ChartDiagram, ChartObject
from .errors import ParseError, StructuralError
from .lattice import Triangulation
from .quiver import Quiver, QuiverRep, wheel_to_quiver
from .ribbon import RibbonGraph, faces
from .ribbon.core import compact
from .tropical import FiniteEdge, InfiniteEdge, TropicalGraph

PAYLOAD_MARK = "mirrorskel-data:"


def dumps(data: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def read_text(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _tuplify(x):
    if isinstance(x, list):
        return tuple(_tuplify(v) for v in x)
    return x


def _need(data, key, kind):
    if not isinstance(data, dict):
        raise ParseError(f"{kind}: expected a JSON object")
    if key not in data:
        raise ParseError(f"{kind}: missing field {key!r}")
    return data[key]


def _int(v, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{what}: expected an integer, got {v!r}")
    return v


def _pair(v, what: str) -> tuple[int, int]:
    if not isinstance(v, list) or len(v) != 2:
        raise ParseError(f"{what}: expected a pair of integers")
    return _int(v[0], what), _int(v[1], what)


def _rational(v, what: str) -> Fraction:
    if isinstance(v, bool):
        raise ParseError(f"{what}: expected a rational")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError):
            pass
    raise ParseError(f"{what}: expected an integer or a 'p/q' string, got {v!r}")


def rational_out(q: Fraction):
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# triangulations


def triangulation_to_dict(t: Triangulation) -> dict:
    return {
        "points": [list(p) for p in t.points],
        "triangles": [list(tri) for tri in t.triangles],
        "hull": [list(p) for p in t.polytope.vertices],
    }


def triangulation_from_dict(data) -> Triangulation:
    pts = _need(data, "points", "triangulation")
    tris = _need(data, "triangles", "triangulation")
    if not isinstance(pts, list) or not isinstance(tris, list):
        raise ParseError("triangulation: points and triangles must be arrays")
    points = [_pair(p, "point") for p in pts]
    triangles = []
    for t in tris:
        if not isinstance(t, list) or len(t) != 3:
            raise ParseError(f"triangle {t!r}: expected three indices")
        tri = tuple(_int(i, "triangle index") for i in t)
        if not all(0 <= i < len(points) for i in tri):
            raise ParseError(f"triangle {list(tri)}: index out of range")
        triangles.append(tri)
    hull = data.get("hull")
    if hull is not None:
        if not isinstance(hull, list):
            raise ParseError("triangulation: hull must be an array")
        hull = [_pair(p, "hull point") for p in hull]
    try:
        return Triangulation.from_points(points, triangles, hull)
    except StructuralError as exc:
        raise ParseError(f"triangulation: {exc}") from None


# ---------------------------------------------------------------------------
# tropical graphs


def tropical_to_dict(g: TropicalGraph) -> dict:
    out = {
        "vertices": [{"pos": [rational_out(c) for c in p]} for p in g.positions],
        "finite_edges": [{"v": [e.tail, e.head], "p": list(e.momentum)} for e in g.finite_edges],
        "infinite_edges": [{"v": r.vertex, "p": list(r.momentum)} for r in g.infinite_edges],
    }
    if "primal_edge" in g.meta:
        out["primal_edge"] = {k: list(v) for k, v in g.meta["primal_edge"].items()}
    if "vertex_triangle" in g.meta:
        out["vertex_triangle"] = list(g.meta["vertex_triangle"])
    return out


def tropical_from_dict(data) -> TropicalGraph:
    verts = _need(data, "vertices", "tropical graph")
    fin = _need(data, "finite_edges", "tropical graph")
    inf = _need(data, "infinite_edges", "tropical graph")
    if not all(isinstance(x, list) for x in (verts, fin, inf)):
        raise ParseError("tropical graph: vertices and edges must be arrays")
    positions = []
    for v in verts:
        pos = _need(v, "pos", "vertex")
        if not isinstance(pos, list) or len(pos) != 2:
            raise ParseError("vertex: pos must be a pair")
        positions.append((_rational(pos[0], "pos"), _rational(pos[1], "pos")))
    finite = []
    for e in fin:
        a, b = _pair(_need(e, "v", "finite edge"), "finite edge v")
        finite.append(FiniteEdge(a, b, _pair(_need(e, "p", "finite edge"), "momentum")))
    infinite = []
    for r in inf:
        infinite.append(
            InfiniteEdge(_int(_need(r, "v", "infinite edge"), "infinite edge v"),
                         _pair(_need(r, "p", "infinite edge"), "momentum"))
        )
    meta = {}
    if "primal_edge" in data:
        meta["primal_edge"] = {k: tuple(v) for k, v in data["primal_edge"].items()}
    if "vertex_triangle" in data:
        meta["vertex_triangle"] = tuple(data["vertex_triangle"])
    try:
        return TropicalGraph(tuple(positions), tuple(finite), tuple(infinite), meta=meta)
    except StructuralError as exc:
        raise ParseError(f"tropical graph: {exc}") from None


# ---------------------------------------------------------------------------
# ribbon graphs


def ribbon_to_dict(x: RibbonGraph) -> dict:
    """Array form; darts and vertices are renumbered consecutively."""
    c, _, _ = compact(x)
    n = len(c.darts)
    return {
        "sigma": [c.sigma[d] for d in range(n)],
        "vertex_of": [c.vertex_of[d] for d in range(n)],
        "cyclic_order": [list(c.cyclic_order(v)) for v in c.vertices],
        "face_labels": [{"label": k, "dart": m} for k, m in sorted(c.face_labels.items(), key=lambda kv: repr(kv[0]))],
    }


def ribbon_from_dict(data) -> RibbonGraph:
    sigma = _need(data, "sigma", "ribbon graph")
    vertex_of = _need(data, "vertex_of", "ribbon graph")
    orders = _need(data, "cyclic_order", "ribbon graph")
    if not all(isinstance(x, list) for x in (sigma, vertex_of, orders)):
        raise ParseError("ribbon graph: sigma, vertex_of and cyclic_order must be arrays")
    n = len(sigma)
    if len(vertex_of) != n:
        raise ParseError("ribbon graph: sigma and vertex_of differ in length")
    sig = {d: _int(s, "sigma") for d, s in enumerate(sigma)}
    if any(not 0 <= s < n or sig[s] != d for d, s in sig.items()):
        raise ParseError("ribbon graph: sigma is not an involution on the darts")
    seen = []
    rho, vo = {}, {}
    for v, order in enumerate(orders):
        if not isinstance(order, list) or not order:
            raise ParseError(f"ribbon graph: cyclic order of vertex {v} must be a nonempty array")
        for i, d in enumerate(order):
            d = _int(d, "dart")
            seen.append(d)
            vo[d] = v
            rho[d] = _int(order[(i + 1) % len(order)], "dart")
    if sorted(seen) != list(range(n)):
        raise ParseError("ribbon graph: cyclic orders do not partition the darts")
    if any(_int(vertex_of[d], "vertex_of") != vo[d] for d in range(n)):
        raise ParseError("ribbon graph: vertex_of disagrees with cyclic_order")
    labels = {}
    for item in data.get("face_labels", []) or []:
        lab = _tuplify(_need(item, "label", "face label"))
        d = _int(_need(item, "dart", "face label"), "face label dart")
        if not 0 <= d < n:
            raise ParseError(f"face label {lab!r} points at a missing dart")
        labels[lab] = d
    return RibbonGraph(sig, vo, rho, labels)


# ---------------------------------------------------------------------------
# quivers and representations


def quiver_to_dict(q: Quiver) -> dict:
    return {"num_vertices": q.num_vertices, "arrows": [list(a) for a in q.arrows]}


def quiver_from_dict(data) -> Quiver:
    nv = _int(_need(data, "num_vertices", "quiver"), "num_vertices")
    arrows = tuple(_pair(a, "arrow") for a in _need(data, "arrows", "quiver"))
    try:
        return Quiver(nv, arrows)
    except StructuralError as exc:
        raise ParseError(f"quiver: {exc}") from None


def rep_to_dict(r: QuiverRep) -> dict:
    return {
        "quiver": quiver_to_dict(r.quiver),
        "dims": list(r.dims),
        "matrices": [[[rational_out(v) for v in row] for row in m] for m in r.matrices],
    }


def rep_from_dict(data) -> QuiverRep:
    """A representation; the quiver is given directly or as a wheel ``pattern``
    with optional ``orientation``."""
    if isinstance(data, dict) and "pattern" in data:
        pat = data["pattern"]
        if not isinstance(pat, str):
            raise ParseError("representation: pattern must be a string")
        try:
            q = wheel_to_quiver(pat, data.get("orientation", 1))
        except (StructuralError, ValueError) as exc:
            raise ParseError(f"representation: {exc}") from None
    else:
        q = quiver_from_dict(_need(data, "quiver", "representation"))
    dims = tuple(_int(d, "dimension") for d in _need(data, "dims", "representation"))
    mats = _need(data, "matrices", "representation")
    if not isinstance(mats, list):
        raise ParseError("representation: matrices must be an array")
    parsed = []
    for m in mats:
        if not isinstance(m, list) or not all(isinstance(row, list) for row in m):
            raise ParseError("representation: each matrix is an array of rows")
        parsed.append(tuple(tuple(_rational(v, "matrix entry") for v in row) for row in m))
    try:
        return QuiverRep(q, dims, tuple(parsed))
    except StructuralError as exc:
        raise ParseError(f"representation: {exc}") from None


# ---------------------------------------------------------------------------
# chart diagrams


def jsonable(x):
    if isinstance(x, tuple):
        return [jsonable(v) for v in x]
    return x


def _coord_key(c) -> str:
    return json.dumps(jsonable(c))


def diagram_to_dict(d: ChartDiagram) -> dict:
    objs = []
    for k in sorted(d.objects, key=_coord_key):
        o = d.objects[k]
        objs.append({
            "key": jsonable(k),
            "kind": o.kind,
            "chart_type": o.chart_type,
            "coordinates": sorted((jsonable(c) for c in o.coordinates), key=json.dumps),
        })
    arrows = [
        {"source": jsonable(a.source), "target": jsonable(a.target), "inverted": jsonable(a.inverted)}
        for a in d.arrows
    ]
    return {"objects": objs, "arrows": arrows}


def diagram_from_dict(data) -> ChartDiagram:
    objects = {}
    for o in _need(data, "objects", "diagram"):
        key = _tuplify(_need(o, "key", "diagram object"))
        coords = frozenset(_tuplify(c) for c in _need(o, "coordinates", "diagram object"))
        objects[key] = ChartObject(_need(o, "kind", "diagram object"), coords,
                                   _need(o, "chart_type", "diagram object"))
    arrows = []
    for a in _need(data, "arrows", "diagram"):
        arrows.append(Arrow(_tuplify(_need(a, "source", "arrow")), _tuplify(_need(a, "target", "arrow")),
                            _tuplify(_need(a, "inverted", "arrow"))))
    for a in arrows:
        if a.source not in objects or a.target not in objects:
            raise ParseError(f"arrow {a} references a missing object")
    return ChartDiagram(objects, tuple(arrows))


# ---------------------------------------------------------------------------
# dispatch


KINDS = ("triangulation", "tropical", "ribbon", "representation", "quiver", "diagram")


def detect_kind(data) -> str:
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object")
    if "triangles" in data:
        return "triangulation"
    if "finite_edges" in data:
        return "tropical"
    if "sigma" in data:
        return "ribbon"
    if "dims" in data:
        return "representation"
    if "arrows" in data and "num_vertices" in data:
        return "quiver"
    if "objects" in data:
        return "diagram"
    raise ParseError("unrecognized file: no known top-level fields")


_FROM = {
    "triangulation": triangulation_from_dict,
    "tropical": tropical_from_dict,
    "ribbon": ribbon_from_dict,
    "representation": rep_from_dict,
    "quiver": quiver_from_dict,
    "diagram": diagram_from_dict,
}

_TO = (
    (Triangulation, triangulation_to_dict),
    (TropicalGraph, tropical_to_dict),
    (RibbonGraph, ribbon_to_dict),
    (QuiverRep, rep_to_dict),
    (Quiver, quiver_to_dict),
    (ChartDiagram, diagram_to_dict),
)


def to_dict(obj) -> dict:
    for cls, fn in _TO:
        if isinstance(obj, cls):
            return fn(obj)
    raise TypeError(f"no file format for {type(obj).__name__}")


def from_dict(data, kind: str | None = None):
    kind = kind or detect_kind(data)
    if kind not in _FROM:
        raise ParseError(f"unknown kind {kind!r}")
    try:
        return _FROM[kind](data)
    except ParseError:
        raise
    except (StructuralError, TypeError, AttributeError, KeyError) as exc:
        raise ParseError(f"{kind}: {exc}") from None


def parse_text(text: str, kind: str | None = None):
    """Parse JSON, or a DOT/SVG export carrying an embedded payload."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return from_dict(loads(text), kind)
    m = re.search(r"//\s*" + re.escape(PAYLOAD_MARK) + r"\s*(.*)$", text, re.M)
    if m is None:
        m = re.search(r"<metadata>\s*" + re.escape(PAYLOAD_MARK) + r"(.*?)</metadata>", text, re.S)
        if m is None:
            raise ParseError("not JSON and no embedded payload found")
        return from_dict(loads(html.unescape(m.group(1))), kind)
    return from_dict(loads(m.group(1)), kind)


def read_file(path: Union[str, Path], kind: str | None = None):
    return parse_text(read_text(path), kind)


def write_file(path: Union[str, Path], obj) -> None:
    Path(path).write_text(dumps(to_dict(obj)))


# ---------------------------------------------------------------------------
# exports


def _payload_line(obj) -> str:
    return f"// {PAYLOAD_MARK} " + json.dumps(to_dict(obj), sort_keys=True)


def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def tropical_to_dot(g: TropicalGraph) -> str:
    lines = ["graph tropical {", _payload_line(g), "  node [shape=point];"]
    for v, (x, y) in enumerate(g.positions):
        lines.append(f'  v{v} [label={_q(v)}, pos="{float(x):.4f},{float(y):.4f}!"];')
    for i, e in enumerate(g.finite_edges):
        lines.append(f"  v{e.tail} -- v{e.head} [label={_q(f'e{i} {e.momentum}')}];")
    for i, r in enumerate(g.infinite_edges):
        lines.append(f"  r{i} [shape=none, label=\"\"];")
        lines.append(f"  v{r.vertex} -- r{i} [label={_q(f'r{i} {r.momentum}')}, style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tropical_to_svg(g: TropicalGraph, size: int = 400) -> str:
    """Straight-line drawing; rays are clipped to a box around the vertices."""
    xs = [float(p[0]) for p in g.positions] or [0.0]
    ys = [float(p[1]) for p in g.positions] or [0.0]
    pad = max(1.0, 0.3 * max(max(xs) - min(xs), max(ys) - min(ys)))
    x0, x1, y0, y1 = min(xs) - pad, max(xs) + pad, min(ys) - pad, max(ys) + pad
    s = size / max(x1 - x0, y1 - y0)

    def tx(x, y):
        return (x - x0) * s, (y1 - y) * s

    def clip(px, py, mx, my):
        ts = []
        for lo, hi, p, m in ((x0, x1, px, mx), (y0, y1, py, my)):
            if m > 0:
                ts.append((hi - p) / m)
            elif m < 0:
                ts.append((lo - p) / m)
        t = min(ts)
        return px + t * mx, py + t * my

    payload = html.escape(json.dumps(to_dict(g), sort_keys=True), quote=False)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">',
        f"<metadata>{PAYLOAD_MARK}{payload}</metadata>",
    ]
    for e in g.finite_edges:
        (ax, ay), (bx, by) = tx(xs[e.tail], ys[e.tail]), tx(xs[e.head], ys[e.head])
        out.append(f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" stroke="black"/>')
    for r in g.infinite_edges:
        px, py = xs[r.vertex], ys[r.vertex]
        ex, ey = clip(px, py, *r.momentum)
        (ax, ay), (bx, by) = tx(px, py), tx(ex, ey)
        out.append(
            f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" stroke="gray" stroke-dasharray="4"/>'
        )
    for x, y in zip(xs, ys):
        cx, cy = tx(x, y)
        out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="3"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def ribbon_to_dot(x: RibbonGraph) -> str:
    """Vertices list their cyclic order; faces are listed as annotations."""
    lines = ["graph ribbon {", _payload_line(x)]
    for v in x.vertices:
        lines.append(f"  v{v} [label={_q(f'v{v}: ' + ' '.join(map(str, x.cyclic_order(v))))}];")
    for e in x.edges():
        ds = x.edge_darts(e)
        if len(ds) == 1:
            lines.append(f"  x{e} [shape=point];")
            lines.append(f"  v{x.vertex_of[e]} -- x{e} [label={_q(e)}, style=dashed];")
        else:
            a, b = ds
            lines.append(f"  v{x.vertex_of[a]} -- v{x.vertex_of[b]} [label={_q(f'{a}|{b}')}];")
    for i, fw in enumerate(faces(x)):
        tag = "cycle" if fw.is_cycle else "face"
        lab = fw.label if fw.label is not None else f"#{i}"
        lines.append(f"  // {tag} {lab}: {' '.join(map(str, fw.darts))}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def quiver_to_dot(q: Quiver) -> str:
    lines = ["digraph quiver {", _payload_line(q)]
    for v in q.vertices:
        lines.append(f"  q{v};")
    for i, (s, t) in enumerate(q.arrows):
        lines.append(f"  q{s} -> q{t} [label={_q(f'a{i}')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def diagram_to_dot(d: ChartDiagram) -> str:
    names = {k: f"n{i}" for i, k in enumerate(sorted(d.objects, key=_coord_key))}
    lines = ["digraph charts {", _payload_line(d)]
    for k, name in names.items():
        o = d.objects[k]
        shape = "box" if o.kind == "vertex" else "ellipse"
        lines.append(f"  {name} [shape={shape}, label={_q(f'{k} {o.chart_type}')}];")
    for a in d.arrows:
        lines.append(f"  {names[a.source]} -> {names[a.target]} [label={_q(f'invert {a.inverted}')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_dot(obj) -> str:
    if isinstance(obj, TropicalGraph):
        return tropical_to_dot(obj)
    if isinstance(obj, RibbonGraph):
        return ribbon_to_dot(obj)
    if isinstance(obj, Quiver):
        return quiver_to_dot(obj)
    if isinstance(obj, ChartDiagram):
        return diagram_to_dot(obj)
    raise TypeError(f"no DOT export for {type(obj).__name__}")
