"""Command-line entry point.

Exit status: 0 when every check passes, 1 on a validation or consistency
failure, 2 when an input cannot be parsed.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from . import io
from .charts import (
    build_B_diagram,
    build_cech_diagram,
    canonical_bijection,
    diagram_isomorphic,
)
from .errors import InfeasibleError, MirrorSkelError, ParseError, RibbonError, StructuralError, TriangulationError
from .lattice import Triangulation, dual_tropical_graph, validate_triangulation
from .quiver import euler_form, hom_complex, wheel_to_quiver
from .report import ValidationReport
from .ribbon import DEFAULT_BUDGET, RibbonGraph, surface_invariants, validate_ribbon
from .synth import synthesize
from .tropical import (
    TropicalGraph,
    check_balanced,
    check_embedding,
    check_nondegenerate,
    mirror_invariants,
    sweep_decompose,
)

log = logging.getLogger("mirrorskel")

FORMATS = ("text", "json", "dot", "svg")


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    direction: tuple[int, int] = (0, 1)
    format: str = "text"
    budget: int = DEFAULT_BUDGET
    verbosity: int = 0

    def to_dict(self) -> dict:
        return {"seed": self.seed, "direction": list(self.direction), "budget": self.budget}


@dataclass
class Outcome:
    ok: bool
    data: dict
    text: str
    dot: Optional[str] = None
    svg: Optional[str] = None


class Failure(MirrorSkelError):
    """A stage failed; carries the partial report."""

    def __init__(self, message: str, data: Optional[dict] = None):
        super().__init__(message)
        self.data = data or {}


def parse_direction(s: str) -> tuple[int, int]:
    try:
        x, y = (int(p) for p in s.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"direction must look like 'x,y', got {s!r}") from None
    if (x, y) == (0, 0):
        raise argparse.ArgumentTypeError("direction must be nonzero")
    return x, y


# ---------------------------------------------------------------------------
# helpers


def _load_graph(path: str) -> tuple[TropicalGraph, Optional[Triangulation]]:
    obj = io.read_file(path)
    if isinstance(obj, Triangulation):
        rep = validate_triangulation(obj)
        if not rep.ok:
            raise Failure("invalid triangulation", {"validate": rep.to_dict()})
        try:
            return dual_tropical_graph(obj), obj
        except TriangulationError as exc:
            raise Failure(str(exc)) from None
    if isinstance(obj, TropicalGraph):
        return obj, None
    raise ParseError(f"{path}: expected a triangulation or tropical graph file")


def _tropical_report(g: TropicalGraph) -> ValidationReport:
    parts = {"balanced": check_balanced(g), "nondegenerate": check_nondegenerate(g), "embedded": check_embedding(g)}
    problems = [f"{k}: {p}" for k, r in parts.items() for p in r.problems]
    try:
        g.require_trivalent()
    except StructuralError as exc:
        problems.append(f"trivalent: {exc}")
    return ValidationReport(not problems, [{"check": k, "ok": r.ok} for k, r in parts.items()], problems)


def _fmt_report(name: str, rep: ValidationReport) -> str:
    lines = [f"{name}: {'ok' if rep.ok else 'FAILED'}"]
    lines += [f"  - {p}" for p in rep.problems]
    return "\n".join(lines)


def _synth_text(cert) -> list[str]:
    lines = []
    for s in cert.steps:
        cover = "-" if s.cover is None else ("ok" if s.cover.ok else s.cover.failure)
        glue = ",".join(s.glue_edges) or "none"
        lines.append(f"  vertex {s.vertex}: {s.case}, glue {glue}, {s.pants}, cover {cover}")
    return lines


# ---------------------------------------------------------------------------
# commands


def cmd_validate(path: str, cfg: RunConfig) -> Outcome:
    obj = io.read_file(path)
    if isinstance(obj, Triangulation):
        kind, rep = "triangulation", validate_triangulation(obj)
    elif isinstance(obj, TropicalGraph):
        kind, rep = "tropical graph", _tropical_report(obj)
    elif isinstance(obj, RibbonGraph):
        kind, rep = "ribbon graph", validate_ribbon(obj)
    else:
        raise ParseError(f"{path}: nothing to validate in this file kind")
    return Outcome(rep.ok, {"kind": kind, **rep.to_dict()}, _fmt_report(kind, rep))


def cmd_dual(path: str, cfg: RunConfig) -> Outcome:
    g, _ = _load_graph(path)
    data = io.tropical_to_dict(g)
    text = (
        f"{g.num_vertices} vertices, {len(g.finite_edges)} finite edges, "
        f"{len(g.infinite_edges)} infinite edges"
    )
    return Outcome(True, data, text, io.tropical_to_dot(g), io.tropical_to_svg(g))


def cmd_invariants(path: str, cfg: RunConfig) -> Outcome:
    obj = io.read_file(path)
    if isinstance(obj, RibbonGraph):
        rep = validate_ribbon(obj)
        if not rep.ok:
            raise Failure("invalid ribbon graph", rep.to_dict())
        gn = surface_invariants(obj)
    else:
        g, _ = _load_graph(path)
        gn = mirror_invariants(g)
    return Outcome(True, {"genus": gn[0], "punctures": gn[1]}, f"(g, n) = ({gn[0]}, {gn[1]})")


def cmd_sweep(path: str, cfg: RunConfig) -> Outcome:
    g, _ = _load_graph(path)
    steps = sweep_decompose(g, cfg.direction)
    data = {
        "direction": list(cfg.direction),
        "steps": [
            {
                "vertex": s.vertex,
                "height": io.rational_out(s.height),
                "glue_edges": list(s.glue_edges),
                "new_open_edges": list(s.new_open_edges),
                "case": s.case,
            }
            for s in steps
        ],
    }
    lines = [
        f"vertex {s.vertex} at height {s.height}: glue [{', '.join(s.glue_edges)}], "
        f"open [{', '.join(s.new_open_edges)}] ({s.case})"
        for s in steps
    ]
    return Outcome(True, data, "\n".join(lines))


def cmd_synthesize(path: str, cfg: RunConfig, out: Optional[str] = None) -> Outcome:
    g, _ = _load_graph(path)
    x, cert = synthesize(g, cfg.direction, cfg.budget, cfg.seed)
    if out:
        io.write_file(out, x)
    data = {"skeleton": io.ribbon_to_dict(x), "certificate": cert.to_dict()}
    gt, gs = cert.tropical_invariants, cert.skeleton_invariants
    text = "\n".join(
        [f"synthesis: {'ok' if cert.ok else 'FAILED'}", f"  tropical (g, n) = {gt}", f"  skeleton (g, n) = {gs}"]
        + _synth_text(cert)
    )
    return Outcome(cert.ok, data, text, io.ribbon_to_dot(x), io.tropical_to_svg(g))


def cmd_quiver(pattern: str, cfg: RunConfig, orientation: int = 1) -> Outcome:
    try:
        q = wheel_to_quiver(pattern, orientation)
    except (StructuralError, RibbonError) as exc:
        raise ParseError(str(exc)) from None
    data = {"pattern": pattern, "orientation": orientation, **io.quiver_to_dict(q)}
    text = f"quiver with {q.num_vertices} vertices: " + ", ".join(f"{s}->{t}" for s, t in q.arrows)
    return Outcome(True, data, text, io.quiver_to_dot(q))


def cmd_hom(path_m: str, path_n: str, cfg: RunConfig) -> Outcome:
    m, n = io.read_file(path_m, "representation"), io.read_file(path_n, "representation")
    if m.quiver != n.quiver:
        raise Failure("representations are of different quivers")
    h = hom_complex(m.quiver, m, n)
    chi = euler_form(m.quiver, m.dims, n.dims)
    consistent = chi == h.h0 - h.h1
    data = {"C0": h.c0, "C1": h.c1, "H0": h.h0, "H1": h.h1, "euler_form": chi, "consistent": consistent}
    text = f"(C0, C1, H0, H1) = {h.as_tuple()}, euler form {chi}"
    return Outcome(consistent, data, text)


def cmd_diagram(path: str, cfg: RunConfig) -> Outcome:
    obj = io.read_file(path, "triangulation")
    rep = validate_triangulation(obj)
    if not rep.ok:
        raise Failure("invalid triangulation", {"validate": rep.to_dict()})
    try:
        g = dual_tropical_graph(obj)
    except TriangulationError as exc:
        raise Failure(str(exc)) from None
    b, c = build_B_diagram(g), build_cech_diagram(obj)
    iso = diagram_isomorphic(b, c, canonical_bijection(g, obj))
    data = {
        "B": io.diagram_to_dict(b),
        "cech": io.diagram_to_dict(c),
        "isomorphic": iso.ok,
        "canonical": iso.canonical,
        "witness": iso.witness,
        "object_map": sorted([io.jsonable(k), io.jsonable(v)] for k, v in iso.object_map.items()),
        "coordinate_map": sorted([io.jsonable(k), io.jsonable(v)] for k, v in iso.coordinate_map.items()),
    }
    text = (
        f"B diagram: {len(b.objects)} objects, {len(b.arrows)} arrows\n"
        f"Cech diagram: {len(c.objects)} objects, {len(c.arrows)} arrows\n"
        f"isomorphic: {iso.ok}" + ("" if iso.ok else f" ({iso.witness})")
    )
    return Outcome(iso.ok, data, text, io.diagram_to_dot(b) + io.diagram_to_dot(c))


def cmd_check(path: str, cfg: RunConfig) -> Outcome:
    stages: list[dict] = []

    def stage(name: str, ok: bool, **info) -> bool:
        stages.append({"stage": name, "ok": ok, **info})
        return ok

    def done() -> Outcome:
        ok = all(s["ok"] for s in stages)
        lines = []
        for s in stages:
            lines.append(f"{s['stage']}: {'pass' if s['ok'] else 'FAIL'}" + (f" {s['detail']}" if "detail" in s else ""))
            lines += [f"  - {p}" for p in s.get("problems", [])]
        return Outcome(ok, {"config": cfg.to_dict(), "ok": ok, "stages": stages}, "\n".join(lines))

    obj = io.read_file(path)
    t = None
    if isinstance(obj, Triangulation):
        t = obj
        rep = validate_triangulation(t)
        if not stage("validate", rep.ok, problems=rep.problems):
            return done()
        try:
            g = dual_tropical_graph(t)
        except TriangulationError as exc:
            stage("dual", False, detail=str(exc))
            return done()
        stage("dual", True)
    elif isinstance(obj, TropicalGraph):
        g = obj
        rep = _tropical_report(g)
        if not stage("validate", rep.ok, problems=rep.problems):
            return done()
    else:
        raise ParseError(f"{path}: expected a triangulation or tropical graph file")
    rep = _tropical_report(g)
    if not stage("tropical", rep.ok, problems=rep.problems):
        return done()
    gn = mirror_invariants(g)
    stage("mirror_invariants", True, detail=f"(g, n) = {gn}", invariants=list(gn))
    try:
        x, cert = synthesize(g, cfg.direction, cfg.budget, cfg.seed)
    except (RibbonError, InfeasibleError) as exc:
        stage("synthesize", False, detail=str(exc))
        return done()
    stage("synthesize", cert.ok, seed=cfg.seed, direction=list(cfg.direction))
    sk = surface_invariants(x)
    stage("surface_invariants", sk == gn, detail=f"(g, n) = {sk}", invariants=list(sk))
    if t is None:
        stage("diagrams", True, detail="skipped: no triangulation")
        return done()
    try:
        b, c = build_B_diagram(g), build_cech_diagram(t)
    except StructuralError as exc:
        stage("diagrams", False, detail=str(exc))
        return done()
    stage("diagrams", True, objects=len(b.objects), arrows=len(b.arrows))
    iso = diagram_isomorphic(b, c, canonical_bijection(g, t))
    stage("diagram_isomorphic", iso.ok, **({} if iso.ok else {"detail": iso.witness}))
    return done()


# ---------------------------------------------------------------------------
# argument handling


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--direction", type=parse_direction, default=(0, 1), help="sweep direction 'x,y'")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="move search budget")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="mirrorskel", description="Tropical curves, ribbon skeleta and chart diagrams.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("validate", "validate triangulation, tropical graph or ribbon graph files"),
        ("dual", "dual tropical graph of a triangulation"),
        ("invariants", "(genus, punctures) of a curve or skeleton"),
        ("sweep", "sweep decomposition of the tropical graph"),
        ("diagram", "B-side and Cech chart diagrams and their bijection"),
        ("check", "end-to-end pipeline"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("files", nargs="+")
    sp = sub.add_parser("synthesize", parents=[common], help="skeleton by pants gluing")
    sp.add_argument("files", nargs="+")
    sp.add_argument("-o", "--out", help="write the skeleton to this file (single input only)")
    sp = sub.add_parser("quiver", parents=[common], help="quiver of a wheel pattern such as '++-'")
    sp.add_argument("pattern")
    sp.add_argument("--orientation", type=int, choices=(1, -1), default=1)
    sp = sub.add_parser("hom", parents=[common], help="Hom complex dimensions of two representations")
    sp.add_argument("m")
    sp.add_argument("n")
    return p


def _render(outcome: Outcome, fmt: str) -> str:
    if fmt == "json":
        return io.dumps(outcome.data)
    if fmt == "dot" and outcome.dot is not None:
        return outcome.dot
    if fmt == "svg" and outcome.svg is not None:
        return outcome.svg
    if fmt in ("dot", "svg"):
        raise Failure(f"no {fmt} output for this command")
    return outcome.text + "\n"


def _run_one(fn: Callable[[], Outcome]) -> tuple[int, Outcome]:
    try:
        res = fn()
    except ParseError as exc:
        return 2, Outcome(False, {"ok": False, "error": "parse", "message": str(exc)}, f"parse error: {exc}")
    except Failure as exc:
        return 1, Outcome(False, {"ok": False, "error": "failure", "message": str(exc), **exc.data}, f"FAILED: {exc}")
    except (MirrorSkelError, ValueError) as exc:
        return 1, Outcome(False, {"ok": False, "error": "failure", "message": str(exc)}, f"FAILED: {exc}")
    return (0 if res.ok else 1), res


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    cfg = RunConfig(args.seed, args.direction, args.format, args.budget, args.verbose)
    cmd = args.command
    jobs: list[tuple[Optional[str], Callable[[], Outcome]]]
    if cmd == "quiver":
        jobs = [(None, lambda: cmd_quiver(args.pattern, cfg, args.orientation))]
    elif cmd == "hom":
        jobs = [(None, lambda: cmd_hom(args.m, args.n, cfg))]
    else:
        if cmd == "synthesize" and args.out and len(args.files) > 1:
            print("--out needs a single input file", file=sys.stderr)
            return 2
        fns = {
            "validate": cmd_validate,
            "dual": cmd_dual,
            "invariants": cmd_invariants,
            "sweep": cmd_sweep,
            "diagram": cmd_diagram,
            "check": cmd_check,
        }
        if cmd == "synthesize":
            jobs = [(f, lambda f=f: cmd_synthesize(f, cfg, args.out)) for f in args.files]
        else:
            jobs = [(f, lambda f=f, fn=fns[cmd]: fn(f, cfg)) for f in args.files]

    codes, results = [], []
    for name, fn in jobs:
        code, res = _run_one(fn)
        codes.append(code)
        results.append((name, res))
    status = max(codes)

    if cfg.format == "json":
        if len(results) == 1:
            payload = results[0][1].data
        else:
            payload = {"files": [{"file": n, **r.data} for n, r in results], "ok": status == 0}
        sys.stdout.write(io.dumps(payload))
        return status
    for name, res in results:
        if len(results) > 1:
            sys.stdout.write(f"== {name}\n")
        if not res.ok and res.dot is None and res.svg is None and cfg.format in ("dot", "svg"):
            sys.stdout.write(res.text + "\n")
            continue
        try:
            sys.stdout.write(_render(res, cfg.format))
        except Failure as exc:
            print(str(exc), file=sys.stderr)
            status = max(status, 1)
    return status


if __name__ == "__main__":
    sys.exit(main())
