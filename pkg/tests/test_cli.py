from __future__ import annotations

import json
import subprocess
import sys

import pytest

from mirrorskel import io
from mirrorskel.cli import main
from mirrorskel.generators import standard_triangulation, two_triangles, unit_triangle
from mirrorskel.lattice import Triangulation


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, t in (
        ("unit", unit_triangle()),
        ("two", two_triangles()),
        ("d3", standard_triangulation(3)),
        ("det2", Triangulation.from_points([(0, 0), (2, 0), (0, 1)], [(0, 1, 2)])),
    ):
        p = tmp_path / f"{name}.json"
        io.write_file(p, t)
        out[name] = str(p)
    bad = tmp_path / "broken.json"
    bad.write_text('{"points": [')
    out["broken"] = str(bad)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_check_unit(files, capsys):
    code, out = run(capsys, "check", "--format", "json", files["unit"])
    rep = json.loads(out)
    assert code == 0 and rep["ok"]
    stages = {s["stage"]: s for s in rep["stages"]}
    assert stages["mirror_invariants"]["invariants"] == [0, 3]
    assert stages["surface_invariants"]["invariants"] == [0, 3]
    assert stages["diagram_isomorphic"]["ok"]
    assert rep["config"] == {"seed": 0, "direction": [0, 1], "budget": 64}


def test_check_three_delta(files, capsys):
    code, out = run(capsys, "check", "--format", "json", files["d3"])
    rep = json.loads(out)
    stages = {s["stage"]: s for s in rep["stages"]}
    assert code == 0
    assert stages["mirror_invariants"]["invariants"] == stages["surface_invariants"]["invariants"] == [1, 9]


def test_check_non_unimodular_fails_at_validate(files, capsys):
    code, out = run(capsys, "check", "--format", "json", files["det2"])
    rep = json.loads(out)
    assert code == 1
    assert [s["stage"] for s in rep["stages"]] == ["validate"]


def test_parse_error_exit_two(files, capsys):
    code, out = run(capsys, "check", files["broken"])
    assert code == 2 and "parse error" in out
    code, _ = run(capsys, "validate", files["unit"], files["broken"])
    assert code == 2


def test_json_reports_are_byte_identical(files, capsys):
    _, a = run(capsys, "check", "--format", "json", "--seed", "3", files["d3"], files["two"])
    _, b = run(capsys, "check", "--format", "json", "--seed", "3", files["d3"], files["two"])
    assert a == b
    assert json.loads(a)["ok"]


def test_validate_and_invariants(files, capsys):
    assert run(capsys, "validate", files["unit"])[0] == 0
    assert run(capsys, "validate", files["det2"])[0] == 1
    code, out = run(capsys, "invariants", files["d3"])
    assert code == 0 and "(1, 9)" in out


def test_dual_exports_round_trip(files, capsys, tmp_path):
    for fmt in ("json", "dot", "svg"):
        code, out = run(capsys, "dual", "--format", fmt, files["d3"])
        assert code == 0
        path = tmp_path / f"dual.{fmt}"
        path.write_text(out)
        code, inv = run(capsys, "invariants", str(path))
        assert code == 0 and "(1, 9)" in inv


def test_sweep_direction(files, capsys):
    code, out = run(capsys, "sweep", "--format", "json", "--direction", "1,2", files["d3"])
    data = json.loads(out)
    assert code == 0 and data["direction"] == [1, 2] and len(data["steps"]) == 9


def test_synthesize_writes_skeleton(files, capsys, tmp_path):
    out_path = tmp_path / "sk.json"
    code, out = run(capsys, "synthesize", "--format", "json", files["d3"], "-o", str(out_path))
    assert code == 0 and json.loads(out)["certificate"]["ok"]
    code, inv = run(capsys, "invariants", str(out_path))
    assert "(1, 9)" in inv
    code, dot = run(capsys, "synthesize", "--format", "dot", files["unit"])
    assert dot.startswith("graph ribbon")


def test_quiver_and_hom(capsys, tmp_path):
    code, out = run(capsys, "quiver", "+-", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["num_vertices"] == 2 and len(data["arrows"]) == 2
    code, out = run(capsys, "quiver", "+x")
    assert code == 2
    m = tmp_path / "m.json"
    n = tmp_path / "n.json"
    m.write_text(json.dumps({"quiver": {"num_vertices": 2, "arrows": [[0, 1], [0, 1]]}, "dims": [1, 0],
                             "matrices": [[], []]}))
    n.write_text(json.dumps({"quiver": {"num_vertices": 2, "arrows": [[0, 1], [0, 1]]}, "dims": [0, 1],
                             "matrices": [[[]], [[]]]}))
    code, out = run(capsys, "hom", str(m), str(n), "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert (data["C0"], data["C1"], data["H0"], data["H1"], data["euler_form"]) == (0, 2, 0, 2, -2)


def test_diagram(files, capsys):
    code, out = run(capsys, "diagram", "--format", "json", files["two"])
    data = json.loads(out)
    assert code == 0 and data["isomorphic"] and data["canonical"]
    assert len(data["object_map"]) == 7
    code, out = run(capsys, "diagram", "--format", "dot", files["two"])
    assert out.count("digraph charts") == 2


def test_unsupported_format(files, capsys):
    code, _ = run(capsys, "sweep", "--format", "svg", files["unit"])
    assert code == 1


def test_console_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "mirrorskel.cli", "check", files["unit"]], capture_output=True, text=True)
    assert res.returncode == 0 and "diagram_isomorphic: pass" in res.stdout
