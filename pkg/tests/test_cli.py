import hashlib
import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from vunfold import cli, corpus
from vunfold.complex_core import ValidationReport, Violation
from vunfold.formats import read_complex, write_complex

SVG_NS = "{http://www.w3.org/2000/svg}"


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, c in {"cube": corpus.cube(), "triforce": corpus.triforce(),
                    "tet": corpus.single_simplex(3), "pillow": corpus.pillow(),
                    "tp": corpus.tetra_path(4), "klein": corpus.klein_bottle()}.items():
        out[name] = tmp_path / f"{name}.json"
        write_complex(c, out[name])
    return out


def run(*argv):
    return cli.main([str(a) for a in argv])


def test_check_reports_diagnostics(files, capsys):
    assert run("check", files["cube"]) == 0
    out = capsys.readouterr().out
    assert "valid pseudo-manifold" in out and "simplicial (simple dual graph): yes" in out
    assert run("check", files["triforce"]) == 0
    assert "checkered: yes" in capsys.readouterr().out
    assert run("check", files["pillow"]) == 0
    assert "simplicial (simple dual graph): no" in capsys.readouterr().out


def test_check_invalid_complex(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 2, "facets": [[0, 1, 2], [0, 1, 3], [0, 1, 4]]}))
    assert run("check", bad) == 2
    assert "ridge-overfull" in capsys.readouterr().out


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.obj"
    bad.write_text("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n")
    assert run("path", bad) == 2
    assert "non-triangular face" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert run("path", tmp_path / "nope.off") == 2


@pytest.mark.parametrize("name, reason", [("triforce", "CheckeredPolygon"),
                                          ("tet", "SingleSimplex"),
                                          ("pillow", "NonSimplicial2Manifold")])
def test_cycle_exit_3_names_the_reason(files, capsys, name, reason):
    assert run("cycle", files[name]) == 3
    assert reason in capsys.readouterr().err
    assert run("path", files[name]) == 0


def test_path_json(files, tmp_path):
    out = tmp_path / "p.json"
    assert run("path", files["cube"], "--noncrossing", "--json", out) == 0
    doc = json.loads(out.read_text())
    assert len(doc["path"]["facets"]) == 12
    expected = hashlib.sha256(files["cube"].read_bytes()).hexdigest()
    assert doc["provenance"]["input_sha256"] == expected


def test_cycle_start_facet(files, capsys):
    assert run("cycle", files["cube"], "--start-facet", 4) == 0
    tokens = capsys.readouterr().out.split()
    assert tokens[1] == "[4]" and tokens[0] == tokens[-1]


def test_unfold_cube_svg_and_json(files, tmp_path):
    svg, js = tmp_path / "cube.svg", tmp_path / "cube.json"
    assert run("unfold", files["cube"], "--svg", svg, "--json", js, "--strips",
               "--count-label") == 0
    root = ET.parse(svg).getroot()
    assert len(root.findall(f".//{SVG_NS}polygon")) == 12
    doc = json.loads(js.read_text())
    assert len(doc["placements"]) == 12 and doc["gap"] == 0.0


def test_unfold_cycle_mode_and_gap(files, tmp_path):
    js = tmp_path / "k.json"
    assert run("unfold", files["klein"], "--cycle", "--gap", "0.5", "--json", js) == 0
    doc = json.loads(js.read_text())
    assert doc["path"]["cyclic"] and doc["gap"] == 0.5


def test_unfold_cycle_impossible(files, tmp_path):
    assert run("unfold", files["triforce"], "--cycle", "--svg", tmp_path / "t.svg") == 3
    assert not (tmp_path / "t.svg").exists()


def test_unfold_solid_svg_rejected_json_ok(files, tmp_path):
    assert run("unfold", files["tp"], "--svg", tmp_path / "x.svg") == 2
    assert run("unfold", files["tp"], "--json", tmp_path / "x.json") == 0
    assert json.loads((tmp_path / "x.json").read_text())["dim"] == 3


def test_uncertified_layout_is_never_written(files, tmp_path, monkeypatch):
    monkeypatch.setattr(cli, "verify_layout", lambda lay, c, tol: ValidationReport(
        (Violation("not-congruent", "forced"),)))
    svg = tmp_path / "c.svg"
    assert run("unfold", files["cube"], "--svg", svg) == 4
    assert not svg.exists()


def test_gen_and_reread(tmp_path, capsys):
    out = tmp_path / "h.off"
    assert run("gen", "--points", 60, "--seed", 3, "--out", out) == 0
    assert read_complex(out).facet_count == 116
    again = tmp_path / "h2.off"
    run("gen", "--points", 60, "--seed", 3, "--out", again)
    assert out.read_bytes() == again.read_bytes()
    assert run("gen", "--points", 3, "--out", out) == 2


def test_bench_writes_table_and_plot(tmp_path, capsys):
    csv_path, png = tmp_path / "b.tsv", tmp_path / "b.png"
    assert run("bench", "--sizes", "100,200", "--repeat", 1, "--csv", csv_path, "--plot", png) == 0
    rows = csv_path.read_text().splitlines()
    assert rows[0].split("\t") == ["target", "facets", "seconds", "ratio"] and len(rows) == 3
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert "facets" in capsys.readouterr().out


def test_bench_bad_sizes():
    assert run("bench", "--sizes", "a,b") == 2


def test_no_color_output(files, capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    run("check", files["cube"])
    assert "\033[" not in capsys.readouterr().out


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "vunfold.cli", "cycle", str(files["triforce"])],
                          capture_output=True, text=True)
    assert proc.returncode == 3 and "CheckeredPolygon" in proc.stderr
