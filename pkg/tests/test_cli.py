import json
import subprocess
import sys

import numpy as np
import pytest

from hyperpolygon import cli
from hyperpolygon.exceptions import ProjectionFailed
from hyperpolygon.optimizer import TheoremReport
from hyperpolygon.serialize import dumps

PENTAGON_PERIMETER = 5.306375309525178


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_incircle_pentagon_json(capsys):
    code, out, _ = run(capsys, "incircle", "--deg", "90", "90", "90", "90", "90", "--json")
    assert code == 0
    d = json.loads(out)
    assert d["perimeter"] == pytest.approx(PENTAGON_PERIMETER, abs=1e-12)
    assert np.allclose(np.cosh(d["lengths"]), (1 + np.sqrt(5)) / 2, atol=1e-9)
    for key in ("angles", "lengths", "vertices", "duals", "radius", "tangent_lengths", "center"):
        assert key in d


def test_incircle_table_and_radians(capsys):
    code, out, _ = run(capsys, "incircle", "--rad", *[str(np.pi / 2)] * 5)
    assert code == 0
    assert "perimeter  5.30637530953" in out


def test_incircle_quadrilateral(capsys):
    assert run(capsys, "incircle", "60", "60", "60", "60")[0] == 0


def test_incircle_inadmissible(capsys):
    code, _, err = run(capsys, "incircle", "90", "90", "90")
    assert code == 2
    assert "2*pi" in err


def test_bad_arguments_exit_2(capsys):
    assert run(capsys, "incircle")[0] == 2
    assert run(capsys, "incircle", "abc")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_minimize_pentagon(capsys):
    code, out, _ = run(capsys, "minimize", "90", "90", "90", "90", "90", "--samples", "20", "--json")
    assert code == 0
    d = json.loads(out)
    assert d["passed"]
    assert d["max_gap"] >= d["min_gap"] >= 0


def test_minimize_triangle(capsys):
    code, out, _ = run(capsys, "minimize", "30", "40", "50", "--samples", "3")
    assert code == 0
    assert "zero-dimensional" in out


def test_minimize_reports_violation(capsys, monkeypatch):
    def failing(angles, samples, seed):
        return TheoremReport(angles=(1.0,) * 5, seed=seed, samples=samples, radius=1.0,
                             incircle_perimeter=1.0, zero_dimensional=False,
                             violations=["sample 0: perimeter below the minimum"])

    monkeypatch.setattr(cli, "verify_theorem", failing)
    code, out, _ = run(capsys, "minimize", "90", "90", "90", "90", "90")
    assert code == 3
    assert "VIOLATION" in out


def test_numerical_failure_exit_4(capsys, monkeypatch):
    def broken(angles):
        raise ProjectionFailed("boom")

    monkeypatch.setattr(cli, "solve", broken)
    code, _, err = run(capsys, "incircle", "90", "90", "90", "90", "90")
    assert code == 4
    assert "ProjectionFailed" in err


def test_minimize_is_byte_identical(tmp_path):
    outputs = []
    for k in range(2):
        target = tmp_path / f"report{k}.json"
        cli.main(["minimize", "90", "100", "80", "95", "85", "--seed", "7", "--samples", "10",
                  "--json", "--out", str(target)])
        outputs.append(target.read_bytes())
    assert outputs[0] == outputs[1]


def test_incircle_json_round_trips_through_render_and_check(tmp_path, capsys):
    src = tmp_path / "hexagon.json"
    angles = ["70", "50", "60", "80", "55", "65"]
    assert cli.main(["incircle", *angles, "--json", "--out", str(src)]) == 0
    d = json.loads(src.read_text())
    # re-serializing the parsed numbers reproduces the file exactly
    assert dumps(d) == src.read_text()
    from hyperpolygon.polygon import from_dict

    p = from_dict(d)
    assert p.lengths.tolist() == d["lengths"]
    assert p.vertices.tolist() == d["vertices"]

    direct, from_file = tmp_path / "a.svg", tmp_path / "b.svg"
    assert cli.main(["render", *angles, "--out", str(direct)]) == 0
    assert cli.main(["render", "--input", str(src), "--out", str(from_file)]) == 0
    assert direct.read_text() == from_file.read_text()

    code, out, _ = run(capsys, "check", str(src))
    assert code == 0 and "polygon is valid" in out


def test_render_from_lengths(capsys):
    edge = str(float(np.arccosh((1 + np.sqrt(5)) / 2)))
    code, out, _ = run(capsys, "render", "90", "90", "90", "90", "90", "--lengths", *[edge] * 5)
    assert code == 0
    assert out.startswith("<?xml") and 'id="incircle"' in out


def test_render_and_check_reject_bad_files(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    assert run(capsys, "render", "--input", str(bad))[0] == 2
    assert run(capsys, "check", str(bad))[0] == 2
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == 2
    wrong = tmp_path / "open.json"
    wrong.write_text(json.dumps({"angles": [1.0] * 5, "lengths": [1.0] * 5}))
    assert run(capsys, "check", str(wrong))[0] == 2


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "hyperpolygon", "incircle", "90", "90", "90", "90", "90"],
        capture_output=True, text=True, check=True,
    ).stdout
    assert out.startswith("radius")
