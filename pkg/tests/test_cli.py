import json
import subprocess
import sys

import pytest

from tropenriques.cli import run
from tropenriques.enriques import EXAMPLE_FORMS
from tropenriques.fixtures import _data_path


def fixture_file(name):
    return str(_data_path(name))


def call(argv, capsys):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enriques_verify_example(tmp_path, capsys):
    forms = tmp_path / "example.forms"
    forms.write_text("# worked example\n" + "\n".join(EXAMPLE_FORMS) + "\n")
    code, out, _ = call(["enriques", "verify", "--forms", str(forms), "--field", "1009"], capsys)
    assert code == 0
    assert json.loads(out)["verdict"] is True


def test_enriques_verify_false_verdict(tmp_path, capsys):
    forms = tmp_path / "bad.forms"
    forms.write_text("z0\nz1\nz2\n")
    code, out, _ = call(["enriques", "verify", "--forms", str(forms)], capsys)
    assert code == 2
    assert json.loads(out)["verdict"] is False


def test_enriques_build_is_reproducible(capsys):
    first = call(["enriques", "build", "--seed", "11"], capsys)
    second = call(["enriques", "build", "--seed", "11"], capsys)
    assert first[0] == 0 and first[1] == second[1]
    data = json.loads(first[1])
    assert data["seed"] == 11 and data["degree"] == 16 and data["ideal_cone_dim"] == 3


def test_field_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("TROPENRIQUES_FIELD", "32003")
    code, out, _ = call(["enriques", "build"], capsys)
    assert code == 0 and json.loads(out)["field"] == 32003
    monkeypatch.setenv("TROPENRIQUES_FIELD", "32004")
    assert call(["enriques", "build"], capsys)[0] == 1


def test_input_errors(tmp_path, capsys):
    assert call(["enriques", "verify", "--forms", str(tmp_path / "missing")], capsys)[0] == 1
    bad = tmp_path / "bad.forms"
    bad.write_text("z0 +\nz1\nz2\n")
    assert call(["enriques", "verify", "--forms", str(bad)], capsys)[0] == 1
    lifting = tmp_path / "partial.json"
    lifting.write_text(json.dumps({"n": 1, "box": [1], "weights": [{"m": [0], "v": "0"}]}))
    assert call(["trop", "census", str(lifting)], capsys)[0] == 1
    coarse = tmp_path / "flat.json"
    coarse.write_text(json.dumps({"n": 1, "box": [2], "weights": [{"m": [i], "v": "0"} for i in range(3)]}))
    assert call(["trop", "subdivide", str(coarse)], capsys)[0] == 0
    assert call(["trop", "complex", str(coarse)], capsys)[0] == 1


def test_usage_errors_exit_64(capsys):
    for argv in (["trop", "census", "--bogus", "x"], ["nonsense"], ["enriques", "build", "--seed", "x"], []):
        with pytest.raises(SystemExit) as exc:
            run(argv)
        assert exc.value.code == 64
    capsys.readouterr()


def test_trop_census_k3(capsys):
    code, out, _ = call(["trop", "census", fixture_file("k3")], capsys)
    assert code == 0
    assert json.loads(out)["census"] == [[48, 48, 24], [120, 96], [98]]


def test_trop_homology_invariant(capsys):
    code, out, _ = call(["trop", "homology", fixture_file("k3"), "--invariant"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["dims"] == [[1, 0, 1], [0, 20, 0], [1, 0, 1]]
    assert data["invariant_dims"] == [[1, 0, 0], [0, 10, 0], [0, 0, 1]]
    assert data["euler"][1] == -20


def test_trop_complex_and_subdivide_json(capsys):
    code, out, _ = call(["trop", "complex", fixture_file("line")], capsys)
    faces = json.loads(out)["faces"]
    assert code == 0 and len(faces) == 7
    assert {"id", "dim", "sedentarity", "dual_cell", "tangent_basis", "boundary", "coboundary"} <= set(faces[0])
    code, out, _ = call(["trop", "subdivide", fixture_file("del_pezzo")], capsys)
    assert json.loads(out)["unimodular_triangulation"] is True


def test_fixtures_regenerate(tmp_path, capsys):
    code, out, _ = call(["fixtures", "--out", str(tmp_path)], capsys)
    report = json.loads(out)
    assert code == 0
    assert all(entry["matches_frozen"] for entry in report.values())
    assert (tmp_path / "k3.lifting.json").read_text() == open(fixture_file("k3")).read()


def test_console_script_is_byte_identical():
    cmd = [sys.executable, "-m", "tropenriques.cli", "trop", "homology", fixture_file("del_pezzo")]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["dims"][1] == [0, 4, 0]
