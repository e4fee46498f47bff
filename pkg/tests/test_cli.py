import csv
import io
import json

import numpy as np
import pytest

from mspec.cli import COMPARE_COLUMNS, main
from mspec.io import save_tensor


@pytest.fixture
def tensor_file(tmp_path, fixture_tensor):
    def make(name):
        path = tmp_path / f"{name}.json"
        save_tensor(fixture_tensor(name), str(path), fmt="coo")
        return str(path)
    return make


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def read_compare(text):
    first, rest = text.split("\n", 1)
    assert first.startswith("# manifest: ")
    return json.loads(first[len("# manifest: "):]), list(csv.DictReader(io.StringIO(rest)))


def test_validate(capsys, tensor_file):
    code, doc = run_json(capsys, "validate", tensor_file("B1"))
    assert code == 0 and doc["valid"] and (doc["m"], doc["n"]) == (3, 3)
    assert doc["manifest"]["command"] == "validate"
    assert set(doc["manifest"]) >= {"inputs", "config", "seed", "version", "timings_ms"}


def test_validate_asymmetric(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"m": 2, "n": 1, "entries": [[[[1.0], [2.0]]], [[[0.0], [1.0]]]]}))
    code, _, err = run(capsys, "validate", str(path))
    assert code == 1 and "SymmetryViolation" in err
    code, doc = run_json(capsys, "validate", str(path), "--repair")
    assert code == 0 and doc["repaired"]


def test_parse_error_position(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"m": 2,\n  "n": ]\n}')
    code, out, err = run(capsys, "validate", str(path))
    assert code == 1 and out == ""
    assert "error[ParseError]" in err and "broken.json:2:" in err


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["solve", "x.json", "--shift", "nope"])
    assert exc.value.code == 1


def test_missing_file(capsys):
    code, _, err = run(capsys, "bounds", "/nonexistent/tensor.json")
    assert code == 1 and err.startswith("error")


def test_bounds(capsys, tensor_file):
    code, doc = run_json(capsys, "bounds", tensor_file("B1"))
    assert code == 0
    assert doc["best_upper"] == pytest.approx(26.5099, abs=1e-3)
    assert doc["best_lower"] == pytest.approx(26.1160, abs=1e-3)
    assert doc["l_star"] >= 1 and doc["i_star"] >= 1


def test_solve(capsys, tensor_file, tmp_path):
    hist = tmp_path / "hist.csv"
    code, doc = run_json(capsys, "solve", tensor_file("B1"), "--shift", "wang",
                         "--history-csv", str(hist))
    assert code == 0 and doc["converged"]
    assert doc["eigenpair"]["lambda"] == pytest.approx(26.1188, abs=1e-2)
    rows = list(csv.reader(hist.open()))
    assert rows[0] == ["iteration", "lambda_shifted", "lambda"]
    assert len(rows) == len(doc["history"]) + 1


@pytest.mark.parametrize("shift", ["es", "li1", "li2", "value:40"])
def test_solve_shifts(capsys, tensor_file, shift):
    code, doc = run_json(capsys, "solve", tensor_file("B4"), "--shift", shift, "--init", "mes")
    assert code == 0 and doc["eigenpair"]["lambda"] == pytest.approx(10.0, abs=1e-5)


def test_exact(capsys, tensor_file):
    code, doc = run_json(capsys, "exact", tensor_file("B4"))
    assert code == 0 and doc["method"] == "omega2"
    assert doc["eigenpair"]["lambda"] == pytest.approx(10.0)
    code, doc = run_json(capsys, "exact", tensor_file("B1"))
    assert code == 2 and not doc["applicable"]


def test_structure(capsys, tensor_file):
    code, doc = run_json(capsys, "structure", tensor_file("B4"))
    assert code == 0 and doc["omega2"]


def test_certify(capsys, tensor_file):
    code, doc = run_json(capsys, "certify", tensor_file("ex51_A"), "--eta", "13")
    assert code == 0 and doc["verdict"] == "certified_strong_ellipticity"
    assert doc["R1"] == pytest.approx(12.0623, abs=1e-3)
    code, doc = run_json(capsys, "certify", tensor_file("ex51_A"), "--scan")
    assert code == 0 and doc["eta"] == 13.0
    code, doc = run_json(capsys, "certify", tensor_file("B1"))
    assert code == 2 and doc["verdict"] == "not_certified"
    code, _, err = run(capsys, "certify", tensor_file("ex51_A"), "--eta", "1")
    assert code == 1 and "EtaTooSmall" in err


def test_certify_refuted(capsys, tmp_path):
    path = tmp_path / "w.json"
    entries = np.full((2, 2, 2, 2), -5.0)
    for i in range(2):
        for j in range(2):
            entries[i, j, i, j] = 0.1
    path.write_text(json.dumps({"m": 2, "n": 2, "entries": entries.tolist()}))
    code, doc = run_json(capsys, "certify", str(path))
    assert code == 3 and doc["verdict"] == "refuted_not_ew"


def test_oracle(capsys, tensor_file):
    code, doc = run_json(capsys, "oracle", tensor_file("B4"), "--restarts", "10")
    assert code == 0 and doc["best"]["lambda"] == pytest.approx(10.0)
    code, doc = run_json(capsys, "oracle", tensor_file("B4"), "--grid-resolution", "100")
    assert doc["method"] == "grid" and doc["best"]["lambda"] == pytest.approx(10.0, abs=1e-6)


def test_generate_exact_pipeline(capsys, tmp_path):
    out = tmp_path / "d.json"
    assert main(["generate", "--family", "delta1", "--m", "3", "--n", "3", "--seed", "5",
                 "--out", str(out)]) == 0
    code, doc = run_json(capsys, "exact", str(out))
    assert code == 0 and doc["method"] == "omega1"
    code, solved = run_json(capsys, "solve", str(out), "--tol", "1e-9")
    assert solved["eigenpair"]["lambda"] == pytest.approx(doc["eigenpair"]["lambda"], abs=1e-5)


@pytest.mark.parametrize("family", ["uniform", "kron", "position", "rhombic", "figure:tan-h1"])
def test_generate_roundtrip(capsys, tmp_path, family):
    out = tmp_path / "g.json"
    assert main(["generate", "--family", family, "--format", "coo", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["manifest"]["clamps"] >= 0
    code, v = run_json(capsys, "validate", str(out))
    assert code == 0 and v["valid"]


def test_generate_unknown_family(capsys):
    code, _, err = run(capsys, "generate", "--family", "nope")
    assert code == 1 and "unknown family" in err


def test_compare_orderings(capsys):
    code, out, _ = run(capsys, "compare", "--count", "1000", "--seed", "1")
    assert code == 0
    manifest, rows = read_compare(out)
    assert manifest["command"] == "compare" and manifest["seed"] == 1
    assert list(rows[0]) == list(COMPARE_COLUMNS) and len(rows) == 1000
    for r in rows:
        v = {k: float(r[k]) for k in ("R1", "R2", "tau", "tau1", "lowerC", "bim_lambda")}
        best = min(v["R1"], v["R2"])
        eps = 1e-9 * max(1.0, best)
        assert best <= v["tau"] + eps and best <= v["tau1"] + eps
        assert v["lowerC"] <= v["bim_lambda"] + eps <= best + 2 * eps


def test_compare_deterministic(capsys, tmp_path):
    outs = []
    path = tmp_path / "c.csv"
    for _ in range(2):
        assert main(["compare", "--count", "20", "--seed", "3", "--no-timings",
                     "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_compare_dir(capsys, tmp_path, tensor_file):
    for name in ("B1", "B3"):
        tensor_file(name)
    code, out, _ = run(capsys, "compare", "--dir", str(tmp_path), "--jobs", "2")
    _, rows = read_compare(out)
    assert [r["id"] for r in rows] == ["B1", "B3"]
    assert float(rows[0]["bim_lambda"]) == pytest.approx(26.1188, abs=1e-2)
