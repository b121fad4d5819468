import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from polytf.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_spectrum_chebyshev():
    code, out, _ = call("spectrum", "--family", "chebyshev1", "--m", "0", "--n", "4")
    assert code == 0
    data = rows(out)
    assert [int(r["k"]) for r in data] == [1, 2, 3, 4, 5]
    for r in data:
        k = int(r["k"])
        assert float(r["x"]) == pytest.approx(math.cos((11 - 2 * k) * math.pi / 10), abs=1e-14)


def test_psi_sampling_is_finite():
    code, out, _ = call("psi", "--family", "chebyshev1", "--m", "8", "--n", "32",
                        "--k", "15", "--samples", "512")
    assert code == 0
    data = rows(out)
    assert len(data) == 512 and list(data[0]) == ["x", "psi"]
    assert all(math.isfinite(float(r["psi"])) for r in data)


def test_quad_chebyshev_weights():
    code, out, _ = call("quad", "--family", "chebyshev1", "--nodes", "5", "--format", "json")
    assert code == 0
    data = json.loads(out)
    np.testing.assert_allclose(data["weights"], math.pi / 5, rtol=1e-12)
    assert len(data["nodes"]) == 5


@pytest.mark.parametrize("family,m", [("legendre", 0), ("chebyshev1", 3), ("jacobi", 2)])
def test_psi_quad_round_trip(family, m):
    fam = ["--family", family] + (["--alpha", "0.5", "--beta", "-0.5"] if family == "jacobi" else [])
    N = 40
    _, psi_out, _ = call("psi", *fam, "--m", str(m), "--n", "20", "--k", "7",
                         "--samples", str(N), "--grid", "gauss")
    _, quad_out, _ = call("quad", *fam, "--nodes", str(N))
    psi = np.array([float(r["psi"]) for r in rows(psi_out)])
    quad = rows(quad_out)
    x = np.array([float(r["nodes"]) for r in quad])
    w = np.array([float(r["weights"]) for r in quad])
    np.testing.assert_array_equal(x, [float(r["x"]) for r in rows(psi_out)])
    assert float(w @ psi ** 2) == pytest.approx(1.0, abs=1e-6)


def test_variance_sweep_columns():
    code, out, _ = call("variance-sweep", "--family", "jacobi", "--alpha", "0", "--beta", "0",
                        "--m", "0", "--n", "16,32,64,128", "--format", "csv")
    assert code == 0
    data = rows(out)
    assert list(data[0]) == ["n", "k", "x", "var"]
    assert len(data) == 17 + 33 + 65 + 129


def test_approx_report(tmp_path):
    path = tmp_path / "coeffs.json"
    path.write_text(json.dumps({"m0": 8, "coeffs": [0.6, 0.0, 0.8]}))
    code, out, _ = call("approx", "--family", "chebyshev1", "--m", "8", "--n", "32",
                        "--interval", "-0.2,0.6", "--input", str(path))
    assert code == 0
    report = json.loads(out)
    assert {"selected", "residual", "bound", "bound_kind", "bound_satisfied"} <= set(report)
    assert 0.0 <= report["residual"] <= 1.0
    code, out, _ = call("approx", "--m", "8", "--n", "32", "--interval", "0.5,1",
                        "--input", str(path))
    assert json.loads(out)["bound_kind"] == "upper"
    assert json.loads(out)["bound_satisfied"] is True


def test_approx_requires_normalised_input(tmp_path):
    path = tmp_path / "coeffs.json"
    path.write_text(json.dumps({"m0": 8, "coeffs": [1.0, 2.0]}))
    code, _, err = call("approx", "--m", "8", "--n", "32", "--interval", "-0.2,0.6",
                        "--input", str(path))
    assert code == 2 and "--input" in err
    code, _, _ = call("approx", "--m", "8", "--n", "32", "--interval", "-0.2,0.6",
                      "--input", str(path), "--normalize")
    assert code == 0


def test_uncertainty_grid_labels():
    code, out, _ = call("uncertainty", "--family", "chebyshev1", "--m", "0", "--n", "10",
                        "--grid", "40", "--format", "csv")
    assert code == 0
    data = rows(out)
    assert len(data) == 1600 and list(data[0]) == ["eps", "pi", "label"]
    labels = {r["label"] for r in data}
    assert {"A", "B1", "B2", "C1", "C2"} <= labels


def test_uncertainty_random_has_no_forbidden_points():
    code, out, _ = call("uncertainty", "--n", "10", "--random", "600", "--seed", "3")
    assert code == 0
    labels = [r["label"] for r in rows(out)]
    assert len(labels) == 600
    assert not {"C1", "C2"} & set(labels)


def test_uncertainty_witness():
    code, out, _ = call("uncertainty-witness", "--target-eps", "0.9", "--target-pi", "0.3")
    assert code == 0
    data = json.loads(out)
    assert data["achieved"]["eps"] == pytest.approx(0.9, abs=1e-8)
    assert data["achieved"]["pi"] == pytest.approx(0.3, abs=1e-8)


def test_deterministic_output():
    args = ("uncertainty", "--n", "8", "--random", "200", "--seed", "11")
    assert call(*args)[1] == call(*args)[1]
    args = ("variance-sweep", "--family", "legendre", "--n", "8,16,32")
    assert call(*args)[1] == call(*args)[1]


@pytest.mark.parametrize("argv,field", [
    (["spectrum", "--family", "jacobi", "--alpha", "-2", "--beta", "0"], "--alpha"),
    (["spectrum", "--family", "jacobi", "--alpha", "0.5"], "--beta"),
    (["spectrum", "--m", "5", "--n", "3"], "--n"),
    (["psi", "--n", "5", "--k", "9"], "--k"),
    (["quad", "--nodes", "0"], "--nodes"),
    (["variance-sweep", "--n", "32,16"], "--n"),
    (["uncertainty-witness", "--target-eps", "1.5", "--target-pi", "0.3"], "--target-eps"),
])
def test_invalid_config_names_field(argv, field):
    code, out, err = call(*argv)
    assert code == 2 and out == ""
    assert field in err


def test_usage_errors_exit_2():
    assert call("bogus")[0] == 2
    assert call("spectrum", "--frobnicate")[0] == 2


def test_numerical_failure_exit_3():
    code, _, err = call("uncertainty-witness", "--n", "10", "--target-eps", "0.9999999",
                        "--target-pi", "1e-6")
    assert code == 3 and "numerical failure" in err


def test_config_file_and_output(tmp_path):
    cfg = tmp_path / "w.json"
    cfg.write_text(json.dumps({"family": "jacobi", "alpha": 0.5, "beta": -0.5}))
    dest = tmp_path / "out.csv"
    assert call("spectrum", "--config", str(cfg), "--n", "3", "--output", str(dest))[0] == 0
    assert dest.read_text().startswith("k,x\n")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "polytf", "spectrum", "--n", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("k,x\n")
