import json
import subprocess
import sys

import pytest

from origami_tori.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_pairs_json(capsys):
    code, out, _ = run(capsys, "enumerate-pairs", "--n", "8", "--den", "16", "--json")
    assert code == 0
    data = json.loads(out)
    assert len(data) == 12
    assert {"rho": "-3/8", "sigma": "-1/8", "ell": 2, "rho_value": -0.375, "sigma_value": -0.125} in data


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--params", "n=8,l=2,rho=-0.375,h=1")
    assert code == 0
    assert out.strip() == "closed, flat, embedded"
    code, out, _ = run(capsys, "verify", "--params", "n=8,l=2,rho=-0.375,h=1,a=0.5", "--json")
    assert code == 0 and json.loads(out)["ok"]


def test_verify_obj(capsys, tmp_path):
    path = str(tmp_path / "t.obj")
    assert run(capsys, "torus", "--n", "8", "--l", "2", "--rho", "-0.375", "--out", path)[0] == 0
    code, out, _ = run(capsys, "verify", "--obj", path, "--json")
    rep = json.loads(out)
    assert code == 0 and rep["closed"] and rep["embedded"] and rep["flat"]


def test_solve_json(capsys):
    code, out, _ = run(capsys, "solve", "--re", "0.3", "--im", "1.2", "--nmax", "400", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["residual"] <= 1e-9 and rep["kind"] == "torus"
    assert set(rep["params"]) == {"n", "ell", "rho", "h"}


def test_solve_unreached(capsys):
    code, _, err = run(capsys, "solve", "--re", "0.3", "--im", "0.05", "--nmax", "30")
    assert code == 1 and "target-unreached" in err


def test_invalid_torus_exit_1(capsys):
    code, _, err = run(capsys, "torus", "--n", "8", "--l", "2", "--rho", "-0.1")
    assert code == 1 and "invalid-pairing" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["bogus"])
    assert e.value.code == 2
    assert "usage" in capsys.readouterr().err
    with pytest.raises(SystemExit) as e:
        main(["torus", "--n", "8"])
    assert e.value.code == 2
    code, _, err = run(capsys, "verify")
    assert code == 2 and "usage" in err
    code, _, err = run(capsys, "verify", "--params", "n=8,rho")
    assert code == 2


def test_modulus(capsys):
    code, out, _ = run(capsys, "modulus", "--n", "8", "--l", "2", "--rho", "-0.375", "--develop", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["difference"] <= 1e-9
    assert rep["modulus"] == {"re": 0.16161165235168157, "im": 0.4320360760830445}


def test_annulus_outputs(capsys, tmp_path):
    for fmt in ("obj", "stl", "svg"):
        path = tmp_path / f"a.{fmt}"
        code, out, _ = run(capsys, "annulus", "--n", "8", "--rho", "-0.0625", "--format", fmt,
                           "--out", str(path), "--json")
        assert code == 0 and path.exists()
        assert json.loads(out)["class"] == "antiprism"
    code, out, _ = run(capsys, "annulus", "--n", "8", "--rho", "-0.3", "--cut", "0.25", "--json")
    cut = json.loads(out)["cut"]
    assert abs(cut["lower_height"] / cut["upper_height"] - 1 / 3) <= 1e-9


def test_double_preset(capsys, tmp_path):
    code, out, err = run(capsys, "double", "--preset", "half-doubles", "--json", "--out", str(tmp_path / "d.obj"))
    assert code == 0
    assert "4/16" in err
    rep = json.loads(out)
    assert len(rep["doubles"]) == 2
    assert all(d["embedded"] and d["flat"] and d["faces"] == 96 for d in rep["doubles"])
    assert (tmp_path / "d-0.obj").exists() and (tmp_path / "d-1.obj").exists()
    code, _, _ = run(capsys, "double", "--n", "8")
    assert code == 2


def test_atlas_and_curves(capsys, tmp_path):
    path = tmp_path / "atlas.csv"
    code, out, _ = run(capsys, "atlas", "--n", "8", "--den", "16", "--out", str(path), "--json")
    assert code == 0 and json.loads(out)["rows"] == 12
    assert path.read_bytes().count(b"\r\n") == 13
    code, out, _ = run(capsys, "limit-curves", "--samples", "16")
    assert code == 0 and out.startswith("curve,t,re,im")
    code, _, _ = run(capsys, "limit-curves", "--format", "svg", "--out", str(tmp_path / "c.svg"))
    assert code == 0 and (tmp_path / "c.svg").read_text().startswith("<?xml")
    code, _, _ = run(capsys, "limit-curves", "--format", "obj")
    assert code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "origami_tori", "enumerate-pairs", "--n", "8", "--den", "16"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip().endswith("12 pairs")
    r = subprocess.run([sys.executable, "-m", "origami_tori"], capture_output=True, text=True)
    assert r.returncode == 2


def test_tol_env_override():
    code = ("from origami_tori.geometry import TOL; print(TOL.geom)")
    r = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                       env={"ORIGAMI_TORI_TOL": "1e-7", "PATH": ""})
    assert r.stdout.strip() == "1e-07"
