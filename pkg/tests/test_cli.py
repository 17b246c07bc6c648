import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest
from scipy.optimize import brentq
from scipy.special import gamma, jv

from singzeta.cli import RunConfig, main, run


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_elementary(capsys):
    code, out, _ = call(capsys, "spectrum", "--g", "0", "--alpha", "0", "--beta", "1", "--n", "5")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    pos = [float(r["eigenvalue"]) for r in rows if r["sign"] == "1"]
    neg = [float(r["eigenvalue"]) for r in rows if r["sign"] == "-1"]
    np.testing.assert_allclose(pos, (np.arange(1, 6) - 0.5) * math.pi, rtol=1e-14)
    np.testing.assert_allclose(sorted(neg), sorted(-(np.arange(1, 6) - 0.5) * math.pi), rtol=1e-14)
    assert out.endswith("\r\n")


def test_spectrum_brackets_contain_eigenvalues(capsys):
    code, out, _ = call(capsys, "spectrum", "--g", "0.3", "--n", "6", "--format", "json")
    assert code == 0
    data = json.loads(out)
    for e in data["eigenvalues"]:
        assert e["bracket_lo"] <= e["eigenvalue"] <= e["bracket_hi"]
    assert len(data["eigenvalues"]) == 12


def test_zero_mode_listed(capsys):
    # alpha = 0 is excluded here; (1, 0) is the N-extension, whose kernel holds x^-g
    code, out, _ = call(capsys, "spectrum", "--g", "0.3", "--alpha", "1", "--beta", "0",
                        "--n", "3", "--format", "json")
    assert code == 0
    vals = [e["eigenvalue"] for e in json.loads(out)["eigenvalues"]]
    assert vals.count(0.0) == 1


def test_output_is_deterministic(capsys, tmp_path):
    args = ["zeta", "--g", "-0.3333333", "--alpha", "0.7071", "--beta", "0.7071",
            "--s", "0.5", "--s", "1.5+2i"]
    _, first, _ = call(capsys, *args)
    _, second, _ = call(capsys, *args)
    assert first == second
    path = tmp_path / "z.json"
    assert main(args + ["--out", str(path)]) == 0
    assert path.read_text() == first


def test_json_round_trip(capsys):
    for argv in (["poles", "--g", "0.3", "--k", "5"],
                 ["traces", "--g", "0.2", "--lam", "2", "--lam", "3+4i"],
                 ["asymptotics", "--g", "-0.3", "--k", "6"],
                 ["second-order", "--g", "0.3333333", "--beta", "3", "--n", "3"]):
        code, out, _ = call(capsys, *argv)
        assert code == 0
        assert json.dumps(json.loads(out), indent=2) + "\n" == out


def test_zeta_schema(capsys):
    code, out, _ = call(capsys, "zeta-plus", "--g", "0.3", "--alpha", "0", "--s", "2")
    assert code == 0
    (ev,) = json.loads(out)["evaluations"]
    assert set(ev) >= {"g", "alpha", "beta", "rho", "method", "s", "value", "error_estimate"}
    assert ev["value"][0] == pytest.approx(0.3125, rel=1e-12)
    code, out, _ = call(capsys, "zeta-plus", "--g", "0.3", "--alpha", "0", "--s", "2",
                        "--method", "sum", "--n", "20000")
    assert json.loads(out)["evaluations"][0]["value"][0] == pytest.approx(0.3125, rel=1e-9)


def test_poles_match_independent_formula(capsys):
    g, a, b = -0.3333333, 0.7071, 0.7071
    code, out, _ = call(capsys, "poles", "--g", str(g), "--alpha", str(a), "--beta", str(b),
                        "--k", "4")
    assert code == 0
    data = json.loads(out)
    # recompute from scipy: rho = -4^g Gamma(1/2+g)/Gamma(1/2-g) beta/alpha
    r = -4**g * gamma(0.5 + g) / gamma(0.5 - g) * b / a
    assert data["rho"] == pytest.approx(r, rel=1e-13)
    anomalous = {p["k"]: p for p in data["zeta_plus"] if p["source"] == "anomalous"}
    assert sorted(anomalous) == [1, 2, 3, 4]
    for k, p in anomalous.items():
        assert p["location"] == pytest.approx(2 * g * k, rel=1e-14)
        want = 2 * g / math.pi * math.sin((0.5 - g) * k * math.pi) / r**k
        assert p["residue"][0] == pytest.approx(want, rel=1e-12)
        assert p["residue"][1] == 0
    collided = {p["k"] for p in data["zeta_plus"] if p["collision"]}
    assert 3 in collided
    assert {p["k"] for p in data["eta"] if p["source"] == "anomalous"
            and abs(p["residue"][0]) < 1e-15} == {2, 4}


def test_figure1_gaps(capsys):
    code, out, _ = call(capsys, "figure1")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 800
    assert {r["rho"] for r in rows} == {"3.0"}
    lam = np.array([float(r["lambda"]) for r in rows])
    blank = np.array([r["F"] == "" for r in rows])
    j = []
    for n in range(1, 5):
        lo = (n - 0.75) * math.pi
        j.append(brentq(lambda x: jv(-1 / 6, x), lo, lo + math.pi / 2 + 0.6))
    # every asymptote is surrounded by blanks, and blanks occur only near them
    for z in j[:3]:
        near = np.abs(lam - z) < 0.02
        assert blank[near].all() or not near.any()
        assert blank[np.argmin(np.abs(lam - z))]
    far = np.min(np.abs(lam[:, None] - np.array(j)[None, :]), axis=1) > 0.5
    assert not blank[far].any()
    F = np.array([float(r["F"]) for r, b in zip(rows, blank) if not b])
    ref = lam[~blank] ** (2 / 3) * jv(1 / 6, lam[~blank]) / jv(-1 / 6, lam[~blank])
    np.testing.assert_allclose(F, ref, rtol=1e-12)


def test_config_errors_exit_1(capsys):
    for argv in (["spectrum", "--g", "0.6"],
                 ["spectrum"],
                 ["zeta", "--g", "0.2", "-N", "13", "--s", "2"],
                 ["spectrum", "--g", "0.2", "--alpha", "0", "--beta", "0"],
                 ["zeta", "--g", "0.2"],
                 ["zeta", "--g", "0.2", "--s", "-9"],
                 ["nonsense"],
                 ["zeta-plus", "--g", "0.2", "--s", "1.0001"]):
        code, _, err = call(capsys, *argv)
        assert code == 1, argv
        assert err


def test_removable_point_of_full_zeta(capsys):
    # the s = 1 residues of the two halves cancel in the full zeta function
    code, out, _ = call(capsys, "zeta", "--g", "0.2", "--s", "1.0001", "--s", "1")
    assert code == 0
    a, b = (e["value"] for e in json.loads(out)["evaluations"])
    assert a == b


def test_tolerance_failure_exit_2(capsys):
    code, _, err = call(capsys, "zeta", "--g", "-0.3", "--s", "0.5", "--quad-tol", "1e-20")
    assert code == 2
    assert "quad-tol" in err


def test_structural_error_exit_3(monkeypatch, capsys):
    import singzeta.cli as cli
    from singzeta.errors import StructuralError

    def boom(*a, **k):
        raise StructuralError("root count mismatch")

    monkeypatch.setattr(cli, "second_order_eigenvalues", boom)
    code, _, err = call(capsys, "second-order", "--g", "0.2")
    assert code == 3 and "root count" in err


def test_run_config_defaults():
    cfg = RunConfig("figure1").validate()
    assert cfg.g == pytest.approx(1 / 3) and cfg.n == 800 and cfg.fmt == "csv"
    cfg = RunConfig("zeta", g=0.1, s=[2.0]).validate()
    assert cfg.fmt == "json" and cfg.n == 10
    text, code = run(RunConfig("second-order", g=0.3, beta=3.0, n=2, fmt="csv"))
    assert code == 0 and text.startswith("kind,index,value,square")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "singzeta", "traces", "--g", "0.3", "--lam", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    data = json.loads(res.stdout)
    assert data["traces"][0]["trace_dGD"][0] == pytest.approx(128.458395355120, rel=1e-12)
