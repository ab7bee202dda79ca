import json
import math
import subprocess
import sys

import numpy as np
import pytest

import covnoise as cn
from covnoise.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_noise_table_csv_shape(capsys):
    code, out, err = run_cli(capsys, "noise-table", "--n", "0:3", "--l", "1,2",
                             "--tol", "1e-6")
    assert code == 0 and err == ""
    lines = out.strip().split("\n")
    assert lines[0] == "n,l,value,lower,upper,cutoff"
    assert len(lines) == 1 + 4 * 2
    first = lines[1].split(",")
    assert first[0] == "0" and first[1] == "1"
    lower, upper = float(first[3]), float(first[4])
    assert lower <= float(first[2]) <= upper


def test_noise_table_empty_range_header_only(capsys):
    code, out, _ = run_cli(capsys, "noise-table", "--n", "5:4")
    assert code == 0
    assert out == "n,l,value,lower,upper,cutoff\n"


def test_noise_table_brackets_known_value(capsys):
    code, out, _ = run_cli(capsys, "noise-table", "--n", "0:0", "--l", "2",
                           "--tol", "1e-8")
    assert code == 0
    row = out.strip().split("\n")[1].split(",")
    assert float(row[3]) <= math.pi**2 / 6.0 <= float(row[4])


def test_noise_table_torus_all_rows_bracket_zero(capsys):
    spec = json.dumps({"kind": "chessboard", "domain": "Z", "xi": 1})
    code, out, _ = run_cli(capsys, "noise-table", "--matrix", spec,
                           "--n=-3:3", "--l", "1,2,3", "--tol", "1e-8")
    assert code == 0
    for line in out.strip().split("\n")[1:]:
        cells = line.split(",")
        assert float(cells[3]) <= 0.0 <= float(cells[4])


def test_noise_table_json_round_trip(capsys):
    code, out, _ = run_cli(capsys, "noise-table", "--n", "2:2", "--l", "2",
                           "--format", "json", "--tol", "1e-6")
    assert code == 0
    records = json.loads(out)
    assert len(records) == 1
    direct = cn.noise_value(cn.constant_one(cn.IndexDomain.NATURALS),
                            cn.NoiseQuery(2, 2, 1e-6))
    assert records[0]["value"] == direct.value  # 17 digits survive the trip
    assert records[0]["cutoff"] == direct.cutoff


def test_output_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for target in (a, b):
        code = main(["noise-table", "--n", "0:6", "--l", "1,3",
                     "--out", str(target)])
        assert code == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({
        "matrix": {"kind": "chessboard", "domain": "N", "xi": 0.3},
        "tolerance": 1e-4, "format": "json", "seed": 7}))
    code, out, _ = run_cli(capsys, "noise-table", "--config", str(cfg),
                           "--n", "1:1", "--l", "2")
    assert code == 0
    rec = json.loads(out)[0]
    direct = cn.noise_value(cn.chessboard(cn.IndexDomain.NATURALS,
                                          cn.ChessboardParams(0.3)),
                            cn.NoiseQuery(1, 2, 1e-4))
    assert rec["value"] == direct.value
    # flags beat the config file
    code, out, _ = run_cli(capsys, "noise-table", "--config", str(cfg),
                           "--n", "1:1", "--l", "2", "--format", "csv")
    assert code == 0
    assert out.startswith("n,l,")


def test_exit_codes(capsys, tmp_path):
    code, _, err = run_cli(capsys, "noise-table", "--matrix", '{"kind":"x"}')
    assert code == 2 and "kind" in err
    code, _, err = run_cli(capsys, "noise-table", "--matrix", "{broken")
    assert code == 2 and "JSON" in err
    code, _, err = run_cli(capsys, "observable", "--x", "0;pi")
    assert code == 2
    code, _, err = run_cli(capsys, "noise-table", "--tol", "1e-12", "--matrix",
                           '{"kind":"chessboard","domain":"N","xi":0.5}',
                           "--n", "0:0")
    assert code == 3 and "achievable" in err
    missing = tmp_path / "nope.json"
    code, _, err = run_cli(capsys, "noise-table", "--matrix", str(missing))
    assert code == 2


def test_observable_identity_dump(capsys):
    code, out, _ = run_cli(capsys, "observable", "--x", "0:2*pi",
                           "--window", "0:4")
    assert code == 0
    payload = json.loads(out)
    assert payload["window"] == [0, 4]
    entries = np.asarray(payload["entries"], dtype=float)
    block = entries[:, 0].reshape(5, 5) + 1j * entries[:, 1].reshape(5, 5)
    assert np.max(np.abs(block - np.eye(5))) <= 1e-12


def test_observable_half_circle_entries(capsys):
    code, out, _ = run_cli(capsys, "observable", "--x", "0:pi",
                           "--window", "0:7")
    payload = json.loads(out)
    block = np.asarray(payload["entries"], dtype=float)
    block = block[:, 0].reshape(8, 8) + 1j * block[:, 1].reshape(8, 8)
    assert np.max(np.abs(np.diag(block) - 0.5)) <= 1e-15
    assert block[1, 0] == pytest.approx(1j / math.pi, abs=1e-15)
    assert abs(block[2, 0]) <= 1e-15


def test_observable_moment_diagonal(capsys):
    code, out, _ = run_cli(capsys, "observable", "--moment", "2",
                           "--window", "0:3")
    payload = json.loads(out)
    entries = np.asarray(payload["entries"], dtype=float)
    diag = entries[:, 0].reshape(4, 4).diagonal()
    assert np.max(np.abs(diag - 4.0 * math.pi**2 / 3.0)) <= 1e-13


def test_observable_csv_projection(capsys):
    code, out, _ = run_cli(capsys, "observable", "--x", "0:pi",
                           "--window", "0:2", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n,m,re,im"
    assert len(lines) == 1 + 9


def test_covariance_check(capsys):
    spec = json.dumps({"kind": "torus", "domain": "Z",
                       "phases": {"formula": "linear", "slope": 0.4}})
    code, out, _ = run_cli(capsys, "covariance-check", "--matrix", spec,
                           "--x", "0:pi/2,pi:3*pi/2", "--shift", "pi/3")
    assert code == 0
    payload = json.loads(out)
    assert payload["pass"] is True
    assert payload["defect"] <= 1e-12
    assert payload["shift"] == pytest.approx(math.pi / 3, rel=1e-15)


def test_noise_diagonal_report(capsys):
    code, out, _ = run_cli(capsys, "noise-diagonal", "--n", "0,5",
                           "--window", "0:255")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n,value,tail_bound,lower,upper,defect,intersects"
    for line in lines[1:]:
        assert line.split(",")[-1] == "true"


def test_schur_growth_csv_contract(capsys):
    code, out, _ = run_cli(capsys, "schur-growth", "--r", "5,55")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "r,s_r,u_r,norm"
    r5 = lines[1].split(",")
    assert float(r5[2]) == pytest.approx(23.0 / (15.0 * math.pi), rel=1e-14)
    assert float(r5[3]) >= float(r5[1]) > float(r5[2])


def test_schur_growth_rejects_even_r(capsys):
    code, _, err = run_cli(capsys, "schur-growth", "--r", "6")
    assert code == 2 and "odd" in err


def test_hadamard_table(capsys):
    code, out, _ = run_cli(capsys, "hadamard", "--p-max", "5")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "p,norm,modulus_norm,expected_modulus_norm,pass"
    assert len(lines) == 6
    for line in lines[1:]:
        cells = line.split(",")
        assert cells[-1] == "true"
        assert float(cells[1]) == pytest.approx(1.0, abs=1e-9)


def test_asymptotic_json(capsys):
    spec = json.dumps({"kind": "chessboard", "domain": "N", "xi": 0.5})
    code, out, _ = run_cli(capsys, "asymptotic", "--matrix", spec,
                           "--format", "json")
    assert code == 0
    rec = json.loads(out)[0]
    assert rec["classification"] == "positive_limit"
    assert len(rec["samples"]) == 3
    assert rec["estimate"] == pytest.approx(0.75 * math.pi**2 / 4.0, abs=2e-3)


@pytest.mark.parametrize("suite", ["chessboard", "torus", "covariance", "schur"])
def test_verify_suites_pass(capsys, suite):
    code, out, _ = run_cli(capsys, "verify", "--suite", suite)
    assert code == 0
    assert "FAIL" not in out
    assert out.count("PASS") >= 2


def test_verify_noise_diagonal_suite(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "noise_diagonal")
    assert code == 0
    assert out.count("PASS") == 4


def test_verify_all_aggregates_every_suite(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "all")
    assert code == 0
    assert "FAIL" not in out
    singles = 0
    for suite in ("chessboard", "torus", "covariance", "noise_diagonal", "schur"):
        singles += run_cli(capsys, "verify", "--suite", suite)[1].count("\n")
    assert out.count("\n") == singles


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "covnoise.cli", "noise-table", "--n", "0:1"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert proc.stdout.startswith("n,l,value")
