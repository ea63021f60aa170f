"""CLI dispatch, report formats, determinism, config handling."""

import csv
import json

import pytest

from qheat.cli import (
    parse_element,
    positive_elements,
    random_elements,
    run,
)
from qheat.central_algebra import is_positive_reduced


def run_capture(argv, capsys):
    code = run(argv)
    out = capsys.readouterr().out
    return code, out


def parse_csv(text):
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    reader = csv.reader(lines)
    header = next(reader)
    return header, [dict(zip(header, row)) for row in reader]


def test_spectrum_subcommand(capsys):
    code, out = run_capture(["spectrum", "--n", "5", "--kmax", "3"], capsys)
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["k", "lambda", "n_k", "m_k", "lower", "upper", "bounds_ok"]
    assert len(rows) == 4
    assert float(rows[1]["lambda"]) == pytest.approx(-0.25)
    assert rows[1]["n_k"] == "4" and rows[1]["m_k"] == "16"
    assert all(r["bounds_ok"] == "true" for r in rows)


def test_spectrum_with_jump_measure(capsys):
    # pure-jump generator, unit atom at zero: lambda_1 = (P_1(0) - P_1(5)) / (5 P_1(5))
    code, out = run_capture(
        ["spectrum", "--n", "5", "--kmax", "2", "--a", "0",
         "--nu", "atoms=0:1;density=none"],
        capsys,
    )
    assert code == 0
    _, rows = parse_csv(out)
    assert float(rows[1]["lambda"]) == pytest.approx(-0.25, abs=1e-12)


def test_verify_gap_exit_zero(capsys):
    code, out = run_capture(
        ["verify", "gap", "--n", "5", "--random", "10", "--seed", "7"], capsys
    )
    assert code == 0
    header, rows = parse_csv(out)
    assert len(rows) == 10
    assert all(r["pass"] == "true" for r in rows)
    assert "# prng=numpy-pcg64-v1" in out


def test_tau_subcommand(capsys):
    code, out = run_capture(["tau", "--p", "4", "--n", "5", "--D", "1"], capsys)
    assert code == 0
    _, rows = parse_csv(out)
    assert float(rows[0]["residual"]) < 1e-12
    assert float(rows[0]["tau"]) == pytest.approx(8.478, abs=5e-4)
    assert float(rows[0]["Y"]) == pytest.approx(0.03367, abs=5e-6)


def test_byte_identical_reruns(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["verify", "hyper", "--n", "5", "--random", "3", "--kmax", "8",
            "--seed", "11", "--p", "3"]
    assert run(argv + ["--output", str(out1)]) == 0
    assert run(argv + ["--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_json_format(capsys):
    code, out = run_capture(
        ["spectrum", "--n", "5", "--kmax", "2", "--format", "json"], capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == "qheat-report/1"
    assert len(doc["rows"]) == 3
    assert doc["rows"][1]["lambda"] == -0.25


def test_precision_flag(capsys):
    _, out = run_capture(
        ["spectrum", "--n", "5", "--kmax", "1", "--precision", "4"], capsys
    )
    _, rows = parse_csv(out)
    assert rows[1]["upper"] == "1.894"


def test_precision_env(capsys, monkeypatch):
    monkeypatch.setenv("QHEAT_PRECISION", "3")
    _, out = run_capture(["spectrum", "--n", "5", "--kmax", "1"], capsys)
    _, rows = parse_csv(out)
    assert rows[1]["upper"] == "1.89"


def test_config_file_presets_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# experiment preset\nn=6\nkmax=2\n")
    _, out = run_capture(["spectrum", "--config", str(cfg)], capsys)
    _, rows = parse_csv(out)
    assert len(rows) == 3
    assert float(rows[1]["lambda"]) == pytest.approx(-0.2)  # 1/(6-1)
    # explicit flag beats the file
    _, out = run_capture(["spectrum", "--config", str(cfg), "--n", "5"], capsys)
    _, rows = parse_csv(out)
    assert float(rows[1]["lambda"]) == pytest.approx(-0.25)


def test_usage_errors_exit_two(capsys):
    assert run(["frobnicate"]) == 2
    capsys.readouterr()
    assert run(["spectrum", "--n", "3"]) == 2
    capsys.readouterr()


def test_failed_verification_exits_one(capsys):
    # the contraction genuinely fails at time zero for a nonconstant element
    code, out = run_capture(
        ["verify", "hyper", "--n", "5", "--element", "0,1", "--t", "0", "--p", "4"],
        capsys,
    )
    assert code == 1
    _, rows = parse_csv(out)
    assert rows[0]["pass"] == "false"
    assert float(rows[0]["margin"]) < 0


def test_failed_algebra_check_exits_one(capsys):
    code, _ = run_capture(
        ["algebra", "check-delta-form", "--algebra", "2,1", "--defect-tol", "1e-30"],
        capsys,
    )
    assert code == 1


def test_verify_with_explicit_element(capsys):
    code, out = run_capture(
        ["verify", "gap", "--n", "5", "--element", "1,0.5,-0.25"], capsys
    )
    assert code == 0
    _, rows = parse_csv(out)
    assert len(rows) == 1


def test_verify_with_element_file(tmp_path, capsys):
    path = tmp_path / "element.csv"
    path.write_text("# coefficients\n1.0\n0.5\n-0.25\n")
    code, out = run_capture(
        ["verify", "gap", "--n", "5", "--element-file", str(path)], capsys
    )
    assert code == 0
    _, rows = parse_csv(out)
    assert len(rows) == 1 and rows[0]["pass"] == "true"


def test_verify_ultra_time_grid(capsys):
    code, out = run_capture(
        ["verify", "ultra", "--n", "5", "--random", "2", "--kmax", "6",
         "--seed", "3", "--t-grid", "0.5,2"], capsys
    )
    assert code == 0
    _, rows = parse_csv(out)
    assert len(rows) == 4  # 2 elements x 2 times
    assert all(r["pass"] == "true" for r in rows)


def test_verify_lsi_heuristic_constant(capsys):
    code, out = run_capture(
        ["verify", "lsi", "--n", "5", "--random", "2", "--kmax", "4", "--seed", "5"],
        capsys,
    )
    assert code == 0
    assert "# c=heuristic:" in out


def test_verify_lsi_explicit_constant(capsys):
    # regression: --c must not be abbreviation-matched as --config;
    # c = 10 clears the near-constant floor 2(n-1) = 8 at n = 5
    code, out = run_capture(
        ["verify", "lsi", "--n", "5", "--random", "2", "--kmax", "4",
         "--seed", "5", "--c", "10"],
        capsys,
    )
    assert code == 0
    assert "# c=10" in out


def test_algebra_subcommand(capsys):
    code, out = run_capture(["algebra", "check-delta-form", "--algebra", "2,1"], capsys)
    assert code == 0
    _, rows = parse_csv(out)
    assert rows[0]["dim"] == "5" and rows[0]["pass"] == "true"


def test_series_subcommand(capsys):
    code, out = run_capture(["series", "check-identity"], capsys)
    assert code == 0
    _, rows = parse_csv(out)
    assert len(rows) == 9
    assert all(r["pass"] == "true" for r in rows)


def test_sharpness_criterion_subcommand(capsys):
    code, out = run_capture(
        ["sharpness", "criterion", "--n", "5", "--s", "3",
         "--t-grid", "geom:1e-2:1:5"], capsys
    )
    assert code == 0
    _, rows = parse_csv(out)
    assert len(rows) == 5
    assert all(float(r["ratio"]) <= 1.01 for r in rows)


def test_sharpness_scan_subcommand(capsys):
    code, out = run_capture(
        ["sharpness", "hls", "--n", "5", "--s", "3", "--p", "1.5",
         "--family", "poly:a=2", "--grid", "4,8"], capsys
    )
    assert code == 0
    _, rows = parse_csv(out)
    assert len(rows) == 2 and all(r["flag"] == "ok" for r in rows)


def test_plot_writes_figure(tmp_path, capsys):
    out = tmp_path / "spec.csv"
    code = run(["spectrum", "--n", "5", "--kmax", "4", "--output", str(out), "--plot"])
    capsys.readouterr()
    assert code == 0
    assert (tmp_path / "spec.png").exists()
    assert (tmp_path / "spec.png").stat().st_size > 0


def test_random_elements_reproducible():
    a = random_elements(5, 3, 6, seed=9)
    b = random_elements(5, 3, 6, seed=9)
    assert [x.coeffs for x in a] == [y.coeffs for y in b]
    c = random_elements(5, 3, 6, seed=10)
    assert [x.coeffs for x in a] != [y.coeffs for y in c]


def test_positive_elements_are_positive():
    for x in positive_elements(5, 5, 8, seed=13):
        assert is_positive_reduced(x, tol=1e-9)


def test_parse_element():
    x = parse_element("1,0,-2.5", 5)
    assert x.coeffs == (1.0, 0.0, -2.5)
    with pytest.raises(ValueError):
        parse_element("1,zebra", 5)
