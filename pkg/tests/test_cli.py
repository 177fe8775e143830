"""Command-line behaviour: parsing, exit codes, deterministic artifacts."""

import math

import pytest

from caustics.cli import JobSpec, main, parse_angle, parse_interval
from caustics.csvio import read_table, write_table
from caustics.errors import ValidationError


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_angle_literals():
    assert parse_angle("pi") == math.pi
    assert parse_angle("2pi") == 2 * math.pi
    assert parse_angle("pi/2") == math.pi / 2
    assert parse_angle("-3pi/2") == -3 * math.pi / 2
    assert parse_angle("0.5*pi") == 0.5 * math.pi
    assert parse_angle("1.25") == 1.25
    with pytest.raises(ValidationError):
        parse_angle("pie")
    with pytest.raises(ValidationError):
        parse_angle("")


def test_parse_interval():
    iv = parse_interval("0:2pi", 65)
    assert iv.lo == 0.0 and iv.hi == 2 * math.pi and iv.n_samples == 65
    with pytest.raises(ValidationError):
        parse_interval("0", 65)
    with pytest.raises(ValidationError):
        parse_interval("1:1", 65)


def test_job_spec_validation():
    with pytest.raises(ValidationError):
        JobSpec("teleport", {}, ())


def test_curve_run_writes_deterministic_files(tmp_path, capsys):
    paths = [tmp_path / f"run{i}" for i in (1, 2)]
    for p in paths:
        code, out, err = run_cli(
            capsys,
            "curve",
            "--curve",
            "cycloid:amplitude=1",
            "--interval",
            "0:pi",
            "--samples",
            "65",
            "--out-csv",
            str(p.with_suffix(".csv")),
            "--out-svg",
            str(p.with_suffix(".svg")),
        )
        assert code == 0, err
        assert "curve=cycloid(A=1)" in out
        assert "samples=65" in out
        assert "arclength=2" in out
    first, second = (p.with_suffix(".csv").read_bytes() for p in paths)
    assert first == second
    svg1, svg2 = (p.with_suffix(".svg").read_bytes() for p in paths)
    assert svg1 == svg2
    assert svg1.startswith(b"<?xml")


def test_curve_csv_round_trip(tmp_path, capsys):
    path = tmp_path / "c.csv"
    code, _, _ = run_cli(
        capsys, "curve", "--curve", "circle:radius=1", "--interval", "0:pi",
        "--samples", "33", "--out-csv", str(path),
    )
    assert code == 0
    header, rows = read_table(str(path))
    assert header == ("theta", "x", "y", "R", "s")
    again = tmp_path / "again.csv"
    write_table(str(again), header, rows)
    assert path.read_bytes() == again.read_bytes()


def test_caustic_run_flags_cusps(tmp_path, capsys):
    path = tmp_path / "caustic.csv"
    code, out, _ = run_cli(
        capsys,
        "caustic",
        "--curve",
        "cycloid:amplitude=1",
        "--tilt",
        "reflection",
        "--interval",
        "0:pi",
        "--samples",
        "65",
        "--out-csv",
        str(path),
    )
    assert code == 0
    assert "tilt=reflection" in out
    assert "flagged=1" in out  # exact cusp node at theta = 0
    header, _ = read_table(str(path))
    assert header == ("theta", "theta1", "x", "y", "R1", "ray_length")


def test_skew_run_reports_residual(capsys):
    code, out, _ = run_cli(
        capsys, "skew", "--case", "point_by_point", "--phi0", "0.4", "--a", "0.8"
    )
    assert code == 0
    residual = float(out.split("residual=")[1].splitlines()[0])
    assert residual < 1e-9


def test_skew_delay_normalises_advance(capsys):
    code, out, _ = run_cli(
        capsys,
        "skew",
        "--case",
        "delay",
        "--phi0",
        "0.2",
        "--a",
        "0.9",
        "--alpha",
        "-0.7",
        "--branches",
        "0",
    )
    assert code == 0
    assert "alpha=0.7" in out
    assert "phi0=-0.2" in out
    assert "factor_a=-0.9" in out


def test_pantograph_echoes_exact_factor(tmp_path, capsys):
    path = tmp_path / "coeffs.csv"
    code, out, _ = run_cli(
        capsys, "pantograph", "--m", "2", "--order", "12", "--out-csv", str(path)
    )
    assert code == 0
    assert "a=5/16" in out
    assert "is_vertical=false" in out
    assert "collinearity_residual=" in out
    header, rows = read_table(str(path))
    assert header == ("n", "a_n")
    assert rows[0][0] == 1.0 and rows[0][1] == 1.0
    assert abs(rows[2][1] - 1.0 / 39.0) < 1e-16


def test_pantograph_resonance_exit_codes(capsys):
    code, _, err = run_cli(capsys, "pantograph", "--m", "-2", "--order", "8")
    assert code == 3
    assert "secondary" in err
    code, out, _ = run_cli(capsys, "pantograph", "--m", "-2", "--order", "8",
                           "--secondary", "0.25")
    assert code == 0
    assert "a=1" in out


def test_verify_specfun_suite_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "specfun", "--samples", "200")
    assert code == 0
    assert "FAIL" not in out
    assert "checks=" in out and "failures=0" in out


def test_verify_requires_suite(capsys):
    code, _, err = run_cli(capsys, "verify")
    assert code == 2
    assert "suite" in err
    code, _, _ = run_cli(capsys, "verify", "--suite", "everything")
    assert code == 2


def test_verify_impossible_tolerance_fails_numerically(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--suite", "oracle", "--samples", "400",
        "--tolerance", "1e-30",
    )
    assert code == 3
    assert "FAIL" in out


def test_unknown_curve_is_validation_error(capsys):
    code, _, err = run_cli(capsys, "curve", "--curve", "dragon")
    assert code == 2
    assert "error:" in err


def test_bad_angle_literal_is_validation_error(capsys):
    code, _, err = run_cli(capsys, "curve", "--interval", "0:pie")
    assert code == 2
    assert "error:" in err
