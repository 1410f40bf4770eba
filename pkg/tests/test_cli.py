"""Command-line interface: CSV round-trips, exit codes, reproducibility."""

import math
import subprocess
import sys

import numpy as np
import pytest

from voltconv import AbelKernel, SampledFunction
from voltconv.cli import read_csv, run, write_csv


def voltconv_cmd(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "voltconv.cli", *args],
                          capture_output=True, text=True, cwd=cwd)


def write_ones(path, n=32, T=1.0):
    xs = np.linspace(0.0, T, n + 1)
    write_csv(str(path), SampledFunction(T, np.ones(n + 1)))
    return xs


def test_csv_roundtrip_real(tmp_path):
    rng = np.random.default_rng(17)
    g = SampledFunction(2.0, rng.standard_normal(65))
    path = tmp_path / "g.csv"
    write_csv(str(path), g)
    back = read_csv(str(path))
    assert back.T == g.T
    assert np.array_equal(back.values, g.values)      # lossless at 17 digits


def test_csv_roundtrip_complex(tmp_path):
    rng = np.random.default_rng(18)
    g = SampledFunction(1.0, rng.standard_normal(33) + 1j * rng.standard_normal(33))
    path = tmp_path / "g.csv"
    write_csv(str(path), g)
    back = read_csv(str(path))
    assert back.is_complex
    assert np.array_equal(back.values, g.values)


def test_csv_uses_lf_line_endings(tmp_path):
    path = tmp_path / "g.csv"
    write_csv(str(path), SampledFunction(1.0, np.arange(5.0)))
    raw = path.read_bytes()
    assert b"\r" not in raw
    assert raw.startswith(b"x,value\n")


def test_read_csv_rejects_bad_input(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("x,value\n0,1\n0.5,two\n1,3\n")
    assert run(["convolve", "--input", str(bad)]) == 2
    nonuniform = tmp_path / "nu.csv"
    nonuniform.write_text("x,value\n0,1\n0.3,1\n1,1\n")
    assert run(["convolve", "--input", str(nonuniform)]) == 2
    assert run(["convolve", "--input", str(tmp_path / "missing.csv")]) == 2


def test_eval_prints_values():
    r = voltconv_cmd("eval", "--kernel", "volterra-i", "--x", "1e-4")
    assert r.returncode == 0
    header, row = r.stdout.strip().splitlines()
    assert header == "x,nu,N,M"
    val = float(row.split(",")[1])
    L = math.log(1e4)
    assert abs(val * 1e-4 * L * L - 1.0) <= 2.0 / L    # asymptotic slack


def test_eval_rejects_bad_points():
    assert run(["eval", "--kernel", "volterra-i", "--x", "-1"]) == 2
    assert run(["eval", "--kernel", "abel", "--x", "1"]) == 2    # missing alpha


def test_convolve_ones_gives_N(tmp_path):
    inp = tmp_path / "ones.csv"
    write_ones(inp)
    out = tmp_path / "out.csv"
    r = voltconv_cmd("convolve", "--kernel", "abel", "--alpha", "0.5",
                     "--input", str(inp), "--output", str(out))
    assert r.returncode == 0
    result = read_csv(str(out))
    ref = AbelKernel(0.5).N_grid(result.grid)
    assert np.abs(result.values - ref).max() <= 1e-10


def test_convolve_output_rereadable_and_reproducible(tmp_path):
    inp = tmp_path / "ones.csv"
    write_ones(inp)
    out1, out2 = tmp_path / "o1.csv", tmp_path / "o2.csv"
    for out in (out1, out2):
        assert voltconv_cmd("convolve", "--kernel", "abel", "--alpha", "0.5",
                            "--input", str(inp), "--output", str(out)).returncode == 0
    assert out1.read_bytes() == out2.read_bytes()     # byte-identical rerun
    again = tmp_path / "again.csv"
    r = voltconv_cmd("convolve", "--kernel", "abel", "--alpha", "0.5",
                     "--input", str(out1), "--output", str(again))
    assert r.returncode == 0
    assert np.array_equal(read_csv(str(again)).grid, read_csv(str(out1)).grid)


def test_solve_charge_linear(tmp_path):
    n, T = 64, 1.0
    xs = np.linspace(0.0, T, n + 1)
    forcing = SampledFunction(T, np.exp(1j * xs))
    inp = tmp_path / "f.csv"
    write_csv(str(inp), forcing)
    out = tmp_path / "q.csv"
    r = voltconv_cmd("solve-charge", "--kind", "linear", "--alpha", "0.3",
                     "--input", str(inp), "--output", str(out))
    assert r.returncode == 0
    assert r.stderr.startswith("residual\t")
    q = read_csv(str(out))
    assert q.is_complex
    assert q.values[0] == forcing.values[0]


def test_verify_subcommand_exit_codes(tmp_path):
    report = tmp_path / "report.txt"
    r = voltconv_cmd("verify", "--check", "sonine", "--n", "512",
                     "--output", str(report))
    assert r.returncode == 0
    text = report.read_text()
    assert "sonine:verdict\tpass" in text
    for line in text.strip().splitlines():
        assert line.startswith("sonine:")
        assert line.split("\t")[-1] in ("pass", "fail", "inconclusive")


def test_verify_report_byte_identical(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for path in (a, b):
        assert voltconv_cmd("verify", "--check", "kernel-shape", "--seed", "7",
                            "--output", str(path)).returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_usage_errors_exit_two():
    assert run([]) == 2
    assert run(["transmogrify"]) == 2
    assert run(["verify", "--check", "nonsense"]) == 2
