import math
import os
import subprocess
import sys

import numpy as np
import pytest

from gul import cli, storage
from gul.counterexamples import PairMeta, CounterexamplePair
from gul.gabor import LineFamily
from gul.signals import hermite_signal

DELTA = repr(math.exp(-10.0 * math.pi) / 50.0)


def run(args):
    return cli.main(args)


def test_construct_verify_roundtrip(tmp_path, capsys):
    d = str(tmp_path / "pair")
    assert run(["construct", "--mode", "perturb", "--hermite", "5",
                "--a", "0.25", "--delta", DELTA, "--out", d]) == 0
    mf = storage.read_manifest(os.path.join(d, "manifest.txt"))
    assert mf["mode"] == "perturb"
    assert "wall_time_s" in mf and "library_version" in mf

    assert run(["verify", "--pair", d]) == 0
    rep = storage.read_manifest(os.path.join(d, "agreement_report.txt"))
    assert rep["pass"] == "true"
    vm = storage.read_manifest(os.path.join(d, "verify_manifest.txt"))
    assert vm["agreement_pass"] == "true"
    assert vm["distinct_pass"] == "true"


def test_construct_all_modes(tmp_path):
    assert run(["construct", "--mode", "base", "--a", "0.5",
                "--out", str(tmp_path / "b")]) == 0
    assert run(["construct", "--mode", "shifted", "--a", "0.5", "--delta", "0.5",
                "--out", str(tmp_path / "s")]) == 0
    assert run(["construct", "--mode", "density", "--hermite", "3",
                "--a", "0.5", "--epsilon", "0.01", "--out", str(tmp_path / "d")]) == 0
    for sub in ("b", "s", "d"):
        assert run(["verify", "--pair", str(tmp_path / sub)]) == 0


def test_construct_from_coeffs_file(tmp_path):
    coeffs_path = tmp_path / "coeffs.txt"
    storage.write_signal(str(coeffs_path), hermite_signal(2))
    d = str(tmp_path / "pair")
    assert run(["construct", "--mode", "density", "--coeffs", str(coeffs_path),
                "--a", "0.5", "--epsilon", "0.05", "--out", d]) == 0
    assert run(["verify", "--pair", d]) == 0


def test_spectrogram_csv_and_pgm(tmp_path):
    csv = str(tmp_path / "g.csv")
    assert run(["spectrogram", "--hermite", "5", "--xmin", "-2", "--xmax", "2",
                "--xstep", "0.5", "--wmin", "-2", "--wmax", "2", "--wstep", "0.5",
                "--format", "csv", "--out", csv]) == 0
    grid = storage.read_grid_csv(csv)
    assert grid.values.shape == (9, 9)
    assert os.path.exists(csv + ".manifest")

    pgm = str(tmp_path / "g.pgm")
    assert run(["spectrogram", "--hermite", "5", "--xmin", "-2", "--xmax", "2",
                "--xstep", "0.5", "--wmin", "-2", "--wmax", "2", "--wstep", "0.5",
                "--format", "pgm", "--out", pgm]) == 0
    assert open(pgm).readline().strip() == "P2"


def test_spectrogram_from_pair(tmp_path):
    d = str(tmp_path / "pair")
    run(["construct", "--mode", "perturb", "--hermite", "5",
         "--a", "0.25", "--delta", DELTA, "--out", d])
    out = str(tmp_path / "plus.csv")
    assert run(["spectrogram", "--pair", d, "--which", "plus",
                "--xmin", "-3", "--xmax", "3", "--xstep", "0.5",
                "--wmin", "-3", "--wmax", "3", "--wstep", "0.5",
                "--format", "csv", "--out", out]) == 0
    grid = storage.read_grid_csv(out)
    assert grid.values.max() > 0


def test_probe_command(tmp_path):
    d = str(tmp_path / "probe")
    assert run(["probe", "--a", "0.5", "--R", "2", "--N", "4",
                "--starts", "5", "--seed", "11", "--out", d]) == 0
    res = storage.read_manifest(os.path.join(d, "probe_result.txt"))
    assert res["verdict"] == "all-near-constant"
    mf = storage.read_manifest(os.path.join(d, "manifest.txt"))
    assert mf["exploratory"] == "false"


def test_exit_codes_invalid_arguments(tmp_path, capsys):
    # unknown mode
    assert run(["construct", "--mode", "bogus", "--out", str(tmp_path)]) == 2
    assert "invalid_arguments" in capsys.readouterr().err
    # empty spectrogram range
    assert run(["spectrogram", "--hermite", "2", "--xmin", "3", "--xmax", "-3",
                "--xstep", "0.5", "--wmin", "-1", "--wmax", "1", "--wstep", "0.5",
                "--format", "csv", "--out", str(tmp_path / "x.csv")]) == 2
    # density without epsilon
    assert run(["construct", "--mode", "density", "--hermite", "2",
                "--out", str(tmp_path / "p")]) == 2
    # missing subcommand
    assert run([]) == 2
    # nonexistent pair directory
    assert run(["verify", "--pair", str(tmp_path / "nope")]) == 2


def test_exit_code_numerical_failure(tmp_path, capsys):
    # underdetermined probe window -> exit 3
    assert run(["probe", "--a", "1.0", "--R", "0.5", "--N", "2",
                "--starts", "2", "--seed", "0", "--out", str(tmp_path / "p")]) == 3
    assert "numerical_failure" in capsys.readouterr().err


def test_exit_code_verification_failure(tmp_path, capsys):
    # hand-assemble a non-pair on disk: agreement must fail -> exit 1
    d = str(tmp_path / "pair")
    fake = CounterexamplePair(
        g_plus=hermite_signal(0),
        g_minus=hermite_signal(1),
        image_plus=None, image_minus=None,
        family=LineFamily(a=0.5),
        meta=PairMeta(mode="perturb", a=0.5, delta=1e-3),
    )
    storage.save_pair(d, fake)
    assert run(["verify", "--pair", d]) == 1
    assert "verification_failed" in capsys.readouterr().err


def test_console_entry_point(tmp_path):
    # the module runs as a script and reports malformed args on stderr
    proc = subprocess.run(
        [sys.executable, "-m", "gul.cli", "construct", "--mode", "bogus",
         "--out", str(tmp_path)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2
    assert "gul: invalid_arguments" in proc.stderr
