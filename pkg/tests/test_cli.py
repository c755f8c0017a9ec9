import os
import subprocess
import sys

import numpy as np
import pytest

from ridgekit import generate_fingerprint_like, read_pgm, write_pgm


def run_cli(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "ridgekit", *map(str, args)],
                          capture_output=True, text=True, cwd=cwd)


@pytest.fixture
def sample(tmp_path):
    img = generate_fingerprint_like(48, 48, contrast=(60, 200),
                                    noise_sigma=10.0, seed=6)
    path = tmp_path / "sample.pgm"
    path.write_bytes(write_pgm(img))
    return path, img


def test_help_exits_zero():
    proc = run_cli("--help")
    assert proc.returncode == 0
    for command in ("enhance", "equalize", "threshold", "compare", "generate", "metrics"):
        assert command in proc.stdout


def test_usage_errors_exit_one():
    assert run_cli("no-such-command").returncode == 1
    assert run_cli("enhance", "--frobnicate", "x").returncode == 1
    assert run_cli().returncode == 1


def test_processing_errors_exit_two_and_name_stage(tmp_path):
    proc = run_cli("enhance", tmp_path / "missing.pgm", "-o", tmp_path / "out.pgm")
    assert proc.returncode == 2
    assert "read" in proc.stderr
    bad = tmp_path / "bad.pgm"
    bad.write_bytes(b"P9 nope")
    proc = run_cli("metrics", bad)
    assert proc.returncode == 2
    assert "read" in proc.stderr and "P9" in proc.stderr


def test_failed_write_leaves_no_partial_file(tmp_path, sample):
    path, _ = sample
    target = tmp_path / "no-such-dir" / "out.pgm"
    proc = run_cli("enhance", path, "-o", target)
    assert proc.returncode == 2
    assert "write" in proc.stderr
    assert not target.exists()
    assert not target.parent.exists()


def test_enhance_identity_mode(tmp_path, sample):
    path, img = sample
    out = tmp_path / "out.pgm"
    ridge = tmp_path / "ridge.pgm"
    proc = run_cli("enhance", path, "-o", out, "--ridge-map", ridge,
                   "--xi-mode", "fixed=1.0")
    assert proc.returncode == 0
    assert proc.stdout.startswith("xi=1.000000 threshold=")
    enhanced = read_pgm(out.read_bytes())
    assert np.abs(enhanced.astype(int) - img.astype(int)).max() <= 1
    ridge_img = read_pgm(ridge.read_bytes())
    assert set(np.unique(ridge_img)) <= {0, 255}


def test_enhance_rejects_bad_xi_mode(tmp_path, sample):
    path, _ = sample
    proc = run_cli("enhance", path, "-o", tmp_path / "out.pgm",
                   "--xi-mode", "sometimes")
    assert proc.returncode == 2


def test_threshold_otsu_prints_level(tmp_path):
    img = np.full((10, 10), 50, np.uint8)
    img[:, 5:] = 200
    path = tmp_path / "bimodal.pgm"
    path.write_bytes(write_pgm(img))
    out = tmp_path / "bin.pgm"
    proc = run_cli("threshold", path, "-o", out, "--method", "otsu")
    assert proc.returncode == 0
    assert proc.stdout.strip() == "level=50"
    assert set(np.unique(read_pgm(out.read_bytes()))) == {0, 255}


def test_threshold_curve_csv(tmp_path, sample):
    path, _ = sample
    curve = tmp_path / "curve.csv"
    proc = run_cli("threshold", path, "-o", tmp_path / "bin.pgm",
                   "--method", "fuzzy", "--print-curve", curve)
    assert proc.returncode == 0
    lines = curve.read_text().splitlines()
    assert lines[0] == "level,criterion,valid"
    assert len(lines) == 257


def test_equalize_both_methods(tmp_path, sample):
    path, img = sample
    for extra in (["--method", "global"], ["--method", "local", "--tile", "16"]):
        out = tmp_path / "eq.pgm"
        proc = run_cli("equalize", path, "-o", out, *extra)
        assert proc.returncode == 0
        assert read_pgm(out.read_bytes()).shape == img.shape


def test_compare_csv_shape(tmp_path, sample):
    path, _ = sample
    csv_path = tmp_path / "cmp.csv"
    proc = run_cli("compare", path, "--csv", csv_path)
    assert proc.returncode == 0
    lines = csv_path.read_text().splitlines()
    assert len(lines) == 5
    stdout_proc = run_cli("compare", path)
    assert stdout_proc.returncode == 0
    assert stdout_proc.stdout == csv_path.read_text()


def test_generate_is_deterministic(tmp_path):
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    for out in (out_a, out_b):
        proc = run_cli("generate", "--quality", "poor", "--out", out,
                       "--count", "3", "--seed", "9")
        assert proc.returncode == 0
    names = sorted(os.listdir(out_a))
    assert names == ["poor_01.pgm", "poor_02.pgm", "poor_03.pgm"]
    for name in names:
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()


def test_metrics_two_images(tmp_path, sample):
    path, img = sample
    other = tmp_path / "other.pgm"
    other.write_bytes(write_pgm(np.clip(img.astype(int) + 3, 0, 255).astype(np.uint8)))
    proc = run_cli("metrics", path, other)
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert len(lines) == 3
    assert lines[0].startswith(f"file={path} mean=")
    assert lines[2].startswith("mse=")
    proc = run_cli("metrics", path, tmp_path / "nope.pgm")
    assert proc.returncode == 2
