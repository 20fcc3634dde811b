import json
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from main import main
from core.config import load_config
from Module_1_Grid import read_csv_image
from Module_10_Experiments.problem_builder import ProblemBuilder

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def run(command, config, out_dir, *extra):
    return main(["run", command, "--config", str(config), "--out", str(out_dir), *extra])


def metrics(out_dir):
    return json.loads((Path(out_dir) / "metrics.json").read_text(encoding="utf-8"))


def write_config(tmp_path, document, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(document), encoding="utf-8")
    return path


@pytest.mark.parametrize("config", sorted(CONFIGS.glob("*.json")), ids=lambda p: p.stem)
def test_shipped_configs_pass_dry_run(config, tmp_path):
    command = json.loads(config.read_text(encoding="utf-8"))["command"]
    assert run(command, config, tmp_path / "out", "--dry-run") == 0
    assert not (tmp_path / "out").exists()


def test_invalid_configs_exit_with_error(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"seed": 1,,}', encoding="utf-8")
    assert run("denoise", broken, tmp_path / "a", "--dry-run") == 1
    assert run("denoise", broken, tmp_path / "b") == 1

    unknown = write_config(tmp_path, {"solver": {"max_iter": 5}}, "unknown.json")
    assert run("denoise", unknown, tmp_path / "c", "--dry-run") == 1

    mismatched = write_config(tmp_path, {"operator": {"kind": "identity"}}, "mismatch.json")
    assert run("deblur", mismatched, tmp_path / "d", "--dry-run") == 1
    assert run("deblur", mismatched, tmp_path / "e") == 1


@pytest.mark.parametrize("blocked", ["trace.csv", "metrics.json", "recon.csv", "summary.txt"])
def test_unwritable_output_exits_with_error(tmp_path, blocked):
    (tmp_path / blocked).mkdir(parents=True)
    assert run("denoise", CONFIGS / "denoise_alpha0.json", tmp_path) == 1
    assert (tmp_path / blocked).is_dir()


def test_unregularized_denoising_returns_the_data(tmp_path):
    config = CONFIGS / "denoise_alpha0.json"
    assert run("denoise", config, tmp_path) == 0
    y = ProblemBuilder(load_config(config)).build().y
    assert np.array_equal(read_csv_image(tmp_path / "recon.csv").data, y)
    result = metrics(tmp_path)
    assert result["method"] == "direct"
    assert result["psnr"] == pytest.approx(result["baseline_psnr"])


def test_denoise_outputs(tmp_path):
    config = write_config(tmp_path, {
        "seed": 7,
        "problem": {"phantom": "rectangles", "size": 16},
        "regularizer": {"kind": "tv_iso", "weight": 0.1},
        "solver": {"method": "pdhg", "max_iters": 5000, "tol": 1e-4},
        "noise": {"kind": "gaussian", "level": 0.05},
        "output": {"plots": True},
    })
    out = tmp_path / "out"
    assert run("denoise", config, out) == 0
    for name in ("recon.pgm", "recon.csv", "trace.csv", "metrics.json", "summary.txt", "trace.pdf"):
        assert (out / name).exists(), name
    result = metrics(out)
    assert set(result) >= {"psnr", "rel_err", "iters", "wall_ms", "baseline_psnr", "threads"}
    assert result["psnr"] > result["baseline_psnr"]
    assert (out / "recon.pgm").read_text().splitlines()[:3] == ["P2", "16 16", "255"]
    assert "VARIPRO - DENOISE RUN SUMMARY" in (out / "summary.txt").read_text(encoding="utf-8")


def test_trace_is_reproducible(tmp_path):
    config = write_config(tmp_path, {
        "seed": 3,
        "problem": {"phantom": "disk", "size": 16},
        "regularizer": {"kind": "tv_aniso", "weight": 0.05},
        "solver": {"method": "pdhg", "max_iters": 50, "tol": 0.0},
        "noise": {"kind": "gaussian", "level": 0.1},
    })
    assert run("denoise", config, tmp_path / "first") == 2
    assert run("denoise", config, tmp_path / "second") == 2
    first = (tmp_path / "first" / "trace.csv").read_bytes()
    assert first == (tmp_path / "second" / "trace.csv").read_bytes()
    assert len(first.splitlines()) == 51


def test_seed_override_changes_the_data(tmp_path):
    config = CONFIGS / "denoise_alpha0.json"
    assert run("denoise", config, tmp_path / "a") == 0
    assert run("denoise", config, tmp_path / "b", "--seed", "99") == 0
    a = read_csv_image(tmp_path / "a" / "recon.csv").data
    b = read_csv_image(tmp_path / "b" / "recon.csv").data
    assert not np.array_equal(a, b)


def test_fully_sampled_mri_is_exact(tmp_path):
    assert run("mri", CONFIGS / "mri_fullmask.json", tmp_path) == 0
    assert metrics(tmp_path)["psnr"] >= 80.0


@pytest.mark.slow
def test_sparse_ct_beats_backprojection(tmp_path):
    assert run("ct", CONFIGS / "ct_sparse.json", tmp_path) in (0, 2)
    result = metrics(tmp_path)
    assert result["psnr"] > result["baseline_psnr"]
    assert (tmp_path / "sinogram.csv").read_text().startswith("angles=30,")


@pytest.mark.slow
@pytest.mark.parametrize("config, flag", [("pnp_deblur16.json", "monotone=true"),
                                          ("pnp_deblur16_broken.json", "monotone=false")])
def test_pnp_sweep_flag(config, flag, tmp_path, capsys):
    assert run("pnp_sweep", CONFIGS / config, tmp_path) == 0
    assert flag in capsys.readouterr().out
    assert flag in (tmp_path / "summary.txt").read_text(encoding="utf-8")
    table = pd.read_csv(tmp_path / "sweep.csv")
    assert list(table.columns) == ["delta", "tau", "err_vs_udagger", "err_vs_utrue", "iters"]
    assert len(table) == 6


@pytest.mark.slow
def test_segment_disk_reports_dice(tmp_path):
    assert run("segment", CONFIGS / "segment_disk.json", tmp_path) == 0
    result = metrics(tmp_path)
    assert result["dice"] >= 0.99
    assert result["degenerate_region"] is False
    assert (tmp_path / "mask.pgm").exists()


def test_segment_constant_is_flagged(tmp_path):
    assert run("segment", CONFIGS / "segment_constant.json", tmp_path) == 0
    result = metrics(tmp_path)
    assert result["degenerate_region"] is True
    assert "dice" not in result


def test_illposed_table(tmp_path):
    assert run("illposed", CONFIGS / "illposed.json", tmp_path) == 0
    table = pd.read_csv(tmp_path / "illposed.csv")
    assert list(table.columns) == ["noise_level", "naive_err", "tikhonov_err"]
    assert table["noise_level"].tolist() == pytest.approx([0.0, 0.001, 0.01, 0.05])
    noisiest = table.iloc[-1]
    assert noisiest["naive_err"] > noisiest["tikhonov_err"]
