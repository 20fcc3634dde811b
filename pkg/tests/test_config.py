import json

import pytest

from core.config import RunConfig, extra_value, load_config, parse_config, resolve_path, resolve_thread_count
from core.errors import ConfigError


def test_empty_document_gives_defaults():
    config = parse_config("{}")
    assert config == RunConfig()
    assert config.solver.method == "auto"
    assert config.with_seed(9).seed == 9


def test_sections_are_parsed():
    config = parse_config(json.dumps({
        "seed": 4,
        "operator": {"kind": "blur", "kernel_size": 5, "kernel_sigma": 1},
        "solver": {"max_iters": 10, "tau": 0.5},
        "sweep": {"levels": 3},
    }))
    assert config.operator.kernel_sigma == 1.0
    assert isinstance(config.operator.kernel_sigma, float)
    assert config.solver.tau == 0.5
    assert config.extra["sweep"] == {"levels": 3}


def test_syntax_error_carries_line():
    with pytest.raises(ConfigError) as excinfo:
        parse_config('{\n  "seed": 1,\n  "solver": {,}\n}')
    assert excinfo.value.line == 3
    assert "line 3" in str(excinfo.value)


@pytest.mark.parametrize("document, field", [
    ({"solver": {"max_iter": 10}}, "solver.max_iter"),
    ({"solver": {"max_iters": "ten"}}, "solver.max_iters"),
    ({"solver": {"max_iters": 0}}, "solver.max_iters"),
    ({"operator": {"kind": "laser"}}, "operator.kind"),
    ({"problem": {"size": 8}}, "problem.size"),
    ({"regularizer": {"weight": -1}}, "regularizer.weight"),
    ({"noise": {"kind": "impulse", "level": 2.0}}, "noise.level"),
    ({"output": {"plots": 1}}, "output.plots"),
    ({"seed": -1}, "seed"),
    ({"extras": {}}, "extras"),
])
def test_field_errors_name_the_field(document, field):
    with pytest.raises(ConfigError) as excinfo:
        parse_config(json.dumps(document))
    assert excinfo.value.field == field
    assert f"field '{field}'" in str(excinfo.value)


def test_extra_values():
    config = parse_config(json.dumps({"denoiser": {"width": 2, "kind": "gaussian"}}))
    assert extra_value(config, "denoiser", "width", 1.0, float) == 2.0
    assert extra_value(config, "denoiser", "floor", 1e-3, float) == 1e-3
    with pytest.raises(ConfigError) as excinfo:
        extra_value(config, "denoiser", "kind", 0, int)
    assert excinfo.value.field == "denoiser.kind"
    with pytest.raises(ConfigError):
        extra_value(config, "denoiser", "width", 1.0, float, lambda v: v < 1)


def test_load_config_checks_paths(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")

    path = tmp_path / "run.json"
    path.write_text(json.dumps({"problem": {"image": "noisy.pgm"}}))
    with pytest.raises(ConfigError) as excinfo:
        load_config(path)
    assert excinfo.value.field == "problem.image"

    (tmp_path / "noisy.pgm").write_text("P2\n1 1\n255\n0\n")
    config = load_config(path)
    assert config.source == str(path)
    assert resolve_path(config, "noisy.pgm") == tmp_path / "noisy.pgm"


def test_thread_count_from_environment(monkeypatch):
    monkeypatch.delenv("VARIPRO_THREADS", raising=False)
    assert resolve_thread_count() == 1
    monkeypatch.setenv("VARIPRO_THREADS", "4")
    assert resolve_thread_count() == 4
    for bad in ("0", "many"):
        monkeypatch.setenv("VARIPRO_THREADS", bad)
        with pytest.raises(ConfigError) as excinfo:
            resolve_thread_count()
        assert excinfo.value.field == "VARIPRO_THREADS"
