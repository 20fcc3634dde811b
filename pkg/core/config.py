"""
Run Configuration

Parses the single JSON document that drives one command-line run into frozen
dataclasses. Field errors carry their dotted path; JSON syntax errors carry
line and column.
"""

import json
import os
import typing
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional

from .errors import ConfigError

THREADS_ENV_VAR = "VARIPRO_THREADS"

OPERATOR_KINDS = ("identity", "blur", "mask", "fourier", "radon")
FIDELITY_KINDS = ("l2", "kl", "l1")
REGULARIZER_KINDS = ("none", "tikhonov_l2", "tikhonov_grad", "tv_iso", "tv_aniso", "proto_dist")
SOLVER_METHODS = ("auto", "pdhg", "fbs", "admm")
CRITERIA = ("gap", "fixed_point_residual", "energy_delta")
NOISE_KINDS = ("gaussian", "poisson", "impulse")
PHANTOM_KINDS = ("disk", "rectangles", "shepp_like", "two_phase_disk", "constant", "smooth")
EXTRA_SECTIONS = ("denoiser", "sweep", "segmentation")


@dataclass(frozen=True)
class ProblemSection:
    phantom: str = "rectangles"
    size: int = 64
    image: Optional[str] = None
    ground_truth: Optional[str] = None


@dataclass(frozen=True)
class OperatorSection:
    kind: str = "identity"
    kernel_size: int = 9
    kernel_sigma: float = 1.5
    mask: str = "radial"
    mask_fraction: float = 0.3
    n_lines: int = 24
    n_angles: int = 180
    n_offsets: Optional[int] = None
    angle_range_deg: float = 180.0


@dataclass(frozen=True)
class FidelitySection:
    kind: str = "l2"


@dataclass(frozen=True)
class RegularizerSection:
    kind: str = "tv_iso"
    weight: float = 0.1
    prototypes: Optional[str] = None
    rho0: float = 0.0


@dataclass(frozen=True)
class SolverSection:
    method: str = "auto"
    max_iters: int = 500
    tol: float = 1e-6
    tau: Optional[float] = None
    sigma: Optional[float] = None
    lam: float = 1.0
    theta: float = 1.0
    criterion: str = "fixed_point_residual"
    strict: bool = False


@dataclass(frozen=True)
class NoiseSection:
    kind: str = "gaussian"
    level: float = 0.0


@dataclass(frozen=True)
class OutputSection:
    plots: bool = False
    progress: bool = False


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    problem: ProblemSection = field(default_factory=ProblemSection)
    operator: OperatorSection = field(default_factory=OperatorSection)
    fidelity: FidelitySection = field(default_factory=FidelitySection)
    regularizer: RegularizerSection = field(default_factory=RegularizerSection)
    solver: SolverSection = field(default_factory=SolverSection)
    noise: NoiseSection = field(default_factory=NoiseSection)
    output: OutputSection = field(default_factory=OutputSection)
    extra: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    source: Optional[str] = None

    def with_seed(self, seed):
        return replace(self, seed=int(seed))


SECTION_TYPES = {
    "problem": ProblemSection,
    "operator": OperatorSection,
    "fidelity": FidelitySection,
    "regularizer": RegularizerSection,
    "solver": SolverSection,
    "noise": NoiseSection,
    "output": OutputSection,
}

CHOICES = {
    ("problem", "phantom"): PHANTOM_KINDS,
    ("operator", "kind"): OPERATOR_KINDS,
    ("fidelity", "kind"): FIDELITY_KINDS,
    ("regularizer", "kind"): REGULARIZER_KINDS,
    ("solver", "method"): SOLVER_METHODS,
    ("solver", "criterion"): CRITERIA,
    ("noise", "kind"): NOISE_KINDS,
}


def _type_name(annotation):
    """'int', 'float', 'str', 'bool' or 'Optional[...]' for a dataclass field type"""
    if annotation in (int, float, str, bool):
        return annotation.__name__
    args = [arg for arg in typing.get_args(annotation) if arg is not type(None)]
    if len(args) == 1 and args[0] in (int, float, str, bool):
        return f"Optional[{args[0].__name__}]"
    return "any"


def _coerce(value, target, path):
    """Coerce a JSON value to the annotated field type or raise ConfigError"""
    optional = target.startswith("Optional[")
    base = target[len("Optional["):-1] if optional else target
    if value is None:
        if optional:
            return None
        raise ConfigError("value must not be null", field=path)
    if base == "bool":
        if not isinstance(value, bool):
            raise ConfigError(f"expected a boolean, got {value!r}", field=path)
        return value
    if base == "int":
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"expected an integer, got {value!r}", field=path)
        return value
    if base == "float":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"expected a number, got {value!r}", field=path)
        return float(value)
    if base == "str":
        if not isinstance(value, str):
            raise ConfigError(f"expected a string, got {value!r}", field=path)
        return value
    return value


def _parse_section(name, raw):
    section_type = SECTION_TYPES[name]
    if not isinstance(raw, dict):
        raise ConfigError("section must be a JSON object", field=name)

    known = {f.name: f for f in fields(section_type)}
    unknown = sorted(set(raw) - set(known))
    if unknown:
        raise ConfigError(f"unknown key '{unknown[0]}'", field=f"{name}.{unknown[0]}")

    values = {}
    for key, value in raw.items():
        path = f"{name}.{key}"
        values[key] = _coerce(value, _type_name(known[key].type), path)
        choices = CHOICES.get((name, key))
        if choices is not None and values[key] not in choices:
            raise ConfigError(f"'{values[key]}' is not one of {', '.join(choices)}", field=path)

    return section_type(**values)


def validate_config(config):
    """Range checks that go beyond field types"""
    if config.problem.size < 16:
        raise ConfigError("size must be at least 16", field="problem.size")
    if config.solver.max_iters < 1:
        raise ConfigError("max_iters must be >= 1", field="solver.max_iters")
    if config.solver.tol < 0:
        raise ConfigError("tol must be >= 0", field="solver.tol")
    for name in ("tau", "sigma"):
        value = getattr(config.solver, name)
        if value is not None and value <= 0:
            raise ConfigError(f"{name} must be > 0", field=f"solver.{name}")
    if config.solver.lam <= 0:
        raise ConfigError("lam must be > 0", field="solver.lam")
    if not 0.0 <= config.solver.theta <= 1.0:
        raise ConfigError("theta must lie in [0, 1]", field="solver.theta")
    if config.regularizer.weight < 0:
        raise ConfigError("weight must be >= 0", field="regularizer.weight")
    if config.regularizer.rho0 < 0:
        raise ConfigError("rho0 must be >= 0", field="regularizer.rho0")
    if config.noise.level < 0:
        raise ConfigError("level must be >= 0", field="noise.level")
    if config.noise.kind == "impulse" and config.noise.level > 1:
        raise ConfigError("impulse fraction must lie in [0, 1]", field="noise.level")
    if not 0.0 <= config.operator.mask_fraction <= 1.0:
        raise ConfigError("mask_fraction must lie in [0, 1]", field="operator.mask_fraction")
    if config.operator.n_angles < 1:
        raise ConfigError("n_angles must be >= 1", field="operator.n_angles")
    if config.operator.n_offsets is not None and config.operator.n_offsets < 3:
        raise ConfigError("n_offsets must be >= 3", field="operator.n_offsets")
    return config


def parse_config(text, source=None):
    """Parse a JSON document into a validated RunConfig"""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON: {e.msg}", line=e.lineno, column=e.colno) from e

    if not isinstance(raw, dict):
        raise ConfigError("top-level value must be a JSON object", line=1)

    allowed = {"seed", "command", "description"} | set(SECTION_TYPES) | set(EXTRA_SECTIONS)
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise ConfigError(f"unknown section '{unknown[0]}'", field=unknown[0])

    seed = raw.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        raise ConfigError("seed must be a non-negative integer", field="seed")

    sections = {name: _parse_section(name, raw[name]) for name in SECTION_TYPES if name in raw}

    extra = {}
    for name in EXTRA_SECTIONS:
        if name in raw:
            if not isinstance(raw[name], dict):
                raise ConfigError("section must be a JSON object", field=name)
            extra[name] = dict(raw[name])

    config = RunConfig(seed=seed, extra=extra, source=source, **sections)
    return validate_config(config)


def load_config(path):
    """Load and validate a JSON run configuration from disk"""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    config = parse_config(path.read_text(encoding="utf-8"), source=str(path))

    base = path.parent
    for name, value in (("problem.image", config.problem.image),
                        ("problem.ground_truth", config.problem.ground_truth),
                        ("regularizer.prototypes", config.regularizer.prototypes)):
        if value is not None and not (base / value).exists() and not Path(value).exists():
            raise ConfigError(f"referenced path does not exist: {value}", field=name)
    return config


def resolve_path(config, value):
    """Resolve a path from the config relative to the config file location"""
    if value is None:
        return None
    candidate = Path(value)
    if config.source is not None and not candidate.is_absolute():
        relative = Path(config.source).parent / candidate
        if relative.exists():
            return relative
    return candidate


def resolve_thread_count():
    """Thread cap from VARIPRO_THREADS (positive integer, default 1)"""
    raw = os.environ.get(THREADS_ENV_VAR, "1")
    try:
        count = int(raw)
    except ValueError as e:
        raise ConfigError(f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}",
                          field=THREADS_ENV_VAR) from e
    if count < 1:
        raise ConfigError(f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}",
                          field=THREADS_ENV_VAR)
    return count


def extra_value(config, section, key, default, kind=None, path_check=None) -> Any:
    """Typed lookup into a command-specific section with a dotted error path"""
    value = config.extra.get(section, {}).get(key, default)
    path = f"{section}.{key}"
    if kind is not None and value is not None:
        if kind is float and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
            raise ConfigError(f"expected {getattr(kind, '__name__', kind)}, got {value!r}", field=path)
    if path_check is not None and value is not None and not path_check(value):
        raise ConfigError(f"invalid value {value!r}", field=path)
    return value


