"""Run configuration and deterministic JSON serialization of reports."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import GencsError

DEFAULT_SEED = 42
MIN_M = 8

DEFAULT_TOLERANCES = {
    "normalization": 1e-10,
    "normalization_closed_form": 1e-8,
    "resolution": 1e-8,
    "resolution_offdiagonal": 1e-10,
    "disc_measure_factor": 1e-8,
    "kernel_hermiticity": 1e-13,
    "kernel_diagonal": 1e-12,
    "kernel_closed_form": 1e-12,
    "kernel_square_integrability": 1e-6,
    "isometry": 1e-6,
    "commutators": 1e-12,
    "su11": 1e-12,
    "eigenstate": 1e-8,
    "positivity": 1e-15,
    "rodrigues": 1e-7,
    "series_ratio": 1e-12,
}


class ConfigError(GencsError, ValueError):
    """A run configuration is malformed; the message names the first bad field."""


@dataclass
class RunConfig:
    family: str = "logdisc"
    params: dict = field(default_factory=dict)
    M: int = 64
    quad_tol: float = 1e-10
    check_tols: dict = field(default_factory=dict)
    grids: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    dim: int = 16
    algebra_dim: int = 32
    output: str = ""

    def tol(self, name):
        return float(self.check_tols.get(name, DEFAULT_TOLERANCES[name]))

    def validate(self):
        if not isinstance(self.family, str) or not self.family:
            raise ConfigError("family: must be a non-empty string")
        if not isinstance(self.params, dict):
            raise ConfigError("params: must be an object")
        if isinstance(self.M, bool) or not isinstance(self.M, int) or self.M < MIN_M:
            raise ConfigError(f"M: must be an integer >= {MIN_M}, got {self.M!r}")
        if not _positive(self.quad_tol):
            raise ConfigError(f"quad_tol: must be a positive number, got {self.quad_tol!r}")
        if not isinstance(self.check_tols, dict):
            raise ConfigError("check_tols: must be an object")
        for key, value in self.check_tols.items():
            if key not in DEFAULT_TOLERANCES:
                raise ConfigError(f"check_tols.{key}: unknown check")
            if not _positive(value):
                raise ConfigError(f"check_tols.{key}: must be a positive number, got {value!r}")
        if not isinstance(self.grids, dict):
            raise ConfigError("grids: must be an object")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int):
            raise ConfigError(f"seed: must be an integer, got {self.seed!r}")
        for key in ("dim", "algebra_dim"):
            v = getattr(self, key)
            if isinstance(v, bool) or not isinstance(v, int) or not 4 <= v <= 32:
                raise ConfigError(f"{key}: must be an integer in [4, 32], got {v!r}")
        if not isinstance(self.output, str):
            raise ConfigError("output: must be a string path")
        return self

    def to_dict(self):
        return {
            "family": self.family,
            "params": dict(sorted(self.params.items())),
            "M": self.M,
            "quad_tol": self.quad_tol,
            "check_tols": dict(sorted(self.check_tols.items())),
            "grids": dict(sorted(self.grids.items())),
            "seed": self.seed,
            "dim": self.dim,
            "algebra_dim": self.algebra_dim,
            "output": self.output,
        }


CONFIG_FIELDS = tuple(RunConfig().to_dict())


def _positive(v):
    return not isinstance(v, bool) and isinstance(v, (int, float)) and math.isfinite(v) and v > 0


def config_from_dict(data):
    if not isinstance(data, dict):
        raise ConfigError("config: top level must be an object")
    for key in data:
        if key not in CONFIG_FIELDS:
            raise ConfigError(f"{key}: unknown config field")
    return RunConfig(**data).validate()


def load_config(path):
    """Read a JSON config; missing fields take their defaults (seed 42, M 64, ...)."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: not valid JSON ({exc.msg} at line {exc.lineno})") from exc
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path!r} ({exc.strerror})") from exc
    return config_from_dict(data)


def format_float(x):
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def dumps(obj, indent=2):
    """JSON text with floats at 17 significant digits and insertion-ordered keys."""
    out = []
    _emit(obj, out, 0, indent)
    return "".join(out) + "\n"


def _emit(obj, out, level, indent):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(pad + json.dumps(str(k)) + ": ")
            _emit(v, out, level + 1, indent)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad)
            _emit(v, out, level + 1, indent)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_report(report, path):
    """Write a report (object with ``to_dict`` or plain dict) as deterministic JSON."""
    data = report.to_dict() if hasattr(report, "to_dict") else report
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(data))


def read_report(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
