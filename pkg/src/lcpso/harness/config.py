"""Experiment configuration files.

One ``key: value`` pair per line; ``#`` starts a comment; list values are
comma separated.  Example::

    objective: sphere, rastrigin
    dim: 30, 60
    variant: pso, pso-de
    runs: 50
"""
from __future__ import annotations

from dataclasses import dataclass, fields, replace

from ..core import ConfigurationError
from ..objectives import OBJECTIVE_IDS
from ..variants.config import DEFAULT_GAMMA, parse_variant_name


class ConfigParseError(ConfigurationError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class ExperimentConfig:
    objectives: tuple[str, ...]
    dims: tuple[int, ...] = (30,)
    variants: tuple[str, ...] = ("pso",)
    n_particles: int = 40
    iterations: int = 5000
    runs: int = 50
    gamma: float = DEFAULT_GAMMA
    base_seed: int = 0
    thresholds: tuple[float, ...] = ()
    output: str | None = None
    format: str = "csv"
    workers: int = 1

    def __post_init__(self):
        if not self.objectives:
            raise ConfigurationError("at least one objective is required")
        for obj in self.objectives:
            if obj not in OBJECTIVE_IDS:
                raise ConfigurationError(f"unknown objective {obj!r}")
        if not self.variants:
            raise ConfigurationError("at least one variant is required")
        if not self.dims or min(self.dims) < 1:
            raise ConfigurationError("dimensions must be >= 1")
        if self.runs < 1:
            raise ConfigurationError("runs must be >= 1")
        if self.iterations < 1:
            raise ConfigurationError("iterations must be >= 1")
        if self.gamma < 0:
            raise ConfigurationError("gamma must be >= 0")
        if any(t <= 0 for t in self.thresholds):
            raise ConfigurationError("thresholds must be positive")
        if self.format not in ("csv", "markdown"):
            raise ConfigurationError(f"format must be csv or markdown, got {self.format!r}")
        if self.workers < 1:
            raise ConfigurationError("workers must be >= 1")
        for v in self.variants:
            self.variant_config(v)

    def variant_config(self, name: str):
        return parse_variant_name(name, gamma=self.gamma, iterations=self.iterations, n_particles=self.n_particles)


# file key -> (dataclass field, element parser, is list)
_KEYS = {
    "objective": ("objectives", str, True),
    "dim": ("dims", int, True),
    "variant": ("variants", str, True),
    "n_particles": ("n_particles", int, False),
    "iterations": ("iterations", int, False),
    "runs": ("runs", int, False),
    "gamma": ("gamma", float, False),
    "base_seed": ("base_seed", int, False),
    "thresholds": ("thresholds", float, True),
    "output": ("output", str, False),
    "format": ("format", str, False),
    "workers": ("workers", int, False),
}
_FIELD_TO_KEY = {f: k for k, (f, _, _) in _KEYS.items()}


def _convert(raw: str, kind, is_list: bool, line: int):
    items = [s.strip() for s in raw.split(",")] if is_list else [raw.strip()]
    if any(not s for s in items):
        raise ConfigParseError("empty value", line)
    try:
        values = tuple(kind(s.lower() if kind is str and is_list else s) for s in items)
    except ValueError as exc:
        raise ConfigParseError(f"bad value {raw.strip()!r}: {exc}", line) from None
    return values if is_list else values[0]


def parse_config(text: str) -> ExperimentConfig:
    values, seen = {}, {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, raw = line.partition(":")
        key = key.strip().lower()
        if not sep:
            raise ConfigParseError(f"expected 'key: value', got {raw_line.strip()!r}", lineno)
        if key not in _KEYS:
            raise ConfigParseError(f"unknown key {key!r}", lineno)
        if key in seen:
            raise ConfigParseError(f"duplicate key {key!r} (first set on line {seen[key]})", lineno)
        seen[key] = lineno
        field_name, kind, is_list = _KEYS[key]
        values[field_name] = _convert(raw, kind, is_list, lineno)
    if "objectives" not in values:
        raise ConfigParseError("missing required key 'objective'")
    try:
        return ExperimentConfig(**values)
    except ConfigurationError as exc:
        raise ConfigParseError(str(exc)) from None


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def serialize_config(config: ExperimentConfig) -> str:
    lines = []
    for f in fields(config):
        value = getattr(config, f.name)
        if value is None or value == ():
            continue
        key = _FIELD_TO_KEY[f.name]
        if isinstance(value, tuple):
            lines.append(f"{key}: {', '.join(_fmt(v) for v in value)}")
        else:
            lines.append(f"{key}: {_fmt(value)}")
    return "\n".join(lines) + "\n"


def apply_overrides(config: ExperimentConfig | None, **overrides) -> ExperimentConfig:
    """Replace config fields with any override that is not None."""
    given = {k: v for k, v in overrides.items() if v is not None}
    if config is None:
        if "objectives" not in given:
            raise ConfigurationError("an objective is required (config file or --objective)")
        return ExperimentConfig(**given)
    return replace(config, **given)
