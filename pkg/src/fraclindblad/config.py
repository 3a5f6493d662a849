"""Scenario configuration: ``key = value`` files plus command-line overrides.

Example file::

    # coherence curves for four orders
    model = amplitude_damping
    gamma = 1.0
    alphas = 0.5, 0.7, 0.9, 1.0
    t_max = 10
    steps = 1000
    initial_state = plus
    method = analytic
    output_path = coherence.csv
    emit_svg = true

``initial_state = custom`` requires ``custom_state`` with the four entries
``rho00, rho01, rho10, rho11`` (Python complex literals such as ``0.3+0.1j``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

import numpy as np

from .quantum_ops import DensityMatrix, InvalidStateError

MODELS = ("amplitude_damping",)
INITIAL_STATES = ("plus", "excited", "custom")
METHODS = ("analytic", "integrator", "both")


class ConfigError(ValueError):
    def __init__(self, field_name, message):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class ScenarioConfig:
    model: str = "amplitude_damping"
    gamma: float = 1.0
    alphas: tuple = (0.5, 0.7, 0.9, 1.0)
    t_max: float = 10.0
    steps: int = 1000
    initial_state: str = "plus"
    custom_state: Optional[tuple] = None
    method: str = "analytic"
    output_path: Path = Path("coherence.csv")
    emit_svg: bool = False

    def __post_init__(self):
        if self.model not in MODELS:
            raise ConfigError("model", f"unknown model {self.model!r}; expected one of {MODELS}")
        if not (isinstance(self.gamma, (int, float)) and math.isfinite(self.gamma) and self.gamma > 0):
            raise ConfigError("gamma", f"must be a positive number, got {self.gamma!r}")
        alphas = tuple(float(a) for a in self.alphas)
        if not alphas:
            raise ConfigError("alphas", "at least one fractional order is required")
        bad = [a for a in alphas if not 0.0 < a <= 1.0]
        if bad:
            raise ConfigError("alphas", f"values must lie in (0, 1], got {bad}")
        object.__setattr__(self, "alphas", tuple(sorted(set(alphas))))
        if not (math.isfinite(self.t_max) and self.t_max > 0):
            raise ConfigError("t_max", f"must be positive, got {self.t_max!r}")
        if isinstance(self.steps, bool) or int(self.steps) != self.steps or self.steps < 1:
            raise ConfigError("steps", f"must be a positive integer, got {self.steps!r}")
        object.__setattr__(self, "steps", int(self.steps))
        if self.initial_state not in INITIAL_STATES:
            raise ConfigError(
                "initial_state", f"expected one of {INITIAL_STATES}, got {self.initial_state!r}"
            )
        if self.initial_state == "custom":
            if self.custom_state is None or len(self.custom_state) != 4:
                raise ConfigError("custom_state", "custom initial state needs four entries")
            try:
                DensityMatrix(np.array(self.custom_state, dtype=complex).reshape(2, 2))
            except InvalidStateError as exc:
                raise ConfigError("custom_state", str(exc)) from None
        if self.method not in METHODS:
            raise ConfigError("method", f"expected one of {METHODS}, got {self.method!r}")
        object.__setattr__(self, "output_path", Path(self.output_path))

    def initial_density(self) -> DensityMatrix:
        if self.initial_state == "plus":
            return DensityMatrix.plus()
        if self.initial_state == "excited":
            return DensityMatrix.excited()
        return DensityMatrix(np.array(self.custom_state, dtype=complex).reshape(2, 2))

    @property
    def times(self):
        return np.linspace(0.0, self.t_max, self.steps + 1)


def _parse_bool(text):
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _split_list(text):
    return [p for p in text.replace(",", " ").split() if p]


_CONVERTERS = {
    "model": str.strip,
    "gamma": float,
    "alphas": lambda s: tuple(float(p) for p in _split_list(s)),
    "t_max": float,
    "steps": int,
    "initial_state": str.strip,
    "custom_state": lambda s: tuple(complex(p) for p in _split_list(s)),
    "method": str.strip,
    "output_path": lambda s: Path(s.strip()),
    "emit_svg": _parse_bool,
}


def parse_config_text(text) -> dict:
    """Parse ``key = value`` lines into typed values (``#`` starts a comment)."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {raw!r}")
        key, value = (p.strip() for p in line.split("=", 1))
        if key not in _CONVERTERS:
            raise ConfigError(key, "unknown configuration key")
        try:
            values[key] = _CONVERTERS[key](value)
        except ValueError as exc:
            raise ConfigError(key, str(exc)) from None
    return values


def load_config(path=None, **overrides) -> ScenarioConfig:
    """Build a :class:`ScenarioConfig` from an optional file; non-None overrides win."""
    values = {}
    if path is not None:
        values.update(parse_config_text(Path(path).read_text(encoding="utf-8")))
    values.update({k: v for k, v in overrides.items() if v is not None})
    known = {f.name for f in fields(ScenarioConfig)}
    unknown = set(values) - known
    if unknown:
        name = sorted(unknown)[0]
        raise ConfigError(name, "unknown configuration key")
    return ScenarioConfig(**values)
