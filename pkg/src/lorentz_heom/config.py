"""Flat ``key=value`` run configuration.

One pair per line, ``#`` starts a comment. Every key can also be given on
the command line, and command-line values win over the file.
"""

import math
from dataclasses import dataclass, fields, replace
from importlib import resources

from . import models
from .bath import LorentzBath
from .heom import SolverConfig, default_depth

MODES = ("heom", "rwa", "oracle", "sweep")


class ConfigError(ValueError):
    pass


def _parse_bool(text):
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def _parse_floats(text):
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ConfigError(f"not a comma-separated list of numbers: {text!r}") from None


@dataclass(frozen=True)
class RunConfig:
    mode: str = "heom"
    lam: float = 0.01
    gamma: float = 0.05
    omega0: float = 1.0
    w1: float = 1.0
    w2: float = 1.0
    a1: float = 1.0
    a2: float = 1.0
    initial: str = "fig2"
    dt: float = 0.01
    t_end: float = 50.0
    depth: int = 0  # 0 picks a default from the coupling strength
    convergence_tol: float = 1e-4
    sample_stride: int = 10
    converge: bool = True
    out: str = ""
    gammas: tuple = ()
    sweep_gammas: tuple = ()
    steady_tol: float = 1e-4
    horizon_factor: float = 50.0
    oracle_dt: float = 0.005
    workers: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {', '.join(MODES)}")
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, float) and not math.isfinite(value):
                raise ConfigError(f"{f.name} must be finite")
        if self.gamma < 0 or any(g < 0 for g in self.gammas + self.sweep_gammas):
            raise ConfigError("gamma must be >= 0")
        if self.lam <= 0:
            raise ConfigError("lambda must be positive")
        if self.mode == "oracle" and self.gamma != 0:
            raise ConfigError("oracle mode needs gamma = 0")
        if self.dt <= 0 or self.t_end <= 0 or self.sample_stride < 1:
            raise ConfigError("dt, t_end and sample_stride must be positive")
        if self.depth < 0 or self.workers < 1:
            raise ConfigError("depth must be >= 0 and workers >= 1")
        initial_state(self)

    @property
    def bath(self):
        return LorentzBath(self.lam, self.gamma, self.omega0)

    @property
    def model(self):
        return models.two_qubit_common_bath(self.w1, self.w2, self.a1, self.a2)

    def solver(self):
        return SolverConfig(dt=self.dt, t_end=self.t_end,
                            sample_stride=self.sample_stride,
                            depth=self.depth or default_depth(self.lam),
                            convergence_tol=self.convergence_tol)

    def with_gamma(self, gamma):
        return replace(self, gamma=gamma, gammas=(), sweep_gammas=())


# config keys and their parsers; "lambda" is the user-facing spelling of lam
_KEYS = {
    "mode": str, "lambda": float, "gamma": float, "omega0": float,
    "w1": float, "w2": float, "a1": float, "a2": float, "initial": str,
    "dt": float, "t_end": float, "depth": int, "convergence_tol": float,
    "sample_stride": int, "converge": _parse_bool, "out": str,
    "gammas": _parse_floats, "sweep_gammas": _parse_floats,
    "steady_tol": float, "horizon_factor": float, "oracle_dt": float,
    "workers": int,
}


def parse_pairs(text):
    """``key=value`` lines to a dict of raw strings."""
    pairs = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        pairs[key] = value
    return pairs


def build(pairs, base=None):
    """Apply raw string ``pairs`` on top of ``base`` (defaults if None)."""
    values = {}
    for key, text in pairs.items():
        try:
            parsed = _KEYS[key](text)
        except (ValueError, ConfigError) as exc:
            raise ConfigError(f"bad value for {key}: {text!r} ({exc})") from None
        values["lam" if key == "lambda" else key] = parsed
    base = base or RunConfig()
    try:
        return replace(base, **values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def load(path=None, overrides=None):
    pairs = {}
    if path:
        try:
            with open(path) as fh:
                pairs.update(parse_pairs(fh.read()))
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
    pairs.update(overrides or {})
    return build(pairs)


def dumps(cfg):
    lines = []
    for f in fields(cfg):
        value = getattr(cfg, f.name)
        key = "lambda" if f.name == "lam" else f.name
        if isinstance(value, tuple):
            value = ",".join(repr(v) for v in value)
        elif isinstance(value, bool):
            value = "true" if value else "false"
        lines.append(f"{key}={value}")
    return "\n".join(lines) + "\n"


def initial_amplitudes(cfg):
    """(c1, c2) of the configured initial state, or None for the ground pair."""
    name = cfg.initial.strip()
    if "," in name:
        try:
            c1, c2 = (complex(part.strip().replace(" ", "")) for part in name.split(","))
        except ValueError:
            raise ConfigError(f"cannot parse amplitudes {name!r}") from None
        return c1, c2
    try:
        return models.named_amplitudes(name)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def initial_state(cfg):
    amps = initial_amplitudes(cfg)
    if amps is None:
        return models.ground_state_pair()
    try:
        return models.single_excitation_state(*amps)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


PRESETS = ("fig1", "fig2")


def preset_text(name):
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}")
    return resources.files("lorentz_heom").joinpath("presets", f"{name}.cfg").read_text()


def load_preset(name):
    return build(parse_pairs(preset_text(name)))
