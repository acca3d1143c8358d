"""Run configuration shared by the command-line subcommands.

Configs come from a YAML/JSON file, from flags, or both (flags win). Complex
numbers are written ``re+imi`` (``0.5+0.2i``, ``-0.3i``, ``2``) or as a
``[re, im]`` pair.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import yaml

from .circle import DEFAULT_GRID_SIZE, make_grid
from .inner import ONE, InnerFunctionSpec
from .oracle import DEFAULT_DELTA, DEFAULT_MAX_ITER, DEFAULT_TOL, DEFAULT_TRUNCATION


class ConfigError(ValueError):
    """Invalid configuration value or file."""


_COMPLEX_RE = re.compile(
    r"""^(?:
        (?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
        (?P<im1>[+-](?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)?
      |
        (?P<im2>[+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)
    )$""",
    re.VERBOSE,
)


def parse_complex(token) -> complex:
    if isinstance(token, bool):
        raise ConfigError(f"cannot parse complex number from token {token!r}")
    if isinstance(token, (int, float, complex)):
        value = complex(token)
    elif isinstance(token, (list, tuple)) and len(token) == 2:
        try:
            value = complex(float(token[0]), float(token[1]))
        except (TypeError, ValueError):
            raise ConfigError(f"cannot parse complex number from token {token!r}") from None
    elif isinstance(token, str):
        text = token.strip().replace(" ", "")
        if not _COMPLEX_RE.match(text):
            raise ConfigError(f"cannot parse complex number from token {token!r}")
        value = complex(text[:-1] + "j" if text.endswith("i") else text)
    else:
        raise ConfigError(f"cannot parse complex number from token {token!r}")
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ConfigError(f"non-finite complex number {token!r}")
    return value


def format_complex(value: complex) -> str:
    value = complex(value)
    im = value.imag
    sign = "-" if math.copysign(1.0, im) < 0 else "+"
    return f"{value.real!r}{sign}{abs(im)!r}i"


def parse_complex_list(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    return tuple(parse_complex(tok) for tok in text.split(","))


def _finite(name, value):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be a number, got {value!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"{name} must be finite, got {value!r}")
    return value


def _integer(name, value):
    if isinstance(value, bool) or isinstance(value, float) and not value.is_integer():
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be an integer, got {value!r}") from None


@dataclass(frozen=True)
class LambdaSweep:
    start: float
    stop: float
    steps: int
    phase: float = 0.0

    def __post_init__(self):
        start = _finite("lambda_sweep.start", self.start)
        stop = _finite("lambda_sweep.stop", self.stop)
        steps = _integer("lambda_sweep.steps", self.steps)
        phase = _finite("lambda_sweep.phase", self.phase)
        if steps < 2:
            raise ConfigError(f"lambda_sweep.steps must be >= 2, got {steps}")
        if start < 0 or stop < start:
            raise ConfigError(f"invalid |lambda| range [{start}, {stop}]")
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "stop", stop)
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "phase", phase)

    def moduli(self) -> list[float]:
        n = self.steps - 1
        span = self.stop - self.start
        values = [self.start + span * i / n for i in range(n)]
        return values + [self.stop]


@dataclass(frozen=True)
class SolverOptions:
    max_iter: int = DEFAULT_MAX_ITER
    tol: float = DEFAULT_TOL
    delta: float = DEFAULT_DELTA

    def __post_init__(self):
        max_iter = _integer("solver.max_iter", self.max_iter)
        tol = _finite("solver.tol", self.tol)
        delta = _finite("solver.delta", self.delta)
        if max_iter < 0 or tol < 0 or delta <= 0:
            raise ConfigError("solver options must be nonnegative (delta positive)")
        object.__setattr__(self, "max_iter", max_iter)
        object.__setattr__(self, "tol", tol)
        object.__setattr__(self, "delta", delta)


_F_KEYS = {"kind", "phase", "power", "zeros", "scale", "mobius_point", "coeffs"}


@dataclass(frozen=True)
class RunConfig:
    z: complex = 0j
    lam: complex = 0j
    lambda_sweep: LambdaSweep | None = None
    phi: InnerFunctionSpec = ONE
    grid_size: int = DEFAULT_GRID_SIZE
    truncation: int = DEFAULT_TRUNCATION
    solver: SolverOptions = field(default_factory=SolverOptions)
    output_format: str = "csv"
    output_path: str | None = None
    f: dict | None = None

    def __post_init__(self):
        object.__setattr__(self, "z", parse_complex(self.z))
        object.__setattr__(self, "lam", parse_complex(self.lam))
        grid_size = _integer("grid_size", self.grid_size)
        make_grid(grid_size)
        object.__setattr__(self, "grid_size", grid_size)
        object.__setattr__(self, "truncation", _integer("truncation", self.truncation))
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"output.format must be csv or json, got {self.output_format!r}")
        if self.f is not None:
            unknown = set(self.f) - _F_KEYS
            if unknown:
                raise ConfigError(f"unknown f keys: {sorted(unknown)}")

    def to_dict(self) -> dict:
        out = {
            "z": format_complex(self.z),
            "lambda": format_complex(self.lam),
            "phi": self.phi.to_dict(),
            "grid_size": self.grid_size,
            "truncation": self.truncation,
            "solver": {
                "max_iter": self.solver.max_iter,
                "tol": self.solver.tol,
                "delta": self.solver.delta,
            },
            "output": {"format": self.output_format, "path": self.output_path},
        }
        if self.lambda_sweep is not None:
            s = self.lambda_sweep
            out["lambda_sweep"] = {
                "start": s.start, "stop": s.stop, "steps": s.steps, "phase": s.phase,
            }
        if self.f is not None:
            out["f"] = dict(self.f)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a mapping")
        # Accept a JSON output document; its "config" entry is the run config.
        if "config" in data and "records" in data:
            data = data["config"]
        known = {
            "z", "lambda", "lambda_sweep", "phi", "grid_size", "truncation",
            "solver", "output", "f",
        }
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        kwargs = {}
        if "z" in data:
            kwargs["z"] = data["z"]
        if "lambda" in data:
            kwargs["lam"] = data["lambda"]
        if data.get("lambda_sweep") is not None:
            sweep = data["lambda_sweep"]
            try:
                kwargs["lambda_sweep"] = LambdaSweep(
                    sweep["start"], sweep["stop"], sweep["steps"], sweep.get("phase", 0.0)
                )
            except (KeyError, TypeError):
                raise ConfigError("lambda_sweep needs start, stop and steps") from None
        if "phi" in data:
            kwargs["phi"] = InnerFunctionSpec.from_dict(data["phi"])
        for key in ("grid_size", "truncation"):
            if key in data:
                kwargs[key] = data[key]
        if data.get("solver") is not None:
            unknown = set(data["solver"]) - {"max_iter", "tol", "delta"}
            if unknown:
                raise ConfigError(f"unknown solver keys: {sorted(unknown)}")
            kwargs["solver"] = SolverOptions(**data["solver"])
        if data.get("output") is not None:
            out = data["output"]
            if "format" in out:
                kwargs["output_format"] = out["format"]
            if "path" in out:
                kwargs["output_path"] = out["path"]
        if data.get("f") is not None:
            kwargs["f"] = dict(data["f"])
        return cls(**kwargs)

    def with_overrides(self, **changes) -> "RunConfig":
        changes = {k: v for k, v in changes.items() if v is not None}
        names = {f.name for f in fields(self)}
        bad = set(changes) - names
        if bad:
            raise ConfigError(f"unknown overrides {sorted(bad)}")
        return replace(self, **changes)


def load_config(path: str | Path) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed config file {path}: {exc}") from None
    return RunConfig.from_dict(data or {})
