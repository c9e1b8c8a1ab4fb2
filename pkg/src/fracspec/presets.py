"""Run configurations: JSON ingestion, validation and the named presets."""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConfigError, UnknownPreset

SPECTRUM_SOURCES = ("cycles", "s-iterate", "explicit")


@dataclass(frozen=True)
class Caps:
    columns: int = 2 ** 16         # N^n for A_n
    gram_points: int = 4096        # points in a Gram matrix


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI command needs. Built by ``preset`` or ``from_dict``."""

    dim: int
    R: tuple
    B: tuple
    L: tuple | None = None
    r0: float = 1.0
    n_max: int = 8
    depth: int = 6
    tail_tolerance: float = 1e-12
    caps: Caps = field(default_factory=Caps)
    output: str = "."
    spectrum_source: str = "cycles"
    spectrum_points: tuple = ()
    queries: tuple = ()
    z_range: int = 10
    riesz_nmax: int = 5
    seed: int = 0
    name: str = ""

    def replace(self, **kw):
        return dataclasses.replace(self, **kw)


def _int(v, key):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{key}: expected an integer, got {v!r}")
    return v


def _rational(v, key):
    if isinstance(v, bool):
        raise ConfigError(f"{key}: expected a number, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError:
            pass
    raise ConfigError(f"{key}: expected an integer or 'p/q' string, got {v!r}")


def _vectors(raw, dim, key, conv=_int):
    if not isinstance(raw, (list, tuple)):
        raise ConfigError(f"{key}: expected a list")
    out = []
    for i, v in enumerate(raw):
        if dim == 1 and not isinstance(v, (list, tuple)):
            v = [v]
        if not isinstance(v, (list, tuple)) or len(v) != dim:
            raise ConfigError(f"{key}[{i}]: expected {dim} coordinates")
        out.append(tuple(conv(c, f"{key}[{i}]") for c in v))
    return tuple(out)


def _matrix(raw, dim):
    if dim == 1 and not isinstance(raw, (list, tuple)):
        raw = [[raw]]
    if not isinstance(raw, (list, tuple)) or len(raw) != dim:
        raise ConfigError(f"R: expected a {dim}x{dim} matrix")
    return _vectors(raw, dim, "R")


def _float(v, key, positive=False):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {v!r}")
    if positive and not v > 0:
        raise ConfigError(f"{key}: must be positive")
    return float(v)


def _count(v, key, minimum=0):
    v = _int(v, key)
    if v < minimum:
        raise ConfigError(f"{key}: must be >= {minimum}")
    return v


def from_dict(d: dict) -> RunConfig:
    """Validate a JSON-like dict. Unknown keys and bad values raise ``ConfigError``."""
    if not isinstance(d, dict):
        raise ConfigError("config must be a JSON object")
    known = {f.name for f in dataclasses.fields(RunConfig)}
    unknown = sorted(set(d) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    for key in ("dim", "R", "B"):
        if key not in d:
            raise ConfigError(f"missing required key {key!r}")
    dim = _count(d["dim"], "dim", 1)
    kw = dict(dim=dim, R=_matrix(d["R"], dim), B=_vectors(d["B"], dim, "B"))
    if d.get("L") is not None:
        kw["L"] = _vectors(d["L"], dim, "L")
    if "r0" in d:
        kw["r0"] = _float(d["r0"], "r0", positive=True)
    if "tail_tolerance" in d:
        kw["tail_tolerance"] = _float(d["tail_tolerance"], "tail_tolerance", positive=True)
    for key, lo in (("n_max", 1), ("depth", 0), ("z_range", 1), ("riesz_nmax", 1), ("seed", 0)):
        if key in d:
            kw[key] = _count(d[key], key, lo)
    if "caps" in d:
        c = d["caps"]
        if not isinstance(c, dict):
            raise ConfigError("caps: expected an object")
        bad = sorted(set(c) - {f.name for f in dataclasses.fields(Caps)})
        if bad:
            raise ConfigError(f"unknown caps keys: {', '.join(bad)}")
        kw["caps"] = Caps(**{k: _count(v, f"caps.{k}", 1) for k, v in c.items()})
    for key in ("output", "name"):
        if key in d:
            if not isinstance(d[key], str):
                raise ConfigError(f"{key}: expected a string")
            kw[key] = d[key]
    if "spectrum_source" in d:
        if d["spectrum_source"] not in SPECTRUM_SOURCES:
            raise ConfigError(f"spectrum_source must be one of {SPECTRUM_SOURCES}")
        kw["spectrum_source"] = d["spectrum_source"]
    if "spectrum_points" in d:
        kw["spectrum_points"] = _vectors(d["spectrum_points"], dim, "spectrum_points", _rational)
    if "queries" in d:
        kw["queries"] = _vectors(d["queries"], dim, "queries", _rational)
    cfg = RunConfig(**kw)
    if cfg.spectrum_source == "explicit" and not cfg.spectrum_points:
        raise ConfigError("spectrum_source 'explicit' needs spectrum_points")
    if cfg.spectrum_source != "explicit" and cfg.L is None:
        raise ConfigError(f"spectrum_source {cfg.spectrum_source!r} needs L")
    return cfg


def load_config(path) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    return from_dict(data)


def to_dict(cfg: RunConfig) -> dict:
    """JSON-ready form; rationals become 'p/q' strings."""
    def rat(p):
        return [int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}" for c in p]

    d = dataclasses.asdict(cfg)
    d["R"] = [list(r) for r in cfg.R]
    d["B"] = [list(b) for b in cfg.B]
    d["L"] = None if cfg.L is None else [list(l) for l in cfg.L]
    d["spectrum_points"] = [rat(p) for p in cfg.spectrum_points]
    d["queries"] = [rat(p) for p in cfg.queries]
    return d


_PRESETS = {
    "quarter-cantor": dict(dim=1, R=4, B=[0, 2], L=[0, 1], depth=8),
    "cantor3": dict(dim=1, R=3, B=[0, 2], L=[0, 1]),
    "cantor3-lacunary": dict(dim=1, R=3, B=[0, 2], L=[0, 1], depth=10,
                             spectrum_source="s-iterate"),
    "remark18": dict(dim=2, R=[[2, 0], [1, 2]], B=[[0, 0], [1, 0], [0, 3], [1, 3]],
                     L=[[0, 0], [1, 0], [0, 1], [1, 1]], depth=4, n_max=6,
                     queries=[[0, "2/3"]]),
}


def preset_names():
    return sorted(_PRESETS)


def preset(name: str) -> RunConfig:
    if name not in _PRESETS:
        raise UnknownPreset(f"unknown preset {name!r}; known: {', '.join(preset_names())}")
    return from_dict(dict(_PRESETS[name], name=name))
