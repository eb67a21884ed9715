"""Flat key-value run configuration (a TOML subset).

Only top-level ``key = value`` pairs with numbers, booleans and strings are
used; anything else is rejected.
"""

from __future__ import annotations

import dataclasses
import math
import sys
from dataclasses import dataclass, fields

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    # system
    g: float | None = None
    kappa: float | None = None
    delta_a: float | None = None
    delta_h: float | None = None
    delta_v: float | None = None
    epsilon: float | None = None
    # pulse
    T: float | None = None
    Delta: float | None = None
    polarization: str | None = None
    phi_target: float | None = None
    theta: float | None = None
    # grid and output
    points_per_sigma: int | None = None
    halfwidth_sigmas: int | None = None
    apply_appendix_phase: bool | None = None
    workers: int | None = None
    # sweeps
    g2: float | None = None
    Delta_min: float | None = None
    Delta_max: float | None = None
    T_min: float | None = None
    T_max: float | None = None
    g_min: float | None = None
    g_max: float | None = None
    n_points: int | None = None
    # oracle check
    seed: int | None = None
    draws: int | None = None
    tolerance: float | None = None
    # scattering
    t1: float | None = None
    t2: float | None = None
    kl: float | None = None
    c_over_l: float | None = None

    @classmethod
    def keys(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        unknown = set(data) - set(cls.keys())
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        cfg = cls()
        for f in fields(cls):
            if f.name not in data:
                continue
            v = data[f.name]
            if isinstance(v, (dict, list)):
                raise ConfigError(f"{f.name}: only scalar values are allowed")
            kind = f.type.split(" | ")[0]
            try:
                if kind == "float":
                    if isinstance(v, bool):
                        raise TypeError
                    v = float(v)
                elif kind == "int":
                    if isinstance(v, bool) or int(v) != v:
                        raise TypeError
                    v = int(v)
                elif kind == "bool":
                    if not isinstance(v, bool):
                        raise TypeError
                else:
                    v = str(v)
            except (TypeError, ValueError):
                raise ConfigError(f"{f.name}: expected {kind}, got {v!r}") from None
            setattr(cfg, f.name, v)
        return cfg

    @classmethod
    def from_toml(cls, text: str) -> "RunConfig":
        try:
            data = tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(str(exc)) from None
        return cls.from_mapping(data)

    @classmethod
    def load(cls, path) -> "RunConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_toml(fh.read())

    def to_dict(self) -> dict:
        return {k: v for k, v in dataclasses.asdict(self).items() if v is not None}

    def to_toml(self) -> str:
        lines = []
        for k, v in self.to_dict().items():
            if isinstance(v, bool):
                s = "true" if v else "false"
            elif isinstance(v, float):
                s = _toml_float(v)
            elif isinstance(v, int):
                s = str(v)
            else:
                s = '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
            lines.append(f"{k} = {s}")
        return "\n".join(lines) + "\n"

    def merged(self, overrides: "RunConfig") -> "RunConfig":
        """Copy of ``self`` with every non-``None`` field of ``overrides`` applied."""
        return dataclasses.replace(self, **overrides.to_dict())

    def get(self, name: str, default):
        v = getattr(self, name)
        return default if v is None else v


def _toml_float(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    s = repr(x)
    return s if any(c in s for c in ".en") else s + ".0"
