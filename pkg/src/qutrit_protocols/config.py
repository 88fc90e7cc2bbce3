"""Campaign configuration: a single JSON document, overridable from the command line."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path

from . import paper_data
from .physical import NoiseConfig, Setting

PROTOCOLS = ("ss", "dba", "ccp")
FORMATS = ("csv", "json")
_TOP_KEYS = {"protocol", "noise", "settings", "seed", "format", "out"}
_NOISE_KEYS = {"dark_prob", "click_prob", "drift_sigma", "triggers"}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    protocol: str = "ss"
    noise: dict = field(default_factory=dict)
    settings: object = "table"
    seed: int = 0
    format: str = "csv"
    out: str | None = None

    def __post_init__(self):
        if self.protocol not in PROTOCOLS:
            raise ConfigError(f"protocol must be one of {PROTOCOLS}, got {self.protocol!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")
        unknown = set(self.noise) - _NOISE_KEYS
        if unknown:
            raise ConfigError(f"unknown noise keys: {sorted(unknown)}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError(f"seed must be a non-negative integer, got {self.seed!r}")
        try:
            self.noise_config()
            self.resolved_settings()
        except ConfigError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_dict(cls, data: dict) -> RunConfig:
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(data) - _TOP_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path: str | Path) -> RunConfig:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
        return cls.from_dict(data)

    def noise_config(self) -> NoiseConfig:
        kw = dict(self.noise)
        if "dark_prob" in kw:
            kw["dark_prob"] = tuple(kw["dark_prob"])
        return NoiseConfig(seed=self.seed, **kw)

    def resolved_settings(self) -> list[Setting]:
        spec = self.settings
        if spec == "table":
            return table_settings(self.protocol)
        if spec == "exhaustive":
            return exhaustive_settings(self.protocol)
        if not isinstance(spec, list) or not spec:
            raise ConfigError("settings must be 'table', 'exhaustive' or a non-empty list")
        return [_parse_setting(self.protocol, s) for s in spec]

    def echo(self) -> dict:
        noise = self.noise_config()
        return {
            "protocol": self.protocol,
            "noise": {
                "dark_prob": list(noise.dark_prob),
                "click_prob": noise.click_prob,
                "drift_sigma": noise.drift_sigma,
                "triggers": noise.triggers,
            },
            "settings": self.settings,
            "seed": self.seed,
            "format": self.format,
        }


def _parse_setting(protocol: str, raw) -> Setting:
    if protocol == "ccp":
        return Setting("ccp", tuple(raw))
    flat = list(itertools.chain.from_iterable(raw)) if raw and isinstance(raw[0], list) else list(raw)
    if len(flat) != 6:
        raise ConfigError(f"setting {raw!r} needs six values a0 a1 b0 b1 c0 c1")
    return Setting(protocol, (flat[0:2], flat[2:4], flat[4:6]))


def table_settings(protocol: str) -> list[Setting]:
    if protocol == "ccp":
        return [Setting("ccp", row[0]) for row in paper_data.CCP_TABLE]
    table = paper_data.SECRET_SHARING_TABLE if protocol == "ss" else paper_data.DBA_TABLE
    return [Setting(protocol, row[:3]) for row in table]


def exhaustive_settings(protocol: str) -> list[Setting]:
    if protocol == "ccp":
        return [Setting("ccp", t) for t in itertools.product(range(9), repeat=3) if sum(t) % 3 == 0]
    pairs = list(itertools.product(range(3), repeat=2))
    relay = pairs if protocol == "ss" else list(itertools.product(range(2), range(3)))
    return [Setting(protocol, (a, b, c)) for a in pairs for b in relay for c in relay]
