"""Session settings shared by the command line and the verification suites."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Optional, Union

from .linalg import is_prime

CONFIG_ENV = "VERDIER_CONFIG"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SessionConfig:
    p: int = 101
    s: int = 3                 # equal consecutive values needed for stabilization
    cap: int = 24              # largest truncation depth tried
    margin: int = 4            # settling margin for periodic frames
    dminus_margin: int = 6     # extra resolution depth for module-category Homs
    seed: int = 0
    output: str = "text"       # "text" or "json"

    def __post_init__(self):
        if not is_prime(self.p):
            raise ConfigError(f"p = {self.p} is not prime")
        if self.s < 1:
            raise ConfigError("stabilization window s must be at least 1")
        if self.cap < self.s:
            raise ConfigError("cap must be at least s")
        if self.margin < 0 or self.dminus_margin < 0:
            raise ConfigError("margins must be non-negative")
        if self.output not in ("text", "json"):
            raise ConfigError(f"output must be 'text' or 'json', not {self.output!r}")

    def updated(self, **changes) -> "SessionConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_json() + "\n")

    @classmethod
    def from_dict(cls, data: dict) -> "SessionConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**data)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "SessionConfig":
        try:
            data = json.loads(Path(path).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError(f"config {path}: expected a JSON object")
        return cls.from_dict(data)

    @classmethod
    def default(cls, path: Optional[Union[str, Path]] = None) -> "SessionConfig":
        """Settings from ``path``, else from the file named by ``VERDIER_CONFIG``."""
        path = path or os.environ.get(CONFIG_ENV)
        return cls.load(path) if path else cls()
