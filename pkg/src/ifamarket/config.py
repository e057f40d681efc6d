"""Run configuration shared by the CLI subcommands.

A config serializes to a flat JSON object; every output file echoes the
fully resolved form in its metadata header, and feeding that JSON back
through ``--config`` reproduces the output byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, replace
from typing import Optional

from .analytics import (
    DEFAULT_DAYS_PER_YEAR,
    DEFAULT_SCALE,
    DEFAULT_TICKS_PER_DAY,
    DEFAULT_WINDOW_DAYS,
)
from .market import MAX_WINDOW_WIDTH, WindowState, window_from_literal
from .regulation import RegulationPolicy

_FIELDS = (
    "rule",
    "w",
    "init",
    "policy",
    "ticks",
    "ticks_per_day",
    "scale",
    "window_days",
    "days_per_year",
)


@dataclass(frozen=True)
class RunConfig:
    rule: int = 54
    w: int = 22
    init: str = "alternating_up_first"
    policy: str = "none"
    ticks: Optional[int] = None  # None = transient + one full cycle
    ticks_per_day: int = DEFAULT_TICKS_PER_DAY
    scale: float = DEFAULT_SCALE
    window_days: int = DEFAULT_WINDOW_DAYS
    days_per_year: int = DEFAULT_DAYS_PER_YEAR

    def validate(self) -> "RunConfig":
        if not 0 <= self.rule <= 255:
            raise ValueError(f"rule must be in [0, 255], got {self.rule}")
        if not 1 <= self.w <= MAX_WINDOW_WIDTH:
            raise ValueError(
                f"w must be in [1, {MAX_WINDOW_WIDTH}], got {self.w}"
            )
        self.initial_window()  # validates the literal against w
        self.regulation_policy()  # validates the policy literal
        if self.ticks is not None and self.ticks < 0:
            raise ValueError(f"ticks must be >= 0, got {self.ticks}")
        if self.ticks_per_day < 1:
            raise ValueError(f"ticks_per_day must be >= 1, got {self.ticks_per_day}")
        if not self.scale > 0:
            raise ValueError(f"scale must be > 0, got {self.scale}")
        if self.window_days < 2:
            raise ValueError(f"window_days must be >= 2, got {self.window_days}")
        if self.days_per_year < 1:
            raise ValueError(f"days_per_year must be >= 1, got {self.days_per_year}")
        return self

    def initial_window(self) -> WindowState:
        return window_from_literal(self.init, self.w)

    def regulation_policy(self) -> RegulationPolicy:
        return RegulationPolicy.parse(self.policy)

    def with_overrides(self, **overrides) -> "RunConfig":
        filtered = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **filtered)

    def to_json(self) -> str:
        """Canonical one-line JSON (sorted keys)."""
        return json.dumps(asdict(self), sort_keys=True, separators=(", ", ": "))

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("config JSON must be an object")
        unknown = set(data) - set(_FIELDS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        with open(path) as handle:
            return cls.from_json(handle.read())
