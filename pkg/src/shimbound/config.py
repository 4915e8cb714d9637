"""Pipeline configuration, with defaults overridable from a JSON file."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace
from fractions import Fraction
from pathlib import Path

from .arith import DEFAULT_TRIAL_LIMIT
from .intervals import DEFAULT_PREC, PRECISION_CAP

CONFIG_ENV = "SHIMBOUND_CONFIG"


@dataclass(frozen=True)
class Config:
    # the absolute constant in the least-prime bound has no published value;
    # 40 is a conservative placeholder
    A1: str = "40"
    delta_k: str | None = None  # None: use the card's value
    effort_budget: int | None = None
    trial_limit: int = DEFAULT_TRIAL_LIMIT
    precision: int = DEFAULT_PREC
    precision_cap: int = PRECISION_CAP
    list_limit: int = 10**6
    enumeration_cap: int = 12
    split_search_limit: int = 10**6
    q_search_limit: int = 10**5
    digit_threshold: int = 10**4
    full_values: bool = False
    factor_mode: str = "none"  # "none" or "best_effort"
    workers: int = 1

    def __post_init__(self):
        if Fraction(self.A1) <= 1:
            raise ValueError("A1 must exceed 1")
        if self.delta_k is not None and Fraction(self.delta_k) <= 0:
            raise ValueError("delta_k must be positive")
        if self.precision < 53 or self.precision_cap < self.precision:
            raise ValueError("precision must be >= 53 bits and <= the cap")
        if self.list_limit < 2:
            raise ValueError("list limit must be at least 2")
        if not 1 <= self.enumeration_cap <= 20:
            raise ValueError("enumeration cap must lie in [1, 20]")
        if self.factor_mode not in ("none", "best_effort"):
            raise ValueError("factor_mode must be 'none' or 'best_effort'")
        if self.workers < 1:
            raise ValueError("workers must be positive")

    def A1_fraction(self) -> Fraction:
        return Fraction(self.A1)

    def as_dict(self) -> dict:
        return {k: (str(v) if isinstance(v, int) and not isinstance(v, bool) else v) for k, v in asdict(self).items()}

    def with_overrides(self, **kw) -> "Config":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def load_config(path: str | Path | None = None) -> Config:
    """Defaults, then the JSON file at ``path`` or $SHIMBOUND_CONFIG."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return Config()
    data = json.loads(Path(path).read_text())
    known = {f.name for f in fields(Config)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return Config(**data)
