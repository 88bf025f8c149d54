"""Run configuration shared by the library and the command line."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

DEFAULT_BOUND = 6
HARD_CEILING = 8
DEFAULT_SEED = 20240611
DEFAULT_ORDERS = (16, 16, 8)

BOUND_ENV = "DFACT_BOUND"
SEED_ENV = "DFACT_SEED"


class BoundExceeded(ValueError):
    """Raised when an exhaustive computation is asked for too large a size."""


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


@dataclass(frozen=True)
class RunConfig:
    bound: int = DEFAULT_BOUND
    orders: tuple[int, ...] = field(default=DEFAULT_ORDERS)
    fmt: str = "text"
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not 0 <= self.bound <= HARD_CEILING:
            raise ValueError(f"enumeration bound must lie in [0, {HARD_CEILING}], got {self.bound}")
        if self.fmt not in ("json", "csv", "text"):
            raise ValueError(f"unknown output format {self.fmt!r}")

    @classmethod
    def from_env(cls, **overrides) -> "RunConfig":
        base = {"bound": _env_int(BOUND_ENV, DEFAULT_BOUND), "seed": _env_int(SEED_ENV, DEFAULT_SEED)}
        base.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**base)


def enumeration_bound() -> int:
    """The bound in force for exhaustive work (environment override aware)."""
    bound = _env_int(BOUND_ENV, DEFAULT_BOUND)
    return min(bound, HARD_CEILING)


def check_bound(n: int, bound: int | None = None) -> None:
    limit = enumeration_bound() if bound is None else bound
    if limit > HARD_CEILING:
        raise BoundExceeded(f"bound {limit} is above the hard ceiling {HARD_CEILING}")
    if n > limit:
        raise BoundExceeded(f"size {n} exceeds the enumeration bound {limit}")
