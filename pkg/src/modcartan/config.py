"""Size caps.

The algebra-size cap can be overridden with the ``MODCARTAN_SIZE_CAP``
environment variable (a single integer).
"""
from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import CapacityError

SIZE_CAP_ENV = "MODCARTAN_SIZE_CAP"


@dataclass(frozen=True)
class Limits:
    algebra_dim: int = 4096
    hc1_dim: int = 30
    wedge3_dim: int = 200_000


def _from_env() -> Limits:
    raw = os.environ.get(SIZE_CAP_ENV)
    if raw is None:
        return Limits()
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"{SIZE_CAP_ENV} must be an integer, got {raw!r}") from exc
    return Limits(algebra_dim=cap)


_limits = _from_env()


def limits() -> Limits:
    return _limits


def set_limits(**changes) -> Limits:
    """Replace individual caps; returns the previous limits."""
    global _limits
    old = _limits
    _limits = replace(_limits, **changes)
    return old


def check_cap(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise CapacityError(f"{what}: size {size} exceeds cap {cap}")
