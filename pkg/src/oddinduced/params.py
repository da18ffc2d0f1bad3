from __future__ import annotations

from dataclasses import dataclass, fields, replace
from fractions import Fraction
from typing import Any

from .errors import PreconditionError


@dataclass(frozen=True)
class Params:
    """Constants of the clustering lemma and the matching pipeline.

    ``invariant_ratio`` is the fraction of deleted vertices that must land in
    X; ``scan_factor`` is the degree ratio used in the case-1 edge scan;
    ``v1_factor`` bounds ``|V1|`` against ``|L|`` (kept for analysis, not run).
    """

    beta: Fraction = Fraction(1, 20)
    delta: Fraction = Fraction(1, 14)
    epsilon: Fraction = Fraction(1, 10)
    T: int = 10000
    invariant_ratio: Fraction = Fraction(1, 40)
    scan_factor: int = 44
    v1_factor: int = 12

    def __post_init__(self) -> None:
        for name in ("beta", "delta", "epsilon", "invariant_ratio"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not 0 < self.beta < Fraction(1, 8):
            raise PreconditionError(f"beta must lie in (0, 1/8), got {self.beta}")
        if not 0 < self.delta < 1:
            raise PreconditionError(f"delta must lie in (0, 1), got {self.delta}")
        if not 0 < self.epsilon < 1:
            raise PreconditionError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if int(self.T) != self.T or self.T < 320:
            raise PreconditionError(f"T must be an integer >= 320, got {self.T}")
        if not 0 < self.invariant_ratio < 1:
            raise PreconditionError("invariant_ratio must lie in (0, 1)")
        if self.scan_factor < 1 or self.v1_factor < 1:
            raise PreconditionError("scan_factor and v1_factor must be positive")

    def with_overrides(self, overrides: dict[str, Any]) -> Params:
        known = {f.name: f.type for f in fields(self)}
        clean: dict[str, Any] = {}
        for key, raw in overrides.items():
            if key not in known:
                raise PreconditionError(f"unknown parameter {key!r}")
            try:
                clean[key] = int(raw) if key in ("T", "scan_factor", "v1_factor") else Fraction(raw)
            except (TypeError, ValueError, ZeroDivisionError):
                raise PreconditionError(f"bad value for {key}: {raw!r}") from None
        return replace(self, **clean)


DEFAULT_PARAMS = Params()
