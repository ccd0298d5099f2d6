"""Closed real intervals used for bound results."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import get_tolerance
from .errors import EmptyInterval

__all__ = ["Interval"]


@dataclass(frozen=True, slots=True)
class Interval:
    """A closed interval [lo, hi].

    Construction raises :class:`EmptyInterval` when lo > hi beyond the
    global tolerance; excursions within tolerance are snapped to a point.
    """

    lo: float
    hi: float

    def __post_init__(self) -> None:
        lo = float(self.lo)
        hi = float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise EmptyInterval(f"interval endpoints must be finite, got [{lo}, {hi}]")
        if lo > hi:
            if lo - hi > get_tolerance():
                raise EmptyInterval(f"lo={lo} exceeds hi={hi}")
            mid = 0.5 * (lo + hi)
            lo = hi = mid
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, value: float, tol: float | None = None) -> bool:
        t = get_tolerance() if tol is None else tol
        return self.lo - t <= value <= self.hi + t

    def contains_interval(self, other: "Interval", tol: float | None = None) -> bool:
        t = get_tolerance() if tol is None else tol
        return self.lo - t <= other.lo and other.hi <= self.hi + t

    def intersect(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def clamped(self, lo: float = 0.0, hi: float = 1.0) -> "Interval":
        """Intersection with [lo, hi], for probability-valued quantities."""
        return Interval(max(self.lo, lo), min(self.hi, hi))

    def as_tuple(self) -> tuple[float, float]:
        return (self.lo, self.hi)

    def __iter__(self):
        yield self.lo
        yield self.hi

    def __str__(self) -> str:
        return f"[{self.lo:.6g}, {self.hi:.6g}]"
