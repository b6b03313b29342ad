"""Closed intervals over the naturals extended with ``INF``.

Intervals are immutable. ``intersect`` returns ``None`` for the empty case;
``subtract`` returns an :class:`IntervalSet` because a difference may split.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

from .errors import MalformedInterval

INF = math.inf

TimePoint = Union[int, float]


def _check_point(value, name: str, allow_inf: bool) -> None:
    if allow_inf and value == INF:
        return
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise MalformedInterval(f"{name} must be a natural number, got {value!r}")


def format_point(t: TimePoint) -> str:
    return "INF" if t == INF else str(t)


@dataclass(frozen=True, order=True)
class Interval:
    lo: int
    hi: TimePoint

    def __post_init__(self):
        _check_point(self.lo, "lower bound", allow_inf=False)
        _check_point(self.hi, "upper bound", allow_inf=True)
        if self.lo > self.hi:
            raise MalformedInterval(f"[{self.lo},{format_point(self.hi)}] has lo > hi")

    @property
    def is_instant(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, t: TimePoint) -> bool:
        return self.lo <= t <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo},{format_point(self.hi)}]"


def interval_new(lo: int, hi: TimePoint) -> Interval:
    return Interval(lo, hi)


def hull(a: Interval, b: Interval) -> Interval:
    """Smallest interval containing both ``a`` and ``b``."""
    return Interval(min(a.lo, b.lo), max(a.hi, b.hi))


def intersect(a: Interval, b: Interval) -> Optional[Interval]:
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo > hi:
        return None
    return Interval(lo, hi)


def is_subset(a: Interval, b: Interval) -> bool:
    return b.lo <= a.lo and a.hi <= b.hi


def subtract(a: Interval, b: Interval) -> "IntervalSet":
    """Set difference ``a \\ b`` as a canonical interval set (0, 1 or 2 parts)."""
    if intersect(a, b) is None:
        return IntervalSet((a,))
    parts = []
    if a.lo < b.lo:
        parts.append(Interval(a.lo, b.lo - 1))
    if b.hi < a.hi:
        parts.append(Interval(b.hi + 1, a.hi))
    return IntervalSet(tuple(parts))


@dataclass(frozen=True)
class IntervalSet:
    """A union of intervals kept sorted, disjoint and non-adjacent."""

    parts: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", _canonical(self.parts))

    @classmethod
    def of(cls, *intervals: Interval) -> "IntervalSet":
        return cls(tuple(intervals))

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __contains__(self, t: TimePoint) -> bool:
        return any(t in p for p in self.parts)

    def hull(self) -> Optional[Interval]:
        if not self.parts:
            return None
        return Interval(self.parts[0].lo, self.parts[-1].hi)

    def __str__(self) -> str:
        return "{" + ", ".join(str(p) for p in self.parts) + "}"


def _canonical(parts: Iterable[Interval]) -> tuple:
    merged: list[Interval] = []
    for p in sorted(parts):
        # adjacent intervals ([1,2],[3,4]) merge as well as overlapping ones
        if merged and p.lo <= merged[-1].hi + 1:
            last = merged[-1]
            merged[-1] = Interval(last.lo, max(last.hi, p.hi))
        else:
            merged.append(p)
    return tuple(merged)
