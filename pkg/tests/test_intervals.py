import itertools

import pytest
from hypothesis import given, strategies as st

from chronomind import (
    INF, Interval, IntervalSet, MalformedInterval, hull, interval_new,
    intersect, is_subset, subtract,
)

HORIZON = 20
ENDS = range(13)
ALL = [Interval(lo, hi) for lo in ENDS for hi in list(range(lo, 13)) + [INF]]


def points(I, horizon=HORIZON) -> set:
    if I is None:
        return set()
    top = horizon if I.hi == INF else I.hi
    return set(range(I.lo, top + 1))


def set_points(s: IntervalSet) -> set:
    out = set()
    for part in s:
        out |= points(part)
    return out


def test_construction():
    assert interval_new(1, 3) == Interval(1, 3)
    assert interval_new(2, 2).is_instant
    assert str(interval_new(3, INF)) == "[3,INF]"
    for lo, hi in [(5, 3), (-1, 2), (INF, INF), (1.5, 2)]:
        with pytest.raises(MalformedInterval):
            interval_new(lo, hi)


@pytest.mark.parametrize("a, b, want", [
    ((1, 3), (5, 7), (1, 7)),
    ((2, 4), (2, 4), (2, 4)),
    ((1, 2), (3, INF), (1, INF)),
])
def test_hull_examples(a, b, want):
    assert hull(Interval(*a), Interval(*b)) == Interval(*want)


def test_intersect_examples():
    assert intersect(Interval(1, 5), Interval(3, 9)) == Interval(3, 5)
    assert intersect(Interval(1, 2), Interval(4, 6)) is None
    assert intersect(Interval(0, INF), Interval(7, 9)) == Interval(7, 9)


def test_subtract_examples():
    assert list(subtract(Interval(3, 9), Interval(5, 6))) == [Interval(3, 4), Interval(7, 9)]
    assert list(subtract(Interval(3, 9), Interval(3, 9))) == []
    assert list(subtract(Interval(3, INF), Interval(5, 7))) == [Interval(3, 4), Interval(8, INF)]
    assert list(subtract(Interval(3, 9), Interval(0, INF))) == []


def test_is_subset_examples():
    assert is_subset(Interval(2, 3), Interval(1, 5))
    assert not is_subset(Interval(1, 5), Interval(2, 3))
    assert is_subset(Interval(2, INF), Interval(2, INF))


def test_pointwise_agreement_exhaustive():
    for a, b in itertools.product(ALL, repeat=2):
        pa, pb = points(a), points(b)
        h = hull(a, b)
        assert points(h) == set(range(min(pa | pb), max(pa | pb) + 1))
        assert points(intersect(a, b)) == pa & pb
        assert set_points(subtract(a, b)) == pa - pb
        assert is_subset(a, b) == (pa <= pb)


def test_hull_is_minimal():
    for a, b in itertools.product(ALL[:60], repeat=2):
        h = hull(a, b)
        assert is_subset(a, h) and is_subset(b, h)
        if h.lo < h.hi and h.hi != INF:
            assert not (is_subset(a, Interval(h.lo + 1, h.hi)) and is_subset(b, Interval(h.lo + 1, h.hi)))
            assert not (is_subset(a, Interval(h.lo, h.hi - 1)) and is_subset(b, Interval(h.lo, h.hi - 1)))


intervals = st.builds(
    lambda lo, span, open_: Interval(lo, INF if open_ else lo + span),
    st.integers(0, 30), st.integers(0, 30), st.booleans(),
)


@given(intervals, intervals, intervals)
def test_hull_laws(a, b, c):
    assert hull(a, b) == hull(b, a)
    assert hull(a, a) == a
    assert hull(hull(a, b), c) == hull(a, hull(b, c))


@given(intervals, intervals)
def test_partition_when_contained(a, b):
    inner = intersect(a, b)
    if inner is None or inner != b:
        return
    # generated finite endpoints stay below 61, so horizon 100 sees every piece
    pieces = [points(p, 100) for p in subtract(a, b)] + [points(b, 100)]
    assert set().union(*pieces) == points(a, 100)
    assert sum(len(p) for p in pieces) == len(points(a, 100))


@given(st.lists(intervals, max_size=6))
def test_canonical_form_is_fixpoint(parts):
    s = IntervalSet(tuple(parts))
    assert IntervalSet(s.parts) == s
    for x, y in zip(s.parts, s.parts[1:]):
        assert x.hi != INF and x.hi + 1 < y.lo
