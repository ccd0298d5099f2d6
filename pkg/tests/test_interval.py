import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from epsident import EmptyInterval, Interval

finite = st.floats(min_value=-10, max_value=10, allow_nan=False)


def test_basic_properties():
    iv = Interval(0.2, 0.8)
    assert iv.width == pytest.approx(0.6)
    assert iv.midpoint == pytest.approx(0.5)
    assert iv.contains(0.2) and iv.contains(0.8)
    assert not iv.contains(0.81)
    assert iv.as_tuple() == (0.2, 0.8)
    lo, hi = iv
    assert (lo, hi) == (0.2, 0.8)


def test_empty_raises():
    with pytest.raises(EmptyInterval):
        Interval(0.5, 0.4)
    with pytest.raises(EmptyInterval):
        Interval(math.nan, 1.0)
    with pytest.raises(EmptyInterval):
        Interval(0.0, math.inf)


def test_tolerance_snap():
    iv = Interval(0.5 + 1e-12, 0.5)
    assert iv.lo == iv.hi == pytest.approx(0.5)


def test_clamp_and_intersect():
    iv = Interval(-0.2, 1.4)
    assert iv.clamped().as_tuple() == (0.0, 1.0)
    assert Interval(0.0, 0.6).intersect(Interval(0.4, 1.0)).as_tuple() == (0.4, 0.6)
    with pytest.raises(EmptyInterval):
        Interval(0.0, 0.3).intersect(Interval(0.5, 1.0))


@given(a=finite, b=finite, x=finite)
def test_contains_consistency(a, b, x):
    lo, hi = min(a, b), max(a, b)
    iv = Interval(lo, hi)
    if lo <= x <= hi:
        assert iv.contains(x)
    if iv.contains(x, tol=0.0):
        assert lo <= x <= hi


@given(a=finite, b=finite, c=finite, d=finite)
def test_containment_transitive_with_intersection(a, b, c, d):
    outer = Interval(min(a, b), max(a, b))
    inner = Interval(min(c, d), max(c, d))
    if outer.contains_interval(inner, tol=0.0):
        got = outer.intersect(inner)
        assert got.lo == pytest.approx(inner.lo)
        assert got.hi == pytest.approx(inner.hi)
