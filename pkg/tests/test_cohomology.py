import math

import pytest
from hypothesis import given, strategies as st

from divclass.cohomology import (
    CompleteIntersectionSpec,
    HypersurfaceSpec,
    binom,
    ci_cohomology,
    cohomology_table,
    euler_characteristic,
    format_table,
    formal_excess,
    twist_cohomology,
    vanishing_threshold,
)

Q4 = HypersurfaceSpec(2, 4)


def test_binomial_convention():
    assert binom(5, 2) == 10
    assert binom(1, 2) == 0
    assert binom(-3, 2) == 0
    assert binom(0, 0) == 1


def test_plane_quartic():
    assert twist_cohomology(Q4, 1) == [3, 1]
    assert twist_cohomology(Q4, 0) == [1, 3]
    assert twist_cohomology(Q4, 2) == [6, 0]
    assert formal_excess(Q4) == 1
    assert vanishing_threshold(Q4) == 2


def test_cubics_and_quartic_surfaces_vanish():
    for X in (HypersurfaceSpec(2, 3), HypersurfaceSpec(3, 4)):
        for k in range(1, 15):
            assert all(v == 0 for v in twist_cohomology(X, k)[1:])
        assert vanishing_threshold(X) == 1
    assert twist_cohomology(HypersurfaceSpec(3, 4), 0) == [1, 0, 1]


def test_plane_quintic_excess():
    # hand sum via Serre duality: h^1(O_X(k)) = h^0(P^2, O(2 - k)) for k >= 1
    hand = sum(math.comb(2 - k + 2, 2) for k in (1, 2))
    assert hand == 4
    assert formal_excess(HypersurfaceSpec(2, 5)) == hand
    assert vanishing_threshold(HypersurfaceSpec(2, 5)) == 3


def test_invalid_specs():
    with pytest.raises(ValueError):
        HypersurfaceSpec(1, 3)
    with pytest.raises(ValueError):
        HypersurfaceSpec(2, 0)


def test_table_and_format():
    t = cohomology_table(Q4, range(0, 3))
    assert [r["h"] for r in t["rows"]] == [[1, 3], [3, 1], [6, 0]]
    text = format_table(t)
    assert "vanishing threshold d0 = 2" in text and "h^1" in text


def test_complete_intersections():
    assert ci_cohomology(CompleteIntersectionSpec(3, (2, 2)), 0) == [1, 1]
    assert ci_cohomology(CompleteIntersectionSpec(3, (2, 3)), 0) == [1, 4]
    # a complete intersection of two quadrics is an elliptic quartic curve
    assert ci_cohomology(CompleteIntersectionSpec(3, (2, 2)), 1) == [4, 0]


nd = st.tuples(st.integers(2, 5), st.integers(1, 9), st.integers(-12, 12))


@given(nd)
def test_euler_characteristic(args):
    n, d, k = args
    X = HypersurfaceSpec(n, d)
    h = twist_cohomology(X, k)
    assert sum((-1) ** i * v for i, v in enumerate(h)) == euler_characteristic(X, k)
    assert all(v >= 0 for v in h)


@given(st.integers(1, 10), st.integers(-12, 12))
def test_serre_duality_on_plane_curves(d, k):
    X = HypersurfaceSpec(2, d)
    assert twist_cohomology(X, k)[1] == twist_cohomology(X, d - 3 - k)[0]


@given(st.integers(2, 5), st.integers(1, 10))
def test_vanishing_monotone(n, d):
    X = HypersurfaceSpec(n, d)
    d0 = vanishing_threshold(X)
    for k in range(d0, d0 + 12):
        h = twist_cohomology(X, k)
        assert h[1] == 0 and (n < 3 or h[2] == 0)
    if d0 > 1:
        h = twist_cohomology(X, d0 - 1)
        assert h[1] or (n >= 3 and h[2])
