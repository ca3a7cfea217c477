import math
import random

import pytest
from hypothesis import given, strategies as st

from divclass.fgab import (
    INFINITE,
    FgAbGroup,
    GroupMismatch,
    cyclic,
    element_order,
    group_from_presentation,
    parse_group,
    quotient_group,
    subgroup_generated,
)
from divclass.intmat import IntMatrix


def test_examples():
    assert str(cyclic(9)) == "Z/9"
    assert str(group_from_presentation([[2, 0], [0, 2]], 2)) == "Z/2 + Z/2"
    assert str(group_from_presentation([[2, 1, 0], [1, 0, 2], [0, 2, 1]], 3)) == "Z/9"
    free = group_from_presentation([[2, 0]], 2)
    assert str(free) == "Z + Z/2" and free.order == INFINITE
    assert str(group_from_presentation([[1]], 1)) == "0"
    assert group_from_presentation([[4, 6]], 2).invariants == (2,)


def test_element_arithmetic_and_order():
    g = group_from_presentation([[6, 0], [0, 4]], 2)
    a, b = g.gen(0), g.gen(1)
    assert element_order(g, a + b) == 12
    assert (a * 6).is_zero()
    assert not (a * 3).is_zero()
    assert (a - a).is_zero()
    with pytest.raises(GroupMismatch):
        a + cyclic(3).gen(0)


def test_subgroup_and_quotient():
    g = cyclic(12)
    h, index = subgroup_generated(g, [g.gen(0) * 4])
    assert str(h) == "Z/3" and index == 4
    assert str(quotient_group(g, [g.gen(0) * 4])) == "Z/4"
    _, idx = subgroup_generated(group_from_presentation([[0]], 1), [])
    assert idx == INFINITE


def test_parse_group_round_trip():
    for text in ["0", "Z/9", "Z^2 + Z/2 + Z/4"]:
        r, inv = parse_group(text)
        g = group_from_presentation(
            [[d if i == j else 0 for j in range(r + len(inv))] for i, d in enumerate(inv)]
            or IntMatrix([], r),
            r + len(inv),
        )
        assert str(g) == text


def test_json_shape():
    d = cyclic(5).to_json()
    assert d["group"] == "Z/5" and d["invariant_factors"] == [5] and d["relations"] == [[5]]


presentations = st.integers(1, 3).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n + 1),
    )
)


def _random_unimodular(n, rng):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            m[0] = [-a for a in m[0]]
            continue
        k = rng.randint(-3, 3)
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
    return IntMatrix(m)


@given(presentations, st.integers(0, 10**6))
def test_invariants_presentation_independent(pres, seed):
    n, rows = pres
    g = group_from_presentation(rows, n)
    w = _random_unimodular(n, random.Random(seed))
    h = group_from_presentation(IntMatrix(rows) @ w, n)
    assert h.invariants == g.invariants and h.free_rank == g.free_rank
    # also permuting and recombining relations
    rows2 = [list(r) for r in reversed(rows)]
    if len(rows2) > 1:
        rows2[0] = [a + 2 * b for a, b in zip(rows2[0], rows2[1])]
    assert group_from_presentation(rows2, n) == g


@given(presentations, st.lists(st.integers(-7, 7), min_size=3, max_size=3))
def test_element_order_divides_exponent(pres, coords):
    n, rows = pres
    g = group_from_presentation(rows, n)
    x = g.element(coords[:n])
    o = element_order(g, x)
    if g.order == INFINITE:
        return
    assert g.exponent() % o == 0
    for k in range(0, 2 * o + 1):
        assert (x * k).is_zero() == (k % o == 0)


@given(presentations, st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), max_size=4))
def test_subgroup_index_monotone(pres, elts):
    n, rows = pres
    g = group_from_presentation(rows, n)
    xs = [g.element(e[:n]) for e in elts]
    prev = None
    for k in range(len(xs) + 1):
        h, idx = subgroup_generated(g, xs[:k])
        if prev is not None and prev != INFINITE:
            assert idx != INFINITE and idx <= prev and prev % idx == 0
        if g.order != INFINITE:
            assert h.order * idx == g.order
        prev = idx
