import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from divclass.field import QQ, GF
from divclass.poly import PolyRing

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def R3():
    return PolyRing("x,y,z", QQ)


small_int = st.integers(min_value=-5, max_value=5)


@st.composite
def polys(draw, ring, max_terms=5, max_deg=3):
    n = ring.nvars
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exp = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        terms[exp] = Fraction(draw(small_int))
    return ring.from_dict(terms)


def rng_poly(ring, rng: random.Random, nterms=4, max_deg=3):
    terms = {}
    for _ in range(nterms):
        exp = tuple(rng.randint(0, max_deg) for _ in range(ring.nvars))
        terms[exp] = ring.field(rng.randint(-4, 4))
    return ring.from_dict(terms)


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {n}: {msg}")
