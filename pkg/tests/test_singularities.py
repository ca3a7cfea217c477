import random

import pytest
from hypothesis import given, settings, strategies as st

from divclass.curves import pt
from divclass.field import QQ, GF
from divclass.ideals import IdealPresentation, ideal_equal
from divclass.poly import PolyRing
from divclass.singularities import (
    AdeType,
    ExceptionalLattice,
    SingularityError,
    SurfaceGerm,
    ade_class_group,
    blow_up,
    blow_up_chart,
    cartan_matrix,
    exceptional_intersection,
    factor_tangent_cone,
    pinwheel_equation,
    pinwheel_normal_form,
    strict_transform_curve,
    tangent_cone,
)

R = PolyRing("x,y,z", QQ)


def test_germ_basics():
    S = SurfaceGerm.parse("x*y - z^2 + x^3")
    assert S.multiplicity == 2 and not S.is_smooth()
    assert tangent_cone(S) == R("x*y - z^2")
    with pytest.raises(SingularityError):
        SurfaceGerm.parse("1 + x")


def test_blowup_charts_of_A1():
    S = SurfaceGerm.parse("x*y - z^2")
    charts = blow_up(S)
    assert [c.strict for c in charts] == [c.ring(t) for c, t in zip(charts, ["Y - Z^2", "X - Z^2", "X*Y - 1"])]
    assert [c.exceptional for c in charts] == ["x", "y", "z"]
    assert all(c.check_identity(S.F) for c in charts)


GERMS = [
    "x*y - z^2",
    "x*z - 2*y*z + 3*(x + y)*(x + 2*y)*(x - y)",
    "x*y*z + x^2*y + x*z^2 + y^2*z + x^4 - y^5",
    "x^2 + y^2*z - z^5",
    "x^2 + y^3 - z^4",
    "x^2 + y^2 + z^2 + x*y*z",
]


@pytest.mark.parametrize("text", GERMS)
def test_blowup_identity_on_worked_germs(text):
    S = SurfaceGerm.parse(text)
    for ch in blow_up(S):
        e = ch.ring.var(ch.index)
        assert ch.pull_back(S.F) == ch.strict * e**ch.multiplicity
        assert ch.strict.var_power_dividing(ch.exceptional) == 0


@st.composite
def germs(draw):
    rng = random.Random(draw(st.integers(0, 10**6)))
    m = draw(st.integers(2, 3))
    terms = {}
    for _ in range(5):
        e = tuple(rng.randint(0, 3) for _ in range(3))
        if sum(e) >= m:
            terms[e] = rng.randint(-3, 3)
    a, b = rng.randint(-2, 2), rng.randint(1, 3)
    f = R.from_dict(terms) + R("x^%d" % m).scale(b) + R("y^%d" % m).scale(a) + R("z^%d" % m)
    return SurfaceGerm(f)


@given(germs())
@settings(max_examples=40)
def test_blowup_identity_property(S):
    for ch in blow_up(S):
        assert ch.check_identity(S.F)


def test_strict_transform_of_line_on_A1():
    S = SurfaceGerm.parse("x*y - z^2")
    ch = blow_up_chart(S, 0)
    st_ = strict_transform_curve(IdealPresentation.of(R, ["y", "z"]), ch)
    assert ideal_equal(st_, IdealPresentation.of(ch.ring, ["Y", "Z"]))


def test_factor_tangent_cone():
    comps = factor_tangent_cone(R("x*z - 2*y*z"))
    assert sorted(str(c) for c in comps) == ["x - 2*y", "z"]
    assert all(c.kind == "linear" for c in comps)
    cubic = factor_tangent_cone(R("x*y*z + x^2*y + x*z^2 + y^2*z"))
    assert [c.kind for c in cubic] == ["smooth"]
    assert [c.kind for c in factor_tangent_cone(R("x^2 + y^2 + z^2"))] == ["smooth"]
    three = factor_tangent_cone(R("x*y*(x + y + z)"))
    assert sorted(str(c) for c in three) == ["x", "x + y + z", "y"]


def test_factor_tangent_cone_rejects_bad_forms():
    with pytest.raises(SingularityError, match="repeated"):
        factor_tangent_cone(R("x^2*y"))
    with pytest.raises(SingularityError):
        factor_tangent_cone(R("y^2*z - x^3 - x^2*z"))  # nodal cubic


def test_exceptional_intersection_of_pinwheel_lines():
    a, A, B = [1, 2, 3], 5, 7
    S = SurfaceGerm(pinwheel_equation(R, a, A, B))
    L0 = IdealPresentation.of(R, ["x", "y"])
    ex = exceptional_intersection(L0, S)
    names = [str(c) for c in ex.components]
    assert ex.vector[names.index("x - 5*y")] == 1 and ex.vector[names.index("z")] == 0
    assert ex.points[0].point == pt(0, 0, 1) and ex.points[0].smooth_on_blowup
    for aj in a:
        Lj = IdealPresentation.of(R, ["z", f"x + {aj}*y"])
        ex = exceptional_intersection(Lj, S)
        assert ex.vector[names.index("z")] == 1 and ex.vector[names.index("x - 5*y")] == 0
        assert ex.points[0].point == pt(-aj, 1, 0)


def test_ade_types_and_cartan():
    assert str(AdeType.parse("a_5")) == "A5"
    for bad in ("D3", "E9", "F4", "A0"):
        with pytest.raises(SingularityError):
            AdeType.parse(bad)
    assert cartan_matrix(AdeType("E", 8)).det() == 1
    assert ExceptionalLattice.of(AdeType("A", 2)).form.tolist() == [[-2, 1], [1, -2]]


@pytest.mark.parametrize(
    "t,group",
    [("A1", "Z/2"), ("A5", "Z/6"), ("D4", "Z/2 + Z/2"), ("D5", "Z/4"), ("D6", "Z/2 + Z/2"),
     ("D7", "Z/4"), ("E6", "Z/3"), ("E7", "Z/2"), ("E8", "0")],
)
def test_ade_class_groups(t, group):
    g, entry = ade_class_group(t)
    assert str(g) == group
    assert entry["order_matches_determinant"]
    assert all(entry["curves_on_surface"])


@given(st.sampled_from("AD"), st.integers(1, 40))
@settings(max_examples=30)
def test_ade_order_equals_cartan_determinant(fam, n):
    if fam == "D":
        n = max(n, 4)
    t = AdeType(fam, n)
    g, _ = ade_class_group(t)
    assert g.order == abs(cartan_matrix(t).det())
    assert g.order == (n + 1 if fam == "A" else 4)


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_pinwheel_normal_form(r):
    a = list(range(1, r + 1))
    nf = pinwheel_normal_form(r, a, A=2, B=3, N=10)
    assert nf.residual_zero
    assert str(nf.ade) == f"A{r - 1}"
    S = PolyRing("x,y,z", QQ)
    F = pinwheel_equation(S, a, 2, 3)
    got = nf.second.apply(nf.first.apply(F))
    assert got == nf.target.truncate(10)


def test_pinwheel_over_fp_and_unit_failure():
    nf = pinwheel_normal_form(3, [1, 2, 4], A=1, B=2, field=GF(11))
    assert nf.residual_zero
    with pytest.raises(SingularityError, match="unit"):
        pinwheel_normal_form(2, [1, -5], A=5, B=1)
