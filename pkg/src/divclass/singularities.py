"""Surface germs at the origin of A^3: tangent cones, one blow-up, strict
transforms of curves, where those meet the exceptional divisor, and the
ADE lattices whose discriminant groups are the local class groups."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .curves import (
    PlaneCurve,
    ProjPoint,
    affine_rational_zeros,
    coeff_roots,
    is_smooth_plane_curve,
)
from .fgab import FgAbGroup, group_from_presentation
from .field import QQ, Field
from .ideals import GREVLEX, IdealPresentation, ideal_equal, leading_coefficient, quotient_by_variable
from .intmat import IntMatrix
from .jets import DEFAULT_JET_ORDER, JetMap
from .poly import MPoly, PolyRing


class SingularityError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceGerm:
    F: MPoly

    def __post_init__(self):
        if self.F.ring.nvars != 3:
            raise SingularityError("surface germs live in three variables")
        if self.F.is_zero():
            raise SingularityError("zero equation")
        if self.F.constant_term() != 0:
            raise SingularityError(f"{self.F} does not vanish at the origin")

    @classmethod
    def parse(cls, text: str, field: Field = QQ, names: str = "x,y,z") -> "SurfaceGerm":
        return cls(PolyRing(names, field).parse(text))

    @property
    def ring(self) -> PolyRing:
        return self.F.ring

    @property
    def multiplicity(self) -> int:
        return self.F.order()

    def is_smooth(self) -> bool:
        return self.multiplicity == 1


def tangent_cone(S: SurfaceGerm) -> MPoly:
    return S.F.lowest_form()


# blow-up


def _chart_names(names: Sequence[str], i: int) -> list[str]:
    out = []
    for j, n in enumerate(names):
        if j == i:
            out.append(n)
            continue
        u = n.upper() if n.upper() != n else n + "1"
        while u in names or u in out:
            u += "_"
        out.append(u)
    return out


@dataclass(frozen=True)
class BlowupChart:
    """Chart where the i-th variable e scales the others: x_j = e * X_j.

    F(chart images) = e^multiplicity * strict, and e does not divide strict.
    """

    index: int
    source: PolyRing
    ring: PolyRing
    strict: MPoly
    multiplicity: int

    @property
    def exceptional(self) -> str:
        return self.ring.names[self.index]

    def images(self) -> list[MPoly]:
        e = self.ring.var(self.index)
        return [e if j == self.index else e * self.ring.var(j) for j in range(self.ring.nvars)]

    def pull_back(self, f: MPoly) -> MPoly:
        return f.substitute(self.images())

    def to_projective(self, values: Sequence) -> ProjPoint:
        """Point of the exceptional P^2 from chart coordinates (e = 0)."""
        coords = [self.ring.field.one if j == self.index else values[j] for j in range(self.ring.nvars)]
        return ProjPoint(tuple(coords), self.ring.field)

    def check_identity(self, F: MPoly) -> bool:
        e = self.exceptional
        return (
            self.pull_back(F) == self.strict * self.ring.var(e) ** self.multiplicity
            and self.strict.var_power_dividing(e) == 0
        )


def blow_up_chart(S: SurfaceGerm, i: int) -> BlowupChart:
    ring = PolyRing(_chart_names(S.ring.names, i), S.ring.field)
    e = ring.names[i]
    images = [ring.var(i) if j == i else ring.var(i) * ring.var(j) for j in range(3)]
    total = S.F.substitute(images)
    m = total.var_power_dividing(e)
    if m != S.multiplicity:
        raise SingularityError(f"chart {i}: exceptional multiplicity {m} != order {S.multiplicity}")
    return BlowupChart(i, S.ring, ring, total.divide_by_var(e, m), m)


def blow_up(S: SurfaceGerm) -> list[BlowupChart]:
    return [blow_up_chart(S, i) for i in range(3)]


def strict_transform_curve(I_C: IdealPresentation, chart: BlowupChart, max_rounds: int = 20) -> IdealPresentation:
    e = chart.exceptional
    gens = []
    for g in I_C.gens:
        t = chart.pull_back(g)
        if t.is_zero():
            continue
        gens.append(t.divide_by_var(e, t.var_power_dividing(e)))
    ideal = IdealPresentation(chart.ring, tuple(gens))
    for _ in range(max_rounds):
        nxt = quotient_by_variable(ideal, e)
        if ideal_equal(nxt, ideal):
            return nxt
        ideal = nxt
    raise SingularityError(f"saturation by {e} did not stabilise in {max_rounds} rounds")


# tangent cone components


def _monic(f: MPoly) -> MPoly:
    return f.scale(f.field.one / leading_coefficient(f, GREVLEX))


def _coeffs_in_first(T: MPoly) -> list[MPoly]:
    """T = sum_k c_k(y, z) x^k; returns [c_0, ..., c_m] as polys in the same ring."""
    m = T.degree_in(0)
    out = [dict() for _ in range(m + 1)]
    for e, c in T.terms.items():
        out[e[0]][(0,) + e[1:]] = c
    return [T.ring.from_dict(d) for d in out]


def _divide_by_linear(T: MPoly, L: MPoly):
    """Divide T by (x - L) with L free of x; returns quotient or None."""
    c = _coeffs_in_first(T)
    m = len(c) - 1
    if m == 0:
        return None
    x = T.ring.var(0)
    q = [None] * m
    acc = c[m]
    for k in range(m - 1, -1, -1):
        q[k] = acc
        acc = c[k] + L * acc
    if not acc.is_zero():
        return None
    out = T.ring.zero
    for k, qk in enumerate(q):
        out = out + qk * x**k
    return out


@dataclass(frozen=True)
class ConeComponent:
    form: MPoly
    kind: str  # "linear" | "smooth"

    def contains(self, q: ProjPoint) -> bool:
        return self.form.evaluate(q.coords) == 0

    def __str__(self):
        return str(self.form)


def factor_tangent_cone(T: MPoly) -> list[ConeComponent]:
    """Split a ternary form into distinct rational linear factors and at most
    one smooth residual factor; anything else is an error."""
    if T.is_zero() or not T.is_homogeneous():
        raise SingularityError(f"{T} is not a nonzero form")
    ring, fld = T.ring, T.field
    d = T.total_degree()
    if d == 0:
        raise SingularityError("constant tangent cone")
    x, y, z = ring.gens
    shift = None
    for s in range(0, 6):
        for t in range(0, 6):
            if T.evaluate((1, s, t)) != 0:
                shift = (fld(s), fld(t))
                break
        if shift:
            break
    if shift is None:
        raise SingularityError(f"could not make {T} monic in {ring.names[0]}")
    s, t = shift
    fwd = [x, y + x.scale(s), z + x.scale(t)]
    back = [x, y - x.scale(s), z - x.scale(t)]
    Tp = T.substitute(fwd)
    comps: list[ConeComponent] = []

    cands_b = [r for r, _ in coeff_roots(_binary(Tp, 1), fld)[0]]
    cands_c = [r for r, _ in coeff_roots(_binary(Tp, 2), fld)[0]]
    rest = Tp
    for b in cands_b:
        for c in cands_c:
            L = y.scale(b) + z.scale(c)
            k = 0
            while True:
                q = _divide_by_linear(rest, L)
                if q is None:
                    break
                rest, k = q, k + 1
            if k > 1:
                raise SingularityError(f"tangent cone {T} has a repeated linear factor")
            if k == 1:
                comps.append(ConeComponent(_monic((x - L).substitute(back)), "linear"))
    if rest.total_degree() > 0:
        R = rest.substitute(back)
        if R.total_degree() == 1:
            comps.append(ConeComponent(_monic(R), "linear"))
        elif is_smooth_plane_curve(PlaneCurve(R)).smooth:
            comps.append(ConeComponent(_monic(R), "smooth"))
        else:
            raise SingularityError(
                f"tangent cone {T} has a factor {R} that is neither linear nor smooth"
            )
    return comps


def _binary(Tp: MPoly, var: int) -> list:
    """Coefficients in t of Tp(t, [1 at position var], 0 elsewhere)."""
    d = Tp.total_degree()
    out = [Tp.field.zero] * (d + 1)
    for e, c in Tp.terms.items():
        if all(e[j] == 0 for j in (1, 2) if j != var):
            out[e[0]] = out[e[0]] + c
    return out


# exceptional intersections


@dataclass
class ExceptionalPoint:
    point: ProjPoint
    components: list[int]
    smooth_on_blowup: bool

    def to_json(self) -> dict:
        return {
            "point": str(self.point),
            "components": self.components,
            "smooth_point_of_blowup": self.smooth_on_blowup,
        }


@dataclass
class ExceptionalIntersection:
    components: list[ConeComponent]
    points: list[ExceptionalPoint]

    @property
    def vector(self) -> list[int]:
        v = [0] * len(self.components)
        for p in self.points:
            for c in p.components:
                v[c] += 1
        return v

    def points_on(self, k: int) -> list[ProjPoint]:
        return [p.point for p in self.points if k in p.components]

    def to_json(self) -> dict:
        return {
            "components": [str(c) for c in self.components],
            "component_kinds": [c.kind for c in self.components],
            "vector": self.vector,
            "points": [p.to_json() for p in self.points],
        }


def exceptional_intersection(
    curve: IdealPresentation,
    S: SurfaceGerm,
    components: list[ConeComponent] | None = None,
    charts: list[BlowupChart] | None = None,
) -> ExceptionalIntersection:
    """Points where the strict transform of a curve meets the exceptional
    divisor of the blow-up of S at the origin, sorted by tangent-cone component."""
    if curve.ring != S.ring:
        raise SingularityError("curve and surface live in different rings")
    comps = components if components is not None else factor_tangent_cone(tangent_cone(S))
    charts = charts if charts is not None else blow_up(S)
    found: dict[ProjPoint, ExceptionalPoint] = {}
    for ch in charts:
        st = strict_transform_curve(curve, ch)
        e = ch.ring.var(ch.index)
        polys = list(st.gens) + [ch.strict, e]
        for vals in affine_rational_zeros(polys):
            q = ch.to_projective(vals)
            if q in found:
                continue
            on = [k for k, c in enumerate(comps) if c.contains(q)]
            if not on:
                raise SingularityError(f"exceptional point {q} lies on no tangent-cone component")
            grad = [ch.strict.diff(j).evaluate(vals) for j in range(3)]
            found[q] = ExceptionalPoint(q, on, any(g != 0 for g in grad))
    pts = sorted(found.values(), key=lambda p: str(p.point))
    return ExceptionalIntersection(comps, pts)


# ADE data


@dataclass(frozen=True)
class AdeType:
    family: str
    n: int

    def __post_init__(self):
        ok = (
            (self.family == "A" and self.n >= 1)
            or (self.family == "D" and self.n >= 4)
            or (self.family == "E" and self.n in (6, 7, 8))
        )
        if not ok:
            raise SingularityError(f"{self.family}{self.n} is not an ADE type")

    @classmethod
    def parse(cls, text: str) -> "AdeType":
        t = text.strip().upper().replace("_", "")
        if len(t) < 2 or t[0] not in "ADE" or not t[1:].isdigit():
            raise SingularityError(f"cannot parse ADE type {text!r}")
        return cls(t[0], int(t[1:]))

    def __str__(self):
        return f"{self.family}{self.n}"


def cartan_matrix(t: AdeType) -> IntMatrix:
    n = t.n
    edges = []
    if t.family == "A":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif t.family == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    else:
        # chain of n-1 nodes, extra node on the third
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in edges:
        m[a][b] = m[b][a] = -1
    return IntMatrix(m, n)


@dataclass(frozen=True)
class ExceptionalLattice:
    """Intersection form of the exceptional curves of the minimal resolution."""

    ade: AdeType
    form: IntMatrix

    @classmethod
    def of(cls, t: AdeType) -> "ExceptionalLattice":
        c = cartan_matrix(t)
        return cls(t, IntMatrix([[-a for a in row] for row in c.rows], c.ncols))

    def discriminant_group(self) -> FgAbGroup:
        return group_from_presentation(self.form, self.form.ncols)

    def dual_class(self, k: int):
        """Class of a curve meeting the k-th exceptional curve once transversally."""
        g = self.discriminant_group()
        return g.gen(k)


# witness equations and generating curves
def ade_witness(t: AdeType) -> dict:
    n = t.n
    if t.family == "A":
        return {"equation": f"x*y - z^{n + 1}", "curves": [["x", "z"]]}
    if t.family == "D":
        eq = f"x^2 + y^2*z - z^{n - 1}"
        k = n // 2
        if n % 2 == 0:
            return {"equation": eq, "curves": [["x", "z"], ["x", f"y - z^{k - 1}"]]}
        return {"equation": eq, "curves": [["y", f"x - z^{k}"]]}
    if n == 6:
        return {"equation": "x^2 + y^3 - z^4", "curves": [["x - z^2", "y"]]}
    if n == 7:
        return {"equation": "x^2 + y^3 + y*z^3", "curves": [["x", "y"]]}
    return {"equation": "x^2 + y^3 + z^5", "curves": []}


def ade_class_group(t: AdeType | str) -> tuple[FgAbGroup, dict]:
    if isinstance(t, str):
        t = AdeType.parse(t)
    lat = ExceptionalLattice.of(t)
    g = lat.discriminant_group()
    w = ade_witness(t)
    ring = PolyRing("x,y,z", QQ)
    F = ring(w["equation"])
    on_surface = [IdealPresentation.of(ring, c).contains(F) for c in w["curves"]]
    det = abs(cartan_matrix(t).det())
    entry = {
        "type": str(t),
        "equation": w["equation"],
        "generating_curves": ["(" + ", ".join(c) + ")" for c in w["curves"]],
        "curves_on_surface": on_surface,
        "cartan_determinant": det,
        "order_matches_determinant": g.order == det,
    }
    return g, entry


# pinwheel normal form


@dataclass
class PinwheelNormalForm:
    first: JetMap
    second: JetMap
    ade: AdeType
    unit: object
    m: MPoly
    target: MPoly
    residual: MPoly

    @property
    def residual_zero(self) -> bool:
        return self.residual.is_zero()


def pinwheel_equation(ring: PolyRing, a: Sequence, A, B) -> MPoly:
    x, y, z = ring.gens
    prod = ring.one
    for aj in a:
        prod = prod * (x + y.scale(ring.field(aj)))
    return x * z - (y * z).scale(ring.field(A)) + prod.scale(ring.field(B))


def pinwheel_normal_form(
    r: int, a: Sequence, A, B, N: int = DEFAULT_JET_ORDER, field: Field = QQ
) -> PinwheelNormalForm:
    """Coordinates x' = x - A y, z' = z + B m in which the pinwheel germ
    becomes x' z' + u y^r with u = B * prod(A + a_j)."""
    if r < 2:
        raise SingularityError("need r >= 2")
    if len(a) != r:
        raise SingularityError(f"expected {r} values a_j, got {len(a)}")
    ring = PolyRing("x,y,z", field)
    x, y, z = ring.gens
    A, B = field(A), field(B)
    cs = [A + field(aj) for aj in a]
    u = B * math.prod(cs, start=field.one)
    if u == 0:
        raise SingularityError(
            "unit condition fails: B * prod(A + a_j) = 0, the germ is not of type A_{r-1}"
        )
    F = pinwheel_equation(ring, a, A, B)
    prod = ring.one
    for c in cs:
        prod = prod * (x + y.scale(c))
    top = ring.monomial((0, r, 0), math.prod(cs, start=field.one))
    m = (prod - top).divide_by_var("x", 1)
    first = JetMap((y.scale(A), ring.zero, ring.zero), N)
    second = JetMap((ring.zero, ring.zero, m.scale(-B)), N)
    target = x * z + ring.monomial((0, r, 0), u)
    got = second.apply(first.apply(F))
    residual = (got - target).truncate(N)
    return PinwheelNormalForm(first, second, AdeType("A", r - 1), u, m, target, residual)
