"""Plane curves: linear systems through points, smoothness, line sections,
the chord-tangent group law on smooth cubics, and class groups of cones.

For the cone V over a smooth plane cubic C, the local class group at the
vertex is Pic C / <O_C(1)>.  With a base point O, Pic C = Z + E(k) via
D -> (deg D, sum of the points of D in the group law), and the hyperplane
class maps to (3, O*O), where O*O is the third point of the tangent at O.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

from .fgab import FgAbGroup, GroupElement, group_from_presentation, subgroup_generated
from .field import QQ, Field, GF, PrimeField, scalar_str
from .ideals import GREVLEX, LEX, IdealPresentation, buchberger, leading_monomial
from .intmat import IntMatrix
from .linalg import nullspace, rank
from .poly import MPoly, PolyRing

DEFAULT_P_LIMIT = 101


class CurveError(ValueError):
    pass


class IrrationalPointError(CurveError):
    """An intersection point is not defined over the base field."""


class NotSmoothError(CurveError):
    pass


# points


@dataclass(frozen=True)
class ProjPoint:
    """Point of P^2 normalised so the last nonzero coordinate is 1."""

    coords: tuple
    field: Field = QQ

    def __post_init__(self):
        c = tuple(self.field(a) for a in self.coords)
        if len(c) != 3:
            raise ValueError("plane points have three coordinates")
        k = next((i for i in (2, 1, 0) if c[i] != 0), None)
        if k is None:
            raise ValueError("(0:0:0) is not a projective point")
        inv = self.field.one / c[k]
        object.__setattr__(self, "coords", tuple(a * inv for a in c))

    def __str__(self):
        return "(" + ":".join(scalar_str(a) for a in self.coords) + ")"

    def __iter__(self):
        return iter(self.coords)

    @classmethod
    def parse(cls, text: str, field: Field = QQ) -> "ProjPoint":
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError(f"point {text!r} must look like (a:b:c)")
        parts = body[1:-1].split(":")
        return cls(tuple(field(Fraction(p.strip())) for p in parts), field)


def pt(a, b, c, field: Field = QQ) -> ProjPoint:
    return ProjPoint((a, b, c), field)


def projective_points(field: PrimeField) -> list[ProjPoint]:
    p = field.p
    out = [ProjPoint((1, 0, 0), field)]
    out += [ProjPoint((a, 1, 0), field) for a in range(p)]
    out += [ProjPoint((a, b, 1), field) for a in range(p) for b in range(p)]
    return out


# curves


@dataclass(frozen=True)
class PlaneCurve:
    F: MPoly

    def __post_init__(self):
        if self.F.ring.nvars != 3:
            raise CurveError("plane curves need a ring in three variables")
        if self.F.is_zero():
            raise CurveError("zero polynomial")
        if not self.F.is_homogeneous():
            raise CurveError(f"{self.F} is not homogeneous")

    @classmethod
    def parse(cls, text: str, field: Field = QQ, names: str = "x,y,z") -> "PlaneCurve":
        return cls(PolyRing(names, field).parse(text))

    @property
    def degree(self) -> int:
        return self.F.total_degree()

    @property
    def field(self) -> Field:
        return self.F.field

    @property
    def ring(self) -> PolyRing:
        return self.F.ring

    def contains(self, p: ProjPoint) -> bool:
        return self.F.evaluate(p.coords) == 0

    def gradient(self, p: ProjPoint) -> tuple:
        return tuple(self.F.diff(i).evaluate(p.coords) for i in range(3))

    def rational_points(self) -> list[ProjPoint]:
        if not isinstance(self.field, PrimeField):
            raise CurveError("point enumeration needs a finite field")
        return [q for q in projective_points(self.field) if self.contains(q)]

    def __str__(self):
        return str(self.F)


@dataclass(frozen=True)
class CurvePointDivisor:
    curve: PlaneCurve
    mults: tuple[tuple[ProjPoint, int], ...]

    def __post_init__(self):
        acc: dict[ProjPoint, int] = {}
        for q, n in self.mults:
            if not self.curve.contains(q):
                raise CurveError(f"{q} is not on {self.curve}")
            acc[q] = acc.get(q, 0) + n
        items = tuple(sorted(((q, n) for q, n in acc.items() if n), key=lambda t: str(t[0])))
        object.__setattr__(self, "mults", items)

    @classmethod
    def of(cls, curve: PlaneCurve, mults: dict[ProjPoint, int] | Iterable) -> "CurvePointDivisor":
        items = mults.items() if isinstance(mults, dict) else mults
        return cls(curve, tuple(items))

    def degree(self) -> int:
        return sum(n for _, n in self.mults)

    def as_dict(self) -> dict[ProjPoint, int]:
        return dict(self.mults)

    def __add__(self, other: "CurvePointDivisor") -> "CurvePointDivisor":
        return CurvePointDivisor(self.curve, self.mults + other.mults)

    def __str__(self):
        if not self.mults:
            return "0"
        return " + ".join(f"{n}*{q}" if n != 1 else str(q) for q, n in self.mults)

    def to_json(self) -> dict:
        return {str(q): n for q, n in self.mults}


# linear systems


def fit_curves_through_points(points: Sequence[ProjPoint], d: int, field: Field | None = None) -> list[list]:
    """Basis of coefficient vectors (against ``monomial_basis(d)``) of degree-d
    forms vanishing at every point."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    field = field or (points[0].field if points else QQ)
    monos = monomial_basis(d)
    rows = [[_mono_eval(e, q.coords, field) for e in monos] for q in points]
    return nullspace(rows, field, ncols=len(monos))


def monomial_basis(d: int) -> list[tuple[int, int, int]]:
    return [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


def _mono_eval(e, coords, field):
    v = field.one
    for a, k in zip(coords, e):
        if k:
            v = v * a**k
    return v


def form_from_vector(vec: Sequence, d: int, ring: PolyRing) -> MPoly:
    return ring.from_dict({e: c for e, c in zip(monomial_basis(d), vec)})


def evaluation_rank(points: Sequence[ProjPoint], d: int) -> int:
    field = points[0].field
    return rank([[_mono_eval(e, q.coords, field) for e in monomial_basis(d)] for q in points], field)


# smoothness


@dataclass
class SmoothnessCertificate:
    status: str  # "smooth" | "singular" | "singular-nonrational"
    method: str
    point: ProjPoint | None = None
    detail: dict = dc_field(default_factory=dict)

    @property
    def smooth(self) -> bool:
        return self.status == "smooth"

    def __bool__(self):
        return self.smooth

    def to_json(self) -> dict:
        out = {"status": self.status, "method": self.method, "detail": self.detail}
        if self.point is not None:
            out["point"] = str(self.point)
        return out


def _gradient_ideal(F: MPoly) -> list[MPoly]:
    return [F] + [F.diff(i) for i in range(3)]


def _empty_projective_locus(polys: Sequence[MPoly]) -> dict | None:
    """For homogeneous polys: if their common zero locus in P^2 is empty,
    return the minimal powers of each variable lying in the ideal."""
    gb = buchberger(polys, GREVLEX)
    if not gb:
        return None
    ring = polys[0].ring
    lms = [leading_monomial(g, GREVLEX) for g in gb]
    for i in range(ring.nvars):
        if not any(sum(e) == e[i] for e in lms):
            return None
    ideal = IdealPresentation(ring, tuple(gb), tuple(gb), GREVLEX)
    powers = {}
    for name in ring.names:
        k = 1
        while not ideal.contains(ring.var(name) ** k):
            k += 1
        powers[name] = k
    return powers


def _integral_primitive(F: MPoly) -> MPoly:
    den = 1
    for c in F.terms.values():
        den = math.lcm(den, c.denominator)
    g = 0
    for c in F.terms.values():
        g = math.gcd(g, (c * den).numerator)
    return F.scale(Fraction(den, g))


MODULAR_PRIMES = (10007, 10009, 10037)


def is_smooth_plane_curve(C: PlaneCurve) -> SmoothnessCertificate:
    """Decide whether C has no singular point over the algebraic closure.

    The certificate for smoothness is a power of each coordinate lying in
    (F, dF/dx, dF/dy, dF/dz).  Over QQ a smooth reduction modulo a large prime
    is tried first: a singular point over QQbar would reduce to one mod p.
    """
    F = C.F
    if C.degree == 1:
        return SmoothnessCertificate("smooth", "linear", detail={"reason": "lines are smooth"})
    if C.field == QQ:
        Fi = _integral_primitive(F)
        for p in MODULAR_PRIMES:
            ring_p = F.ring.with_field(GF(p))
            Fp_ = Fi.change_ring(ring_p)
            if Fp_.total_degree() != C.degree or not Fp_.is_homogeneous():
                continue
            powers = _empty_projective_locus(_gradient_ideal(Fp_))
            if powers is not None:
                return SmoothnessCertificate(
                    "smooth", "modular", detail={"prime": p, "powers_in_gradient_ideal": powers}
                )
    powers = _empty_projective_locus(_gradient_ideal(F))
    if powers is not None:
        return SmoothnessCertificate("smooth", "elimination", detail={"powers_in_gradient_ideal": powers})
    sing = singular_points(C)
    if sing:
        return SmoothnessCertificate(
            "singular", "search", point=sing[0], detail={"singular_points": [str(q) for q in sing]}
        )
    return SmoothnessCertificate(
        "singular-nonrational",
        "elimination",
        detail={"reason": "gradient ideal has a projective zero, none rational over the base field"},
    )


def singular_points(C: PlaneCurve, search_bound: int = 3) -> list[ProjPoint]:
    """Rational singular points: exhaustive over F_p, by triangular solving over QQ."""
    polys = _gradient_ideal(C.F)
    if isinstance(C.field, PrimeField):
        return [q for q in projective_points(C.field) if all(f.evaluate(q.coords) == 0 for f in polys)]
    found: list[ProjPoint] = []
    for chart in (2, 1, 0):
        # points with coordinate `chart` = 1 and later coordinates 0
        fixed = {chart: C.field.one}
        for j in range(chart + 1, 3):
            fixed[j] = C.field.zero
        free = [i for i in range(3) if i not in fixed]
        for sol in _rational_solutions(polys, free, fixed, C.field, search_bound):
            q = ProjPoint(tuple(sol[i] for i in range(3)), C.field)
            if q not in found:
                found.append(q)
    return found


def _rational_solutions(polys, free, fixed, field, search_bound):
    """All rational solutions of a zero-dimensional system (plus a small
    integer search along positive-dimensional components)."""
    ring = polys[0].ring
    if not free:
        pt_ = [fixed[i] for i in range(ring.nvars)]
        return [dict(fixed)] if all(f.evaluate(pt_) == 0 for f in polys) else []
    sub_ring = PolyRing([ring.names[i] for i in free], field)
    images = []
    k = 0
    for i in range(ring.nvars):
        if i in fixed:
            images.append(sub_ring.const(fixed[i]))
        else:
            images.append(sub_ring.var(k))
            k += 1
    reduced = [f.substitute(images) for f in polys]
    reduced = [f for f in reduced if not f.is_zero()]
    if any(f.total_degree() == 0 for f in reduced):
        return []
    if not reduced:
        vals = [field(v) for v in range(-search_bound, search_bound + 1)]
        out = []
        for combo in itertools.product(vals, repeat=len(free)):
            d = dict(fixed)
            d.update(zip(free, combo))
            out.append(d)
        return out
    gb = buchberger(reduced, LEX)
    last = free[-1]
    last_name = sub_ring.names[-1]
    univ = [g for g in gb if g.variables() <= {last_name}]
    if univ:
        cands = univariate_roots(univ[0], field)
        values = [v for v, _ in cands]
    else:
        values = [field(v) for v in range(-search_bound, search_bound + 1)]
    out = []
    for v in values:
        fx = dict(fixed)
        fx[last] = v
        out += _rational_solutions(polys, free[:-1], fx, field, search_bound)
    return out


# univariate root finding


def _poly_coeffs_in(f: MPoly) -> list:
    """Coefficient list (constant first) of a polynomial in at most one variable."""
    used = f.variables()
    if len(used) > 1:
        raise ValueError(f"{f} is not univariate")
    if not used:
        return [f.constant_term()]
    i = f.ring.index(next(iter(used)))
    deg = f.degree_in(i)
    out = [f.field.zero] * (deg + 1)
    for e, c in f.terms.items():
        out[e[i]] = c
    return out


def univariate_roots(f: MPoly, field: Field):
    return coeff_roots(_poly_coeffs_in(f), field)[0]


def _trim(c):
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _synthetic_div(c, r):
    """Divide sum c[k] t^k by (t - r); return (quotient, remainder)."""
    n = len(c) - 1
    q = [None] * n
    acc = c[n]
    for k in range(n - 1, -1, -1):
        q[k] = acc
        acc = c[k] + acc * r
    return q, acc


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def coeff_roots(coeffs: Sequence, field: Field):
    """Roots (with multiplicity) of sum coeffs[k] t^k over the field.

    Returns (roots, cofactor) where cofactor has no roots in the field.
    """
    c = _trim([field(a) for a in coeffs])
    if len(c) == 1:
        if c[0] == 0:
            raise ValueError("zero polynomial has every value as root")
        return [], c
    roots: list = []

    def strip(r):
        nonlocal c
        m = 0
        while len(c) > 1:
            q, rem = _synthetic_div(c, r)
            if rem != 0:
                break
            c = q
            m += 1
        if m:
            roots.append((r, m))

    if isinstance(field, PrimeField):
        for v in range(field.p):
            if len(c) == 1:
                break
            strip(field(v))
        return roots, c
    # rational root test on a primitive integer multiple
    strip(field(0))
    if len(c) > 1:
        den = 1
        for a in c:
            den = math.lcm(den, a.denominator)
        ints = [int(a * den) for a in c]
        cands = set()
        for pnum in _divisors(ints[0]):
            for qden in _divisors(ints[-1]):
                cands.add(Fraction(pnum, qden))
                cands.add(Fraction(-pnum, qden))
        for r in sorted(cands):
            if len(c) == 1:
                break
            strip(field(r))
    return roots, c


# restriction of a form to a line


def restrict_to_line(F: MPoly, p: Sequence, q: Sequence) -> list:
    """Coefficients c_k with F(s*p + t*q) = sum c_k s^(d-k) t^k."""
    field = F.field
    d = F.total_degree()
    out = [field.zero] * (d + 1)
    lin = [(field(a), field(b)) for a, b in zip(p, q)]
    for e, c in F.terms.items():
        poly = [c]
        for (a, b), k in zip(lin, e):
            for _ in range(k):
                nxt = [field.zero] * (len(poly) + 1)
                for i, v in enumerate(poly):
                    nxt[i] = nxt[i] + v * a
                    nxt[i + 1] = nxt[i + 1] + v * b
                poly = nxt
        for i, v in enumerate(poly):
            out[i] = out[i] + v
    return out


def _line_basis(L: MPoly):
    if L.total_degree() != 1 or not L.is_homogeneous():
        raise CurveError(f"{L} is not a linear form")
    field = L.field
    coeffs = [L.coefficient(tuple(int(i == j) for j in range(3))) for i in range(3)]
    basis = nullspace([coeffs], field)
    return basis[0], basis[1]


def line_section_divisor(C: PlaneCurve, L: MPoly) -> CurvePointDivisor:
    """The divisor cut on C by the line L = 0."""
    if L.ring != C.ring:
        L = L.change_ring(C.ring)
    p, q = _line_basis(L)
    coeffs = restrict_to_line(C.F, p, q)
    if all(c == 0 for c in coeffs):
        raise CurveError(f"line {L} is a component of {C}")
    d = C.degree
    # coeffs[k] multiplies s^(d-k) t^k; set s = 1 for finite roots, s = 0 is point q
    roots, rest = coeff_roots(coeffs, C.field)
    if len(rest) > 1:
        ring_t = PolyRing("t", C.field)
        fac = ring_t.from_dict({(k,): a for k, a in enumerate(rest)})
        raise IrrationalPointError(
            f"line {L} meets {C} in points not rational over {C.field}: "
            f"factor {fac} of the restriction (line param s*{_fmt(p)} + t*{_fmt(q)})"
        )
    mults: dict[ProjPoint, int] = {}
    for t, m in roots:
        mults[ProjPoint(tuple(a + t * b for a, b in zip(p, q)), C.field)] = m
    at_inf = d - (len(_trim(coeffs)) - 1)
    if at_inf:
        mults[ProjPoint(tuple(q), C.field)] = mults.get(ProjPoint(tuple(q), C.field), 0) + at_inf
    return CurvePointDivisor.of(C, mults)


def _fmt(v):
    return "(" + ":".join(scalar_str(a) for a in v) + ")"


def tangent_line(C: PlaneCurve, P: ProjPoint) -> MPoly:
    g = C.gradient(P)
    if all(a == 0 for a in g):
        raise NotSmoothError(f"{C} is singular at {P}")
    x, y, z = C.ring.gens
    return x * g[0] + y * g[1] + z * g[2]


# group law on a smooth cubic


class CubicGroupLaw:
    """Chord-tangent addition on a smooth plane cubic with base point O:
    P + Q = O * (P * Q), where X * Y is the third point on the line XY."""

    def __init__(self, C: PlaneCurve, O: ProjPoint):
        if C.degree != 3:
            raise CurveError("the group law needs a cubic")
        if not C.contains(O):
            raise CurveError(f"base point {O} is not on {C}")
        self.C = C
        self.O = O
        self.field = C.field
        self._tangential_O = None

    def third(self, P: ProjPoint, Q: ProjPoint) -> ProjPoint:
        F = self.C.F
        if P == Q:
            g = self.C.gradient(P)
            if all(a == 0 for a in g):
                raise NotSmoothError(f"{self.C} is singular at {P}")
            w = next(v for v in nullspace([list(g)], self.field) if ProjPoint(tuple(v), self.field) != P)
            c = restrict_to_line(F, P.coords, w)
            c2, c3 = c[2], c[3]
            if c2 == 0 and c3 == 0:
                raise CurveError("tangent line is a component of the curve")
            return ProjPoint(tuple(c3 * a - c2 * b for a, b in zip(P.coords, w)), self.field)
        c = restrict_to_line(F, P.coords, Q.coords)
        c1, c2 = c[1], c[2]
        if c1 == 0 and c2 == 0:
            raise CurveError("chord is a component of the curve")
        return ProjPoint(tuple(c2 * a - c1 * b for a, b in zip(P.coords, Q.coords)), self.field)

    def add(self, P: ProjPoint, Q: ProjPoint) -> ProjPoint:
        return self.third(self.O, self.third(P, Q))

    @property
    def tangential_O(self) -> ProjPoint:
        """O * O; as a class it is H - 3O."""
        if self._tangential_O is None:
            self._tangential_O = self.third(self.O, self.O)
        return self._tangential_O

    def neg(self, P: ProjPoint) -> ProjPoint:
        return self.third(P, self.tangential_O)

    def mul(self, k: int, P: ProjPoint) -> ProjPoint:
        if k < 0:
            return self.mul(-k, self.neg(P))
        result, base = self.O, P
        while k:
            if k & 1:
                result = self.add(result, base)
            k >>= 1
            if k:
                base = self.add(base, base)
        return result

    def sum(self, terms: Iterable[tuple[int, ProjPoint]]) -> ProjPoint:
        acc = self.O
        for n, P in terms:
            acc = self.add(acc, self.mul(n, P))
        return acc

    def hyperplane_point(self) -> ProjPoint:
        return self.tangential_O

    def order(self, P: ProjPoint, limit: int = 10**6) -> int:
        Q, n = P, 1
        while Q != self.O:
            Q = self.add(Q, P)
            n += 1
            if n > limit:
                raise CurveError("order search limit exceeded")
        return n


def cubic_add(C: PlaneCurve, O: ProjPoint, P: ProjPoint, Q: ProjPoint) -> ProjPoint:
    for X in (P, Q):
        if not C.contains(X):
            raise CurveError(f"{X} is not on {C}")
    return CubicGroupLaw(C, O).add(P, Q)


def verify_cone_relation(
    C: PlaneCurve,
    points: Sequence[ProjPoint],
    coeffs: Sequence[int],
    m: int,
    base: ProjPoint | None = None,
) -> bool:
    """Is sum n_i P_i linearly equivalent to m*H on the cubic C?"""
    if len(points) != len(coeffs):
        raise ValueError("one coefficient per point")
    if sum(coeffs) != C.degree * m:
        return False
    law = CubicGroupLaw(C, base if base is not None else points[0])
    lhs = law.sum(zip(coeffs, points))
    rhs = law.mul(m, law.hyperplane_point())
    return lhs == rhs


# finite abelian groups from closure under an operation


def closure_presentation(
    elements: Sequence[Hashable],
    add: Callable,
    zero: Hashable,
):
    """Present a finite abelian group given by its elements and addition.

    Returns (generators, relation rows, coordinate table).  Generators are
    picked greedily; each new generator g contributes the relation
    m*g = (its first multiple already in the span).
    """
    coords: dict = {zero: ()}
    gens: list = []
    rels: list[list[int]] = []
    for cand in elements:
        if cand in coords:
            continue
        k = len(gens)
        mult, m = cand, 1
        while mult not in coords:
            mult = add(mult, cand)
            m += 1
        back = list(coords[mult]) + [0] * (k - len(coords[mult]))
        rel = [-a for a in back] + [m]
        rels.append(rel)
        gens.append(cand)
        new: dict = {}
        span = list(coords.items())
        step = zero
        for j in range(m):
            for s, cs in span:
                e = add(s, step) if j else s
                new[e] = tuple(list(cs) + [0] * (k - len(cs)) + [j])
            step = add(step, cand)
        coords = new
    n = len(gens)
    rels = [r + [0] * (n - len(r)) for r in rels]
    coords = {e: tuple(list(c) + [0] * (n - len(c))) for e, c in coords.items()}
    return gens, rels, coords


@dataclass
class ConeClassGroup:
    """Pic C / <O_C(1)> for a smooth cubic over F_p, plus bookkeeping."""

    curve: PlaneCurve
    base: ProjPoint
    points: list[ProjPoint]
    group: FgAbGroup
    images: list[GroupElement]
    marked: list[ProjPoint]
    hyperplane_point: ProjPoint
    pic0_generators: list[ProjPoint]
    coordinates: dict

    @property
    def pic0_order(self) -> int:
        return len(self.points)

    def image_of(self, P: ProjPoint) -> GroupElement:
        return self.group.element((1,) + self.coordinates[P])

    def to_json(self) -> dict:
        return {
            "curve": str(self.curve),
            "field": self.curve.field.tag(),
            "base_point": str(self.base),
            "pic0_order": self.pic0_order,
            "hasse_ok": in_hasse_interval(self.pic0_order, self.curve.field.p),
            "hyperplane_point": str(self.hyperplane_point),
            "group": self.group.to_json(),
            "marked_points": [str(q) for q in self.marked],
            "images": [list(x.coords) for x in self.images],
        }


def in_hasse_interval(n: int, p: int) -> bool:
    return (n - p - 1) ** 2 <= 4 * p


def cone_class_group_fp(
    C: PlaneCurve,
    marked: Sequence[ProjPoint] = (),
    base: ProjPoint | None = None,
    p_limit: int = DEFAULT_P_LIMIT,
) -> ConeClassGroup:
    field = C.field
    if not isinstance(field, PrimeField):
        raise CurveError("full class groups are computed over prime fields only")
    if field.p > p_limit:
        raise CurveError(f"p = {field.p} exceeds the enumeration limit {p_limit}")
    if C.degree != 3:
        raise CurveError("cone class groups are implemented for cubics")
    cert = is_smooth_plane_curve(C)
    if not cert.smooth:
        raise NotSmoothError(f"{C} is not smooth over {field}: {cert.to_json()}")
    pts = C.rational_points()
    if not pts:
        raise CurveError(f"{C} has no {field}-rational point")
    for q in marked:
        if not C.contains(q):
            raise CurveError(f"marked point {q} is not on the curve")
    O = base if base is not None else (marked[0] if marked else pts[0])
    law = CubicGroupLaw(C, O)
    gens, rels, table = closure_presentation(pts, law.add, O)
    n = len(gens)
    sigma = law.hyperplane_point()
    rows = [[0] + r for r in rels] + [[3] + list(table[sigma])]
    group = group_from_presentation(IntMatrix(rows, n + 1), n + 1)
    images = [group.element((1,) + table[q]) for q in marked]
    return ConeClassGroup(C, O, pts, group, images, list(marked), sigma, gens, table)


def closure_oracle(law: CubicGroupLaw, generators: Sequence[tuple[int, ProjPoint]]) -> set:
    """Brute-force subgroup of Pic C / <H> generated by classes (deg, point).

    Elements are canonical pairs (deg mod 3, point); only the group law is
    used, never the Smith form.
    """
    sigma = law.hyperplane_point()
    neg_sigma = law.neg(sigma)

    def norm(k, P):
        while k >= 3:
            k -= 3
            P = law.add(P, neg_sigma)
        return (k, P)

    def plus(a, b):
        return norm(a[0] + b[0], law.add(a[1], b[1]))

    gens = [norm(k % 3, law.add(P, law.mul(-(k // 3), sigma))) for k, P in generators]
    zero = (0, law.O)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = plus(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def random_smooth_cubic(field: PrimeField, rng: random.Random, budget: int = 200) -> PlaneCurve:
    ring = PolyRing("x,y,z", field)
    monos = monomial_basis(3)
    for _ in range(budget):
        coeffs = [rng.randrange(field.p) for _ in monos]
        F = ring.from_dict(dict(zip(monos, coeffs)))
        if F.total_degree() != 3:
            continue
        C = PlaneCurve(F)
        if is_smooth_plane_curve(C).smooth and C.rational_points():
            return C
    raise CurveError(f"no smooth cubic with a rational point found in {budget} draws")


def independence_experiment(
    r: int,
    p: int,
    seed: int,
    height_bound: int | None = None,
    budget: int = 200,
) -> dict:
    """Random smooth cubic over F_p with r random points: the subgroup they
    generate in Pic/<O(1)>, its index, and every relation of height <= bound,
    cross-checked against brute-force closure under the group law."""
    if r < 1:
        raise ValueError("r >= 1")
    field = GF(p)
    rng = random.Random(seed)
    C = random_smooth_cubic(field, rng, budget)
    pts = C.rational_points()
    if len(pts) >= r:
        marked = rng.sample(pts, r)
    else:
        marked = [rng.choice(pts) for _ in range(r)]
    cg = cone_class_group_fp(C, marked, base=marked[0])
    H, index = subgroup_generated(cg.group, cg.images)
    law = CubicGroupLaw(C, cg.base)
    oracle = closure_oracle(law, [(1, q) for q in marked])
    if height_bound is None:
        height_bound = _default_height(r, cg.group.order)
    relations = find_relations(cg.group, cg.images, height_bound)
    rechecked = all(
        _relation_holds_by_group_law(law, marked, rel) for rel in relations[:25]
    )
    return {
        "r": r,
        "p": p,
        "seed": seed,
        "curve": str(C),
        "smoothness": is_smooth_plane_curve(C).to_json(),
        "base_point": str(cg.base),
        "marked_points": [str(q) for q in marked],
        "pic0_order": cg.pic0_order,
        "hasse_ok": in_hasse_interval(cg.pic0_order, p),
        "cone_group": str(cg.group),
        "cone_group_order": cg.group.order,
        "subgroup": str(H),
        "subgroup_order": H.order,
        "index": index,
        "oracle_subgroup_order": len(oracle),
        "oracle_agrees": len(oracle) == H.order and index * len(oracle) == cg.group.order,
        "height_bound": height_bound,
        "relations": relations,
        "relations_rechecked_by_group_law": rechecked,
        "images": [list(x.coords) for x in cg.images],
    }


def _default_height(r: int, order) -> int:
    # smallest b with (b+1)^r > |G| forces a relation of height <= b; cap the search size
    b = 1
    while (b + 1) ** r <= order and (2 * (b + 1) + 1) ** r <= 200_000:
        b += 1
    return b


def find_relations(group: FgAbGroup, images: Sequence[GroupElement], bound: int) -> list[list[int]]:
    """All nonzero c in [-bound, bound]^r (first nonzero entry positive) with sum c_i x_i = 0."""
    r = len(images)
    mods = list(group.invariants)
    ntors = len(mods)
    vecs = [group.snf_coordinates(x) for x in images]
    out = []
    for c in itertools.product(range(-bound, bound + 1), repeat=r):
        first = next((a for a in c if a), 0)
        if first <= 0:
            continue
        tot = [sum(ci * v[j] for ci, v in zip(c, vecs)) for j in range(len(vecs[0]) if vecs else 0)]
        if all(t % m == 0 for t, m in zip(tot[:ntors], mods)) and not any(tot[ntors:]):
            out.append(list(c))
    return out


def _relation_holds_by_group_law(law: CubicGroupLaw, marked, rel) -> bool:
    # sum c_i P_i ~ m H requires degree sum c_i = 3m
    deg = sum(rel)
    if deg % 3:
        return False
    return verify_cone_relation(law.C, list(marked), list(rel), deg // 3, base=law.O)


def affine_rational_zeros(polys: Sequence[MPoly], search_bound: int = 3) -> list[tuple]:
    """Rational common zeros of polynomials in affine space (zero-dimensional
    systems are solved completely; positive-dimensional ones are sampled)."""
    polys = [f for f in polys if not f.is_zero()]
    if not polys:
        raise ValueError("need at least one nonzero polynomial")
    ring = polys[0].ring
    sols = _rational_solutions(polys, list(range(ring.nvars)), {}, ring.field, search_bound)
    out = []
    for s in sols:
        t = tuple(s[i] for i in range(ring.nvars))
        if t not in out:
            out.append(t)
    return out
