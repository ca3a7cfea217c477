"""Buchberger's algorithm and ideal operations over QQ and F_p.

Everything works on :class:`~divclass.poly.MPoly` generators.  Intersections
use the tag-variable construction t*I + (1 - t)*J followed by elimination of
t under a block order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .field import QQ
from .poly import Exponent, MPoly, PolyRing, grevlex_key


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``lex``, or ``block``: grevlex on the first ``split``
    variables, ties broken by grevlex on the rest (an elimination order)."""

    kind: str = "grevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.split < 1:
            raise ValueError("block order needs split >= 1")

    def key(self, e: Exponent):
        if self.kind == "grevlex":
            return grevlex_key(e)
        if self.kind == "lex":
            return e
        k = self.split
        return (grevlex_key(e[:k]), grevlex_key(e[k:]))

    def tag(self) -> str:
        return self.kind if self.kind != "block" else f"block:{self.split}"

    @classmethod
    def from_tag(cls, tag: str) -> "MonomialOrder":
        if tag.startswith("block:"):
            return cls("block", int(tag[6:]))
        return cls(tag)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def leading_monomial(f: MPoly, order: MonomialOrder = GREVLEX) -> Exponent:
    if f.is_zero():
        raise ValueError("zero polynomial has no leading monomial")
    return max(f.terms, key=order.key)


def leading_coefficient(f: MPoly, order: MonomialOrder = GREVLEX):
    return f.terms[leading_monomial(f, order)]


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _monic(f: MPoly, order: MonomialOrder) -> MPoly:
    if f.is_zero():
        return f
    return f.scale(f.field.one / leading_coefficient(f, order))


def _primitive(f: MPoly, order: MonomialOrder) -> MPoly:
    """Scale to coprime integer coefficients with positive leading coefficient
    over QQ; monic over F_p."""
    if f.is_zero() or f.field != QQ:
        return _monic(f, order)
    den = 1
    for c in f.terms.values():
        den = lcm(den, c.denominator)
    num = 0
    for c in f.terms.values():
        num = gcd(num, (c * den).numerator)
    s = Fraction(den, num)
    if leading_coefficient(f, order) < 0:
        s = -s
    return f.scale(s)


class _Basis:
    """Polynomials with cached leading data, for the inner loops."""

    def __init__(self, order: MonomialOrder):
        self.order = order
        self.polys: list[MPoly] = []
        self.lms: list[Exponent] = []
        self.lcs: list = []

    def add(self, f: MPoly) -> int:
        lm = leading_monomial(f, self.order)
        self.polys.append(f)
        self.lms.append(lm)
        self.lcs.append(f.terms[lm])
        return len(self.polys) - 1


def _reduce(f: MPoly, basis: _Basis, active: Sequence[int] | None = None, rng=None) -> MPoly:
    """Full normal form of f by the basis polynomials with indices in ``active``."""
    order = basis.order
    idx = range(len(basis.polys)) if active is None else active
    p = dict(f.terms)
    rem = {}
    key = order.key
    while p:
        lm = max(p, key=key)
        c = p[lm]
        cands = [i for i in idx if _divides(basis.lms[i], lm)]
        if not cands:
            rem[lm] = c
            del p[lm]
            continue
        i = rng.choice(cands) if rng is not None else cands[0]
        g, glm = basis.polys[i], basis.lms[i]
        coef = c / basis.lcs[i]
        shift = tuple(a - b for a, b in zip(lm, glm))
        for e, gc in g.terms.items():
            ne = tuple(a + b for a, b in zip(e, shift))
            v = p.get(ne)
            v = -coef * gc if v is None else v - coef * gc
            if v == 0:
                p.pop(ne, None)
            else:
                p[ne] = v
    return MPoly(f.ring, rem)


def s_polynomial(f: MPoly, g: MPoly, order: MonomialOrder = GREVLEX) -> MPoly:
    lf, lg = leading_monomial(f, order), leading_monomial(g, order)
    m = _lcm_exp(lf, lg)
    a = f.mul_term(tuple(x - y for x, y in zip(m, lf)), f.field.one / f.terms[lf])
    b = g.mul_term(tuple(x - y for x, y in zip(m, lg)), g.field.one / g.terms[lg])
    return a - b


def buchberger(gens: Iterable[MPoly], order: MonomialOrder = GREVLEX) -> list[MPoly]:
    """Reduced Groebner basis, sorted by decreasing leading monomial, monic."""
    basis = _Basis(order)
    for f in gens:
        if not f.is_zero():
            f = _reduce(f, basis) if basis.polys else f
            if not f.is_zero():
                basis.add(_primitive(f, order))
    # the reduction above may leave earlier elements reducible; pairs handle that
    n = len(basis.polys)
    pairs = {(i, j) for i in range(n) for j in range(i + 1, n)}
    done: set[tuple[int, int]] = set()
    key = order.key
    while pairs:
        i, j = min(pairs, key=lambda ij: (sum(_lcm_exp(basis.lms[ij[0]], basis.lms[ij[1]])), key(_lcm_exp(basis.lms[ij[0]], basis.lms[ij[1]])), ij))
        pairs.discard((i, j))
        done.add((i, j))
        li, lj = basis.lms[i], basis.lms[j]
        m = _lcm_exp(li, lj)
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # coprime leading monomials
        if any(
            k not in (i, j)
            and _divides(basis.lms[k], m)
            and (min(i, k), max(i, k)) in done
            and (min(j, k), max(j, k)) in done
            for k in range(len(basis.polys))
        ):
            continue  # chain criterion
        h = _reduce(s_polynomial(basis.polys[i], basis.polys[j], order), basis)
        if h.is_zero():
            continue
        k = basis.add(_primitive(h, order))
        pairs |= {(a, k) for a in range(k)}
    return _interreduce(basis)


def _interreduce(basis: _Basis) -> list[MPoly]:
    order = basis.order
    n = len(basis.polys)
    keep = []
    for i in range(n):
        if any(
            j != i
            and _divides(basis.lms[j], basis.lms[i])
            and (basis.lms[j] != basis.lms[i] or j < i)
            for j in range(n)
        ):
            continue
        keep.append(i)
    out = []
    for i in keep:
        others = [j for j in keep if j != i]
        tail = basis.polys[i] - MPoly(basis.polys[i].ring, {basis.lms[i]: basis.lcs[i]})
        red = _reduce(tail, basis, others)
        f = red + MPoly(red.ring, {basis.lms[i]: basis.lcs[i]})
        out.append(_monic(f, order))
    out.sort(key=lambda f: order.key(leading_monomial(f, order)), reverse=True)
    return out


def is_groebner_basis(g: Sequence[MPoly], order: MonomialOrder = GREVLEX) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    basis = _Basis(order)
    for f in g:
        basis.add(f)
    for i in range(len(g)):
        for j in range(i + 1, len(g)):
            if not _reduce(s_polynomial(g[i], g[j], order), basis).is_zero():
                return False
    return True


def is_reduced_basis(g: Sequence[MPoly], order: MonomialOrder = GREVLEX) -> bool:
    lms = [leading_monomial(f, order) for f in g]
    for i, f in enumerate(g):
        if leading_coefficient(f, order) != 1:
            return False
        for j, lm in enumerate(lms):
            if j == i:
                continue
            if any(_divides(lm, e) for e in f.terms):
                return False
    return True


def normal_form(f: MPoly, basis: Sequence[MPoly], order: MonomialOrder = GREVLEX, rng: random.Random | None = None) -> MPoly:
    """Reduce f by ``basis``; with ``rng`` the divisor at each step is chosen at random."""
    b = _Basis(order)
    for g in basis:
        if not g.is_zero():
            b.add(g)
    return _reduce(f, b, rng=rng)


@dataclass(frozen=True, eq=False)
class IdealPresentation:
    ring: PolyRing
    gens: tuple[MPoly, ...]
    basis: tuple[MPoly, ...] | None = None
    order: MonomialOrder | None = None

    def __post_init__(self):
        gens = tuple(self.gens)
        for g in gens:
            if g.ring != self.ring:
                raise RingMismatch(f"generator {g} is not in {self.ring}")
        object.__setattr__(self, "gens", gens)

    @classmethod
    def of(cls, ring: PolyRing, gens: Iterable[MPoly | str]) -> "IdealPresentation":
        return cls(ring, tuple(ring(g) for g in gens))

    def groebner(self, order: MonomialOrder = GREVLEX) -> "IdealPresentation":
        if self.basis is not None and self.order == order:
            return self
        return IdealPresentation(self.ring, self.gens, tuple(buchberger(self.gens, order)), order)

    def reduce(self, f: MPoly) -> MPoly:
        gb = self.groebner(self.order or GREVLEX)
        return normal_form(f, gb.basis, gb.order)

    def contains(self, f: MPoly) -> bool:
        return self.reduce(f).is_zero()

    def is_unit(self) -> bool:
        return self.contains(self.ring.one)

    def __add__(self, other: "IdealPresentation") -> "IdealPresentation":
        return ideal_sum(self, other)

    def __mul__(self, other: "IdealPresentation") -> "IdealPresentation":
        return ideal_product(self, other)

    def __and__(self, other: "IdealPresentation") -> "IdealPresentation":
        return ideal_intersection(self, other)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def to_json(self) -> dict:
        return {
            "vars": list(self.ring.names),
            "field": self.ring.field.tag(),
            "order": (self.order or GREVLEX).tag(),
            "generators": [str(g) for g in self.gens],
        }

    @classmethod
    def from_json(cls, d: dict) -> "IdealPresentation":
        from .field import field_from_tag

        ring = PolyRing(d["vars"], field_from_tag(d.get("field", "q")))
        return cls.of(ring, d["generators"])


def _same_ring(i: IdealPresentation, j: IdealPresentation):
    if i.ring != j.ring:
        raise RingMismatch(f"{i.ring} vs {j.ring}")


def groebner_basis(i: IdealPresentation, order: MonomialOrder = GREVLEX) -> IdealPresentation:
    return i.groebner(order)


def membership(f: MPoly, i: IdealPresentation) -> tuple[MPoly, bool]:
    if f.ring != i.ring:
        raise RingMismatch(f"{f.ring} vs {i.ring}")
    nf = i.reduce(f)
    return nf, nf.is_zero()


def ideal_sum(i: IdealPresentation, j: IdealPresentation) -> IdealPresentation:
    _same_ring(i, j)
    return IdealPresentation(i.ring, i.gens + j.gens)


def ideal_product(i: IdealPresentation, j: IdealPresentation) -> IdealPresentation:
    _same_ring(i, j)
    prods = []
    seen = set()
    for f in i.gens:
        for g in j.gens:
            h = f * g
            if not h.is_zero() and h not in seen:
                seen.add(h)
                prods.append(h)
    return IdealPresentation(i.ring, tuple(prods))


def unit_ideal(ring: PolyRing) -> IdealPresentation:
    return IdealPresentation(ring, (ring.one,))


def eliminate(i: IdealPresentation, drop_vars: Iterable[str]) -> IdealPresentation:
    """Generators of I ∩ k[remaining variables], as an ideal of the smaller ring."""
    drop = [v for v in i.ring.names if v in set(drop_vars)]
    unknown = set(drop_vars) - set(i.ring.names)
    if unknown:
        raise RingMismatch(f"{sorted(unknown)} are not variables of {i.ring}")
    keep = [v for v in i.ring.names if v not in drop]
    sub = PolyRing(keep, i.ring.field)
    if not drop:
        return IdealPresentation(sub, tuple(g.change_ring(sub) for g in i.gens))
    big = PolyRing(drop + keep, i.ring.field)
    order = MonomialOrder("block", len(drop))
    gb = buchberger([g.change_ring(big) for g in i.gens], order)
    k = len(drop)
    kept = [g for g in gb if all(not any(e[:k]) for e in g.terms)]
    return IdealPresentation(sub, tuple(g.change_ring(sub) for g in kept))


def _fresh_name(ring: PolyRing, base: str = "t") -> str:
    name = base
    while name in ring.names:
        name += "_"
    return name


def ideal_intersection(i: IdealPresentation, j: IdealPresentation) -> IdealPresentation:
    _same_ring(i, j)
    t = _fresh_name(i.ring)
    big = PolyRing((t,) + i.ring.names, i.ring.field)
    tv = big.var(t)
    gens = [tv * f.change_ring(big) for f in i.gens]
    gens += [(big.one - tv) * g.change_ring(big) for g in j.gens]
    out = eliminate(IdealPresentation(big, tuple(gens)), [t])
    return IdealPresentation(i.ring, tuple(g.change_ring(i.ring) for g in out.gens))


def intersect_all(ideals: Sequence[IdealPresentation], ring: PolyRing | None = None) -> IdealPresentation:
    """Intersection of a list of ideals; the empty intersection is the unit ideal."""
    if not ideals:
        if ring is None:
            raise ValueError("ring required for the empty intersection")
        return unit_ideal(ring)
    acc = ideals[0]
    for nxt in ideals[1:]:
        acc = ideal_intersection(acc, nxt)
    return acc


def ideal_contains(big: IdealPresentation, small: IdealPresentation) -> bool:
    _same_ring(big, small)
    gb = big.groebner(big.order or GREVLEX)
    return all(gb.contains(g) for g in small.gens)


def ideal_equal(i: IdealPresentation, j: IdealPresentation) -> bool:
    _same_ring(i, j)
    return ideal_contains(i, j) and ideal_contains(j, i)


def monomial_power_ideal(ring: PolyRing, n: int) -> IdealPresentation:
    """The ideal generated by all monomials of total degree n."""
    return IdealPresentation(ring, tuple(ring.monomial(e) for e in ring.monomials_of_degree(n)))


def quotient_by_variable(i: IdealPresentation, var: str) -> IdealPresentation:
    """(I : v) for a variable v, computed as (I ∩ (v)) / v."""
    v = i.ring.var(var)
    meet = ideal_intersection(i, IdealPresentation(i.ring, (v,)))
    return IdealPresentation(i.ring, tuple(g.divide_by_var(var, 1) for g in meet.gens))
