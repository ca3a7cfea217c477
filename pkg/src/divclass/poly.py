"""Sparse multivariate polynomials with exact coefficients.

A polynomial is a map from exponent tuples to nonzero field scalars, bound to
a :class:`PolyRing` that fixes the variable names and the coefficient field.
Values are never mutated after construction.

Text format: ``x*y - z^2``, ``3/2*x^3 + (x - y)^2``.  Printing uses graded
reverse lexicographic order, and ``ring.parse(str(f)) == f`` always holds.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .field import QQ, Field, FieldMismatch, scalar_str

Exponent = tuple[int, ...]


def grevlex_key(e: Exponent):
    return (sum(e), tuple(-a for a in reversed(e)))


class PolyRing:
    def __init__(self, names: Sequence[str] | str, field: Field = QQ):
        if isinstance(names, str):
            names = [n.strip() for n in names.split(",") if n.strip()]
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        for n in self.names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9']*", n):
                raise ValueError(f"bad variable name {n!r}")
        self.field = field
        self.nvars = len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"PolyRing({','.join(self.names)}; {self.field!r})"

    # constructors

    def __call__(self, x) -> "MPoly":
        if isinstance(x, MPoly):
            if x.ring != self:
                raise FieldMismatch(f"{x.ring} vs {self}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        return self.const(x)

    def const(self, c) -> "MPoly":
        c = self.field(c)
        if c == 0:
            return MPoly(self, {})
        return MPoly(self, {(0,) * self.nvars: c})

    @property
    def zero(self) -> "MPoly":
        return MPoly(self, {})

    @property
    def one(self) -> "MPoly":
        return self.const(1)

    def monomial(self, exp: Exponent, coeff=1) -> "MPoly":
        if len(exp) != self.nvars:
            raise ValueError("exponent arity mismatch")
        c = self.field(coeff)
        return MPoly(self, {tuple(exp): c} if c != 0 else {})

    def var(self, name: str | int) -> "MPoly":
        i = self.index(name) if isinstance(name, str) else name
        e = [0] * self.nvars
        e[i] = 1
        return MPoly(self, {tuple(e): self.field.one})

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a variable of {self}") from None

    @property
    def gens(self) -> tuple["MPoly", ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def from_dict(self, terms: dict) -> "MPoly":
        out = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != self.nvars:
                raise ValueError("exponent arity mismatch")
            c = self.field(c)
            if c != 0:
                out[e] = c
        return MPoly(self, out)

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(self.names, field)

    def parse(self, text: str) -> "MPoly":
        return _Parser(self, text).parse()

    def monomials_of_degree(self, d: int) -> list[Exponent]:
        return list(_compositions(d, self.nvars))


def _compositions(d: int, n: int):
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _compositions(d - a, n - 1):
            yield (a,) + rest


class MPoly:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # basic structure

    @property
    def field(self) -> Field:
        return self.ring.field

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def total_degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def order(self) -> int:
        """Minimal total degree of a term (the order at the origin); -1 for zero."""
        return min((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: str | int) -> int:
        i = self.ring.index(var) if isinstance(var, str) else var
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, k: int) -> "MPoly":
        return MPoly(self.ring, {e: c for e, c in self.terms.items() if sum(e) == k})

    def lowest_form(self) -> "MPoly":
        return self.homogeneous_part(self.order()) if self.terms else self

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.field.zero)

    def coefficient(self, exp: Exponent):
        return self.terms.get(tuple(exp), self.field.zero)

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            for i, a in enumerate(e):
                if a:
                    used.add(self.ring.names[i])
        return used

    # arithmetic

    def _lift(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise FieldMismatch(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s == 0:
                    del out[e]
                else:
                    out[e] = s
        return MPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "MPoly":
        c = self.field(c)
        if c == 0:
            return self.ring.zero
        return MPoly(self.ring, {e: a * c for e, a in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other: "MPoly", trunc: int | None = None) -> "MPoly":
        """Product, optionally dropping every term of total degree > ``trunc``."""
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if trunc is not None and d1 + sum(e2) > trunc:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return MPoly(self.ring, {e: c for e, c in out.items() if c != 0})

    def mul_term(self, exp: Exponent, coeff) -> "MPoly":
        if coeff == 0:
            return self.ring.zero
        return MPoly(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): c * coeff for e, c in self.terms.items()},
        )

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def pow_trunc(self, k: int, trunc: int) -> "MPoly":
        result = self.ring.one
        for _ in range(k):
            result = result.mul(self, trunc)
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int,)) or self.field.is_element(other):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # calculus and composition

    def diff(self, var: str | int) -> "MPoly":
        i = self.ring.index(var) if isinstance(var, str) else var
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = c * e[i]
                if d != 0:
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = d
        return MPoly(self.ring, out)

    def substitute(self, images: Sequence["MPoly"], trunc: int | None = None) -> "MPoly":
        """Compose: replace variable ``i`` by ``images[i]``.

        The images may live in a different ring (same field).  With ``trunc``
        every intermediate product is truncated above that total degree.
        """
        if len(images) != self.ring.nvars:
            raise ValueError(
                f"substitute needs {self.ring.nvars} images, got {len(images)}"
            )
        if not images:
            return self
        target = images[0].ring
        for im in images:
            if im.ring != target:
                raise FieldMismatch("images live in different rings")
        if target.field != self.field:
            raise FieldMismatch(f"{self.field} vs {target.field}")
        powers: list[dict[int, MPoly]] = [{0: target.one, 1: im} for im in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                j = max(a for a in cache if a < k)
                cache[k] = power(i, j).mul(power(i, k - j), trunc)
            return cache[k]

        out = target.zero
        for e, c in self.terms.items():
            t = target.const(c)
            for i, k in enumerate(e):
                if k:
                    t = t.mul(power(i, k), trunc)
                    if not t:
                        break
            out = out + t
        return out

    def truncate(self, n: int) -> "MPoly":
        return MPoly(self.ring, {e: c for e, c in self.terms.items() if sum(e) <= n})

    def evaluate(self, point: Sequence):
        if len(point) != self.ring.nvars:
            raise ValueError("point arity mismatch")
        pt = [self.field(v) for v in point]
        total = self.field.zero
        for e, c in self.terms.items():
            t = c
            for v, k in zip(pt, e):
                if k:
                    t = t * v**k
            total = total + t
        return total

    def change_ring(self, ring: PolyRing, var_map: dict[str, str] | None = None) -> "MPoly":
        """Re-express in ``ring`` by variable name (optionally renamed via ``var_map``)."""
        var_map = var_map or {}
        used = self.variables()
        idx = [ring.index(var_map.get(n, n)) if n in used else -1 for n in self.ring.names]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    ne[idx[i]] += k
            out[tuple(ne)] = ring.field(c) if ring.field != self.field else c
        return ring.from_dict(out)

    def var_power_dividing(self, var: str | int) -> int:
        """Largest k such that var^k divides the polynomial (0 for the zero polynomial)."""
        i = self.ring.index(var) if isinstance(var, str) else var
        return min((e[i] for e in self.terms), default=0)

    def divide_by_var(self, var: str | int, k: int) -> "MPoly":
        i = self.ring.index(var) if isinstance(var, str) else var
        out = {}
        for e, c in self.terms.items():
            if e[i] < k:
                raise ValueError(f"{self.ring.names[i]}^{k} does not divide {self}")
            ne = list(e)
            ne[i] -= k
            out[tuple(ne)] = c
        return MPoly(self.ring, out)

    # printing

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}"
                for n, k in zip(self.ring.names, e)
                if k
            )
            neg = _is_negative(c)
            a = -c if neg else c
            if not mono:
                body = scalar_str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{scalar_str(a)}*{mono}"
            parts.append(("-", body) if neg else ("+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"MPoly({str(self)!r})"


def _is_negative(c) -> bool:
    # F_p scalars are printed as canonical residues, never negated
    try:
        return c < 0
    except TypeError:
        return False


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.toks = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse {text!r} at position {pos}")
            num, name, op = m.groups()
            if num is not None:
                self.toks.append(("num", int(num)))
            elif name is not None:
                self.toks.append(("var", name))
            else:
                self.toks.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> MPoly:
        if not self.toks:
            raise ValueError("empty polynomial text")
        f = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"trailing input in {self.text!r}")
        return f

    def expr(self):
        f = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self):
        f = self.unary()
        while True:
            t = self.peek()
            if t == ("op", "*"):
                self.take()
                f = f * self.unary()
            elif t == ("op", "/"):
                self.take()
                d = self.unary()
                if d.total_degree() > 0 or d.is_zero():
                    raise ValueError("division only by nonzero constants")
                f = f * (self.ring.field.one / d.constant_term())
            else:
                return f

    def unary(self):
        t = self.peek()
        if t == ("op", "-"):
            self.take()
            return -self.unary()
        if t == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, k = self.take()
            if kind != "num":
                raise ValueError("exponent must be a non-negative integer")
            return base**k
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(val)
        if kind == "var":
            if val not in self.ring.names:
                raise ValueError(f"unknown variable {val!r} in {self.text!r}; declared {format_header(self.ring)}")
            return self.ring.var(val)
        if (kind, val) == ("op", "("):
            f = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError(f"unbalanced parentheses in {self.text!r}")
            return f
        raise ValueError(f"unexpected token {val!r} in {self.text!r}")


def substitute(f: MPoly, images: Sequence[MPoly]) -> MPoly:
    return f.substitute(images)


def jet_truncate(f: MPoly, n: int) -> MPoly:
    """Drop every monomial of total degree > n."""
    if n < 0:
        raise ValueError("truncation order must be >= 0")
    return f.truncate(n)


def jacobian_generators(polys: Iterable[MPoly]) -> list[MPoly]:
    """All partials dF_i/dx_j, i-major then j-minor."""
    polys = list(polys)
    if not polys:
        raise ValueError("need at least one polynomial")
    ring = polys[0].ring
    for f in polys:
        if f.ring != ring:
            raise FieldMismatch("polynomials over different rings")
    return [f.diff(j) for f in polys for j in range(ring.nvars)]


def format_header(ring: PolyRing) -> str:
    return ",".join(ring.names)
