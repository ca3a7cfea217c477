"""Coefficient fields: the rationals and prime fields F_p.

Rational scalars are plain :class:`fractions.Fraction` values.  Prime-field
scalars are :class:`Fp` instances, which carry their modulus so that mixing
elements of different fields raises instead of silently wrapping.
"""

from __future__ import annotations

from fractions import Fraction

MAX_PRIME = 2**31


class FieldMismatch(TypeError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Fp:
    """Element of F_p with canonical representative in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            raise FieldMismatch(f"F_{self.p} vs QQ")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def inverse(self) -> "Fp":
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.p) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class Field:
    """A coefficient field.  Use the module-level :data:`QQ` or :func:`GF`."""

    char: int

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def is_element(self, x) -> bool:
        raise NotImplementedError

    def elements(self):
        raise TypeError(f"{self} is infinite")


class RationalField(Field):
    char = 0

    def __call__(self, x):
        if isinstance(x, Fp):
            raise FieldMismatch("F_p element coerced into QQ")
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    def is_element(self, x) -> bool:
        return isinstance(x, Fraction)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def tag(self) -> str:
        return "q"


class PrimeField(Field):
    def __init__(self, p: int):
        if not (2 <= p < MAX_PRIME) or not _is_prime(p):
            raise ValueError(f"{p} is not a prime below 2^31")
        self.p = p
        self.char = p

    def __call__(self, x):
        if isinstance(x, Fp):
            if x.p != self.p:
                raise FieldMismatch(f"F_{x.p} element coerced into F_{self.p}")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return Fp(x.numerator, self.p) / x.denominator
        return Fp(int(x), self.p)

    def is_element(self, x) -> bool:
        return isinstance(x, Fp) and x.p == self.p

    def elements(self):
        return [Fp(i, self.p) for i in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def tag(self) -> str:
        return f"fp:{self.p}"


QQ = RationalField()

_prime_fields: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _prime_fields:
        _prime_fields[p] = PrimeField(p)
    return _prime_fields[p]


def field_from_tag(tag: str) -> Field:
    """Parse ``q`` / ``QQ`` or ``fp:<p>``."""
    t = tag.strip().lower()
    if t in ("q", "qq"):
        return QQ
    if t.startswith("fp:"):
        return GF(int(t[3:]))
    raise ValueError(f"unknown field tag {tag!r}; expected 'q' or 'fp:<p>'")


def scalar_str(c) -> str:
    if isinstance(c, Fraction) and c.denominator == 1:
        return str(c.numerator)
    return str(c)
