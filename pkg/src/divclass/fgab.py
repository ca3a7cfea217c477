"""Finitely generated abelian groups given by integer relation matrices.

A group is Z^g modulo the row span of its relation matrix.  Elements keep
their coordinates in the original generators, so a divisor class stays
readable as a combination of the curves that produced it; the invariant
factor coordinates are computed on demand from the Smith form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .intmat import IntMatrix, smith_normal_form

INFINITE = math.inf


class GroupMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FgAbGroup:
    ngens: int
    relations: IntMatrix
    # populated in __post_init__
    invariants: tuple[int, ...] = field(init=False)
    free_rank: int = field(init=False)
    _v: IntMatrix = field(init=False, repr=False)
    _moduli: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.relations.ncols != self.ngens:
            raise GroupMismatch(
                f"relation matrix has {self.relations.ncols} columns, expected {self.ngens}"
            )
        _, s, v = smith_normal_form(self.relations)
        moduli = []
        for j in range(self.ngens):
            d = s[j, j] if j < s.nrows else 0
            moduli.append(d)
        object.__setattr__(self, "_v", v)
        object.__setattr__(self, "_moduli", tuple(moduli))
        object.__setattr__(self, "invariants", tuple(d for d in moduli if d > 1))
        object.__setattr__(self, "free_rank", sum(1 for d in moduli if d == 0))

    def __eq__(self, other):
        """Isomorphism of abstract groups."""
        return (
            isinstance(other, FgAbGroup)
            and self.invariants == other.invariants
            and self.free_rank == other.free_rank
        )

    def __hash__(self):
        return hash((self.invariants, self.free_rank))

    @property
    def order(self):
        if self.free_rank:
            return INFINITE
        return math.prod(self.invariants)

    def exponent(self):
        if self.free_rank:
            return INFINITE
        return self.invariants[-1] if self.invariants else 1

    def is_trivial(self) -> bool:
        return not self.free_rank and not self.invariants

    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, tuple(int(c) for c in coords))

    def gen(self, i: int) -> "GroupElement":
        return self.element([int(i == j) for j in range(self.ngens)])

    @property
    def zero(self) -> "GroupElement":
        return self.element([0] * self.ngens)

    def snf_coordinates(self, x: "GroupElement") -> tuple[int, ...]:
        """Coordinates against the cyclic factors: torsion parts reduced mod d_i, then free parts."""
        self._check(x)
        y = [sum(a * self._v[i, j] for i, a in enumerate(x.coords)) for j in range(self.ngens)]
        tors = tuple(y[j] % d for j, d in enumerate(self._moduli) if d > 1)
        free = tuple(y[j] for j, d in enumerate(self._moduli) if d == 0)
        return tors + free

    def is_zero(self, x: "GroupElement") -> bool:
        return not any(self.snf_coordinates(x))

    def _check(self, x: "GroupElement"):
        if len(x.coords) != self.ngens:
            raise GroupMismatch(
                f"element has {len(x.coords)} coordinates, group has {self.ngens} generators"
            )

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.invariants]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "group": str(self),
            "invariant_factors": list(self.invariants),
            "free_rank": self.free_rank,
            "generators": self.ngens,
            "relations": self.relations.tolist(),
        }


@dataclass(frozen=True, eq=False)
class GroupElement:
    group: FgAbGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        self.group._check(self)

    def _same(self, other: "GroupElement"):
        if not isinstance(other, GroupElement) or other.group is not self.group:
            if not (
                isinstance(other, GroupElement)
                and other.group.ngens == self.group.ngens
                and other.group.relations == self.group.relations
            ):
                raise GroupMismatch("elements of different groups")

    def __add__(self, other):
        self._same(other)
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return GroupElement(self.group, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int):
        return GroupElement(self.group, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        self._same(other)
        return self.group.is_zero(self - other)

    def __hash__(self):
        return hash(self.group.snf_coordinates(self))

    def is_zero(self) -> bool:
        return self.group.is_zero(self)

    def order(self):
        return element_order(self.group, self)

    def __repr__(self):
        return f"GroupElement({list(self.coords)} in {self.group})"


def group_from_presentation(rels: IntMatrix | Sequence[Sequence[int]], gens: int) -> FgAbGroup:
    if not isinstance(rels, IntMatrix):
        rels = IntMatrix(rels, gens)
    if rels.ncols != gens:
        raise GroupMismatch(f"relation matrix has {rels.ncols} columns, expected {gens}")
    return FgAbGroup(gens, rels)


def cyclic(n: int) -> FgAbGroup:
    return group_from_presentation([[n]], 1)


def element_order(g: FgAbGroup, x: GroupElement):
    coords = g.snf_coordinates(x)
    ntors = len(g.invariants)
    if any(coords[ntors:]):
        return INFINITE
    n = 1
    for c, d in zip(coords[:ntors], g.invariants):
        n = math.lcm(n, d // math.gcd(c, d))
    return n


def left_kernel(m: IntMatrix) -> list[list[int]]:
    """Basis of the integer vectors c with c @ m == 0."""
    u, s, _ = smith_normal_form(m)
    rank = sum(1 for i in range(min(s.nrows, s.ncols)) if s[i, i])
    return [list(u.rows[i]) for i in range(rank, m.nrows)]


def subgroup_generated(g: FgAbGroup, xs: Sequence[GroupElement]):
    """Return (H, index): H is the subgroup spanned by xs, index |G:H| (inf if not finite)."""
    for x in xs:
        g._check(x)
    s = len(xs)
    if s == 0:
        h = group_from_presentation(IntMatrix([], 0), 0)
    else:
        stacked = IntMatrix([list(x.coords) for x in xs] + g.relations.tolist(), g.ngens)
        ker = [row[:s] for row in left_kernel(stacked)]
        h = group_from_presentation(IntMatrix(ker, s), s)
    quotient = group_from_presentation(
        IntMatrix(g.relations.tolist() + [list(x.coords) for x in xs], g.ngens), g.ngens
    )
    return h, quotient.order


def quotient_group(g: FgAbGroup, xs: Sequence[GroupElement]) -> FgAbGroup:
    return group_from_presentation(
        IntMatrix(g.relations.tolist() + [list(x.coords) for x in xs], g.ngens), g.ngens
    )


def parse_group(text: str) -> tuple[int, tuple[int, ...]]:
    """Parse ``Z^r + Z/d1 + ...`` into (free rank, invariant factors)."""
    text = text.strip()
    if text == "0":
        return 0, ()
    r, inv = 0, []
    for part in text.split("+"):
        part = part.strip()
        if part == "Z":
            r += 1
        elif part.startswith("Z^"):
            r += int(part[2:])
        elif part.startswith("Z/"):
            inv.append(int(part[2:]))
        else:
            raise ValueError(f"cannot parse group component {part!r}")
    return r, tuple(inv)
