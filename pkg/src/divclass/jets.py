"""Truncated coordinate changes x_i -> x_i + h_i fixing the origin."""

from __future__ import annotations

from dataclasses import dataclass

from .poly import MPoly, PolyRing

DEFAULT_JET_ORDER = 10


@dataclass(frozen=True)
class JetMap:
    """Perturbation h of the identity, truncated at total degree ``order``.

    ``apply(f)`` is the jet of f(x_1 + h_1, ..., x_n + h_n).
    """

    h: tuple[MPoly, ...]
    order: int = DEFAULT_JET_ORDER

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("jet order must be >= 1")
        if not self.h:
            raise ValueError("empty jet map")
        ring = self.h[0].ring
        if len(self.h) != ring.nvars:
            raise ValueError("need one component per variable")
        fixed = []
        for hi in self.h:
            if hi.ring != ring:
                raise ValueError("components over different rings")
            if hi.constant_term() != 0:
                raise ValueError(f"component {hi} moves the origin")
            fixed.append(hi.truncate(self.order))
        object.__setattr__(self, "h", tuple(fixed))

    @classmethod
    def identity(cls, ring: PolyRing, order: int = DEFAULT_JET_ORDER) -> "JetMap":
        return cls(tuple(ring.zero for _ in range(ring.nvars)), order)

    @property
    def ring(self) -> PolyRing:
        return self.h[0].ring

    def images(self) -> list[MPoly]:
        return [x + hi for x, hi in zip(self.ring.gens, self.h)]

    def apply(self, f: MPoly) -> MPoly:
        return f.substitute(self.images(), trunc=self.order)

    def is_identity(self) -> bool:
        return all(hi.is_zero() for hi in self.h)

    def to_json(self) -> dict:
        return {
            "vars": list(self.ring.names),
            "order": self.order,
            "h": [str(hi) for hi in self.h],
        }
