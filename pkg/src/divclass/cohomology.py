"""Dimensions of H^i(O_X(k)) for hypersurfaces X of degree d in P^n.

From 0 -> O(k - d) -> O(k) -> O_X(k) -> 0 and the cohomology of P^n:

    h^0(O_X(k))     = h^0(O(k)) - h^0(O(k - d))
    h^(n-1)(O_X(k)) = h^n(O(k - d)) - h^n(O(k))

and everything strictly between vanishes.  On P^n, h^0(O(m)) = C(n + m, n)
and h^n(O(m)) = C(-m - 1, n), with the convention C(a, b) = 0 when a < b
or a < 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence


def binom(a: int, b: int) -> int:
    """C(a, b), zero for a < b or a < 0."""
    if a < 0 or b < 0 or a < b:
        return 0
    return math.comb(a, b)


def binom_poly(a: int, b: int) -> int:
    """The polynomial binomial a(a-1)...(a-b+1)/b!, defined for every integer a."""
    num = 1
    for i in range(b):
        num *= a - i
    return num // math.factorial(b)


def h0_pn(n: int, m: int) -> int:
    return binom(n + m, n)


def hn_pn(n: int, m: int) -> int:
    return binom(-m - 1, n)


@dataclass(frozen=True)
class HypersurfaceSpec:
    n: int
    d: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("ambient dimension n must be >= 2")
        if self.d < 1:
            raise ValueError("degree d must be >= 1")

    @property
    def dim(self) -> int:
        return self.n - 1

    def __str__(self):
        return f"degree {self.d} hypersurface in P^{self.n}"


def twist_cohomology(X: HypersurfaceSpec, k: int) -> list[int]:
    """[h^0, ..., h^(n-1)] of O_X(k)."""
    n, d = X.n, X.d
    out = [0] * n
    out[0] = h0_pn(n, k) - h0_pn(n, k - d)
    out[n - 1] += hn_pn(n, k - d) - hn_pn(n, k)
    return out


def euler_characteristic(X: HypersurfaceSpec, k: int) -> int:
    return binom_poly(X.n + k, X.n) - binom_poly(X.n + k - X.d, X.n)


def _h12(X: HypersurfaceSpec, k: int) -> tuple[int, int]:
    h = twist_cohomology(X, k)
    return (h[1] if len(h) > 1 else 0, h[2] if len(h) > 2 else 0)


def vanishing_threshold(X: HypersurfaceSpec) -> int:
    """Least d0 >= 1 with h^1 = h^2 = 0 for every k >= d0."""
    # h^n(O(k - d)) = 0 once k - d >= -n, so nothing survives past k = d - n
    last = 0
    for k in range(1, max(1, X.d - X.n) + 1):
        if any(_h12(X, k)):
            last = k
    return last + 1


def formal_excess(X: HypersurfaceSpec) -> int:
    """Sum over k >= 1 of h^1(O_X(k))."""
    return sum(_h12(X, k)[0] for k in range(1, max(1, X.d - X.n) + 1))


def cohomology_table(X: HypersurfaceSpec, ks: Sequence[int]) -> dict:
    return {
        "variety": str(X),
        "n": X.n,
        "d": X.d,
        "rows": [{"k": k, "h": twist_cohomology(X, k)} for k in ks],
        "threshold": vanishing_threshold(X),
        "excess": formal_excess(X),
    }


def format_table(table: dict) -> str:
    n = table["n"]
    head = ["k"] + [f"h^{i}" for i in range(n)]
    rows = [[str(r["k"])] + [str(v) for v in r["h"]] for r in table["rows"]]
    widths = [max(len(c) for c in col) for col in zip(head, *rows)]
    lines = [table["variety"]]
    for row in [head] + rows:
        lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))
    lines.append(f"vanishing threshold d0 = {table['threshold']}")
    lines.append(f"sum of h^1(O_X(k)), k >= 1: {table['excess']}")
    return "\n".join(lines)


# complete intersections are ACM: intermediate cohomology of twists vanishes


@dataclass(frozen=True)
class CompleteIntersectionSpec:
    n: int
    degrees: tuple[int, ...]

    def __post_init__(self):
        if not self.degrees or any(d < 1 for d in self.degrees):
            raise ValueError("degrees must be positive")
        if self.n - len(self.degrees) < 1:
            raise ValueError("need positive dimension")

    @property
    def dim(self) -> int:
        return self.n - len(self.degrees)


def _ci_h0(X: CompleteIntersectionSpec, k: int) -> int:
    # Hilbert function of k[x_0..x_n]/(f_1..f_c) via the Koszul resolution
    tot = 0
    c = len(X.degrees)
    for mask in range(1 << c):
        shift = sum(X.degrees[i] for i in range(c) if mask >> i & 1)
        tot += (-1) ** bin(mask).count("1") * binom(X.n + k - shift, X.n)
    return tot


def ci_cohomology(X: CompleteIntersectionSpec, k: int) -> list[int]:
    """[h^0, ..., h^dim] of O_X(k); the top term by Serre duality with
    omega_X = O_X(sum d_i - n - 1)."""
    out = [0] * (X.dim + 1)
    out[0] = _ci_h0(X, k)
    top = _ci_h0(X, sum(X.degrees) - X.n - 1 - k)
    out[X.dim] += top
    return out
