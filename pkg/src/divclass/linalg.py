"""Exact Gaussian elimination over a coefficient field."""

from __future__ import annotations

from typing import Sequence

from .field import Field


def rref(rows: Sequence[Sequence], field: Field):
    """Reduced row echelon form.  Returns (matrix, pivot columns)."""
    m = [[field(a) for a in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = field.one / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence], field: Field) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows: Sequence[Sequence], field: Field, ncols: int | None = None) -> list[list]:
    """Basis of {v : rows @ v == 0}."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    ncols = len(rows[0])
    m, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, field: Field):
    """One solution of rows @ v == rhs (free variables set to 0), or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = rref(aug, field)
    if ncols in pivots:
        return None
    v = [field.zero] * ncols
    for i, pc in enumerate(pivots):
        v[pc] = m[i][ncols]
    return v
