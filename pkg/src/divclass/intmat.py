"""Dense integer matrices and the Smith normal form."""

from __future__ import annotations

from typing import Iterable, Sequence


class IntMatrix:
    """Immutable dense matrix of Python ints."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Sequence[int]], ncols: int | None = None):
        rows = tuple(tuple(int(a) for a in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(m)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows],
            other.ncols,
        )

    def transpose(self) -> "IntMatrix":
        if self.nrows == 0:
            return IntMatrix([[] for _ in range(self.ncols)], 0)
        return IntMatrix([list(c) for c in zip(*self.rows)], self.nrows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def det(self) -> int:
        """Bareiss fraction-free elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, S, V) with U @ m @ V == S, U and V unimodular, S diagonal.

    The diagonal d_1 | d_2 | ... is non-negative.  Pivots are always the
    entry of least absolute value in the active block, which keeps the
    intermediate entries small.
    """
    rows, cols = m.nrows, m.ncols
    s = m.tolist()
    u = IntMatrix.identity(rows).tolist()
    v = IntMatrix.identity(cols).tolist()

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in s:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row dst += k * row src
        if k:
            s[dst] = [a + k * b for a, b in zip(s[dst], s[src])]
            u[dst] = [a + k * b for a, b in zip(u[dst], u[src])]

    def add_col(src, dst, k):  # col dst += k * col src
        if k:
            for r in s:
                r[dst] += k * r[src]
            for r in v:
                r[dst] += k * r[src]

    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(s[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if s[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, rows):
                if s[i][t]:
                    add_row(t, i, -(s[i][t] // s[t][t]))
                    if s[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if s[t][j]:
                    add_col(t, j, -(s[t][j] // s[t][t]))
                    if s[t][j]:
                        done = False
            if not done:
                # a remainder is smaller than the pivot: move it into place
                cand = [(abs(s[i][t]), i, t) for i in range(t + 1, rows) if s[i][t]]
                cand += [(abs(s[t][j]), t, j) for j in range(t + 1, cols) if s[t][j]]
                _, ci, cj = min(cand)
                swap_rows(t, ci)
                swap_cols(t, cj)
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if s[i][j] % s[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if s[t][t] < 0:
            s[t] = [-a for a in s[t]]
            u[t] = [-a for a in u[t]]
        t += 1
    return IntMatrix(u, rows), IntMatrix(s, cols), IntMatrix(v, cols)


def diagonal(s: IntMatrix) -> list[int]:
    return [s[i, i] for i in range(min(s.nrows, s.ncols))]
