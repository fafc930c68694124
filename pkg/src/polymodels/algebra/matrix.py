"""Small square matrices of polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .poly import MultiPoly, poly


@dataclass(frozen=True)
class PolyMatrix:
    entries: tuple[tuple[MultiPoly, ...], ...]
    symmetric: bool = False

    def __post_init__(self) -> None:
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ValueError("matrix must be square")
        if self.symmetric:
            for i in range(n):
                for j in range(i + 1, n):
                    if self.entries[i][j] != self.entries[j][i]:
                        raise ValueError(f"entry ({i},{j}) differs from ({j},{i})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], symmetric: bool = False) -> "PolyMatrix":
        return cls(tuple(tuple(poly(x) for x in row) for row in rows), symmetric)

    @classmethod
    def from_upper(cls, upper: Sequence[Sequence]) -> "PolyMatrix":
        """Symmetric matrix from its upper triangle (row i holds columns i..n-1)."""
        n = len(upper)
        full = [[None] * n for _ in range(n)]
        for i, row in enumerate(upper):
            if len(row) != n - i:
                raise ValueError("upper triangle has the wrong shape")
            for k, val in enumerate(row):
                full[i][i + k] = full[i + k][i] = poly(val)
        return cls(tuple(tuple(r) for r in full), True)

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> MultiPoly:
        i, j = ij
        return self.entries[i][j]

    def map(self, fn: Callable[[MultiPoly], MultiPoly]) -> "PolyMatrix":
        return PolyMatrix(tuple(tuple(fn(x) for x in row) for row in self.entries), self.symmetric)

    def submatrix(self, idx: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(tuple(tuple(self.entries[i][j] for j in idx) for i in idx), self.symmetric)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        n = self.dimension
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = MultiPoly()
                for k in range(n):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            rows.append(tuple(row))
        return PolyMatrix(tuple(rows))

    def determinant(self) -> MultiPoly:
        return determinant(self)


def determinant(m: PolyMatrix | Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Cofactor expansion along the first row; intended for dimension <= 4."""
    rows = m.entries if isinstance(m, PolyMatrix) else tuple(tuple(poly(x) for x in r) for r in m)
    n = len(rows)
    if n == 0:
        return MultiPoly.const(1)
    return _det(rows, tuple(range(n)), 0, {})


def _det(rows, cols: tuple[int, ...], r: int, memo: dict) -> MultiPoly:
    key = cols
    if key in memo:
        return memo[key]
    if len(cols) == 1:
        res = rows[r][cols[0]]
    else:
        res = MultiPoly()
        for k, c in enumerate(cols):
            entry = rows[r][c]
            if not entry:
                continue
            minor = _det(rows, cols[:k] + cols[k + 1:], r + 1, memo)
            term = entry * minor
            res = res + term if k % 2 == 0 else res - term
    memo[key] = res
    return res
