"""Exact Gaussian elimination over Q(sqrt 5)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .scalar import ONE, ZERO, Scalar, ScalarLike, as_scalar


@dataclass
class Solution:
    """One particular solution plus a basis of the homogeneous solutions."""

    x: list[Scalar]
    nullspace: list[list[Scalar]] = field(default_factory=list)
    pivots: list[int] = field(default_factory=list)

    @property
    def unique(self) -> bool:
        return not self.nullspace


@dataclass
class Inconsistent:
    """Verdict for an unsolvable system.

    ``certificate`` is a row combination ``y`` with ``y^T A = 0`` and
    ``y^T b = residual != 0``.
    """

    certificate: list[Scalar]
    residual: Scalar
    partial: list[Scalar] | None = None

    def __bool__(self) -> bool:
        return False


def linear_solve(matrix: Sequence[Sequence[ScalarLike]],
                 rhs: Sequence[ScalarLike]) -> Solution | Inconsistent:
    rows = [[as_scalar(v) for v in row] for row in matrix]
    b = [as_scalar(v) for v in rhs]
    m = len(rows)
    if m != len(b):
        raise ValueError("row count of matrix and rhs differ")
    n = len(rows[0]) if rows else 0
    # sparse record of which original rows were combined into each row
    track: list[dict[int, Scalar]] = [{i: ONE} for i in range(m)]

    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        b[r], b[piv] = b[piv], b[r]
        track[r], track[piv] = track[piv], track[r]
        inv = rows[r][c].inverse()
        if not inv.is_one():
            rows[r] = [v * inv for v in rows[r]]
            b[r] = b[r] * inv
            track[r] = {k: v * inv for k, v in track[r].items()}
        prow, pb, ptrack = rows[r], b[r], track[r]
        for i in range(m):
            if i == r:
                continue
            f = rows[i][c]
            if not f:
                continue
            row = rows[i]
            for j in range(c, n):
                if prow[j]:
                    row[j] = row[j] - f * prow[j]
            b[i] = b[i] - f * pb
            ti = track[i]
            for j, v in ptrack.items():
                val = ti.get(j, ZERO) - f * v
                if val:
                    ti[j] = val
                else:
                    ti.pop(j, None)
        pivots.append(c)
        r += 1
        if r == m:
            break

    x = [ZERO] * n
    for i, c in enumerate(pivots):
        x[c] = b[i]
    for i in range(r, m):
        if b[i]:
            cert = [track[i].get(j, ZERO) for j in range(m)]
            return Inconsistent(certificate=cert, residual=b[i], partial=x)
    free = [c for c in range(n) if c not in set(pivots)]
    null = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f]
        null.append(v)
    return Solution(x=x, nullspace=null, pivots=pivots)


def rank(matrix: Sequence[Sequence[ScalarLike]]) -> int:
    rows = [[as_scalar(v) for v in row] for row in matrix]
    if not rows:
        return 0
    n = len(rows[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        prow = [v * inv for v in rows[r]]
        rows[r] = prow
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = [a - f * p for a, p in zip(rows[i], prow)]
        r += 1
    return r


def matvec(matrix: Sequence[Sequence[Scalar]], x: Sequence[Scalar]) -> list[Scalar]:
    out = []
    for row in matrix:
        acc = ZERO
        for a, v in zip(row, x):
            if a and v:
                acc = acc + as_scalar(a) * v
        out.append(acc)
    return out
