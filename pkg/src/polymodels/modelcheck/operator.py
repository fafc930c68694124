"""Exact matrix of the model operator on valuation-filtered polynomial spaces."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from ..algebra.poly import MultiPoly, _Accumulator
from ..algebra.scalar import ONE, ZERO, Scalar
from ..algebra import univariate as up
from ..catalog.types import PolynomialModel
from .verify import model_normal_form


class FiltrationViolation(ArithmeticError):
    pass


def filtered_basis(valuations: Sequence[int], cap: int,
                   capped: int | None = None) -> list[tuple[int, ...]]:
    """Exponents of valuation ``<= cap`` ordered by (valuation, reverse grlex)."""
    ranges = []
    for i, a in enumerate(valuations):
        top = cap // a
        if i == capped:
            top = min(top, 1)
        ranges.append(range(top + 1))
    basis = [e for e in product(*ranges) if sum(k * a for k, a in zip(e, valuations)) <= cap]
    basis.sort(key=lambda e: (sum(k * a for k, a in zip(e, valuations)), tuple(-k for k in e)))
    return basis


def apply_operator(model: PolynomialModel, drift: Sequence[MultiPoly], p: MultiPoly) -> MultiPoly:
    """``sum G^{ij} d_i d_j p + sum B^i d_i p``."""
    coords = model.coordinates
    acc = _Accumulator()
    for i, ci in enumerate(coords):
        di = p.diff(ci)
        if not di:
            continue
        if drift[i]:
            acc.add(drift[i] * di)
        for j, cj in enumerate(coords):
            dij = di.diff(cj)
            if dij:
                acc.add(model.cometric[i, j] * dij)
    return acc.result()


@dataclass
class OperatorMatrix:
    """``matrix[r][c]`` is the coefficient of basis element ``r`` in the image of ``c``."""

    coordinates: tuple[str, ...]
    basis: list[tuple[int, ...]]
    weights: list[int]
    matrix: list[list[Scalar]]

    @property
    def size(self) -> int:
        return len(self.basis)

    def blocks(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for idx, w in enumerate(self.weights):
            out.setdefault(w, []).append(idx)
        return out

    def block(self, weight: int) -> list[list[Scalar]]:
        idx = self.blocks()[weight]
        return [[self.matrix[r][c] for c in idx] for r in idx]

    def is_block_triangular(self) -> bool:
        return all(not self.matrix[r][c]
                   for r in range(self.size) for c in range(self.size)
                   if self.weights[r] > self.weights[c])

    def to_floats(self):
        import numpy as np
        return np.array([[float(v) for v in row] for row in self.matrix], dtype=float)


def assemble_operator(model: PolynomialModel, drift: Sequence[MultiPoly], cap: int) -> OperatorMatrix:
    """Matrix of the operator on polynomials of valuation ``<= cap``.

    For models with a secondary coordinate the basis has degree at most one
    in it and images are reduced modulo the syzygy.
    """
    coords = model.coordinates
    vals = model.system.valuations
    capped = coords.index(model.system.secondary) if model.syzygy is not None else None
    basis = filtered_basis(vals, cap, capped)
    index = {e: k for k, e in enumerate(basis)}
    weights = [sum(k * a for k, a in zip(e, vals)) for e in basis]
    size = len(basis)
    matrix = [[ZERO] * size for _ in range(size)]
    for col, e in enumerate(basis):
        mono = MultiPoly.monomial(dict(zip(coords, e)))
        image = model_normal_form(model, apply_operator(model, drift, mono))
        image = image.with_variables(tuple(sorted(set(image.variables) | set(coords),
                                                  key=lambda v: (v not in coords, coords.index(v) if v in coords else 0))))
        for exps, c in image.items():
            if any(v not in coords for v in exps):
                raise FiltrationViolation(f"image of {e} leaves the coordinate ring")
            key = tuple(exps.get(v, 0) for v in coords)
            row = index.get(key)
            w = sum(k * a for k, a in zip(key, vals))
            if row is None or w > weights[col]:
                raise FiltrationViolation(f"image of {e} has valuation {w} > {weights[col]}")
            matrix[row][col] = c
    return OperatorMatrix(coords, basis, weights, matrix)


# -- exact spectra -------------------------------------------------------------

def characteristic_polynomial(block: Sequence[Sequence[Scalar]]) -> list[Scalar]:
    """Coefficients (constant first) of ``det(t I - A)`` by Faddeev-LeVerrier."""
    n = len(block)
    if n == 0:
        return [ONE]
    a = [list(row) for row in block]
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    m = [[ZERO] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prev = m
        m = [[sum((a[i][l] * prev[l][j] for l in range(n)), ZERO) for j in range(n)]
             for i in range(n)]
        for i in range(n):
            m[i][i] = m[i][i] + coeffs[n - k + 1]
        am = [[sum((a[i][l] * m[l][j] for l in range(n)), ZERO) for j in range(n)]
              for i in range(n)]
        trace = sum((am[i][i] for i in range(n)), ZERO)
        coeffs[n - k] = -trace / k
    return coeffs


def _horner(coeffs: list[Scalar], x: Scalar) -> Scalar:
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass
class BlockSpectrum:
    weight: int
    size: int
    exact: list[Scalar]
    residual_poly: list[Scalar]

    @property
    def complete(self) -> bool:
        return len(self.residual_poly) <= 1


def exact_eigenvalues(block: Sequence[Sequence[Scalar]], candidates: Sequence[Scalar] = ()
                      ) -> tuple[list[Scalar], list[Scalar]]:
    """Roots of the characteristic polynomial found among ``candidates`` and rational
    roots near numeric estimates, with multiplicity; returns (roots, leftover factor)."""
    poly = up.trim(characteristic_polynomial(block))
    roots: list[Scalar] = []
    tried: list[Scalar] = list(candidates)
    if len(poly) > 1:
        tried.extend(_numeric_guesses(poly))
    for r in tried:
        while len(poly) > 1 and not _horner(poly, r):
            q, _ = up.divmod_(poly, [-r, ONE])
            poly = up.trim(q)
            roots.append(r)
    return roots, poly


def _numeric_guesses(poly: list[Scalar]) -> list[Scalar]:
    import numpy as np
    coeffs = [float(c) for c in reversed(poly)]
    out = []
    for z in np.roots(coeffs):
        if abs(z.imag) < 1e-6:
            out.append(Scalar(Fraction(round(z.real * 12), 12)))
            out.append(Scalar(round(z.real)))
    return out


def block_spectra(op: OperatorMatrix, candidates: Sequence[Scalar] = ()) -> list[BlockSpectrum]:
    out = []
    for w, idx in sorted(op.blocks().items()):
        roots, rest = exact_eigenvalues(op.block(w), candidates)
        out.append(BlockSpectrum(w, len(idx), roots, rest))
    return out


def spherical_eigenvalue(k: int, ambient_dim: int) -> Scalar:
    return Scalar(-k * (k + ambient_dim - 2))
