"""Expressing sphere functions in invariant coordinates by exact ansatz solving."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

from ..algebra.linsolve import Inconsistent, linear_solve
from ..algebra.matrix import PolyMatrix
from ..algebra.poly import MultiPoly, sort_variables
from ..algebra.scalar import ZERO
from ..catalog.types import InvariantSystem


class AnsatzUnderdetermined(ArithmeticError):
    def __init__(self, nullity: int) -> None:
        super().__init__(f"ansatz has a {nullity}-dimensional solution space")
        self.nullity = nullity


def ansatz_monomials(valuations: tuple[int, ...], bound: int,
                     capped: int | None = None) -> list[tuple[int, ...]]:
    """Exponent vectors of weighted degree ``<= bound``; index ``capped`` has degree <= 1.

    Ordered by decreasing weighted degree, then decreasing lex, so that
    pivoting prefers large monomials and free columns are small ones.
    """
    ranges = []
    for i, a in enumerate(valuations):
        top = bound // a
        if i == capped:
            top = min(top, 1)
        ranges.append(range(top + 1))
    out = [e for e in product(*ranges)
           if sum(k * a for k, a in zip(e, valuations)) <= bound]
    out.sort(key=lambda e: (sum(k * a for k, a in zip(e, valuations)), e), reverse=True)
    return out


class AmbientImages:
    """Cached sphere-reduced ambient images of monomials in the invariants."""

    def __init__(self, system: InvariantSystem) -> None:
        self.system = system
        self.sphere = system.sphere
        self._cache: dict[tuple[int, ...], MultiPoly] = {}
        self._gens = [inv.ambient for inv in system.invariants]

    def __call__(self, e: tuple[int, ...]) -> MultiPoly:
        hit = self._cache.get(e)
        if hit is not None:
            return hit
        if not any(e):
            res = MultiPoly.const(1)
        else:
            k = max(i for i, v in enumerate(e) if v)
            prev = e[:k] + (e[k] - 1,) + e[k + 1:]
            res = self.sphere.reduce(self(prev) * self._gens[k])
        self._cache[e] = res
        return res


@dataclass
class FitResult:
    expression: MultiPoly | None
    residual: MultiPoly | None = None
    nullity: int = 0

    @property
    def ok(self) -> bool:
        return self.expression is not None


def fit_in_invariants(system: InvariantSystem, target: MultiPoly, bound: int,
                      images: AmbientImages | None = None,
                      capped: bool = True) -> FitResult:
    """Find ``G`` with weighted degree ``<= bound`` and ``G(invariants) == target`` on the sphere."""
    images = images or AmbientImages(system)
    coords = system.coordinates
    cap = coords.index(system.secondary) if (capped and system.secondary) else None
    monos = ansatz_monomials(system.valuations, bound, cap)
    cols = [images(e) for e in monos]
    variables = sort_variables(set(target.variables).union(*(c.variables for c in cols)))
    cols = [c.with_variables(variables) for c in cols]
    target = target.with_variables(variables)
    row_index: dict[tuple[int, ...], int] = {}
    for c in cols + [target]:
        for e in c.terms:
            if e not in row_index:
                row_index[e] = len(row_index)
    matrix = [[ZERO] * len(cols) for _ in row_index]
    for j, c in enumerate(cols):
        for e, v in c.terms.items():
            matrix[row_index[e]][j] = v
    rhs = [ZERO] * len(row_index)
    for e, v in target.terms.items():
        rhs[row_index[e]] = v
    sol = linear_solve(matrix, rhs)
    if isinstance(sol, Inconsistent):
        return FitResult(None, _residual(sol, matrix, rhs, target, variables, row_index, cols))
    terms = {e: c for e, c in zip(monos, sol.x) if c}
    return FitResult(MultiPoly(coords, terms), None, len(sol.nullspace))


def _residual(sol: Inconsistent, matrix, rhs, target, variables, row_index, cols) -> MultiPoly:
    # witness: the target minus its best fit on the pivot rows
    x = sol.partial or [ZERO] * len(cols)
    fit = MultiPoly.const(0, variables)
    for j, c in enumerate(cols):
        if x[j]:
            fit = fit + c.scale(x[j])
    return target - fit


@dataclass
class ClosureResult:
    system: InvariantSystem
    expressed: dict[tuple[int, int], MultiPoly] = field(default_factory=dict)
    residual: dict[tuple[int, int], MultiPoly] = field(default_factory=dict)
    nullity: dict[tuple[int, int], int] = field(default_factory=dict)
    ambient_gamma: dict[tuple[int, int], MultiPoly] = field(default_factory=dict)

    @property
    def closed(self) -> bool:
        return not self.residual

    def __bool__(self) -> bool:
        return self.closed

    def matrix(self) -> PolyMatrix:
        if not self.closed:
            raise ValueError("system is not closed for Gamma")
        k = len(self.system.invariants)
        return PolyMatrix.from_upper([[self.expressed[(i, j)] for j in range(i, k)]
                                      for i in range(k)])

    def failing_pairs(self) -> list[tuple[str, str]]:
        names = [inv.name for inv in self.system.invariants]
        return [(names[i], names[j]) for (i, j) in sorted(self.residual)]


def closure_solve(system: InvariantSystem, pairs: Iterable[tuple[int, int]] | None = None,
                  strict: bool = False, images: AmbientImages | None = None) -> ClosureResult:
    """Express every ``Gamma(zeta_i, zeta_j)`` as a polynomial in the invariants.

    The ansatz uses monomials of weighted degree ``<= a_i + a_j`` and, for
    systems with a secondary coordinate, degree at most one in it.
    """
    images = images or AmbientImages(system)
    sphere = system.sphere
    invs = system.invariants
    k = len(invs)
    pairs = list(pairs) if pairs is not None else [(i, j) for i in range(k) for j in range(i, k)]
    result = ClosureResult(system)
    for i, j in pairs:
        g = sphere.gamma(invs[i].ambient, invs[j].ambient)
        result.ambient_gamma[(i, j)] = g
        fit = fit_in_invariants(system, g, invs[i].valuation + invs[j].valuation, images)
        if fit.ok:
            result.expressed[(i, j)] = fit.expression
            if fit.nullity:
                if strict:
                    raise AnsatzUnderdetermined(fit.nullity)
                result.nullity[(i, j)] = fit.nullity
        else:
            result.residual[(i, j)] = fit.residual
    return result


@dataclass
class DriftResult:
    drift: list[MultiPoly | None]
    residual: dict[int, MultiPoly] = field(default_factory=dict)

    @property
    def closed(self) -> bool:
        return not self.residual

    def __bool__(self) -> bool:
        return self.closed


def drift_closure(system: InvariantSystem, images: AmbientImages | None = None) -> DriftResult:
    """Express ``L(zeta_i)`` in the invariants with weighted degree ``<= a_i``."""
    images = images or AmbientImages(system)
    sphere = system.sphere
    out: list[MultiPoly | None] = []
    res = DriftResult(out)
    for i, inv in enumerate(system.invariants):
        fit = fit_in_invariants(system, sphere.laplacian(inv.ambient), inv.valuation, images)
        out.append(fit.expression)
        if not fit.ok:
            res.residual[i] = fit.residual
    return res


def syzygy_from_ambient(system: InvariantSystem,
                        images: AmbientImages | None = None) -> MultiPoly | None:
    """``secondary^2 - R(primaries)`` with ``R`` found by ansatz solving, or ``None``."""
    if system.secondary is None:
        return None
    images = images or AmbientImages(system)
    coords = system.coordinates
    s = coords.index(system.secondary)
    inv = system.invariants[s]
    sq = tuple(2 if i == s else 0 for i in range(len(coords)))
    fit = fit_in_invariants(system, images(sq), 2 * inv.valuation, images)
    if not fit.ok:
        return None
    eta = MultiPoly.var(system.secondary)
    return eta * eta - fit.expression
