"""Exact identity checks on a declared polynomial model."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..algebra.division import exact_divide
from ..algebra.linsolve import Inconsistent, linear_solve
from ..algebra.poly import MultiPoly, _Accumulator
from ..algebra.scalar import ZERO, Scalar
from ..catalog.types import BoundaryFactor, PolynomialModel
from .closure import AmbientImages, syzygy_from_ambient


class DegreeViolation(ArithmeticError):
    pass


# -- normal forms modulo the syzygy ----------------------------------------

def split_syzygy(model: PolynomialModel) -> tuple[str, MultiPoly] | None:
    """``(eta, R)`` with the syzygy read as ``eta^2 = R``."""
    if model.syzygy is None or model.system.secondary is None:
        return None
    eta = model.system.secondary
    lead = model.syzygy.coefficient({eta: 2})
    if not lead:
        raise ValueError("syzygy is not quadratic in the secondary coordinate")
    rest = model.syzygy - MultiPoly.monomial({eta: 2}, lead)
    return eta, (-rest).scale(lead.inverse())


def syzygy_normal_form(p: MultiPoly, eta: str, r: MultiPoly) -> MultiPoly:
    """Rewrite ``eta^2 -> r`` until ``p`` has degree at most one in ``eta``."""
    if eta not in p.variables or p.degree(eta) <= 1:
        return p
    i = p.variables.index(eta)
    powers: dict[int, MultiPoly] = {0: MultiPoly.const(1)}
    acc = _Accumulator()
    for e, c in p.terms.items():
        k, rem = divmod(e[i], 2)
        base = MultiPoly(p.variables, {e[:i] + (rem,) + e[i + 1:]: c})
        if k == 0:
            acc.add(base)
            continue
        if k not in powers:
            powers[k] = r ** k
        acc.add(base * powers[k])
    return acc.result()


def model_normal_form(model: PolynomialModel, p: MultiPoly) -> MultiPoly:
    split = split_syzygy(model)
    return p if split is None else syzygy_normal_form(p, *split)


def equal_on_sphere(model: PolynomialModel, p: MultiPoly, q: MultiPoly) -> bool:
    d = p - q
    return not d or not model.system.to_ambient(d)


# -- boundary equation -------------------------------------------------------

def boundary_action(model: PolynomialModel, poly: MultiPoly, i: int) -> MultiPoly:
    """``sum_j G^{ij} d_j poly``."""
    coords = model.coordinates
    acc = _Accumulator()
    for j, c in enumerate(coords):
        d = poly.diff(c)
        if d:
            acc.add(model.cometric[i, j] * d)
    return acc.result()


@dataclass
class FactorVerdict:
    name: str
    expected: bool
    multipliers: dict[str, MultiPoly | None]
    degree_ok: bool
    declared_match: bool | None
    printed_match: bool | None
    printed_poly_satisfies: bool | None
    status: str
    passed: bool
    mismatches: list[str] = field(default_factory=list)

    @property
    def satisfied(self) -> bool:
        return all(v is not None for v in self.multipliers.values())

    def to_json(self) -> dict:
        return {
            "factor": self.name,
            "expected_to_satisfy": self.expected,
            "satisfied": self.satisfied,
            "multipliers": {k: (None if v is None else v.to_text())
                            for k, v in self.multipliers.items()},
            "degree_ok": self.degree_ok,
            "declared_match": self.declared_match,
            "printed_match": self.printed_match,
            "printed_poly_satisfies": self.printed_poly_satisfies,
            "status": self.status,
            "passed": self.passed,
            "mismatches": self.mismatches,
        }


def _multipliers(model: PolynomialModel, poly: MultiPoly) -> dict[str, MultiPoly | None]:
    return {c: exact_divide(boundary_action(model, poly, i), poly)
            for i, c in enumerate(model.coordinates)}


def _same(model: PolynomialModel, got: MultiPoly, want: MultiPoly) -> bool:
    return got == want or equal_on_sphere(model, got, want)


def verify_factor(model: PolynomialModel, factor: BoundaryFactor) -> FactorVerdict:
    mults = _multipliers(model, factor.poly)
    weights = model.system.weights()
    degree_ok = all(q is None or not q or q.weighted_degree(weights) <= weights[c]
                    for c, q in mults.items())
    satisfied = all(q is not None for q in mults.values())
    mismatches: list[str] = []
    declared_match = printed_match = None
    if factor.multipliers is not None and satisfied:
        declared_match = True
        for c, want in factor.multipliers.items():
            if not _same(model, mults[c], want):
                declared_match = False
                mismatches.append(c)
    if factor.printed is not None and satisfied:
        printed_match = all(_same(model, mults[c], want) for c, want in factor.printed.items())
    printed_poly_ok = None
    if factor.printed_poly is not None and factor.printed_poly != factor.poly:
        printed_poly_ok = all(q is not None for q in _multipliers(model, factor.printed_poly).values())
    if factor.satisfies_boundary:
        passed = satisfied and degree_ok and declared_match is not False
    else:
        passed = not satisfied
    return FactorVerdict(factor.name, factor.satisfies_boundary, mults, degree_ok,
                         declared_match, printed_match, printed_poly_ok, factor.status,
                         passed, mismatches)


def verify_boundary(model: PolynomialModel) -> list[FactorVerdict]:
    return [verify_factor(model, f) for f in model.boundary]


# -- determinant -------------------------------------------------------------

@dataclass
class DeterminantVerdict:
    passed: bool
    determinant: MultiPoly
    constant: Scalar | None
    cofactor: MultiPoly
    declared_constant_match: bool | None
    vanishes_on_sphere: bool | None
    failed_factor: str | None = None

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "determinant": self.determinant.to_text(),
            "constant": None if self.constant is None else self.constant.to_text(),
            "cofactor": self.cofactor.to_text(),
            "declared_constant_match": self.declared_constant_match,
            "vanishes_on_sphere": self.vanishes_on_sphere,
            "failed_factor": self.failed_factor,
        }


def verify_determinant(model: PolynomialModel) -> DeterminantVerdict:
    """``det G = c * prod(factors^k)`` exactly, with ``c`` recovered by division."""
    det = model.cometric.determinant()
    rest = det
    failed = None
    by_name = {b.name: b for b in model.boundary}
    for name, k in model.det_exponents.items():
        for _ in range(k):
            q = exact_divide(rest, by_name[name].poly)
            if q is None:
                failed = name
                break
            rest = q
        if failed:
            break
    constant = rest.constant_term() if (failed is None and rest.is_constant() and rest) else None
    declared = None
    if constant is not None and model.det_constant is not None:
        declared = constant == model.det_constant
    vanishes = None
    if model.dim == 3 and model.system.ambient_dim == 3:
        vanishes = not model.system.to_ambient(det)
    passed = constant is not None and declared is not False and vanishes is not False
    return DeterminantVerdict(passed, det, constant, rest, declared, vanishes, failed)


# -- syzygy ------------------------------------------------------------------

@dataclass
class SyzygyVerdict:
    applicable: bool
    passed: bool
    ambient_residual: MultiPoly | None = None
    recomputed: MultiPoly | None = None
    recomputed_match: bool | None = None
    parent: str | None = None
    parent_constant: Scalar | None = None

    def to_json(self) -> dict:
        return {
            "applicable": self.applicable,
            "passed": self.passed,
            "ambient_residual": None if self.ambient_residual is None else self.ambient_residual.to_text(),
            "recomputed": None if self.recomputed is None else self.recomputed.to_text(),
            "recomputed_match": self.recomputed_match,
            "parent": self.parent,
            "parent_constant": None if self.parent_constant is None else self.parent_constant.to_text(),
        }


def verify_syzygy(model: PolynomialModel, images: AmbientImages | None = None) -> SyzygyVerdict:
    if model.syzygy is None:
        return SyzygyVerdict(False, True)
    residual = model.system.to_ambient(model.syzygy)
    recomputed = syzygy_from_ambient(model.system, images)
    eta, r = split_syzygy(model)
    match = recomputed is not None and recomputed == MultiPoly.var(eta) ** 2 - r
    parent_name = parent_const = None
    parent_ok = True
    if model.syzygy_parent is not None:
        parent_name, q = model.syzygy_parent
        parent_const = _ratio(r, q)
        parent_ok = parent_const is not None
    passed = not residual and match and parent_ok
    return SyzygyVerdict(True, passed, residual, recomputed, match, parent_name, parent_const)


def _ratio(p: MultiPoly, q: MultiPoly) -> Scalar | None:
    """``c`` with ``p == c q`` or ``None``."""
    if not p or not q:
        return None
    e, _ = next(iter(q.items()))
    c = p.coefficient(e) / q.leading_coefficient()
    return c if c and (p - q.scale(c)).is_zero() else None


# -- drift of a measure --------------------------------------------------------

def verified_multipliers(model: PolynomialModel) -> dict[str, dict[str, MultiPoly]]:
    """Recomputed ``L_{i,q}`` of every non-composite factor satisfying the boundary equation."""
    out = {}
    for f in model.boundary:
        if not f.satisfies_boundary or f.composite:
            continue
        mults = _multipliers(model, f.poly)
        if any(v is None for v in mults.values()):
            raise ArithmeticError(f"factor {f.name} does not satisfy the boundary equation")
        out[f.name] = mults
    return out


def measure_drift(model: PolynomialModel, alpha: Mapping[str, Fraction | int] | Sequence,
                  multipliers: dict[str, dict[str, MultiPoly]] | None = None) -> list[MultiPoly]:
    """``b^i = sum_j d_j G^{ij} + sum_q alpha_q L_{i,q}`` for the density ``prod |P_q|^alpha_q``."""
    multipliers = multipliers if multipliers is not None else verified_multipliers(model)
    names = list(multipliers)
    if not isinstance(alpha, Mapping):
        alpha = dict(zip(names, alpha))
    coords = model.coordinates
    weights = model.system.weights()
    out = []
    for i, c in enumerate(coords):
        acc = _Accumulator()
        for j, cj in enumerate(coords):
            acc.add(model.cometric[i, j].diff(cj))
        for name, a in alpha.items():
            if a:
                acc.add(multipliers[name][c].scale(a))
        b = acc.result()
        if b and b.weighted_degree(weights) > weights[c]:
            raise DegreeViolation(f"drift component {c} exceeds its valuation")
        out.append(b)
    return out


def fit_measure_exponents(model: PolynomialModel, drift: Sequence[MultiPoly],
                          multipliers: dict[str, dict[str, MultiPoly]] | None = None
                          ) -> dict[str, Scalar] | None:
    """Exponents ``alpha`` whose measure drift equals ``drift`` on the sphere image, if any."""
    multipliers = multipliers if multipliers is not None else verified_multipliers(model)
    names = list(multipliers)
    base = measure_drift(model, {}, multipliers)
    columns: list[list[MultiPoly]] = [[] for _ in names]
    targets: list[MultiPoly] = []
    to_amb = model.system.to_ambient
    for i, c in enumerate(model.coordinates):
        targets.append(to_amb(drift[i] - base[i]))
        for k, name in enumerate(names):
            columns[k].append(to_amb(multipliers[name][c]))
    rows: dict[tuple, int] = {}
    entries: list[tuple[int, int, Scalar]] = []
    rhs_entries: list[tuple[int, Scalar]] = []
    for i in range(len(targets)):
        for k in range(len(names)):
            for e, v in columns[k][i].items():
                key = (i, tuple(sorted(e.items())))
                entries.append((rows.setdefault(key, len(rows)), k, v))
        for e, v in targets[i].items():
            key = (i, tuple(sorted(e.items())))
            rhs_entries.append((rows.setdefault(key, len(rows)), v))
    if not rows:
        return {}
    matrix = [[ZERO] * len(names) for _ in rows]
    rhs = [ZERO] * len(rows)
    for r, k, v in entries:
        matrix[r][k] = matrix[r][k] + v
    for r, v in rhs_entries:
        rhs[r] = rhs[r] + v
    if not names:
        return {} if all(not v for v in rhs) else None
    sol = linear_solve(matrix, rhs)
    if isinstance(sol, Inconsistent):
        return None
    return dict(zip(names, sol.x))
