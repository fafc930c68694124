"""Exact verification of covering maps between models."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra.division import exact_divide
from ..algebra.matrix import PolyMatrix
from ..algebra.poly import MultiPoly, poly_sum
from ..catalog.covers import CoverMap, quartic_coefficients, target_parameter
from ..catalog.invariants import X, Y, Z
from ..catalog.models import model
from ..catalog.types import InvariantSystem, PolynomialModel
from .closure import closure_solve


@dataclass
class CoverVerdict:
    source: str
    target: str
    n: int | None
    components_match: bool
    chain_rule: bool
    boundary_pullback: bool
    quartic_identity: bool | None = None
    cofactors: dict[str, str] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.components_match and self.chain_rule and self.boundary_pullback
                and self.quartic_identity is not False)

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "n": self.n,
            "components_match": self.components_match,
            "chain_rule": self.chain_rule,
            "boundary_pullback": self.boundary_pullback,
            "quartic_identity": self.quartic_identity,
            "cofactors": self.cofactors,
            "failures": self.failures,
            "passed": self.passed,
        }


def _source_data(cover: CoverMap) -> tuple[InvariantSystem, PolyMatrix, list[MultiPoly]]:
    """Source system, co-metric and the boundary factors the pullback must contain."""
    if cover.source_system is None:
        src = model(cover.source, cover.n)
        factors = [f.poly for f in src.boundary if f.satisfies_boundary and not f.composite]
        return src.system, src.cometric, factors
    system = cover.source_system
    gamma = closure_solve(system).matrix()
    # without a catalog entry the boundary is read off the determinant
    return system, gamma, [gamma.determinant()]


def _jacobian(cover: CoverMap, target: PolynomialModel, coords: tuple[str, ...]) -> list[list[MultiPoly]]:
    return [[cover.components[t].diff(c) for c in coords] for t in target.coordinates]


def verify_cover(cover: CoverMap) -> CoverVerdict:
    """Check that ``cover`` maps invariants to invariants, intertwines the
    co-metrics, and pulls the target boundary back into the source boundary ideal."""
    target = model(cover.target, target_parameter(cover))
    system, gamma_src, src_factors = _source_data(cover)
    coords = system.coordinates
    failures: list[str] = []

    bindings = system.bindings()
    sphere = system.sphere
    tgt_bindings = target.system.bindings()
    components_ok = True
    for t, comp in cover.components.items():
        lhs = sphere.reduce(comp.substitute(bindings, sphere.reduce))
        if lhs != sphere.reduce(tgt_bindings[t]):
            components_ok = False
            failures.append(f"component {t}")

    # Gamma_target(F) == J Gamma_source J^T, compared on the sphere
    jac = _jacobian(cover, target, coords)
    k = len(coords)
    chain_ok = True
    for a, ta in enumerate(target.coordinates):
        for b in range(a, len(target.coordinates)):
            pulled = target.cometric[a, b].substitute(cover.components)
            pushed = poly_sum(jac[a][i] * gamma_src[i, j] * jac[b][j]
                              for i in range(k) for j in range(k))
            diff = pulled - pushed
            if diff and system.to_ambient(diff):
                chain_ok = False
                failures.append(f"chain rule ({ta}, {target.coordinates[b]})")

    pulled_boundary = target.reduced_boundary().substitute(cover.components)
    cofactors = {}
    pullback_ok = True
    rest = pulled_boundary
    for f in src_factors:
        q = exact_divide(rest, f)
        if q is None:
            pullback_ok = False
            failures.append("boundary pullback")
            break
        rest = q
    if pullback_ok:
        cofactors["pullback / source boundary"] = rest.to_text()

    quartic = None
    if cover.fitted:
        quartic = quartic_identity_holds()
        if not quartic:
            failures.append("quartic identity")
    return CoverVerdict(cover.source, cover.target, cover.n, components_ok, chain_ok,
                        pullback_ok, quartic, cofactors, failures)


def quartic_identity_holds() -> bool:
    """Expand the fitted combination and compare with ``x^4 + y^4 + z^4`` identically."""
    a, b, c, d = quartic_coefficients()
    s = X + Y + Z
    r = X ** 2 + Y ** 2 + Z ** 2
    combo = (s ** 4).scale(a) + (s ** 2 * r).scale(b) + (s * X * Y * Z).scale(c) + (r ** 2).scale(d)
    return combo == X ** 4 + Y ** 4 + Z ** 4
