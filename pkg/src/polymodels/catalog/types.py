"""Data types for invariant systems and polynomial models."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..algebra.matrix import PolyMatrix
from ..algebra.poly import MultiPoly
from ..algebra.scalar import Scalar
from ..sphereops import Sphere, ambient_for


@dataclass(frozen=True)
class Invariant:
    name: str
    coordinate: str
    ambient: MultiPoly
    valuation: int

    def __post_init__(self) -> None:
        if self.valuation <= 0:
            raise ValueError("valuations are positive integers")


@dataclass(frozen=True)
class InvariantSystem:
    """Invariants used as coordinates; ``secondary`` names the coordinate
    whose degree is capped at one in normal forms (it satisfies a quadratic
    relation over the others)."""

    name: str
    group: str
    ambient_dim: int
    invariants: tuple[Invariant, ...]
    secondary: str | None = None

    @property
    def coordinates(self) -> tuple[str, ...]:
        return tuple(inv.coordinate for inv in self.invariants)

    @property
    def valuations(self) -> tuple[int, ...]:
        return tuple(inv.valuation for inv in self.invariants)

    @property
    def sphere(self) -> Sphere:
        return Sphere(ambient_for(self.ambient_dim))

    def weights(self) -> dict[str, int]:
        return dict(zip(self.coordinates, self.valuations))

    def bindings(self) -> dict[str, MultiPoly]:
        return {inv.coordinate: inv.ambient for inv in self.invariants}

    def to_ambient(self, p: MultiPoly) -> MultiPoly:
        """Substitute the ambient invariants and reduce on the sphere."""
        sphere = self.sphere
        return sphere.reduce(p.substitute(self.bindings(), sphere.reduce))


@dataclass
class BoundaryFactor:
    """A factor of the determinant with its declared boundary data.

    ``multipliers`` maps each coordinate to the declared ``L_{i,q}``;
    ``status`` is ``"as-printed"``, ``"derived"`` (no printed value) or
    ``"paper-typo-suspected"`` in which case ``printed`` keeps the source
    values and ``multipliers`` the recomputed ones.
    """

    name: str
    poly: MultiPoly
    satisfies_boundary: bool = True
    multipliers: dict[str, MultiPoly] | None = None
    status: str = "as-printed"
    printed: dict[str, MultiPoly] | None = None
    printed_poly: MultiPoly | None = None
    note: str = ""
    # product of other listed factors, checked but not part of the reduced boundary
    composite: bool = False


@dataclass
class TypoRecord:
    location: str
    printed: str
    corrected: str
    note: str = ""


@dataclass
class PolynomialModel:
    key: str
    label: str
    system: InvariantSystem
    cometric: PolyMatrix
    boundary: list[BoundaryFactor]
    det_constant: Scalar | None
    det_extra_factors: list[MultiPoly] = field(default_factory=list)
    det_exponents: Mapping[str, int] = field(default_factory=dict)
    syzygy: MultiPoly | None = None
    domain_conditions: list[MultiPoly] = field(default_factory=list)
    domain_box: tuple[tuple[float, float], ...] = ()
    n: int | None = None
    printed_cometric: PolyMatrix | None = None
    typos: list[TypoRecord] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    summary_boundary: str = ""
    valuation_alternatives: list[tuple[int, ...]] = field(default_factory=list)
    # (2-d parent model, Q) with the syzygy proportional to eta^2 - c Q
    syzygy_parent: tuple[str, MultiPoly] | None = None

    @property
    def coordinates(self) -> tuple[str, ...]:
        return self.system.coordinates

    @property
    def dim(self) -> int:
        return len(self.system.invariants)

    def boundary_factors(self) -> list[BoundaryFactor]:
        return [b for b in self.boundary if b.satisfies_boundary]

    def reduced_boundary(self) -> MultiPoly:
        """Product of the non-composite factors satisfying the boundary equation."""
        out = MultiPoly.const(1)
        for b in self.boundary:
            if b.satisfies_boundary and not b.composite:
                out = out * b.poly
        return out

    def sign_conditions(self) -> list[MultiPoly]:
        """Polynomials required to be positive on the domain."""
        return list(self.domain_conditions)
