"""Four-dimensional counterexample: a group whose primary invariants are not closed."""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra.division import exact_divide
from ..algebra.poly import MultiPoly
from ..catalog.invariants import cornulier_invariant
from ..catalog.types import Invariant, InvariantSystem
from .closure import ClosureResult, closure_solve, syzygy_from_ambient

PRIMARIES = (("theta1", "t1"), ("theta2", "t2"), ("theta3", "t3"))


def cornulier_system(p: int = 3, with_eta3: bool = False) -> InvariantSystem:
    vals = {"theta1": p, "theta2": 2 * p, "theta3": 4}
    invs = [Invariant(name, coord, cornulier_invariant(name, p), vals[name])
            for name, coord in PRIMARIES]
    if with_eta3:
        invs.append(Invariant("eta3", "eta", cornulier_invariant("eta3", p), p + 2))
    return InvariantSystem(f"cornulier({p})", f"cornulier({p})", 4, tuple(invs),
                           "eta" if with_eta3 else None)


@dataclass
class CornulierVerdict:
    p: int
    primaries: ClosureResult
    extended: ClosureResult
    syzygy: MultiPoly | None
    syzygy_power: int
    remainder: MultiPoly | None
    remainder_divisible: dict[str, bool]
    syzygy_divisible: dict[str, bool]

    @property
    def primaries_fail(self) -> bool:
        return not self.primaries.closed

    @property
    def extended_closes(self) -> bool:
        return self.extended.closed

    @property
    def boundary_fails(self) -> bool:
        return self.remainder is not None and not all(self.remainder_divisible.values())

    @property
    def passed(self) -> bool:
        """The negative control behaves as expected (all three outcomes)."""
        return self.primaries_fail and self.extended_closes and self.boundary_fails

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "primaries_closed": self.primaries.closed,
            "primaries_failing_pairs": [list(x) for x in self.primaries.failing_pairs()],
            "extended_closed": self.extended.closed,
            "syzygy": None if self.syzygy is None else self.syzygy.to_text(),
            "syzygy_power_in_det": self.syzygy_power,
            "remainder": None if self.remainder is None else self.remainder.to_text(),
            "remainder_boundary_equation": self.remainder_divisible,
            "syzygy_boundary_equation": self.syzygy_divisible,
            "passed": self.passed,
        }


def _boundary_divisible(system: InvariantSystem, gamma, poly: MultiPoly) -> dict[str, bool]:
    coords = system.coordinates
    out = {}
    for i, c in enumerate(coords):
        action = MultiPoly.const(0)
        for j, cj in enumerate(coords):
            action = action + gamma[i, j] * poly.diff(cj)
        out[c] = exact_divide(action, poly) is not None
    return out


def cornulier_check(p: int = 3) -> CornulierVerdict:
    """Closure fails on the primaries; with ``eta3`` it closes, but the
    determinant factor left after removing the syzygy violates the boundary equation."""
    primaries = closure_solve(cornulier_system(p))
    ext_system = cornulier_system(p, with_eta3=True)
    extended = closure_solve(ext_system)
    syz = syzygy_from_ambient(ext_system)
    power, remainder = 0, None
    rem_div: dict[str, bool] = {}
    syz_div: dict[str, bool] = {}
    if extended.closed and syz is not None:
        gamma = extended.matrix()
        det = gamma.determinant()
        while True:
            q = exact_divide(det, syz)
            if q is None:
                break
            det, power = q, power + 1
        remainder = det
        syz_div = _boundary_divisible(ext_system, gamma, syz)
        if not remainder.is_constant():
            rem_div = _boundary_divisible(ext_system, gamma, remainder)
    return CornulierVerdict(p, primaries, extended, syz, power, remainder, rem_div, syz_div)
