"""Per-model verification reports."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable

from ..catalog import model as load_model
from ..catalog.types import PolynomialModel
from .closure import AmbientImages, closure_solve, drift_closure
from .operator import FiltrationViolation, assemble_operator, block_spectra, spherical_eigenvalue
from .verify import (DegreeViolation, equal_on_sphere, fit_measure_exponents, measure_drift,
                     verify_boundary, verify_determinant, verify_syzygy)

CHECK_NAMES = ("closure", "round_trip", "drift_closure", "boundary", "determinant",
               "syzygy", "measure_drift", "operator")
DEFAULT_CAP = 8


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: Any = None
    seconds: float = 0.0
    applicable: bool = True

    def to_json(self, deterministic: bool = False) -> dict:
        out = {"name": self.name, "passed": self.passed, "applicable": self.applicable,
               "witness": self.witness}
        if not deterministic:
            out["seconds"] = round(self.seconds, 6)
        return out


@dataclass
class ModelReport:
    model: str
    label: str
    n: int | None
    group: str
    invariants: list[dict]
    checks: list[CheckResult] = field(default_factory=list)
    typos: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def timings(self) -> dict[str, float]:
        return {c.name: c.seconds for c in self.checks}

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failing(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_json(self, deterministic: bool = False) -> dict:
        return {
            "kind": "model-report",
            "model": self.model,
            "label": self.label,
            "n": self.n,
            "group": self.group,
            "invariants": self.invariants,
            "passed": self.passed,
            "checks": [c.to_json(deterministic) for c in self.checks],
            "typos": self.typos,
            "notes": self.notes,
        }


def _texts(matrix) -> list[list[str]]:
    k = matrix.dimension
    return [[matrix[i, j].to_text() for j in range(k)] for i in range(k)]


def run_model(m: PolynomialModel, cap: int = DEFAULT_CAP) -> ModelReport:
    """Run every check on ``m``; later checks consume earlier outputs."""
    system = m.system
    report = ModelReport(
        m.key, m.label, m.n, system.group,
        [{"name": inv.name, "coordinate": inv.coordinate, "valuation": inv.valuation,
          "ambient": inv.ambient.to_text()} for inv in system.invariants],
        typos=[{"location": t.location, "printed": t.printed, "corrected": t.corrected,
                "note": t.note} for t in m.typos],
        notes=list(m.notes))
    images = AmbientImages(system)
    state: dict[str, Any] = {}

    def timed(name: str, fn: Callable[[], CheckResult]) -> None:
        start = time.perf_counter()
        try:
            res = fn()
        except (ArithmeticError, ValueError) as exc:
            res = CheckResult(name, False, {"error": f"{type(exc).__name__}: {exc}"})
        res.seconds = time.perf_counter() - start
        report.checks.append(res)

    def closure() -> CheckResult:
        res = closure_solve(system, images=images)
        state["closure"] = res
        if not res.closed:
            return CheckResult("closure", False, {"failing_pairs": res.failing_pairs()})
        got = res.matrix()
        k = m.dim
        mismatched = [[m.coordinates[i], m.coordinates[j]] for i in range(k) for j in range(i, k)
                      if not (got[i, j] == m.cometric[i, j]
                              or equal_on_sphere(m, got[i, j], m.cometric[i, j]))]
        printed = None
        if m.printed_cometric is not None:
            printed = all(got[i, j] == m.printed_cometric[i, j]
                          or equal_on_sphere(m, got[i, j], m.printed_cometric[i, j])
                          for i in range(k) for j in range(i, k))
        exact = all(got[i, j] == m.cometric[i, j] for i in range(k) for j in range(i, k))
        return CheckResult("closure", not mismatched, {
            "computed": _texts(got), "declared_mismatches": mismatched,
            "identical_to_declared": exact, "printed_matches": printed,
            "nullity": {f"{i},{j}": v for (i, j), v in sorted(res.nullity.items())}})

    def round_trip() -> CheckResult:
        res = state.get("closure")
        if res is None or not res.closed:
            return CheckResult("round_trip", False, {"error": "closure unavailable"})
        bad = []
        for (i, j), expr in res.expressed.items():
            if system.to_ambient(expr) != res.ambient_gamma[(i, j)]:
                bad.append([m.coordinates[i], m.coordinates[j]])
        return CheckResult("round_trip", not bad, {"failing_pairs": bad})

    def drift() -> CheckResult:
        res = drift_closure(system, images)
        state["drift"] = res
        return CheckResult("drift_closure", res.closed, {
            "drift": [None if b is None else b.to_text() for b in res.drift],
            "failing": [m.coordinates[i] for i in sorted(res.residual)]})

    def boundary() -> CheckResult:
        verdicts = verify_boundary(m)
        return CheckResult("boundary", all(v.passed for v in verdicts),
                           [v.to_json() for v in verdicts])

    def determinant() -> CheckResult:
        v = verify_determinant(m)
        return CheckResult("determinant", v.passed, v.to_json())

    def syzygy() -> CheckResult:
        v = verify_syzygy(m, images)
        return CheckResult("syzygy", v.passed, v.to_json(), applicable=v.applicable)

    def measure() -> CheckResult:
        base = measure_drift(m, {})
        dr = state.get("drift")
        alpha = fit_measure_exponents(m, dr.drift) if dr is not None and dr.closed else None
        witness = {"lebesgue_drift": [b.to_text() for b in base],
                   "sphere_image_exponents": None if alpha is None
                   else {k: v.to_text() for k, v in alpha.items()}}
        ok = alpha is not None
        if ok:
            measure_drift(m, alpha)
        return CheckResult("measure_drift", ok, witness)

    def operator() -> CheckResult:
        dr = state.get("drift")
        if dr is None or not dr.closed:
            return CheckResult("operator", False, {"error": "drift unavailable"})
        try:
            op = assemble_operator(m, dr.drift, cap)
        except FiltrationViolation as exc:
            return CheckResult("operator", False, {"error": str(exc)})
        d = system.ambient_dim
        spectrum = [spherical_eigenvalue(k, d) for k in range(0, 2 * cap + 2)]
        blocks = block_spectra(op, spectrum)
        allowed = set(spectrum)
        ok = op.is_block_triangular() and all(
            b.complete and all(r in allowed for r in b.exact) for b in blocks)
        return CheckResult("operator", ok, {
            "cap": cap, "size": op.size, "block_triangular": op.is_block_triangular(),
            "blocks": [{"weight": b.weight, "size": b.size,
                        "eigenvalues": [r.to_text() for r in b.exact],
                        "complete": b.complete} for b in blocks]})

    for name, fn in (("closure", closure), ("round_trip", round_trip),
                     ("drift_closure", drift), ("boundary", boundary),
                     ("determinant", determinant), ("syzygy", syzygy),
                     ("measure_drift", measure), ("operator", operator)):
        timed(name, fn)
    return report


def verify_model(name: str, n: int | None = None, cap: int = DEFAULT_CAP) -> ModelReport:
    return run_model(load_model(name, n), cap)


def catalog_entries(ns: tuple[int, ...] = (2, 3, 4)) -> list[tuple[str, int | None]]:
    """Canonical order of catalog instances verified by a full run."""
    from ..catalog.models import BUILDERS, PARAMETRISED
    out = []
    for key in BUILDERS:
        if key in PARAMETRISED:
            out.extend((key, n) for n in ns)
        else:
            out.append((key, None))
    return out
