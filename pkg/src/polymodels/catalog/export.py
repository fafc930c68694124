"""JSON form of catalog entries (canonical polynomial text)."""

from __future__ import annotations

from ..algebra.matrix import PolyMatrix
from .models import GROUP_LABELS
from .types import PolynomialModel


def _matrix(m: PolyMatrix) -> list[list[str]]:
    k = m.dimension
    return [[m[i, j].to_text() for j in range(k)] for i in range(k)]


def model_to_json(m: PolynomialModel) -> dict:
    groups, *_ = GROUP_LABELS.get(m.key, (m.system.group,))
    return {
        "kind": "model",
        "model": m.key,
        "label": m.label,
        "n": m.n,
        "group": m.system.group,
        "groups": groups,
        "ambient_dim": m.system.ambient_dim,
        "invariants": [{"name": inv.name, "coordinate": inv.coordinate,
                        "valuation": inv.valuation, "ambient": inv.ambient.to_text()}
                       for inv in m.system.invariants],
        "secondary": m.system.secondary,
        "cometric": _matrix(m.cometric),
        "printed_cometric": None if m.printed_cometric is None else _matrix(m.printed_cometric),
        "boundary": [{
            "name": b.name, "poly": b.poly.to_text(), "satisfies_boundary": b.satisfies_boundary,
            "composite": b.composite, "status": b.status,
            "multipliers": None if b.multipliers is None
            else {k: v.to_text() for k, v in b.multipliers.items()},
            "printed": None if b.printed is None
            else {k: v.to_text() for k, v in b.printed.items()},
            "printed_poly": None if b.printed_poly is None else b.printed_poly.to_text(),
            "note": b.note,
        } for b in m.boundary],
        "det_constant": None if m.det_constant is None else m.det_constant.to_text(),
        "det_exponents": dict(m.det_exponents),
        "det_extra_factors": [p.to_text() for p in m.det_extra_factors],
        "syzygy": None if m.syzygy is None else m.syzygy.to_text(),
        "syzygy_parent": None if m.syzygy_parent is None
        else {"model": m.syzygy_parent[0], "poly": m.syzygy_parent[1].to_text()},
        "domain_conditions": [p.to_text() for p in m.domain_conditions],
        "summary_boundary": m.summary_boundary,
        "valuation_alternatives": [list(v) for v in m.valuation_alternatives],
        "typos": [{"location": t.location, "printed": t.printed, "corrected": t.corrected,
                   "note": t.note} for t in m.typos],
        "notes": list(m.notes),
    }
