"""Verification engine for polynomial models."""

from .closure import (AnsatzUnderdetermined, ClosureResult, DriftResult, closure_solve,
                      drift_closure, syzygy_from_ambient)
from .covers import CoverVerdict, verify_cover
from .negative import cornulier_check
from .operator import FiltrationViolation, OperatorMatrix, assemble_operator
from .report import CHECK_NAMES, ModelReport, run_model, verify_model
from .verify import (DegreeViolation, measure_drift, verify_boundary, verify_determinant,
                     verify_syzygy)

__all__ = [
    "AnsatzUnderdetermined", "CHECK_NAMES", "ClosureResult", "CoverVerdict", "DegreeViolation",
    "DriftResult", "FiltrationViolation", "ModelReport", "OperatorMatrix", "assemble_operator",
    "closure_solve", "cornulier_check", "drift_closure", "measure_drift", "run_model",
    "syzygy_from_ambient", "verify_boundary", "verify_cover", "verify_determinant",
    "verify_model", "verify_syzygy",
]
