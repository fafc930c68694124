import dataclasses
from fractions import Fraction

import pytest
import sympy as sp

from polymodels.algebra import MultiPoly, Scalar
from polymodels.catalog import model
from polymodels.catalog.covers import (COVER_PAIRS, CoverMap, classical_identifications, cover_map,
                                       identification_boundary_match)
from polymodels.modelcheck import (CHECK_NAMES, FiltrationViolation, assemble_operator,
                                   closure_solve, cornulier_check, drift_closure, measure_drift,
                                   run_model, syzygy_from_ambient, verify_boundary, verify_cover,
                                   verify_determinant, verify_syzygy)
from polymodels.modelcheck.closure import ansatz_monomials
from polymodels.modelcheck.negative import cornulier_system
from polymodels.modelcheck.operator import (characteristic_polynomial, exact_eigenvalues,
                                            filtered_basis, spherical_eigenvalue)
from polymodels.modelcheck.report import catalog_entries

T1, T2, ETA = MultiPoly.var("t1"), MultiPoly.var("t2"), MultiPoly.var("eta")


@pytest.mark.parametrize("key,n", catalog_entries())
def test_full_catalog_verifies(key, n):
    report = run_model(model(key, n))
    assert [c.name for c in report.checks] == list(CHECK_NAMES)
    assert report.passed, report.failing()


def test_report_json_deterministic_mode():
    report = run_model(model("omega3", 2))
    assert all("seconds" not in c for c in report.to_json(True)["checks"])
    assert all("seconds" in c for c in report.to_json(False)["checks"])


class TestClosure:
    def test_ansatz_caps_secondary_degree(self):
        mons = ansatz_monomials((1, 2, 3), 6, capped=2)
        assert all(e[2] <= 1 for e in mons)
        assert (0, 0, 2) not in mons and (0, 0, 1) in mons

    def test_disk_cometric(self):
        res = closure_solve(model("omega1", 1).system)
        g = res.matrix()
        assert g[0, 0] == 1 - T1 ** 2 and g[0, 1] == -T1 * T2 and g[1, 1] == 1 - T2 ** 2

    def test_round_trip(self):
        m = model("omega12")
        res = closure_solve(m.system)
        for key, expr in res.expressed.items():
            assert m.system.to_ambient(expr) == res.ambient_gamma[key]

    def test_primaries_of_cornulier_group_are_not_closed(self):
        res = closure_solve(cornulier_system(3))
        assert not res.closed and res.failing_pairs()

    def test_syzygy_recomputed(self):
        m = model("omega2", 3)
        syz = syzygy_from_ambient(m.system)
        assert syz == ETA ** 2 + T2 ** 2 - (1 - T1 ** 2) ** 3


class TestBoundary:
    def test_declared_multiplier_mismatch_is_detected(self):
        m = model("omega1", 3)
        factor = dataclasses.replace(m.boundary[0], multipliers={"t1": -5 * T1, "t2": -18 * T2})
        bad = dataclasses.replace(m, boundary=[factor])
        verdict = verify_boundary(bad)[0]
        assert verdict.declared_match is False and not verdict.passed

    def test_unexpected_failure_is_detected(self):
        m = model("omega1", 3)
        factor = dataclasses.replace(m.boundary[0], poly=m.boundary[0].poly + T1, multipliers=None)
        verdict = verify_boundary(dataclasses.replace(m, boundary=[factor]))[0]
        assert not verdict.satisfied and not verdict.passed

    def test_flagged_factor_fails_as_expected(self):
        m = model("omega5", 3)
        by_name = {v.name: v for v in verify_boundary(m)}
        assert not by_name["P2"].satisfied and by_name["P2"].passed

    def test_wrong_determinant_constant(self):
        m = dataclasses.replace(model("omega3", 3), det_constant=Scalar(35))
        v = verify_determinant(m)
        assert v.constant == Scalar(36) and v.declared_constant_match is False and not v.passed

    def test_wrong_syzygy(self):
        m = model("omega2", 3)
        v = verify_syzygy(dataclasses.replace(m, syzygy=m.syzygy + T1))
        assert not v.passed

    def test_measure_drift_of_uniform_measure(self):
        m = model("omega1", 1)
        # divergence of the disk co-metric: (-3 t1, -3 t2)
        assert measure_drift(m, {}) == [-3 * T1, -3 * T2]


class TestOperator:
    def test_filtered_basis_ordering(self):
        basis = filtered_basis((1, 2, 3), 3, capped=2)
        weights = [sum(k * a for k, a in zip(e, (1, 2, 3))) for e in basis]
        assert weights == sorted(weights) and weights[0] == 0

    def test_characteristic_polynomial_matches_sympy(self):
        block = [[Scalar(2), Scalar(1), Scalar(0)], [Scalar(-1), Scalar(3), Scalar(0, 1)],
                 [Scalar(4), Scalar(0), Scalar(Fraction(1, 2))]]
        t = sp.Symbol("t")
        mat = sp.Matrix([[sp.nsimplify(float(v.a)) + sp.nsimplify(float(v.b)) * sp.sqrt(5) for v in row]
                         for row in block])
        want = sp.Poly(mat.charpoly(t).as_expr(), t).all_coeffs()[::-1]
        got = characteristic_polynomial(block)
        assert [sp.nsimplify(float(c.a)) + sp.nsimplify(float(c.b)) * sp.sqrt(5) for c in got] == \
            [sp.simplify(w) for w in want]

    def test_exact_eigenvalues_of_triangular_block(self):
        block = [[Scalar(-2), Scalar(1)], [Scalar(0), Scalar(-6)]]
        roots, rest = exact_eigenvalues(block)
        assert sorted(roots, key=float) == [Scalar(-6), Scalar(-2)] and len(rest) == 1

    def test_irrational_spectrum_reports_leftover(self):
        roots, rest = exact_eigenvalues([[Scalar(0), Scalar(1)], [Scalar(2), Scalar(0)]])
        assert roots == [] and len(rest) == 3

    def test_disk_operator_spectrum(self):
        m = model("omega1", 1)
        drift = drift_closure(m.system).drift
        op = assemble_operator(m, drift, 3)
        assert op.is_block_triangular()
        for w, idx in op.blocks().items():
            for i in idx:
                assert op.matrix[i][i] == spherical_eigenvalue(w, 3)

    def test_filtration_violation(self):
        m = model("omega1", 1)
        with pytest.raises(FiltrationViolation):
            assemble_operator(m, [T1 ** 3, T2], 2)


class TestCovers:
    @pytest.mark.parametrize("pair", COVER_PAIRS)
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_cover_pairs(self, pair, n):
        if pair[1] == "omega11" and n != 3:
            pytest.skip("the octahedral cover exists for n = 3 only")
        verdict = verify_cover(cover_map(*pair, n))
        assert verdict.passed, verdict.failures

    def test_broken_cover_fails(self):
        good = cover_map("omega1", "omega3", 3)
        bad = CoverMap(good.source, good.target, 3, {"t1": T1, "t2": T2}, 2)
        verdict = verify_cover(bad)
        assert not verdict.passed and not verdict.components_match

    def test_identifications_with_classical_models(self):
        for ident in classical_identifications():
            ok, constant = identification_boundary_match(ident)
            assert ok and constant, ident


def test_cornulier_negative_control():
    v = cornulier_check(3)
    assert v.primaries_fail and v.extended_closes and v.boundary_fails and v.passed
    assert all(v.syzygy_divisible.values())
    assert not any(v.remainder_divisible.values())
