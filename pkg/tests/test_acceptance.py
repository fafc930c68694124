"""Acceptance suite: one PASS/FAIL line per criterion, at the stated tolerances.

Run ``pytest tests/test_acceptance.py -s`` to see the lines inline; the
terminal summary repeats them in order.
"""

import time
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from conftest import record_criterion
from polymodels.algebra import SQRT5, MultiPoly, Scalar, exact_divide
from polymodels.catalog import model
from polymodels.catalog.covers import COVER_PAIRS, cover_map, quartic_coefficients
from polymodels.catalog.invariants import i6, i10, i15, o3, o4, o6
from polymodels.cli import main as cli_main
from polymodels.groups import (act, construct_named, mat_det, molien, reynolds_dimension,
                               series_from_closed_form)
from polymodels.modelcheck import (assemble_operator, closure_solve, cornulier_check,
                                   drift_closure, measure_drift, run_model, verify_boundary,
                                   verify_cover)
from polymodels.modelcheck.covers import quartic_identity_holds
from polymodels.modelcheck.operator import block_spectra, spherical_eigenvalue
from polymodels.modelcheck.verify import equal_on_sphere
from polymodels.numerics import (FloatPoly, _plane_factors, numeric_eigenvalues, render_boundary,
                                 sample_interior, symmetry_check)
from polymodels.sphereops import SPHERE3

T1, T2, ETA = MultiPoly.var("t1"), MultiPoly.var("t2"), MultiPoly.var("eta")
R5 = MultiPoly.const(SQRT5)
AMBIENT = ("x", "y", "z")


def _divide_all(poly: MultiPoly, gamma, coords) -> dict[str, MultiPoly | None]:
    """Multipliers ``sum_j G_ij d_j P / P`` computed from the matrix ``gamma``."""
    out = {}
    for i, c in enumerate(coords):
        action = MultiPoly.const(0)
        for j, cj in enumerate(coords):
            action = action + gamma[i, j] * poly.diff(cj)
        out[c] = exact_divide(action, poly)
    return out


def _ratio(p: MultiPoly, q: MultiPoly) -> Scalar | None:
    """``c`` with ``p == c q`` exactly, else ``None``."""
    if not p or not q:
        return None
    exps, lead = next(iter(q.items()))
    c = p.coefficient(exps) / lead
    return c if c and (p - q.scale(c)).is_zero() else None


# -- criterion 1 -------------------------------------------------------------------

def test_criterion_01_cyclic_family():
    failures, slowest = [], 0.0
    for n in range(1, 9):
        start = time.perf_counter()
        m = model("omega1", n)
        res = closure_solve(m.system)
        gamma = res.matrix()
        p = (1 - T1 ** 2) ** n - T2 ** 2
        if gamma.determinant() != n * n * p:
            failures.append(f"n={n}: determinant")
        mult = _divide_all(p, gamma, m.coordinates)
        if mult != {"t1": -2 * n * T1, "t2": -2 * n * n * T2}:
            failures.append(f"n={n}: multipliers")
        elapsed = time.perf_counter() - start
        slowest = max(slowest, elapsed)
        if elapsed >= 1.0:
            failures.append(f"n={n}: {elapsed:.2f}s")
    line = record_criterion("1", "cyclic family Gamma1 exact, n = 1..8", not failures,
                            "; ".join(failures) or f"slowest n {slowest:.3f}s")
    assert not failures, line


# -- criterion 2 -------------------------------------------------------------------

def test_criterion_02_three_dimensional_cyclic_family():
    failures, slowest = [], 0.0
    for n in range(1, 7):
        start = time.perf_counter()
        m = model("omega2", n)
        system = m.system
        # the syzygy by ambient substitution
        if not system.to_ambient(T2 ** 2 + ETA ** 2 - (1 - T1 ** 2) ** n).is_zero():
            failures.append(f"n={n}: syzygy")
        # closure reproduces the declared Gamma2 on the sphere image
        computed = closure_solve(system).matrix()
        for i in range(3):
            for j in range(i, 3):
                if not equal_on_sphere(m, computed[i, j], m.cometric[i, j]):
                    failures.append(f"n={n}: entry {i}{j}")
        want = n ** 4 * (1 - T1 ** 2) ** (n - 1) * ((1 - T1 ** 2) ** n - T2 ** 2 - ETA ** 2)
        if m.cometric.determinant() != want:
            failures.append(f"n={n}: determinant")
        elapsed = time.perf_counter() - start
        slowest = max(slowest, elapsed)
        if elapsed >= 2.0:
            failures.append(f"n={n}: {elapsed:.2f}s")
    line = record_criterion("2", "3-d cyclic family det Gamma2 and syzygy, n <= 6", not failures,
                            "; ".join(failures) or f"slowest n {slowest:.3f}s")
    assert not failures, line


# -- criterion 3 -------------------------------------------------------------------

DIHEDRAL = ("omega3", "omega4", "omega5", "omega6", "omega7", "omega8")
EXPECTED_FAILING = {("omega5", "P2"), ("omega8", "P3")}


def test_criterion_03_dihedral_family():
    failures = []
    for key in DIHEDRAL:
        for n in (2, 3, 4):
            m = model(key, n)
            report = run_model(m)
            for name in ("closure", "round_trip", "boundary", "determinant", "syzygy"):
                if not report.check(name).passed:
                    failures.append(f"{m.label}:{name}")
            for v in verify_boundary(m):
                if (key, v.name) in EXPECTED_FAILING and v.satisfied:
                    failures.append(f"{m.label}:{v.name} unexpectedly satisfies")
            if key == "omega5":
                by_name = {b.name: b.poly for b in m.boundary}
                if m.cometric.determinant() != 4 * n * n * by_name["P1"] * by_name["P2"]:
                    failures.append(f"{m.label}: det != 4n^2 P1 P2")
    line = record_criterion("3", "dihedral family Gamma3..Gamma8, n = 2,3,4", not failures,
                            "; ".join(failures))
    assert not failures, line


# -- criterion 4 -------------------------------------------------------------------

def _printed_octahedral_table():
    a, b, c = (MultiPoly.var(v) for v in ("A", "B", "C"))
    return {
        (0, 0): (1 - b) * Fraction(1, 2) - 9 * a ** 2,
        (0, 1): 4 * a * (1 - 3 * b),
        (0, 2): -18 * a * c,
        (1, 1): 8 * (6 * a ** 2 + 3 * b - 1 - 2 * b ** 2),
        (1, 2): 8 * c * (2 - 3 * b),
        (2, 2): -54 * a ** 2 * b + 18 * a ** 2 - 3 * b ** 2 + 4 * b - 1 - 36 * c ** 2,
    }


def test_criterion_04_polyhedral_family():
    start = time.perf_counter()
    failures, notes = [], []
    gens = [o3(), o4(), o6()]
    bind = {"A": gens[0], "B": gens[1], "C": gens[2]}
    for (i, j), entry in _printed_octahedral_table().items():
        if SPHERE3.gamma(gens[i], gens[j]) != SPHERE3.reduce(entry.substitute(bind)):
            failures.append(f"table entry {i}{j}")

    # swallow tail: determinant of the closure-computed Gamma11
    m11 = model("omega11")
    det11 = closure_solve(m11.system).matrix().determinant()
    printed_p = (-108 * T1 ** 4 + 20 * T1 ** 2 + 2 * T2 ** 3 - 5 * T2 ** 2 + 4 * T2
                 - 36 * T1 ** 2 * T2)
    c = _ratio(det11, printed_p - 1)
    if c is None:
        failures.append("Omega11 determinant is not the swallow tail")
    if _ratio(det11, printed_p) is not None:
        failures.append("printed P unexpectedly exact")
    else:
        notes.append("printed P needs constant -1 (mismatch-with-source)")
    if not all(v.passed for v in verify_boundary(m11)):
        failures.append("Omega11 boundary")

    # Omega12: factorisation exactly as printed
    m12 = model("omega12")
    p3 = (108 * T1 ** 4 + 36 * T1 ** 2 * T2 - 2 * T2 ** 3 - 20 * T1 ** 2 + 5 * T2 ** 2
          + 4 * ETA ** 2 - 4 * T2 + 1)
    if m12.cometric.determinant() != 4 * (3 * T2 - 1) * (18 * T1 ** 2 + T2 - 1) * p3:
        failures.append("Omega12 determinant")
    if _divide_all(p3, m12.cometric, m12.coordinates) != {
            "t1": -36 * T1, "t2": -48 * T2 + 32, "eta": -72 * ETA}:
        failures.append("Omega12 multipliers")

    for key in ("omega12", "omega14", "omega15"):
        m = model(key)
        report = run_model(m)
        for name in ("closure", "boundary", "determinant", "syzygy"):
            if not report.check(name).passed:
                failures.append(f"{m.label}:{name}")
    # suspected misprints in Gamma14 are reported as mismatches with the source
    verdicts = {v.name: v for v in verify_boundary(model("omega14"))}
    for name in ("t1", "Q3"):
        v = verdicts[name]
        if not (v.status == "paper-typo-suspected" and v.printed_match is False and v.passed):
            failures.append(f"Omega14 {name} typo handling")
    typo_text = {t.printed for t in model("omega14").typos}
    if not {"-36 t2 - 2 t2 + 2", "-73 theta3"} <= typo_text:
        failures.append("Omega14 typo records")
    elapsed = time.perf_counter() - start
    if elapsed >= 30:
        failures.append(f"{elapsed:.1f}s")
    line = record_criterion("4", "polyhedral family Gamma11..Gamma15", not failures,
                            "; ".join(failures + notes) + f"; {elapsed:.2f}s")
    assert not failures, line


# -- criterion 5 -------------------------------------------------------------------

@pytest.mark.xfail(strict=True, reason="I15 has odd degree, so -Id in I_J maps it to -I15; "
                                       "analysis in the decisions ledger")
def test_criterion_05_literal_invariance_under_full_group():
    g = construct_named("IJ")
    assert g.order == 120
    bad = [name for name, p in (("I6", i6()), ("I10", i10()), ("I15", i15()))
           if any(act(p, m, AMBIENT) != p for m in g.elements)]
    record_criterion("5", "icosahedral family: I6, I10, I15 invariant under all 120 elements of I_J",
                     not bad, "not invariant: " + ", ".join(bad) if bad else "")
    assert not bad


def _printed_s():
    return (688 * R5 * T1 ** 4 + 6480 * R5 * T1 ** 3 * T2 + 1728 * T1 ** 5 + 364 * T1 ** 3 * R5
            + 6042 * R5 * T1 ** 2 * T2 + 23400 * R5 * T1 * T2 ** 2 + 17050 * R5 * T2 ** 3
            + 1376 * T1 ** 4 + 14400 * T1 ** 3 * T2 + 68 * T1 ** 2 * R5 + 1288 * T1 * T2 * R5
            + 1220 * R5 * T2 ** 2 - 19520 * R5 * ETA ** 2 + 819 * T1 ** 3 + 13515 * T1 ** 2 * T2
            + 52325 * T1 * T2 ** 2 + 38125 * T2 ** 3 + 152 * T1 ** 2 + 2880 * T1 * T2
            + 2728 * T2 ** 2)


def test_criterion_05_icosahedral_family():
    start = time.perf_counter()
    failures = []
    full, rotations = construct_named("IJ"), construct_named("I")
    for name, p in (("I6", i6()), ("I10", i10())):
        if any(act(p, m, AMBIENT) != p for m in full.elements):
            failures.append(f"{name} not I_J-invariant")
    if any(act(i15(), m, AMBIENT) != i15() for m in rotations.elements):
        failures.append("I15 not I-invariant")
    if any(act(i15(), m, AMBIENT) != i15().scale(mat_det(m)) for m in full.elements):
        failures.append("I15 not det-twisted invariant under I_J")

    s = _printed_s()
    s_plane = s.substitute({"eta": 0})
    m21 = model("omega21")
    det21 = closure_solve(m21.system).matrix().determinant()
    if _ratio(det21, s_plane) is None:
        failures.append("det Gamma21 not proportional to S")

    m22 = model("omega22")
    closure22 = run_model(m22)
    for name in ("closure", "round_trip", "syzygy", "determinant"):
        if not closure22.check(name).passed:
            failures.append(f"Omega22:{name}")
    s1 = s - 43648 * ETA ** 2
    printed = {"t1": -4 * R5 - 8 - 180 * T1,
               "t2": 4 * (2 * R5 - 5) * ((30 * R5 + 75) * T2 + 10 * T1 + 2 + R5),
               "eta": -450 * ETA}
    got = _divide_all(s1, m22.cometric, m22.coordinates)
    if got != printed:
        failures.append("S1 multipliers")
    elapsed = time.perf_counter() - start
    if elapsed >= 600:
        failures.append(f"{elapsed:.0f}s")
    line = record_criterion("5b", "icosahedral family: Gamma21 det ~ S, S1 multipliers exact, "
                            "I15 invariant under I and det-twisted under I_J", not failures,
                            "; ".join(failures) or f"{elapsed:.2f}s")
    assert not failures, line


# -- criterion 6 -------------------------------------------------------------------

MOLIEN_GROUPS = (("T", None, 8), ("O", None, 8), ("I", None, 6), ("TO", None, 8),
                 ("OJ", None, 8), ("C5|D5", None, 8), ("D3", None, 8))


def test_criterion_06_molien_cross_validation():
    failures = []
    for label, n, top in MOLIEN_GROUPS:
        g = construct_named(label, n)
        series = molien(g, 8).coefficients
        reynolds = [reynolds_dimension(g, k) for k in range(top + 1)]
        if series[:top + 1] != reynolds:
            failures.append(f"{label}: {series[:top + 1]} vs {reynolds}")
    # (1 + t^3 + 2t^5 + 2t^6 + t^8 + t^11) / ((1-t^2)(1-t^4)(1-t^6)(1-t^3))
    closed = series_from_closed_form([0, 3, 5, 5, 6, 6, 8, 11], [2, 4, 6, 3], 12)
    got = molien(construct_named("cornulier", p=3), 12).coefficients
    if got != closed:
        failures.append(f"cornulier(3): {got} vs {closed}")
    line = record_criterion("6", "Molien series equal Reynolds dimensions; cornulier(3) closed form",
                            not failures, "; ".join(failures))
    assert not failures, line


# -- criterion 7 -------------------------------------------------------------------

def test_criterion_07_negative_control():
    v = cornulier_check(3)
    failures = []
    if not v.primaries_fail:
        failures.append("primaries closed")
    if not v.extended_closes:
        failures.append("extended system not closed")
    if not v.boundary_fails:
        failures.append("boundary equation holds")
    line = record_criterion("7", "cornulier(3): primaries inconsistent, eta3 closes, boundary fails",
                            not failures, "; ".join(failures))
    assert not failures, line


# -- criterion 8 -------------------------------------------------------------------

def test_criterion_08_spectral_property():
    cap, failures = 8, []
    allowed_float = [-m * (m + 1) for m in range(0, 2 * cap + 2)]
    for key, n in [("omega1", 1), ("omega1", 2), ("omega1", 3), ("omega1", 4), ("omega11", None)]:
        m = model(key, n)
        drift = drift_closure(m.system)
        op = assemble_operator(m, drift.drift, cap)
        allowed = [spherical_eigenvalue(k, 3) for k in range(0, 2 * cap + 2)]
        if not op.is_block_triangular():
            failures.append(f"{m.label}: not block triangular")
        exact = []
        for block in block_spectra(op, allowed):
            if not block.complete or any(r not in allowed for r in block.exact):
                failures.append(f"{m.label}: block {block.weight}")
            exact.extend(float(r) for r in block.exact)
        numeric = numeric_eigenvalues(op, 1e-9)
        if len(numeric) != op.size:
            failures.append(f"{m.label}: eigenvalue count")
        for lam, want in zip(numeric, sorted(exact)):
            if abs(lam - want) > 1e-8 or min(abs(lam - a) for a in allowed_float) > 1e-8:
                failures.append(f"{m.label}: {lam}")
                break
    line = record_criterion("8", "sphere-image drift spectra are -m(m+1) at cap 8", not failures,
                            "; ".join(failures))
    assert not failures, line


# -- criterion 9 -------------------------------------------------------------------

SYMMETRY_CASES = {
    ("omega1", 2): [{"P1": Fraction(1, 2), "P2": Fraction(1, 2)}, {"P1": Fraction(-1, 2), "P2": Fraction(0)}],
    ("omega3", 2): [{"t1": Fraction(-1, 2), "P1": Fraction(-1, 2)}, {"t1": Fraction(1, 2), "P1": Fraction(1)}],
    ("omega11", None): [{"P": Fraction(-1, 2)}, {"P": Fraction(1, 2)}],
}


def test_criterion_09_probabilistic_symmetry():
    failures, worst, weakest_control = [], 0.0, np.inf
    for (key, n), alphas in SYMMETRY_CASES.items():
        start = time.perf_counter()
        m = model(key, n)
        cloud = sample_interior(m, 100_000, seed=20240917)
        for alpha in alphas:
            r = symmetry_check(m, alpha, T1, T2, cloud)
            worst = max(worst, r.residual)
            if not r.residual < 5e-2:
                failures.append(f"{m.label} {alpha}: {r.residual:.3g}")
            wrong = [b + 1 for b in measure_drift(m, alpha)]
            control = symmetry_check(m, alpha, MultiPoly.const(1), T1 + T2, cloud, drift=wrong)
            weakest_control = min(weakest_control, control.residual)
            if not control.residual > 1e-1:
                failures.append(f"{m.label} wrong drift {control.residual:.3g}")
        elapsed = time.perf_counter() - start
        if elapsed >= 60:
            failures.append(f"{m.label}: {elapsed:.0f}s")
    line = record_criterion("9", "Monte Carlo symmetry at 1e5 samples; wrong drift detected",
                            not failures, "; ".join(failures)
                            or f"max residual {worst:.2e}, min control {weakest_control:.2e}")
    assert not failures, line


# -- criterion 10 ------------------------------------------------------------------

QUARTIC_ORACLE = (Fraction(-1, 2), Fraction(1), Fraction(4), Fraction(1, 2))


def test_criterion_10_covers():
    failures = []
    for n in (2, 3, 4):
        for pair in COVER_PAIRS:
            if pair[1] == "omega11" and n != 3:
                continue
            v = verify_cover(cover_map(*pair, n))
            if not v.passed:
                failures.append(f"{pair[0]}->{pair[1]} n={n}: {v.failures}")
    coeffs = quartic_coefficients()
    if tuple(c.to_fraction() for c in coeffs) != QUARTIC_ORACLE:
        failures.append(f"a,b,c,d = {[c.to_text() for c in coeffs]}")
    if not quartic_identity_holds():
        failures.append("quartic identity (exact expansion)")
    x, y, z = sp.symbols("x y z")
    a, b, c, d = (sp.Rational(f.numerator, f.denominator) for f in QUARTIC_ORACLE)
    s, r = x + y + z, x ** 2 + y ** 2 + z ** 2
    if sp.expand(a * s ** 4 + b * s ** 2 * r + c * s * x * y * z + d * r ** 2 - (x ** 4 + y ** 4 + z ** 4)) != 0:
        failures.append("quartic identity (independent expansion)")
    line = record_criterion("10", "covering maps pull boundaries back exactly; quartic identity",
                            not failures, "; ".join(failures))
    assert not failures, line


# -- criterion 11 ------------------------------------------------------------------

def test_criterion_11_rendering(tmp_path, capsys):
    failures = []
    for key, n in (("omega1", 3), ("omega11", None), ("omega21", None)):
        outputs = []
        for run in ("a", "b"):
            argv = ["render", "--model", key, "--grid", "512", "--out", str(tmp_path / f"{key}_{run}")]
            if n is not None:
                argv += ["--n", str(n)]
            if cli_main(argv) != 0:
                failures.append(f"{key}: exit status")
            outputs.append((tmp_path / f"{key}_{run}.svg").read_bytes())
        if outputs[0] != outputs[1]:
            failures.append(f"{key}: SVG differs between runs")
        m = model(key, n)
        rendering = render_boundary(m, 512)
        factors = dict(_plane_factors(m, 0.0))
        worst = 0.0
        for contour in rendering.contours:
            f = FloatPoly(factors[contour.factor_index], m.coordinates[:2])
            worst = max(worst, float(np.max(np.abs(f(contour.points)))))
        if not rendering.point_count() or not worst < 1e-3:
            failures.append(f"{key}: max |P| {worst:.2e}")
    capsys.readouterr()
    line = record_criterion("11", "render is byte-reproducible and contours lie on P = 0",
                            not failures, "; ".join(failures))
    assert not failures, line


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
