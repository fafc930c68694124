from fractions import Fraction

import numpy as np
import pytest

from polymodels.algebra import MultiPoly, Scalar
from polymodels.catalog import model
from polymodels.catalog.models import SWALLOW
from polymodels.modelcheck import assemble_operator, drift_closure
from polymodels.modelcheck.operator import OperatorMatrix, block_spectra
from polymodels.numerics import (ConvergenceFailure, FloatPoly, LowAcceptance, domain_box,
                                 ellipticity_check, inside, min_eigenvalues, numeric_eigenvalues,
                                 render_boundary, rendering_csv, rendering_svg, sample_interior,
                                 symmetry_check, write_rendering)
from polymodels.modelcheck.report import catalog_entries

T1, T2 = MultiPoly.var("t1"), MultiPoly.var("t2")


class TestSampling:
    def test_disk(self):
        m = model("omega1", 1)
        cloud = sample_interior(m, 1000, seed=1)
        assert len(cloud) == 1000
        assert np.all(1 - (cloud.points ** 2).sum(axis=1) > 1e-9)

    def test_swallow_tail(self):
        m = model("omega11")
        cloud = sample_interior(m, 1000, seed=2)
        assert np.all(FloatPoly(SWALLOW, m.coordinates)(cloud.points) > 0)

    def test_icosahedral_domain(self):
        m = model("omega22")
        cloud = sample_interior(m, 500, seed=3)
        s1 = next(b.poly for b in m.boundary if b.name == "S1")
        assert np.all(FloatPoly(s1, m.coordinates)(cloud.points) > 0)

    def test_bit_identical_regeneration(self):
        m = model("omega3", 3)
        a = sample_interior(m, 700, seed=11, batch=500)
        b = sample_interior(m, 700, seed=11, batch=500)
        assert a.points.tobytes() == b.points.tobytes()
        c = sample_interior(m, 700, seed=12, batch=500)
        assert a.points.tobytes() != c.points.tobytes()

    def test_prefix_stable_across_counts(self):
        m = model("omega1", 2)
        small = sample_interior(m, 100, seed=5)
        large = sample_interior(m, 5000, seed=5)
        assert np.array_equal(small.points, large.points[:100])

    def test_low_acceptance(self):
        m = model("omega1", 1)
        import dataclasses
        far = dataclasses.replace(m, domain_box=((50.0, 51.0), (50.0, 51.0)))
        with pytest.raises(LowAcceptance):
            sample_interior(far, 10, seed=0, batch=1000)

    def test_inside_rejects_outer_components(self):
        m = model("omega11")
        # (0, 2) satisfies no sign condition; the cloud must avoid it
        assert not inside(m, np.array([[0.0, 2.0]]))[0]


class TestEllipticity:
    def test_identity_at_origin(self):
        stats = ellipticity_check(model("omega1", 1), np.zeros((1, 2)))
        assert stats.minimum == pytest.approx(1.0) and stats.passed

    @pytest.mark.parametrize("key,n", catalog_entries((3,)))
    def test_catalog_positive_definite(self, key, n):
        m = model(key, n)
        stats = ellipticity_check(m, sample_interior(m, 1000, seed=4))
        assert stats.passed, stats

    @pytest.mark.parametrize("key,n", [("omega1", 3), ("omega11", None), ("omega3", 2), ("omega21", None)])
    def test_degenerate_on_boundary(self, key, n):
        m = model(key, n)
        r = render_boundary(m, grid=200)
        pts = np.concatenate([c.points for c in r.contours])
        # keep contour points with interior points nearby: those lie on the domain boundary
        h = 1e-3 * max(hi - lo for lo, hi in domain_box(m)[:2])
        offsets = np.array([[h, 0], [-h, 0], [0, h], [0, -h]])
        near = np.zeros(len(pts), dtype=bool)
        for o in offsets:
            near |= inside(m, pts + o)
        assert near.any()
        assert np.max(min_eigenvalues(m, pts[near])) <= 1e-6


class TestSymmetry:
    def setup_method(self):
        self.m = model("omega1", 2)
        self.cloud = sample_interior(self.m, 20000, seed=9)
        self.alpha = {"P1": Fraction(1, 2), "P2": Fraction(1, 2)}

    def test_identical_functions_give_zero(self):
        r = symmetry_check(self.m, self.alpha, T1 + T2, T1 + T2, self.cloud)
        assert r.residual == 0.0

    def test_rejects_non_integrable_exponent(self):
        with pytest.raises(ValueError):
            symmetry_check(self.m, {"P1": -1}, T1, T2, self.cloud)

    def test_wrong_drift_detected(self):
        from polymodels.modelcheck import measure_drift
        bad = [b + 1 for b in measure_drift(self.m, self.alpha)]
        r = symmetry_check(self.m, self.alpha, MultiPoly.const(1), T1 + T2, self.cloud, drift=bad)
        assert r.residual > 0.1

    def test_rate_consistent_with_inverse_square_root(self):
        # average over independent seeds to compare error sizes at M and 16 M
        def mean_residual(count, seeds):
            return np.mean([symmetry_check(self.m, self.alpha, T1, T2 ** 2,
                                           sample_interior(self.m, count, seed=s)).residual
                            for s in seeds])
        small = mean_residual(1000, range(100, 116))
        large = mean_residual(16000, range(200, 216))
        ratio = small / large
        # 1/sqrt(M) predicts a ratio of 4
        assert 2.0 < ratio < 8.0, ratio


class TestRendering:
    def test_circle(self):
        m = model("omega1", 1)
        grid = 256
        r = render_boundary(m, grid=grid)
        pts = np.concatenate([c.points for c in r.contours])
        assert np.max(np.abs(np.hypot(pts[:, 0], pts[:, 1]) - 1)) < 2 / grid

    def test_swallow_tail_branches(self):
        r = render_boundary(model("omega11"), grid=256)
        assert r.contours and all(len(c.points) > 0 for c in r.contours)
        pts = np.concatenate([c.points for c in r.contours])
        assert np.max(np.abs(FloatPoly(SWALLOW, ("t1", "t2"))(pts))) < 1e-3

    def test_cuspidal_slice(self):
        m = model("omega15")
        r = render_boundary(m, grid=256, slice_value=0.0)
        assert r.slice_value == 0.0 and r.point_count() > 0

    def test_outputs_are_deterministic(self, tmp_path):
        m = model("omega3", 3)
        a, b = render_boundary(m, grid=128), render_boundary(m, grid=128)
        assert rendering_svg(a) == rendering_svg(b) and rendering_csv(a) == rendering_csv(b)
        svg, csv = write_rendering(a, tmp_path / "sub" / "o3")
        assert svg.read_text().startswith("<?xml") and csv.read_text().startswith("x,y,factor_index\n")
        assert not list((tmp_path / "sub").glob("*.tmp"))

    def test_rejects_one_dimensional_models(self):
        import dataclasses
        m = model("omega1", 1)
        small = dataclasses.replace(m, system=dataclasses.replace(m.system, invariants=m.system.invariants[:1]))
        with pytest.raises(ValueError):
            render_boundary(small, grid=16)


class TestNumericEigenvalues:
    def test_zero_matrix(self):
        assert numeric_eigenvalues([[0, 0], [0, 0]]) == [0.0, 0.0]

    def test_diagonal(self):
        assert numeric_eigenvalues([[Scalar(-2), 0], [0, Scalar(-6)]]) == [-6.0, -2.0]

    def test_empty(self):
        assert numeric_eigenvalues([]) == []

    def test_complex_spectrum_rejected(self):
        with pytest.raises(ConvergenceFailure):
            numeric_eigenvalues([[0, 1], [-1, 0]])

    def test_sphere_image_operator_cap_six(self):
        m = model("omega1", 3)
        op = assemble_operator(m, drift_closure(m.system).drift, 6)
        assert isinstance(op, OperatorMatrix)
        exact = sorted(float(r) for b in block_spectra(op) for r in b.exact)
        got = numeric_eigenvalues(op, 1e-9)
        assert len(got) == op.size == len(exact)
        allowed = [-k * (k + 1) for k in range(0, 7)]
        for lam, want in zip(got, exact):
            assert abs(lam - want) < 1e-8
            assert min(abs(lam - a) for a in allowed) < 1e-8
