import os
import subprocess
import sys
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from polymodels import kernels
from polymodels.algebra import (GOLDEN, SQRT5, Inconsistent, MultiPoly, PolyMatrix, Scalar,
                                ZeroDivisorError, determinant, divides, exact_divide,
                                linear_solve, parse_poly, poly, poly_sum, rank, ring_ops, symbols)
from polymodels.algebra import univariate as up

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(Scalar, fractions, fractions)
nonzero_scalars = scalars.filter(lambda s: not s.is_zero())
VARS = ("x", "y", "z")


@st.composite
def polys(draw, max_terms=5, max_exp=3, irrational=True):
    n = draw(st.integers(0, max_terms))
    p = MultiPoly.const(0)
    for _ in range(n):
        exps = {v: draw(st.integers(0, max_exp)) for v in VARS}
        c = draw(scalars if irrational else fractions)
        p = p + MultiPoly.monomial(exps, c)
    return p


def to_sympy(p: MultiPoly):
    p = poly(p)
    r5 = sp.sqrt(5)
    out = 0
    for exps, c in p.items():
        coeff = sp.Rational(c.a.numerator, c.a.denominator) + sp.Rational(c.b.numerator, c.b.denominator) * r5
        term = coeff
        for v, k in exps.items():
            term *= sp.Symbol(v) ** k
        out += term
    return sp.expand(out)


# -- scalars -----------------------------------------------------------------------

class TestScalar:
    def test_golden_ratio_identity(self):
        assert GOLDEN * GOLDEN == GOLDEN + 1
        assert SQRT5 * SQRT5 == Scalar(5)

    def test_inverse_of_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            Scalar(0).inverse()

    def test_parse_round_trip(self):
        s = Scalar(Fraction(-3, 7), Fraction(5, 2))
        assert Scalar.parse(s.to_text()) == s
        assert Scalar.parse("(-8 + -4*r5)") == Scalar(-8, -4)

    def test_float_value(self):
        assert float(GOLDEN) == pytest.approx((1 + 5 ** 0.5) / 2, rel=1e-15)

    @given(scalars, scalars, scalars)
    def test_field_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == Scalar(0)

    @given(nonzero_scalars)
    def test_inverse(self, a):
        assert a * a.inverse() == Scalar(1)
        assert a.norm() == (a * a.conjugate()).to_fraction()

    @given(scalars, scalars)
    def test_hash_consistent_with_equality(self, a, b):
        if a == b:
            assert hash(a) == hash(b)


# -- polynomials --------------------------------------------------------------------

class TestMultiPoly:
    @settings(max_examples=60, deadline=None)
    @given(polys(), polys(), polys())
    def test_ring_axioms(self, p, q, r):
        assert (p + q) * r == p * r + q * r
        assert (p * q) * r == p * (q * r)
        assert p * q == q * p
        assert (p - p).is_zero()

    @settings(max_examples=40, deadline=None)
    @given(polys(max_terms=4), polys(max_terms=4))
    def test_product_matches_sympy(self, p, q):
        assert to_sympy(p * q) == sp.expand(to_sympy(p) * to_sympy(q))

    @settings(max_examples=40, deadline=None)
    @given(polys())
    def test_text_round_trip(self, p):
        assert parse_poly(p.to_text()) == p

    @settings(max_examples=40, deadline=None)
    @given(polys(), polys())
    def test_leibniz_rule(self, p, q):
        for v in VARS:
            assert (p * q).diff(v) == p.diff(v) * q + p * q.diff(v)

    @settings(max_examples=30, deadline=None)
    @given(polys(max_terms=3), polys(max_terms=3), polys(max_terms=3))
    def test_substitution_is_a_ring_map(self, p, q, image):
        b = {"x": image}
        assert (p * q).substitute(b) == p.substitute(b) * q.substitute(b)
        assert (p + q).substitute(b) == p.substitute(b) + q.substitute(b)

    def test_simultaneous_substitution(self):
        x, y = symbols("x y")
        assert (x - y).substitute({"x": y, "y": x}) == y - x

    def test_poly_sum_matches_fold(self):
        x, y, z = symbols("x y z")
        parts = [x, y * 2, -x, z ** 2, Scalar(0, 1) * y]
        total = MultiPoly.const(0)
        for p in parts:
            total = total + p
        assert poly_sum(parts) == total

    def test_weighted_degree(self):
        x, y = symbols("x y")
        assert (x ** 2 * y + y ** 3).weighted_degree({"x": 1, "y": 3}) == 9

    def test_ring_ops_rejects_unknown(self):
        x, y = symbols("x y")
        assert ring_ops(x, y, "mul") == x * y
        with pytest.raises(ValueError):
            ring_ops(x, y, "div")


# -- division, determinants, linear algebra ------------------------------------------

class TestDivision:
    @settings(max_examples=40, deadline=None)
    @given(polys(max_terms=4), polys(max_terms=3))
    def test_exact_quotient_recovered(self, p, d):
        if d.is_zero():
            return
        assert exact_divide(p * d, d) == p
        assert divides(d, p * d)

    def test_non_divisible_returns_none(self, xyz):
        x, y, _ = xyz
        assert exact_divide(x ** 2 + 1, x - y) is None

    def test_division_by_zero(self, xyz):
        x, _, _ = xyz
        with pytest.raises(ZeroDivisorError):
            exact_divide(x, MultiPoly.const(0))


class TestDeterminant:
    def test_matches_sympy_on_symmetric_matrix(self, xyz):
        x, y, z = xyz
        rows = [[1 - x ** 2, -x * y, z * SQRT5], [-x * y, 1 - y ** 2, x + y], [z * SQRT5, x + y, 2]]
        m = PolyMatrix.from_rows(rows, symmetric=True)
        want = sp.expand(sp.Matrix([[to_sympy(e) for e in r] for r in rows]).det())
        assert to_sympy(m.determinant()) == want
        assert determinant(rows) == m.determinant()

    def test_from_upper_is_symmetric(self, xyz):
        x, y, _ = xyz
        m = PolyMatrix.from_upper([[x, y], [1 + x]])
        assert m[1, 0] == m[0, 1] == y
        assert m.determinant() == x * (1 + x) - y ** 2


class TestLinearSolve:
    def test_unique(self):
        sol = linear_solve([[2, 1], [1, 3]], [3, 5])
        assert sol.unique and sol.x == [Scalar(Fraction(4, 5)), Scalar(Fraction(7, 5))]

    def test_inconsistent_certificate(self):
        a = [[1, 2], [2, 4]]
        res = linear_solve(a, [1, 3])
        assert isinstance(res, Inconsistent) and not res
        y = res.certificate
        assert all(sum((y[i] * a[i][j] for i in range(2)), Scalar(0)) == 0 for j in range(2))
        assert res.residual != 0

    def test_nullspace(self):
        sol = linear_solve([[1, 2], [2, 4]], [1, 2])
        assert len(sol.nullspace) == 1 and rank([[1, 2], [2, 4]]) == 1

    def test_over_golden_field(self):
        sol = linear_solve([[GOLDEN, 1], [1, -1]], [GOLDEN + 1, 0])
        assert sol.x == [Scalar(1), Scalar(1)]


class TestUnivariate:
    def test_geometric_series(self):
        assert up.series([Scalar(1)], [Scalar(1), Scalar(-1)], 4) == [Scalar(1)] * 5

    def test_gcd_and_divmod(self):
        p = up.mul(up.upoly([1, 1]), up.upoly([-1, 0, 1]))  # (1+t)(t^2-1)
        q = up.upoly([1, 2, 1])  # (1+t)^2
        assert up.gcd(p, q) == q
        quo, rem = up.divmod_(p, up.upoly([1, 1]))
        assert up.trim(rem) == [] and quo == up.upoly([-1, 0, 1])


# -- kernels --------------------------------------------------------------------------

packed = st.lists(st.tuples(st.integers(0, 4095), st.integers(-50, 50), st.integers(-50, 50)),
                  min_size=0, max_size=12, unique_by=lambda t: t[0])


def _as_dict(keys, a, b):
    out = {}
    for i, k in enumerate(keys):
        val = (a[i], 0 if b is None else b[i])
        if val != (0, 0):
            out[k] = val
    return out


@pytest.mark.skipif(not kernels.compiled_available(), reason="compiled kernels not built")
class TestCompiledKernel:
    @settings(max_examples=200, deadline=None)
    @given(packed, packed, st.booleans())
    def test_agrees_with_python_kernel(self, p, q, irrational):
        ka, Aa, Ba = [t[0] for t in p], [t[1] for t in p], [t[2] for t in p] if irrational else None
        kb, Ab, Bb = [t[0] for t in q], [t[1] for t in q], [t[2] for t in q] if irrational else None
        from polymodels import _ckernels
        got = _ckernels.mul_packed(ka, Aa, Ba, kb, Ab, Bb)
        want = kernels.python_mul_packed(ka, Aa, Ba, kb, Ab, Bb)
        assert _as_dict(*got) == _as_dict(*want)

    def test_big_integers_fall_back_exactly(self):
        from polymodels import _ckernels
        big = 10 ** 30
        got = _ckernels.mul_packed([1], [big], None, [2], [big], None)
        assert _as_dict(*got) == {3: (big * big, 0)}


def test_pure_python_backend_selected_by_environment():
    code = ("from polymodels import BACKEND; from polymodels.catalog import model;"
            "from polymodels.modelcheck import closure_solve;"
            "m = model('omega1', 3); print(BACKEND, closure_solve(m.system).matrix().determinant())")
    env = dict(os.environ, POLYMODELS_PURE_PYTHON="1")
    pure = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    env["POLYMODELS_PURE_PYTHON"] = "0"
    default = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert pure.stdout.split(maxsplit=1)[0] == "python"
    assert pure.stdout.split(maxsplit=1)[1] == default.stdout.split(maxsplit=1)[1]
