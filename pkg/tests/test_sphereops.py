from fractions import Fraction

import pytest

from polymodels.algebra import MultiPoly, symbols
from polymodels.catalog.invariants import x_n, y_n
from polymodels.sphereops import (SPHERE2, SPHERE3, SPHERE4, check_diffusion_axioms, is_reduced,
                                  sphere_reduce)

x, y, z = symbols("x y z")


def test_reduction_uses_unit_sphere():
    assert sphere_reduce(x ** 2 + y ** 2 + z ** 2) == MultiPoly.const(1)
    assert sphere_reduce(z ** 2) == 1 - x ** 2 - y ** 2
    assert is_reduced(sphere_reduce(z ** 5 * x))


def test_gamma_of_coordinates():
    # Gamma(x_i, x_j) = delta_ij - x_i x_j on the sphere
    assert SPHERE3.gamma(z, z) == sphere_reduce(1 - z ** 2)
    assert SPHERE3.gamma(x, y) == -x * y


@pytest.mark.parametrize("k", range(0, 6))
def test_zonal_harmonics_are_eigenfunctions(k):
    # Legendre polynomial in z via the three-term recurrence
    p_prev, p = MultiPoly.const(1), z
    if k == 0:
        p = p_prev
    for m in range(1, k):
        p_prev, p = p, (z * p).scale(Fraction(2 * m + 1, m + 1)) - p_prev.scale(Fraction(m, m + 1))
    assert SPHERE3.laplacian(p) == SPHERE3.reduce(p).scale(-k * (k + 1))


def test_circle_laplacian():
    # cos(2t) = x^2 - y^2 has eigenvalue -4 on the circle
    assert SPHERE2.laplacian(x ** 2 - y ** 2) == SPHERE2.reduce((x ** 2 - y ** 2).scale(-4))


def test_four_dimensional_sphere_eigenvalue():
    x1, x2 = symbols("x1 x2")
    assert SPHERE4.laplacian(x1 * x2) == (x1 * x2).scale(-8)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_xn_yn_are_harmonic_of_degree_n(n):
    for h in (x_n(n), y_n(n)):
        assert SPHERE3.laplacian(h) == SPHERE3.reduce(h).scale(-n * (n + 1))


def test_diffusion_chain_rules():
    phi = MultiPoly.var("a") ** 3 * MultiPoly.var("b") + MultiPoly.var("b") ** 2
    verdict = check_diffusion_axioms([z, x * y], phi, ("a", "b"), g=x)
    assert verdict.passed and not verdict.residual_L and not verdict.residual_gamma


def test_chain_rule_arity_mismatch():
    with pytest.raises(ValueError):
        check_diffusion_axioms([z], MultiPoly.var("a"), ("a", "b"))
