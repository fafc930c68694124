import pytest

from polymodels.algebra import MultiPoly, Scalar
from polymodels.catalog.invariants import i6, i10, i15, o3, o4, o6, x_n
from polymodels.groups import (ClosureCapExceeded, UnknownGroup, UnsupportedOrder, act,
                               construct_named, cyclic_axis, cyclic_generator, generate_group, is_invariant,
                               molien, reynolds_average, reynolds_dimension,
                               series_from_closed_form)

Z = MultiPoly.var("z")


@pytest.mark.parametrize("label,n,order", [
    ("T", None, 12), ("O", None, 24), ("I", None, 60), ("TJ", None, 24), ("OJ", None, 48),
    ("IJ", None, 120), ("TO", None, 24), ("C", 5, 5), ("D", 3, 6), ("CnDn", 5, 10),
    ("DnD2n", 3, 12), ("CnC2n", 5, 10), ("CJ", 4, 8), ("DJ", 6, 24),
])
def test_group_orders_and_axioms(label, n, order):
    g = construct_named(label, n)
    assert g.order == order
    assert g.check_axioms() == []


def test_labels_with_embedded_order():
    assert construct_named("C5|D5").order == 10
    assert construct_named("D3").order == 6


def test_unknown_and_unsupported():
    with pytest.raises(UnknownGroup):
        construct_named("Q8")
    with pytest.raises(UnsupportedOrder):
        cyclic_generator(7)
    with pytest.raises(ValueError):
        construct_named("C")


def test_closure_cap():
    with pytest.raises(ClosureCapExceeded):
        generate_group([cyclic_generator(5), cyclic_generator(4)], cap=50)


@pytest.mark.parametrize("poly,group", [
    (o3(), "T"), (o4(), "TJ"), (o6(), "T"), (o3() * o6(), "O"), (o3() ** 2, "OJ"),
    (i6(), "IJ"), (i10(), "IJ"), (i15(), "I"),
])
def test_invariants(poly, group):
    assert is_invariant(poly, construct_named(group))


def test_o3_not_octahedral_invariant():
    verdict = is_invariant(o3(), construct_named("O"))
    assert not verdict and verdict.violating is not None


def test_i15_is_odd_under_central_symmetry():
    minus = tuple(tuple(Scalar(-1) if i == j else Scalar(0) for j in range(3)) for i in range(3))
    assert act(i15(), minus, ("x", "y", "z")) == -i15()


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 10])
def test_cyclic_group_fixes_its_axis(n):
    g = construct_named("C", n)
    axis = cyclic_axis(n)
    linear = sum((MultiPoly.var(v).scale(a) for v, a in zip("xyz", axis)), MultiPoly.const(0))
    assert is_invariant(linear, g)


def test_z_axis_invariants():
    # rotation by a quarter turn about z
    g = construct_named("O")
    quarter = [m for m in g.elements if m[2][2] == 1 and m[0][0] == 0]
    assert quarter
    for m in quarter:
        assert act(x_n(4), m, ("x", "y", "z")) == x_n(4)
        assert act(Z, m, ("x", "y", "z")) == Z


def test_reynolds_projects_onto_invariants():
    g = construct_named("T")
    x = MultiPoly.var("x")
    avg = reynolds_average(x ** 4, g)
    assert is_invariant(avg, g)
    assert reynolds_average(avg, g) == avg


@pytest.mark.parametrize("label,n", [("T", None), ("D", 3), ("CnDn", 5)])
def test_molien_matches_reynolds(label, n):
    g = construct_named(label, n)
    series = molien(g, 6)
    assert series.coefficients == [reynolds_dimension(g, k) for k in range(7)]


def test_trivial_group_series():
    g = construct_named("C", 1)
    # dimension of degree-k polynomials in three variables
    assert molien(g, 5).coefficients == [(k + 1) * (k + 2) // 2 for k in range(6)]


def test_cornulier_group():
    g = construct_named("cornulier", p=3)
    assert g.order == 18 and g.dim == 4 and g.check_axioms() == []


def test_closed_form_helper():
    assert series_from_closed_form([0], [1], 4) == [1, 1, 1, 1, 1]
    assert series_from_closed_form([0, 3], [2], 5) == [1, 0, 1, 1, 1, 1]
