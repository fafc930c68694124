"""Declared data of every polynomial model.

Each builder returns the co-metric, boundary factors, declared multipliers,
determinant factorisation and syzygy as transcribed.  Nothing here is
verified; ``polymodels.modelcheck`` does that.  Where a transcribed value
fails exact verification the recomputed value is stored and the printed one
is kept next to it with status ``paper-typo-suspected``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from ..algebra.matrix import PolyMatrix
from ..algebra.poly import MultiPoly
from ..algebra.scalar import SQRT5, Scalar
from .invariants import i6, i10, i15, o3, o4, o6, x_n, y_n, Z
from .types import BoundaryFactor, Invariant, InvariantSystem, PolynomialModel, TypoRecord

T1, T2, ETA = (MultiPoly.var(v) for v in ("t1", "t2", "eta"))
ONE_P = MultiPoly.const(1)
R5 = MultiPoly.const(SQRT5)
HALF = Fraction(1, 2)

TYPO = "paper-typo-suspected"
DERIVED = "derived"


class UnknownModel(KeyError):
    pass


def _system(name: str, group: str, invs, secondary: str | None = None) -> InvariantSystem:
    return InvariantSystem(name, group, 3,
                           tuple(Invariant(nm, c, p, a) for nm, c, p, a in invs), secondary)


def _mult(*vals) -> dict[str, MultiPoly]:
    keys = ("t1", "t2", "eta")
    return {k: MultiPoly.const(v) if not isinstance(v, MultiPoly) else v
            for k, v in zip(keys, vals)}


def _need_n(n: int | None) -> int:
    if n is None or n < 1:
        raise ValueError("this model needs a positive integer n")
    return n


# -- cyclic and dihedral family -----------------------------------------

def omega1(n: int | None = None) -> PolynomialModel:
    n = _need_n(n)
    u = ONE_P - T1 ** 2
    system = _system(f"omega1({n})", "Cn|Dn", [("z", "t1", Z, 1), ("X_n", "t2", x_n(n), n)])
    g = PolyMatrix.from_upper([[u, -n * T1 * T2], [n * n * (u ** (n - 1) - T2 ** 2)]])
    p = u ** n - T2 ** 2
    full = BoundaryFactor("P", p, True, _mult(-2 * n * T1, -2 * n * n * T2))
    if n % 2:
        boundary = [full]
        det_factors = {"P": 1}
        conditions = [p]
    else:
        half = n // 2
        p1 = u ** half - T2
        p2 = u ** half + T2
        full.note = "product of the two components; multipliers declared for the product"
        full.composite = True
        boundary = [
            BoundaryFactor("P1", p1, True, _mult(-n * T1, -n * n * (u ** (half - 1) + T2)),
                           DERIVED),
            BoundaryFactor("P2", p2, True, _mult(-n * T1, n * n * (u ** (half - 1) - T2)),
                           DERIVED),
            full,
        ]
        det_factors = {"P1": 1, "P2": 1}
        conditions = [p1, p2, u]
    return PolynomialModel(
        key="omega1", label=f"Omega1({n})", system=system, cometric=g, boundary=boundary,
        det_constant=Scalar(n * n), det_exponents=det_factors, domain_conditions=conditions,
        n=n, summary_boundary="H_n(X^2, Y^2) = 0",
        valuation_alternatives=[(1, n - 1)] if n > 1 else [],
        notes=["even n: the domain is cut by |t1| < 1 (the sphere image has z in (-1, 1))"]
        if n % 2 == 0 else [])


def omega2(n: int | None = None) -> PolynomialModel:
    n = _need_n(n)
    u = ONE_P - T1 ** 2
    system = _system(f"omega2({n})", "Cn", [("z", "t1", Z, 1), ("X_n", "t2", x_n(n), n),
                                            ("Y_n", "eta", y_n(n), n)], "eta")
    nn = n * n
    g = PolyMatrix.from_upper([
        [u, -n * T1 * T2, -n * T1 * ETA],
        [nn * (u ** (n - 1) - T2 ** 2), -nn * T2 * ETA],
        [nn * (u ** (n - 1) - ETA ** 2)],
    ])
    p = u ** n - T2 ** 2 - ETA ** 2
    boundary = [
        BoundaryFactor("P", p, True, _mult(-2 * n * T1, -2 * nn * T2, -2 * nn * ETA)),
        BoundaryFactor("1-t1^2", u, False, note="extra determinant factor"),
    ]
    return PolynomialModel(
        key="omega2", label=f"Omega2({n})", system=system, cometric=g, boundary=boundary,
        syzygy_parent=("omega1", u ** n - T2 ** 2),
        det_constant=Scalar(nn * nn), det_exponents={"P": 1, "1-t1^2": n - 1},
        syzygy=ETA ** 2 - (u ** n - T2 ** 2), domain_conditions=[p, u], n=n,
        summary_boundary="H_n(X^2, Y^2) - Z^2 = 0", notes=[
            "determinant vanishes identically modulo the syzygy (Gram matrix of three gradients)"])


def omega3(n: int | None = None) -> PolynomialModel:
    n = _need_n(n)
    v = ONE_P - T1
    system = _system(f"omega3({n})", "DnJ / Dn|D2n", [("z^2", "t1", Z ** 2, 2),
                                                     ("X_n", "t2", x_n(n), n)])
    g = PolyMatrix.from_upper([[4 * T1 * v, -2 * n * T1 * T2], [n * n * (v ** (n - 1) - T2 ** 2)]])
    p1 = v ** n - T2 ** 2
    boundary = [
        BoundaryFactor("t1", T1, True, _mult(4 * v, -2 * n * T2)),
        BoundaryFactor("P1", p1, True, _mult(-4 * n * T1, -2 * n * n * T2)),
    ]
    return PolynomialModel(
        key="omega3", label=f"Omega3({n})", system=system, cometric=g, boundary=boundary,
        det_constant=Scalar(4 * n * n), det_exponents={"t1": 1, "P1": 1},
        domain_conditions=[T1, v, p1], n=n, summary_boundary="X H_n(X, Y^2) = 0")


def omega4(n: int | None = None) -> PolynomialModel:
    n = _need_n(n)
    v = ONE_P - T1
    nn = n * n
    system = _system(f"omega4({n})", "CnJ / Cn|C2n", [("z^2", "t1", Z ** 2, 2),
                                                      ("X_n", "t2", x_n(n), n),
                                                      ("Y_n", "eta", y_n(n), n)], "eta")
    g = PolyMatrix.from_upper([
        [4 * T1 * v, -2 * n * T1 * T2, -2 * n * T1 * ETA],
        [nn * (v ** (n - 1) - T2 ** 2), -nn * T2 * ETA],
        [nn * (v ** (n - 1) - ETA ** 2)],
    ])
    p1 = v ** n - T2 ** 2 - ETA ** 2
    boundary = [
        BoundaryFactor("t1", T1, True, _mult(4 * v, -2 * n * T2, -2 * n * ETA)),
        BoundaryFactor("P1", p1, True, _mult(-4 * n * T1, -2 * nn * T2, -2 * nn * ETA)),
        BoundaryFactor("1-t1", v, False, note="extra determinant factor"),
    ]
    return PolynomialModel(
        key="omega4", label=f"Omega4({n})", system=system, cometric=g, boundary=boundary,
        syzygy_parent=("omega3", v ** n - T2 ** 2),
        det_constant=Scalar(4 * nn * nn), det_exponents={"t1": 1, "P1": 1, "1-t1": n - 1},
        syzygy=ETA ** 2 - (v ** n - T2 ** 2), domain_conditions=[T1, v, p1], n=n,
        summary_boundary="X (H_n(X, Y^2) - Z^2) = 0",
        typos=[TypoRecord("determinant of Gamma4", "n^4 (1-t1)^(n-1) t1 P1",
                          "4 n^4 (1-t1)^(n-1) t1 P1", "constant factor 4 of the (1,1) entry")])


def omega5(n: int | None = None) -> PolynomialModel:
    n = _need_n(n)
    v = ONE_P - T1
    system = _system(f"omega5({n})", "Dn", [("z^2", "t1", Z ** 2, 2), ("X_n", "t2", x_n(n), n),
                                            ("z Y_n", "eta", Z * y_n(n), n + 1)], "eta")
    g = PolyMatrix.from_upper([
        [4 * T1 * v, -2 * n * T1 * T2, -2 * ETA * ((n + 1) * T1 - 1)],
        [n * n * (v ** (n - 1) - T2 ** 2), -n * (n + 1) * T2 * ETA],
        [v ** (n - 1) * (1 + (n * n - 1) * T1) - T2 ** 2 - (n + 1) ** 2 * ETA ** 2],
    ])
    p1 = T1 * v ** n - T1 * T2 ** 2 - ETA ** 2
    p2 = v ** (n - 1) * ((n * n - 1) * T1 + 1) - T2 ** 2
    p2_printed = v ** (n - 1) * ((n * n - 1) * T1 - 1) - T2 ** 2
    boundary = [
        BoundaryFactor("P1", p1, True, _mult(4 * (1 - (n + 1) * T1), -2 * n * (n + 1) * T2,
                                             -2 * (n + 1) ** 2 * ETA)),
        BoundaryFactor("P2", p2, False, status=TYPO, printed_poly=p2_printed,
                       note="declared not to satisfy the boundary equation"),
    ]
    return PolynomialModel(
        key="omega5", label=f"Omega5({n})", system=system, cometric=g, boundary=boundary,
        syzygy_parent=("omega3", T1 * (v ** n - T2 ** 2)),
        det_constant=Scalar(4 * n * n), det_exponents={"P1": 1, "P2": 1},
        syzygy=ETA ** 2 - (T1 * v ** n - T1 * T2 ** 2), domain_conditions=[T1, v, p1], n=n,
        summary_boundary="X H_n(X, Y^2) - Z^2 = 0",
        typos=[TypoRecord("second determinant factor of Gamma5",
                          "(1-t1)^(n-1)((n^2-1) t1 - 1) - t2^2",
                          "(1-t1)^(n-1)((n^2-1) t1 + 1) - t2^2",
                          "sign of the constant; the printed factor does not divide the determinant")])


def omega6(n: int | None = None) -> PolynomialModel:
    n = _need_n(n)
    v = ONE_P - T1
    system = _system(f"omega6({n})", "D2nJ", [("z^2", "t1", Z ** 2, 2),
                                             ("X_n^2", "t2", x_n(n) ** 2, 2 * n)])
    g = PolyMatrix.from_upper([[4 * T1 * v, -4 * n * T1 * T2],
                               [4 * n * n * T2 * (v ** (n - 1) - T2)]])
    h = v ** n - T2
    boundary = [
        BoundaryFactor("t1", T1, True, _mult(4 * v, -4 * n * T2), DERIVED),
        BoundaryFactor("t2", T2, True, _mult(-4 * n * T1, 4 * n * n * (v ** (n - 1) - T2)),
                       DERIVED),
        BoundaryFactor("H", h, True, _mult(-4 * n * T1, -4 * n * n * T2), DERIVED),
    ]
    return PolynomialModel(
        key="omega6", label=f"Omega6({n})", system=system, cometric=g, boundary=boundary,
        det_constant=Scalar(16 * n * n), det_exponents={"t1": 1, "t2": 1, "H": 1},
        domain_conditions=[T1, T2, h, v], n=n, summary_boundary="X Y H_n(X, Y) = 0",
        notes=["isomorphic to Omega3(2n) via (t1, t2) -> (t1, 2 t2 - (1 - t1)^n)"])


def omega7(n: int | None = None) -> PolynomialModel:
    n = _need_n(n)
    v = ONE_P - T1
    system = _system(f"omega7({n})", "Dn|D2n / DnJ", [("z^2", "t1", Z ** 2, 2),
                                                     ("X_n^2", "t2", x_n(n) ** 2, 2 * n),
                                                     ("z Y_n", "eta", Z * y_n(n), n + 1)], "eta")
    g11, g12, g13 = 4 * T1 * v, -4 * n * T1 * T2, 2 * ETA * (1 - (n + 1) * T1)
    g23 = -2 * n * (n + 1) * T2 * ETA
    g22 = 4 * n * n * T2 * (v ** (n - 1) - T2)
    g33 = v ** (n - 1) * (1 + (n * n - 1) * T1) - (n + 1) ** 2 * ETA ** 2 - T2
    printed_g22 = 4 * n * n * T2 * (v ** (n - 1) * T1 - T2)
    printed_g33 = v ** (n - 1) * (1 + (n * n - 1) * T1) - (n + 1) ** 2 * ETA - T2
    g = PolyMatrix.from_upper([[g11, g12, g13], [g22, g23], [g33]])
    printed = PolyMatrix.from_upper([[g11, g12, g13], [printed_g22, g23], [printed_g33]])
    p = T1 * (v ** n - T2) - ETA ** 2
    boundary = [
        BoundaryFactor("P", p, True, _mult(4 * (1 - (n + 1) * T1), -4 * n * (n + 1) * T2,
                                           -2 * (n + 1) ** 2 * ETA)),
        BoundaryFactor("t2", T2, True, _mult(-4 * n * T1, 4 * n * n * (v ** (n - 1) - T2),
                                             -2 * n * (n + 1) * ETA)),
        BoundaryFactor("P3", v ** (n - 1) * (1 + (n * n - 1) * T1) - T2, False, status=DERIVED,
                       note="remaining determinant factor, not printed"),
    ]
    return PolynomialModel(
        key="omega7", label=f"Omega7({n})", system=system, cometric=g, boundary=boundary,
        syzygy_parent=("omega6", T1 * (v ** n - T2)),
        det_constant=None, det_exponents={"P": 1, "t2": 1, "P3": 1},
        syzygy=ETA ** 2 - T1 * (v ** n - T2), domain_conditions=[T2, p, v, T1], n=n,
        printed_cometric=printed, summary_boundary="X H_n(X, Y) - Z^2 = 0",
        typos=[
            TypoRecord("Gamma7 (2,2)", "4n^2 t2((1-t1)^(n-1) t1 - t2)",
                       "4n^2 t2((1-t1)^(n-1) - t2)", "spurious factor t1"),
            TypoRecord("Gamma7 (3,3)", "... - (n+1)^2 eta - t2", "... - (n+1)^2 eta^2 - t2",
                       "weighted degree forces eta^2"),
        ])


def omega8(n: int | None = None) -> PolynomialModel:
    n = _need_n(n)
    v = ONE_P - T1
    system = _system(f"omega8({n})", "Cn|C2n / CnJ", [("z^2", "t1", Z ** 2, 2),
                                                     ("X_n^2", "t2", x_n(n) ** 2, 2 * n),
                                                     ("z X_n", "eta", Z * x_n(n), n + 1)], "eta")
    g = PolyMatrix.from_upper([
        [4 * T1 * v, -4 * n * T1 * T2, 2 * ETA * (1 - (n + 1) * T1)],
        [4 * n * n * T2 * (v ** (n - 1) - T2), 2 * n * ETA * (n * v ** (n - 1) - (n + 1) * T2)],
        [n * n * T1 * v ** (n - 1) + T2 - (n + 1) ** 2 * ETA ** 2],
    ])
    p1 = T1 * T2 - ETA ** 2
    p2 = T2 - v ** n
    boundary = [
        BoundaryFactor("P1", p1, True, _mult(4 * (1 - (n + 1) * T1),
                                             4 * n * (n * v ** (n - 1) - (n + 1) * T2),
                                             -2 * (n + 1) ** 2 * ETA), TYPO,
                       printed=_mult(4 * (1 - (n + 1) * T1),
                                     4 * n * (v ** (n - 1) - (n + 1) * T2),
                                     -2 * (n + 1) ** 2 * ETA)),
        BoundaryFactor("P2", p2, True, _mult(-4 * n * T1, -4 * n * n * T2, -2 * n * (n + 1) * ETA)),
        BoundaryFactor("P3", n * n * T1 * v ** (n - 1) + T2, False, status=DERIVED,
                       note="third determinant factor, not printed"),
    ]
    return PolynomialModel(
        key="omega8", label=f"Omega8({n})", system=system, cometric=g, boundary=boundary,
        syzygy_parent=("omega6", T1 * T2),
        det_constant=None, det_exponents={"P1": 1, "P2": 1, "P3": 1},
        syzygy=ETA ** 2 - T1 * T2, domain_conditions=[p1, -p2, T1, v], n=n,
        summary_boundary="(X Y - Z^2) H_n(X, Y) = 0",
        typos=[TypoRecord("Gamma8(t2, log P1)", "4n((1-t1)^(n-1) - (n+1) t2)",
                          "4n(n (1-t1)^(n-1) - (n+1) t2)", "missing factor n")])


def omega9(n: int | None = None) -> PolynomialModel:
    n = _need_n(n)
    v = ONE_P - T1
    nn = n * n
    system = _system(f"omega9({n})", "Cn|C2n / CnJ", [("z^2", "t1", Z ** 2, 2),
                                                     ("X_n^2", "t2", x_n(n) ** 2, 2 * n),
                                                     ("X_n Y_n", "eta", x_n(n) * y_n(n), 2 * n)],
                     "eta")
    g = PolyMatrix.from_upper([
        [4 * T1 * v, -4 * n * T1 * T2, -4 * n * T1 * ETA],
        [4 * nn * T2 * (v ** (n - 1) - T2), 2 * nn * ETA * (v ** (n - 1) - 2 * T2)],
        [nn * (v ** (2 * n - 1) - 4 * ETA ** 2)],
    ])
    p = T2 * v ** n - T2 ** 2 - ETA ** 2
    boundary = [
        BoundaryFactor("t1", T1, True, _mult(4 * v, -4 * n * T2, -4 * n * ETA), DERIVED),
        BoundaryFactor("P", p, True, _mult(-8 * n * T1, 4 * nn * (v ** (n - 1) - 2 * T2),
                                           -8 * nn * ETA), DERIVED),
        BoundaryFactor("1-t1", v, False, status=DERIVED, note="extra determinant factor"),
    ]
    return PolynomialModel(
        key="omega9", label=f"Omega9({n})", system=system, cometric=g, boundary=boundary,
        syzygy_parent=("omega6", T2 * (v ** n - T2)),
        det_constant=Scalar(16 * nn * nn), det_exponents={"t1": 1, "P": 1, "1-t1": 2 * n - 1},
        syzygy=ETA ** 2 - (T2 * v ** n - T2 ** 2), domain_conditions=[T1, v, p], n=n,
        summary_boundary="X (Y H_n(X, Y) - Z^2) = 0",
        notes=["no printed co-metric; entries computed from the ambient invariants"])


# -- tetrahedral / octahedral family ------------------------------------

# printed swallow-tail quartic and its constant-corrected version
SWALLOW_PRINTED = (-108 * T1 ** 4 + 20 * T1 ** 2 + 2 * T2 ** 3 - 5 * T2 ** 2 + 4 * T2
                   - 36 * T1 ** 2 * T2)
SWALLOW = SWALLOW_PRINTED - 1
# cuspidal cubic factor: SWALLOW = R13(t1^2, t2)
R13 = -108 * T1 ** 2 + 20 * T1 + 2 * T2 ** 3 - 5 * T2 ** 2 + 4 * T2 - 1 - 36 * T1 * T2


def summary_h(x: MultiPoly, y: MultiPoly, corrected: bool = True) -> MultiPoly:
    """Summary-table polynomial ``H(X, Y)``; ``corrected`` adds the missing constant."""
    h = 108 * x ** 2 - 20 * x - 2 * y ** 3 + 5 * y ** 2 - 4 * y + 36 * x * y
    return h + 1 if corrected else h


def omega11(n: int | None = None) -> PolynomialModel:
    system = _system("omega11", "T|O", [("O3", "t1", o3(), 3), ("O4", "t2", o4(), 4)])
    g = PolyMatrix.from_upper([
        [(1 - T2) * HALF - 9 * T1 ** 2, 4 * T1 * (1 - 3 * T2)],
        [8 * (6 * T1 ** 2 + 3 * T2 - 1 - 2 * T2 ** 2)],
    ])
    boundary = [BoundaryFactor("P", SWALLOW, True, _mult(-36 * T1, -48 * T2 + 32), TYPO,
                               printed_poly=SWALLOW_PRINTED,
                               note="multipliers not printed; recomputed")]
    return PolynomialModel(
        key="omega11", label="Omega11", system=system, cometric=g, boundary=boundary,
        det_constant=Scalar(4), det_exponents={"P": 1}, domain_conditions=[SWALLOW, ONE_P - T2],
        summary_boundary="H(X^2, Y) = 0",
        typos=[
            TypoRecord("swallow-tail quartic P", SWALLOW_PRINTED.to_text(), SWALLOW.to_text(),
                       "the determinant of the 2x2 block is 4(P - 1)"),
            TypoRecord("summary H", summary_h(T1, T2, False).to_text(),
                       summary_h(T1, T2).to_text(), "H(X^2, Y) = -(P - 1) needs constant +1"),
        ])


def omega12(n: int | None = None) -> PolynomialModel:
    system = _system("omega12", "T", [("O3", "t1", o3(), 3), ("O4", "t2", o4(), 4),
                                      ("O6", "eta", o6(), 6)], "eta")
    g = PolyMatrix.from_upper([
        [-9 * T1 ** 2 - T2 * HALF + HALF, -12 * T1 * T2 + 4 * T1, -18 * T1 * ETA],
        [48 * T1 ** 2 - 16 * T2 ** 2 + 24 * T2 - 8, -24 * T2 * ETA + 16 * ETA],
        [-54 * T1 ** 2 * T2 + 18 * T1 ** 2 - 3 * T2 ** 2 - 36 * ETA ** 2 + 4 * T2 - 1],
    ])
    p3 = (108 * T1 ** 4 + 36 * T1 ** 2 * T2 - 2 * T2 ** 3 - 20 * T1 ** 2 + 5 * T2 ** 2
          + 4 * ETA ** 2 - 4 * T2 + 1)
    boundary = [
        BoundaryFactor("P3", p3, True, _mult(-36 * T1, -48 * T2 + 32, -72 * ETA)),
        BoundaryFactor("3t2-1", 3 * T2 - 1, False),
        BoundaryFactor("18t1^2+t2-1", 18 * T1 ** 2 + T2 - 1, False),
    ]
    return PolynomialModel(
        key="omega12", label="Omega12", system=system, cometric=g, boundary=boundary,
        syzygy_parent=("omega11", SWALLOW),
        det_constant=Scalar(4), det_exponents={"P3": 1, "3t2-1": 1, "18t1^2+t2-1": 1},
        syzygy=ETA ** 2 - SWALLOW.scale(Fraction(1, 4)), domain_conditions=[-p3, ONE_P - T2],
        summary_boundary="H(X^2, Y) - 4 Z^2 = 0",
        typos=[TypoRecord("syzygy", "eta^2 = P", "4 eta^2 = P - 1",
                          "follows from the corrected quartic")])


def omega13(n: int | None = None) -> PolynomialModel:
    system = _system("omega13", "OJ", [("O3^2", "t1", o3() ** 2, 6), ("O4", "t2", o4(), 4)])
    g = PolyMatrix.from_upper([
        [4 * T1 * ((1 - T2) * HALF - 9 * T1), 8 * T1 * (1 - 3 * T2)],
        [16 * (3 * T1 + Fraction(3, 2) * T2 - HALF - T2 ** 2)],
    ])
    boundary = [
        BoundaryFactor("t1", T1, True, _mult(-36 * T1 - 2 * T2 + 2, -24 * T2 + 8), DERIVED),
        BoundaryFactor("R", R13, True, _mult(-72 * T1, -48 * T2 + 32), DERIVED),
    ]
    return PolynomialModel(
        key="omega13", label="Omega13", system=system, cometric=g, boundary=boundary,
        det_constant=Scalar(16), det_exponents={"t1": 1, "R": 1}, domain_conditions=[T1, R13, ONE_P - T2],
        summary_boundary="X H(X, Y) = 0",
        typos=[TypoRecord("Q(X^2, Y) = X^2 P(X, Y)", "Q(X^2, Y) = X^2 P",
                          "Q(X^2, Y) = 16 X^2 (P - 1)", "with the printed P")])


def omega14(n: int | None = None) -> PolynomialModel:
    system = _system("omega14", "TJ", [("O3^2", "t1", o3() ** 2, 6), ("O4", "t2", o4(), 4),
                                       ("O6", "eta", o6(), 6)], "eta")
    g = PolyMatrix.from_upper([
        [-36 * T1 ** 2 - 2 * T1 * T2 + 2 * T1, -24 * T1 * T2 + 8 * T1, -36 * T1 * ETA],
        [48 * T1 - 16 * T2 ** 2 + 24 * T2 - 8, -24 * T2 * ETA + 16 * ETA],
        [-54 * T1 * T2 + 18 * T1 - 3 * T2 ** 2 - 36 * ETA ** 2 + 4 * T2 - 1],
    ])
    q3 = (-2 * T2 ** 3 + 108 * T1 ** 2 + 36 * T1 * T2 + 5 * T2 ** 2 + 4 * ETA ** 2
          - 20 * T1 - 4 * T2 + 1)
    boundary = [
        BoundaryFactor("t1", T1, True, _mult(-36 * T1 - 2 * T2 + 2, -24 * T2 + 8, -36 * ETA),
                       TYPO, printed=_mult(-36 * T2 - 2 * T2 + 2, -24 * T2 + 8, -36 * ETA)),
        BoundaryFactor("Q3", q3, True, _mult(-72 * T1, -48 * T2 + 32, -72 * ETA), TYPO,
                       printed=_mult(-72 * T1, -48 * T2 + 32, -73 * ETA),
                       note="third multiplier printed with an undefined coordinate"),
        BoundaryFactor("3t2-1", 3 * T2 - 1, False),
        BoundaryFactor("18t1+t2-1", 18 * T1 + T2 - 1, False),
    ]
    return PolynomialModel(
        key="omega14", label="Omega14", system=system, cometric=g, boundary=boundary,
        syzygy_parent=("omega13", R13),
        det_constant=Scalar(16), det_exponents={"t1": 1, "Q3": 1, "3t2-1": 1, "18t1+t2-1": 1},
        syzygy=ETA ** 2 - R13.scale(Fraction(1, 4)), domain_conditions=[T1, -q3, ONE_P - T2],
        summary_boundary="X (H(X, Y) - 4 Z^2) = 0",
        typos=[
            TypoRecord("Gamma14(t1, log t1)", "-36 t2 - 2 t2 + 2", "-36 t1 - 2 t2 + 2"),
            TypoRecord("Gamma14(theta3, log Q3)", "-73 theta3", "-72 eta"),
        ])


def omega15(n: int | None = None) -> PolynomialModel:
    system = _system("omega15", "O", [("O3^2", "t1", o3() ** 2, 6), ("O4", "t2", o4(), 4),
                                      ("O3 O6", "eta", o3() * o6(), 9)], "eta")
    g33 = (-81 * ETA ** 2 - Fraction(81, 2) * T1 ** 2 * T2 + Fraction(9, 2) * T1 ** 2
           - 3 * T1 * T2 + Fraction(3, 2) * T1 + Fraction(3, 2) * T1 * T2 ** 2
           - Fraction(1, 4) * T2 ** 4 + Fraction(7, 8) * T2 ** 3 - Fraction(9, 8) * T2 ** 2
           + Fraction(5, 8) * T2 - Fraction(1, 8))
    g = PolyMatrix.from_upper([
        [-36 * T1 ** 2 - 2 * T1 * T2 + 2 * T1, -24 * T1 * T2 + 8 * T1,
         -54 * T1 * ETA - T2 * ETA + ETA],
        [48 * T1 - 16 * T2 ** 2 + 24 * T2 - 8, -36 * ETA * T2 + 20 * ETA],
        [g33],
    ])
    q1 = (2 * T2 ** 4 + 324 * T1 ** 2 * T2 - 12 * T1 * T2 ** 2 - 7 * T2 ** 3 - 36 * T1 ** 2
          + 24 * T1 * T2 + 9 * T2 ** 2 - 12 * T1 - 5 * T2 + 1)
    q2_printed = (2 * T1 * T2 ** 3 + 108 * T1 ** 3 + 36 * T1 ** 2 * T2 + 5 * T1 * T2 ** 2
                  - 20 * T1 ** 2 - 4 * T1 * T2 + 4 * ETA ** 2 + T1)
    q2 = 4 * ETA ** 2 - T1 * R13
    boundary = [
        BoundaryFactor("Q2", q2, True, _mult(2 - 108 * T1 - 2 * T2, 40 - 72 * T2, -162 * ETA),
                       TYPO, printed_poly=q2_printed,
                       note="sign of the t1 t2^3 term corrected to match the syzygy"),
        BoundaryFactor("Q1", q1, False),
    ]
    return PolynomialModel(
        key="omega15", label="Omega15", system=system, cometric=g, boundary=boundary,
        syzygy_parent=("omega13", T1 * R13),
        det_constant=Scalar(2), det_exponents={"Q1": 1, "Q2": 1},
        syzygy=ETA ** 2 - (T1 * R13).scale(Fraction(1, 4)), domain_conditions=[-q2, T1, ONE_P - T2],
        summary_boundary="Z^2 - X H(X, Y) = 0",
        typos=[
            TypoRecord("Q2", q2_printed.to_text(), q2.to_text(), "t1 t2^3 coefficient is -2"),
            TypoRecord("G33", "-1/4 t_2^4", "-1/4 t2^4", "variable name"),
            TypoRecord("syzygy", "eta^2 = t1 Q(t1, t2)", "4 eta^2 = t1 R(t1, t2)",
                       "R is the cuspidal cubic factor of the determinant of Gamma13"),
        ])


# -- icosahedral family ----------------------------------------------------

S_PRINTED = (688 * R5 * T1 ** 4 + 6480 * R5 * T1 ** 3 * T2 + 1728 * T1 ** 5
             + 364 * T1 ** 3 * R5 + 6042 * R5 * T1 ** 2 * T2 + 23400 * R5 * T1 * T2 ** 2
             + 17050 * R5 * T2 ** 3 + 1376 * T1 ** 4 + 14400 * T1 ** 3 * T2
             + 68 * T1 ** 2 * R5 + 1288 * T1 * T2 * R5 + 1220 * R5 * T2 ** 2
             - 19520 * R5 * ETA ** 2 + 819 * T1 ** 3 + 13515 * T1 ** 2 * T2
             + 52325 * T1 * T2 ** 2 + 38125 * T2 ** 3 + 152 * T1 ** 2 + 2880 * T1 * T2
             + 2728 * T2 ** 2)
S_PLANE = S_PRINTED.substitute({"eta": 0})
S1 = S_PRINTED - 43648 * ETA ** 2
S2 = 13 * T1 * R5 + 45 * R5 * T2 + 45 * T1 ** 2 + 4 * R5 + 26 * T1 + 100 * T2 + 9
S3 = 30 * T1 * T2 * R5 - 3 * T1 * R5 - 9 * R5 * T2 - 19 * T1 ** 2 + 75 * T1 * T2 - 6 * T1 - 20 * T2


def _icosahedral_upper():
    g11 = -36 * T1 ** 2 - (R5 + 2) * (7 * T1 + 5 * T2 + 2 * R5 * T2)
    g12 = (40 - 16 * R5) * T1 ** 2 + (3 * R5 + 6) * T2 + T1 * R5 - 60 * T1 * T2
    g22 = ((7296 - 3264 * R5) * T1 ** 3 + (96 * R5 - 240) * T1 * T2
           + (-432 + 192 * R5) * T1 ** 2 - 5 * R5 * T2 + (6 - 3 * R5) * T1 - 100 * T2 ** 2)
    g13 = -90 * T1 * ETA - 2 * (R5 + 2) * ETA
    g23 = -150 * T2 * ETA + ETA * ((-100 + 40 * R5) * T1 - 2 * R5)
    g33 = -225 * ETA ** 2 - Fraction(1, 4) * (-161 + 72 * R5) * S2 * S3
    return g11, g12, g22, g13, g23, g33


def omega21(n: int | None = None) -> PolynomialModel:
    system = _system("omega21", "IJ", [("I6", "t1", i6(), 6), ("I10", "t2", i10(), 10)])
    g11, g12, g22, *_ = _icosahedral_upper()
    g = PolyMatrix.from_upper([[g11, g12], [g22]])
    boundary = [BoundaryFactor("S", S_PLANE, True,
                               _mult(-4 * R5 - 8 - 180 * T1,
                                     (-200 + 80 * R5) * T1 - 300 * T2 - 4 * R5),
                               DERIVED, printed_poly=S_PRINTED,
                               note="the printed S carries an eta^2 term that belongs to S1")]
    return PolynomialModel(
        key="omega21", label="Omega21", system=system, cometric=g, boundary=boundary,
        det_constant=-152 + 68 * SQRT5, det_exponents={"S": 1}, domain_conditions=[S_PLANE],
        summary_boundary="S(X, Y) = 0")


def omega22(n: int | None = None) -> PolynomialModel:
    system = _system("omega22", "I", [("I6", "t1", i6(), 6), ("I10", "t2", i10(), 10),
                                      ("I15", "eta", i15(), 15)], "eta")
    g11, g12, g22, g13, g23, g33 = _icosahedral_upper()
    g = PolyMatrix.from_upper([[g11, g12, g13], [g22, g23], [g33]])
    mult_t2 = 4 * (2 * R5 - 5) * ((30 * R5 + 75) * T2 + 10 * T1 + 2 + R5)
    boundary = [
        BoundaryFactor("S1", S1, True, _mult(-4 * R5 - 8 - 180 * T1, mult_t2, -450 * ETA)),
        BoundaryFactor("S2", S2, False),
        BoundaryFactor("S3", S3, False),
    ]
    syz = ETA ** 2 - S_PLANE.scale(Scalar(1) / (43648 + 19520 * SQRT5))
    return PolynomialModel(
        key="omega22", label="Omega22", system=system, cometric=g, boundary=boundary,
        syzygy_parent=("omega21", S_PLANE),
        det_constant=None, det_exponents={"S1": 1, "S2": 1, "S3": 1}, syzygy=syz,
        domain_conditions=[S1], summary_boundary="Z^2 = S(X, Y)",
        notes=["S1 = S - 43648 eta^2 with the printed S (which contains -19520 r5 eta^2)"])


BUILDERS: dict[str, Callable[[int | None], PolynomialModel]] = {
    "omega1": omega1, "omega2": omega2, "omega3": omega3, "omega4": omega4,
    "omega5": omega5, "omega6": omega6, "omega7": omega7, "omega8": omega8,
    "omega9": omega9, "omega11": omega11, "omega12": omega12, "omega13": omega13,
    "omega14": omega14, "omega15": omega15, "omega21": omega21, "omega22": omega22,
}

PARAMETRISED = ("omega1", "omega2", "omega3", "omega4", "omega5", "omega6", "omega7",
                "omega8", "omega9")

GROUP_LABELS = {
    "omega1": ("Cn|Dn", "z", "X_n", ""), "omega2": ("Cn", "z", "X_n", "Y_n"),
    "omega3": ("DnJ, Dn|D2n", "z^2", "X_n", ""), "omega4": ("CnJ, Cn|C2n", "z^2", "X_n", "Y_n"),
    "omega5": ("Dn", "z^2", "X_n", "z Y_n"), "omega6": ("D2nJ", "z^2", "X_n^2", ""),
    "omega7": ("Dn|D2n, DnJ, Cn|C2n, CnJ", "z^2", "X_n^2", "z Y_n"),
    "omega8": ("Cn|C2n, CnJ", "z^2", "X_n^2", "z X_n"),
    "omega9": ("Cn|C2n, CnJ", "z^2", "X_n^2", "X_n Y_n"),
    "omega11": ("T|O", "O3", "O4", ""), "omega12": ("T", "O3", "O4", "O6"),
    "omega13": ("OJ", "O3^2", "O4", ""), "omega14": ("TJ", "O3^2", "O4", "O6"),
    "omega15": ("O", "O3^2", "O4", "O3 O6"), "omega21": ("IJ", "I6", "I10", ""),
    "omega22": ("I", "I6", "I10", "I15"),
}


def normalise_name(name: str) -> str:
    key = name.lower().replace("_", "").replace(" ", "")
    if key.startswith("ω"):
        key = "omega" + key[1:]
    if key.isdigit():
        key = "omega" + key
    return key


def model(name: str, n: int | None = None) -> PolynomialModel:
    key = normalise_name(name)
    if key not in BUILDERS:
        raise UnknownModel(name)
    if key in PARAMETRISED and n is None:
        raise ValueError(f"model {name} needs --n")
    return BUILDERS[key](n)
