"""Covering maps between models and identifications with the classical 2-d list."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..algebra.linsolve import Inconsistent, linear_solve
from ..algebra.poly import MultiPoly
from ..algebra.scalar import Scalar
from .invariants import X, Y, Z
from .models import model, normalise_name
from .types import Invariant, InvariantSystem

T1, T2, ETA = (MultiPoly.var(v) for v in ("t1", "t2", "eta"))
U, V = MultiPoly.var("u"), MultiPoly.var("v")


class UnknownCover(KeyError):
    pass


@dataclass
class CoverMap:
    """Polynomial map from the ``source`` model coordinates onto ``target`` coordinates.

    ``source_system`` overrides the source model's invariants when the cover
    uses a different presentation of the source domain.
    """

    source: str
    target: str
    n: int | None
    components: dict[str, MultiPoly]
    degree: int
    source_system: InvariantSystem | None = None
    fitted: dict[str, Scalar] = field(default_factory=dict)
    note: str = ""

    def pairs(self) -> list[tuple[str, MultiPoly]]:
        return list(self.components.items())


def diagonal_axis_system() -> InvariantSystem:
    """Invariants of the three-fold group about the diagonal: ``(x+y+z, xyz)``."""
    return InvariantSystem("omega1(3) diagonal", "C3|D3", 3, (
        Invariant("x+y+z", "t1", X + Y + Z, 1),
        Invariant("xyz", "t2", X * Y * Z, 3),
    ))


@lru_cache(maxsize=None)
def quartic_coefficients() -> tuple[Scalar, Scalar, Scalar, Scalar]:
    """``a, b, c, d`` with ``x^4+y^4+z^4 = a s^4 + b s^2 r + c s xyz + d r^2``.

    Here ``s = x+y+z`` and ``r = x^2+y^2+z^2``; the identity is solved as a
    linear system on monomial coefficients.
    """
    s = X + Y + Z
    r = X ** 2 + Y ** 2 + Z ** 2
    cols = [s ** 4, s ** 2 * r, s * X * Y * Z, r ** 2]
    target = X ** 4 + Y ** 4 + Z ** 4
    rows: dict[tuple[int, ...], int] = {}
    for c in cols + [target]:
        for e in c.with_variables(("x", "y", "z")).terms:
            rows.setdefault(e, len(rows))
    matrix = [[Scalar(0)] * len(cols) for _ in rows]
    for j, c in enumerate(cols):
        for e, v in c.with_variables(("x", "y", "z")).terms.items():
            matrix[rows[e]][j] = v
    rhs = [Scalar(0)] * len(rows)
    for e, v in target.with_variables(("x", "y", "z")).terms.items():
        rhs[rows[e]] = v
    sol = linear_solve(matrix, rhs)
    if isinstance(sol, Inconsistent) or sol.nullspace:
        raise ArithmeticError("quartic identity has no unique solution")
    a, b, c, d = sol.x
    return a, b, c, d


COVER_PAIRS = (("omega1", "omega3"), ("omega2", "omega5"), ("omega2", "omega4"),
               ("omega1", "omega11"), ("omega6", "omega3"), ("omega9", "omega4"))


def cover_map(source: str, target: str, n: int | None = None) -> CoverMap:
    src, tgt = normalise_name(source), normalise_name(target)
    if (src, tgt) == ("omega1", "omega3"):
        n = n or 3
        return CoverMap(src, tgt, n, {"t1": T1 ** 2, "t2": T2}, 2)
    if (src, tgt) == ("omega2", "omega5"):
        n = n or 3
        return CoverMap(src, tgt, n, {"t1": T1 ** 2, "t2": T2, "eta": T1 * ETA}, 2)
    if (src, tgt) == ("omega2", "omega4"):
        n = n or 3
        return CoverMap(src, tgt, n, {"t1": T1 ** 2, "t2": T2, "eta": ETA}, 2)
    if (src, tgt) == ("omega1", "omega11"):
        if n not in (None, 3):
            raise UnknownCover(f"{source}({n}) -> {target}")
        a, b, c, d = quartic_coefficients()
        # on the sphere r = 1
        quartic = T1 ** 4 * a + T1 ** 2 * b + T1 * T2 * c + MultiPoly.const(d)
        return CoverMap(src, tgt, 3, {"t1": T2, "t2": quartic}, 4, diagonal_axis_system(),
                        {"a": a, "b": b, "c": c, "d": d},
                        "source coordinates are (x+y+z, xyz), an affine image of (z, X_3)")
    if (src, tgt) == ("omega6", "omega3"):
        n = n or 3
        return CoverMap(src, tgt, n, {"t1": T1, "t2": 2 * T2 - (1 - T1) ** n}, 1,
                        note="isomorphism onto the model with parameter 2n")
    if (src, tgt) == ("omega9", "omega4"):
        n = n or 3
        return CoverMap(src, tgt, n, {"t1": T1, "t2": 2 * T2 - (1 - T1) ** n, "eta": 2 * ETA}, 1,
                        note="isomorphism onto the model with parameter 2n")
    raise UnknownCover(f"{source} -> {target}")


def target_parameter(cover: CoverMap) -> int | None:
    if cover.target in ("omega11",):
        return None
    return 2 * cover.n if cover.degree == 1 else cover.n


# -- identifications with the classical list of 2-d models --------------

def _classical_boundary(number: int) -> MultiPoly:
    if number == 2:
        return 1 - U ** 2 - V ** 2
    if number == 3:
        return U * V * (1 - U - V)
    if number == 4:
        return (1 - U ** 2) ** 2 - V ** 2
    if number == 5:
        return V * (1 - U) * (U ** 2 - V)
    if number == 8:
        return (V ** 2 - U ** 3) * (U - 1)
    if number == 9:
        return (V ** 2 - U ** 3) * (2 * (V - 1) - 3 * (U - 1))
    if number == 10:
        return 4 * U ** 2 - 27 * U ** 4 + 16 * V - 128 * V ** 2 - 144 * U ** 2 * V + 256 * V ** 3
    raise KeyError(number)


@dataclass
class Identification:
    """``number`` in the classical list identified with ``model`` (parameter ``n``).

    ``change`` maps the classical coordinates ``(u, v)`` to polynomials in the
    model coordinates; ``even_in_u`` means only ``u^2`` is bound (the map
    involves a square root but the boundary is even in ``u``).
    """

    number: int
    model: str
    n: int | None
    printed_label: str
    change: dict[str, MultiPoly] | None
    even_in_u: bool = False
    note: str = ""

    @property
    def boundary(self) -> MultiPoly:
        return _classical_boundary(self.number)

    @property
    def declared_only(self) -> bool:
        return self.change is None


def classical_identifications() -> list[Identification]:
    half = Fraction(1, 2)
    return [
        Identification(2, "omega1", 1, "Omega_1^(1)", {"u": T1, "v": T2}),
        Identification(3, "omega3", 2, "Omega_3^(2)",
                       {"u": (1 - T1 + T2) * half, "v": (1 - T1 - T2) * half}),
        Identification(4, "omega1", 2, "Omega_1^(2)", {"u": T1, "v": T2}),
        Identification(4, "omega3", 1, "Omega_3^(1)", {"u": T2, "v": 2 * T1 - 1 + T2 ** 2},
                       note="polynomial (non-affine) change of variables"),
        Identification(5, "omega6", 2, "Omega_6^(2)", {"u": 1 - T1, "v": T2}),
        Identification(5, "omega3", 4, "Omega_4^(4)",
                       {"u": 1 - T1, "v": (T2 + (1 - T1) ** 2) * half},
                       note="printed label is 3-dimensional; verified against Omega_3^(4), "
                            "which is isomorphic to Omega_6^(2)"),
        Identification(8, "omega3", 3, "Omega_2^(3)", {"u": 1 - T1, "v": T2},
                       note="printed label is 3-dimensional; verified against Omega_3^(3)"),
        Identification(9, "omega13", None, "Omega_13",
                       {"u": (3 * T2 - 1) * half, "v": (54 * T1 + 9 * T2 - 5) * Fraction(1, 4)}),
        Identification(10, "omega11", None, "Omega_11", {"u2": 8 * T1 ** 2, "v": T2 * half - Fraction(1, 4)},
                       even_in_u=True),
    ]


def identification_boundary_match(ident: Identification) -> tuple[bool, Scalar | None]:
    """Pull the classical boundary back and compare with the model boundary up to a constant."""
    if ident.change is None:
        return False, None
    m = model(ident.model, ident.n)
    b = ident.boundary
    if ident.even_in_u:
        b = _even_part(b)
    pulled = b.substitute(ident.change)
    return proportional(pulled, m.reduced_boundary())


def _even_part(p: MultiPoly) -> MultiPoly:
    """Rewrite an even polynomial in ``u`` as a polynomial in ``u2``."""
    u2 = MultiPoly.var("u2")
    out = MultiPoly.const(0)
    for e, c in p.items():
        k = e.get("u", 0)
        if k % 2:
            raise ValueError("not even in u")
        rest = {v: a for v, a in e.items() if v != "u"}
        out = out + MultiPoly.monomial(rest, c) * u2 ** (k // 2)
    return out


def proportional(p: MultiPoly, q: MultiPoly) -> tuple[bool, Scalar | None]:
    """Whether ``p == c q`` for a nonzero constant ``c`` (returned when true)."""
    if not p or not q:
        return False, None
    lead = dict(next(iter(q.items()))[0])
    c = p.coefficient(lead) / q.leading_coefficient()
    if not c:
        return False, None
    return (p - q.scale(c)).is_zero(), c
