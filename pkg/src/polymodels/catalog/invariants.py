"""Ambient invariant polynomials of the finite groups."""

from __future__ import annotations

from functools import lru_cache
from math import comb

from ..algebra.poly import MultiPoly
from ..algebra.scalar import GOLDEN, ONE

X, Y, Z = (MultiPoly.var(v) for v in ("x", "y", "z"))
X1, X2, X3, X4 = (MultiPoly.var(v) for v in ("x1", "x2", "x3", "x4"))


class UnknownInvariant(KeyError):
    pass


def _complex_power(re: MultiPoly, im: MultiPoly, n: int) -> tuple[MultiPoly, MultiPoly]:
    """Real and imaginary parts of ``(re + i im)^n`` by the binomial formula."""
    real = MultiPoly.const(0)
    imag = MultiPoly.const(0)
    for k in range(n + 1):
        term = (re ** (n - k)) * (im ** k) * comb(n, k)
        if k % 2 == 0:
            real = real + (term if k % 4 == 0 else -term)
        else:
            imag = imag + (term if k % 4 == 1 else -term)
    return real, imag


@lru_cache(maxsize=None)
def x_n(n: int) -> MultiPoly:
    """Real part of ``(x + i y)^n``."""
    return _complex_power(X, Y, n)[0]


@lru_cache(maxsize=None)
def y_n(n: int) -> MultiPoly:
    """Imaginary part of ``(x + i y)^n``."""
    return _complex_power(X, Y, n)[1]


def o3() -> MultiPoly:
    return X * Y * Z


def o4() -> MultiPoly:
    return X ** 4 + Y ** 4 + Z ** 4


def o6() -> MultiPoly:
    return (X ** 2 - Y ** 2) * (Y ** 2 - Z ** 2) * (Z ** 2 - X ** 2)


C = GOLDEN
C_INV = GOLDEN - ONE  # 1/c = c - 1


@lru_cache(maxsize=None)
def i6() -> MultiPoly:
    c2 = C * C
    return ((X ** 2).scale(c2) - Y ** 2) * ((Y ** 2).scale(c2) - Z ** 2) * ((Z ** 2).scale(c2) - X ** 2)


@lru_cache(maxsize=None)
def i10() -> MultiPoly:
    c2 = C * C
    ci2 = C_INV * C_INV
    lin = (X + Y + Z) * (-X + Y + Z) * (X - Y + Z) * (X + Y - Z)
    quad = (((X ** 2).scale(ci2) - (Y ** 2).scale(c2))
            * ((Y ** 2).scale(ci2) - (Z ** 2).scale(c2))
            * ((Z ** 2).scale(ci2) - (X ** 2).scale(c2)))
    return lin * quad


@lru_cache(maxsize=None)
def i15() -> MultiPoly:
    out = X * Y * Z
    # each triple (p, q, r) of coefficient multipliers gives the planes
    # p*u + q*v + r*w with one sign flip at a time
    for u, v, w in ((X.scale(C), Y.scale(C_INV), Z),
                    (X, Y.scale(C), Z.scale(C_INV)),
                    (X.scale(C_INV), Y, Z.scale(C))):
        out = out * (u + v + w) * (-u + v + w) * (u - v + w) * (u + v - w)
    return out


# -- four-dimensional family -----------------------------------------

@lru_cache(maxsize=None)
def _cornulier_parts(p: int) -> dict[str, MultiPoly]:
    xa, ya = _complex_power(X1, X2, p)
    xb, yb = _complex_power(X3, X4, p)
    ra = X1 ** 2 + X2 ** 2
    rb = X3 ** 2 + X4 ** 2
    return {"X1": xa, "Y1": ya, "X2": xb, "Y2": yb, "R1": ra, "R2": rb}


@lru_cache(maxsize=None)
def cornulier_invariant(name: str, p: int = 3) -> MultiPoly:
    q = _cornulier_parts(p)
    xa, ya, xb, yb, ra, rb = (q[k] for k in ("X1", "Y1", "X2", "Y2", "R1", "R2"))
    table = {
        "theta1": lambda: xa + xb,
        "theta2": lambda: xa * xb,
        "theta3": lambda: ra * rb,
        "eta1": lambda: ya + yb,
        "eta2": lambda: (ya - yb) * (ra - rb),
        "eta3": lambda: (xa - xb) * (ra - rb),
        "eta4": lambda: ya * yb,
        "eta5": lambda: (xa - xb) * (ya - yb),
        "eta6": lambda: (xa * ya - xb * yb) * (ra - rb),
        "eta7": lambda: (xa - xb) * (ra - rb) * ya * yb,
    }
    if name not in table:
        raise UnknownInvariant(name)
    return table[name]()


def cornulier_t(k: int, p: int = 3) -> MultiPoly:
    """``R1^k X2 + R2^k X1`` in the notation of the four-dimensional example."""
    q = _cornulier_parts(p)
    return q["R1"] ** k * q["X2"] + q["R2"] ** k * q["X1"]


_SIMPLE = {"z": lambda: Z, "O3": o3, "O4": o4, "O6": o6, "I6": i6, "I10": i10, "I15": i15}


def build_invariant(name: str, n: int | None = None, p: int | None = None) -> MultiPoly:
    """Ambient invariant by label: ``z``, ``X_n``, ``Y_n``, ``O3`` ... ``I15``,
    or one of the four-dimensional ``theta1..theta3``, ``eta1..eta7``."""
    key = name.replace("_", "")
    if key in _SIMPLE:
        return _SIMPLE[key]()
    if key in ("Xn", "Yn") or (key[:1] in "XY" and key[1:].isdigit()):
        order = n if key[1:] in ("n", "") else int(key[1:])
        if order is None or order < 1:
            raise UnknownInvariant(f"{name} needs a positive order")
        return x_n(order) if key[0] == "X" else y_n(order)
    if key.startswith(("theta", "eta")):
        return cornulier_invariant(key, 3 if p is None else p)
    raise UnknownInvariant(name)
