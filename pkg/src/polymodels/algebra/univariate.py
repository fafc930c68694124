"""Dense univariate polynomials over Q(sqrt 5), lowest degree first."""

from __future__ import annotations

from typing import Sequence

from .scalar import ONE, ZERO, Scalar, ScalarLike, as_scalar

UPoly = list  # list[Scalar], index = degree


def upoly(coeffs: Sequence[ScalarLike]) -> UPoly:
    return trim([as_scalar(c) for c in coeffs])


def trim(p: UPoly) -> UPoly:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def deg(p: UPoly) -> int:
    return len(p) - 1


def add(p: UPoly, q: UPoly) -> UPoly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else ZERO) + (q[i] if i < len(q) else ZERO) for i in range(n)])


def sub(p: UPoly, q: UPoly) -> UPoly:
    return add(p, [-c for c in q])


def mul(p: UPoly, q: UPoly) -> UPoly:
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] = out[i + j] + a * b
    return trim(out)


def scale(p: UPoly, c: Scalar) -> UPoly:
    return trim([a * c for a in p])


def divmod_(p: UPoly, q: UPoly) -> tuple[UPoly, UPoly]:
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(p)
    out = [ZERO] * max(len(r) - len(q) + 1, 0)
    inv = q[-1].inverse()
    while len(r) >= len(q) and r:
        shift = len(r) - len(q)
        c = r[-1] * inv
        out[shift] = c
        for i, b in enumerate(q):
            r[shift + i] = r[shift + i] - c * b
        r = trim(r)
    return trim(out), r


def monic(p: UPoly) -> UPoly:
    p = trim(p)
    if not p:
        return p
    return scale(p, p[-1].inverse())


def gcd(p: UPoly, q: UPoly) -> UPoly:
    a, b = trim(p), trim(q)
    while b:
        _, r = divmod_(a, b)
        a, b = b, r
    return monic(a)


def series(num: UPoly, den: UPoly, order: int) -> list[Scalar]:
    """Power-series coefficients of ``num/den`` up to ``t**order``."""
    if not den or not den[0]:
        raise ZeroDivisionError("denominator must have nonzero constant term")
    inv0 = den[0].inverse()
    out: list[Scalar] = []
    for k in range(order + 1):
        acc = num[k] if k < len(num) else ZERO
        for j in range(1, min(k, len(den) - 1) + 1):
            if den[j]:
                acc = acc - den[j] * out[k - j]
        out.append(acc * inv0)
    return out


def power(p: UPoly, k: int) -> UPoly:
    out: UPoly = [ONE]
    for _ in range(k):
        out = mul(out, p)
    return out


def to_text(p: UPoly, var: str = "t") -> str:
    parts = []
    for i, c in enumerate(p):
        if not c:
            continue
        if i == 0:
            parts.append(c.to_text())
        else:
            mono = var if i == 1 else f"{var}^{i}"
            parts.append(mono if c.is_one() else f"{c.to_text()} * {mono}")
    return " + ".join(parts) if parts else "0"
