"""Exact scalars in the field Q(sqrt 5).

A value is stored as ``(na + nb*sqrt5) / d`` with integers ``na, nb, d``,
``d > 0`` and ``gcd(na, nb, d) == 1``.  That triple is canonical, so equal
values always have identical representations and hash equal.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

ScalarLike = Union["Scalar", int, Fraction]

_SQRT5_FLOAT = math.sqrt(5.0)


def _gcd3(a: int, b: int, c: int) -> int:
    return math.gcd(math.gcd(a, b), c)


class Scalar:
    """Element ``a + b*sqrt(5)`` of Q(sqrt 5) with exact rational ``a``, ``b``."""

    __slots__ = ("_na", "_nb", "_d")

    def __init__(self, a: ScalarLike | str = 0, b: ScalarLike = 0) -> None:
        if isinstance(a, Scalar):
            if b:
                res = a + Scalar(b) * SQRT5
            else:
                res = a
            self._na, self._nb, self._d = res._na, res._nb, res._d
            return
        if isinstance(a, str):
            a = Fraction(a)
        fa = Fraction(a)
        fb = Fraction(b)
        d = fa.denominator * fb.denominator // math.gcd(fa.denominator, fb.denominator)
        na = fa.numerator * (d // fa.denominator)
        nb = fb.numerator * (d // fb.denominator)
        self._na, self._nb, self._d = na, nb, d

    @classmethod
    def from_ints(cls, na: int, nb: int, d: int) -> "Scalar":
        """Build ``(na + nb*sqrt5)/d`` and normalise."""
        if d == 0:
            raise ZeroDivisionError("zero denominator")
        if d < 0:
            na, nb, d = -na, -nb, -d
        g = _gcd3(na, nb, d)
        if g != 1:
            na //= g
            nb //= g
            d //= g
        obj = object.__new__(cls)
        obj._na, obj._nb, obj._d = na, nb, d
        return obj

    # -- accessors -----------------------------------------------------
    @property
    def a(self) -> Fraction:
        return Fraction(self._na, self._d)

    @property
    def b(self) -> Fraction:
        return Fraction(self._nb, self._d)

    @property
    def radicand(self) -> int:
        return 1 if self._nb == 0 else 5

    @property
    def ints(self) -> tuple[int, int, int]:
        return self._na, self._nb, self._d

    def is_rational(self) -> bool:
        return self._nb == 0

    def is_zero(self) -> bool:
        return self._na == 0 and self._nb == 0

    def is_one(self) -> bool:
        return self._na == 1 and self._nb == 0 and self._d == 1

    def to_fraction(self) -> Fraction:
        if self._nb:
            raise ValueError(f"{self} is not rational")
        return Fraction(self._na, self._d)

    def conjugate(self) -> "Scalar":
        return Scalar.from_ints(self._na, -self._nb, self._d)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 5 b^2``."""
        return Fraction(self._na * self._na - 5 * self._nb * self._nb, self._d * self._d)

    # -- arithmetic ----------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Scalar | None":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, int):
            return Scalar.from_ints(other, 0, 1)
        if isinstance(other, Rational):
            return Scalar.from_ints(int(other.numerator), 0, int(other.denominator))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._d == o._d:
            return Scalar.from_ints(self._na + o._na, self._nb + o._nb, self._d)
        return Scalar.from_ints(
            self._na * o._d + o._na * self._d,
            self._nb * o._d + o._nb * self._d,
            self._d * o._d,
        )

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        obj = object.__new__(Scalar)
        obj._na, obj._nb, obj._d = -self._na, -self._nb, self._d
        return obj

    def __pos__(self) -> "Scalar":
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._nb == 0 and o._nb == 0:
            return Scalar.from_ints(self._na * o._na, 0, self._d * o._d)
        return Scalar.from_ints(
            self._na * o._na + 5 * self._nb * o._nb,
            self._na * o._nb + self._nb * o._na,
            self._d * o._d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        n = self._na * self._na - 5 * self._nb * self._nb
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt5)")
        # 1/((na + nb r)/d) = d (na - nb r) / n
        return Scalar.from_ints(self._d * self._na, -self._d * self._nb, n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ----------------------------------------------------
    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._na == o._na and self._nb == o._nb and self._d == o._d

    def __hash__(self) -> int:
        if self._nb == 0:
            return hash(Fraction(self._na, self._d))
        return hash((self._na, self._nb, self._d))

    def __bool__(self) -> bool:
        return bool(self._na) or bool(self._nb)

    def sign(self) -> int:
        """Exact sign of the real number ``a + b*sqrt5``."""
        a, b = self._na, self._nb
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        # opposite signs: compare a^2 with 5 b^2
        diff = a * a - 5 * b * b
        if diff > 0:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.a, self.b)

    def __float__(self) -> float:
        return (self._na + self._nb * _SQRT5_FLOAT) / self._d

    # -- text ----------------------------------------------------------
    def to_text(self) -> str:
        """Canonical text: ``3``, ``-1/2``, ``r5``, ``(1/2 + 1/2*r5)``."""
        a, b = self.a, self.b
        if b == 0:
            return _frac_text(a)
        if b == 1:
            bpart = "r5"
        elif b == -1:
            bpart = "-r5"
        else:
            bpart = f"{_frac_text(b)}*r5"
        if a == 0:
            return bpart
        return f"({_frac_text(a)} + {bpart})"

    __str__ = to_text

    def __repr__(self) -> str:
        return f"Scalar({self.to_text()!r})"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Inverse of :meth:`to_text`."""
        s = text.strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        total = ZERO
        for part in s.split(" + "):
            part = part.strip()
            if part.endswith("r5"):
                head = part[:-2].rstrip("*")
                if head in ("", "+"):
                    coeff = Fraction(1)
                elif head == "-":
                    coeff = Fraction(-1)
                else:
                    coeff = Fraction(head)
                total = total + Scalar(0, coeff)
            else:
                total = total + Scalar(Fraction(part))
        return total


def _frac_text(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def as_scalar(value: ScalarLike | float | str) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not exact scalars")
    return Scalar(value)


ZERO = Scalar.from_ints(0, 0, 1)
ONE = Scalar.from_ints(1, 0, 1)
SQRT5 = Scalar.from_ints(0, 1, 1)
GOLDEN = Scalar.from_ints(1, 1, 2)
