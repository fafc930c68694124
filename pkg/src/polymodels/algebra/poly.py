"""Sparse multivariate polynomials over Q(sqrt 5).

Variables carry names and are ordered by a process-wide registry, so every
polynomial has a canonical layout and terms sort in graded-lex order.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .. import kernels
from .scalar import ONE, ZERO, Scalar, ScalarLike, as_scalar

_BITS = 12
_MASK = (1 << _BITS) - 1
_MAX_PACKED_VARS = 5
# products with fewer term pairs stay in plain Python
_KERNEL_THRESHOLD = 48

_REGISTRY: dict[str, int] = {}
for _name in ("x", "y", "z", "x1", "x2", "x3", "x4",
              "t1", "t2", "t3", "eta", "t", "u", "v", "w", "s"):
    _REGISTRY[_name] = len(_REGISTRY)


def register(name: str) -> int:
    """Register ``name`` (idempotent) and return its global order index."""
    idx = _REGISTRY.get(name)
    if idx is None:
        idx = _REGISTRY[name] = len(_REGISTRY)
    return idx


def sort_variables(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=register))


class MultiPoly:
    """Immutable sparse polynomial.

    ``terms`` maps exponent tuples (aligned with ``variables``) to nonzero
    :class:`Scalar` coefficients.
    """

    __slots__ = ("variables", "terms", "_iform", "_hash")

    def __init__(self, variables: Iterable[str] = (),
                 terms: Mapping[tuple[int, ...], ScalarLike] | None = None) -> None:
        variables = tuple(variables)
        ordered = sort_variables(variables)
        clean: dict[tuple[int, ...], Scalar] = {}
        if terms:
            if ordered != variables:
                perm = [variables.index(v) for v in ordered]
                items = ((tuple(e[i] for i in perm), c) for e, c in terms.items())
            else:
                items = iter(terms.items())
            for e, c in items:
                c = as_scalar(c)
                if c:
                    if len(e) != len(ordered):
                        raise ValueError("exponent length does not match variables")
                    if e in clean:
                        c = clean[e] + c
                        if not c:
                            del clean[e]
                            continue
                    clean[e] = c
        self.variables = ordered
        self.terms = clean
        self._iform = None
        self._hash = None

    @classmethod
    def _make(cls, variables: tuple[str, ...], terms: dict) -> "MultiPoly":
        # trusted constructor: variables already ordered, coefficients nonzero
        obj = object.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj._iform = None
        obj._hash = None
        return obj

    # -- constructors --------------------------------------------------
    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        register(name)
        return cls._make((name,), {(1,): ONE})

    @classmethod
    def const(cls, c: ScalarLike, variables: Iterable[str] = ()) -> "MultiPoly":
        variables = sort_variables(variables)
        c = as_scalar(c)
        if not c:
            return cls._make(variables, {})
        return cls._make(variables, {(0,) * len(variables): c})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: ScalarLike = 1) -> "MultiPoly":
        variables = sort_variables(exps)
        c = as_scalar(coeff)
        if not c:
            return cls._make(variables, {})
        return cls._make(variables, {tuple(exps[v] for v in variables): c})

    # -- basic queries -------------------------------------------------
    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * len(self.variables), ZERO)

    def used_variables(self) -> tuple[str, ...]:
        used = [False] * len(self.variables)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var: str) -> int:
        if var not in self.variables:
            return 0 if self.terms else -1
        i = self.variables.index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def weighted_degree(self, weights: Mapping[str, int]) -> int:
        """Largest ``sum(w_i * e_i)`` over terms; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        w = [weights.get(v, 0) for v in self.variables]
        for v in self.used_variables():
            if v not in weights:
                raise KeyError(f"no weight for variable {v!r}")
        return max(sum(a * b for a, b in zip(w, e)) for e in self.terms)

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.terms.values())

    def coefficient(self, exps: Mapping[str, int]) -> Scalar:
        for v, k in exps.items():
            if k and v not in self.variables:
                return ZERO
        key = tuple(exps.get(v, 0) for v in self.variables)
        return self.terms.get(key, ZERO)

    def items(self):
        """Terms as ``({var: exp}, coeff)`` pairs in descending grlex order."""
        for e in self.sorted_exponents():
            yield {v: k for v, k in zip(self.variables, e) if k}, self.terms[e]

    def sorted_exponents(self) -> list[tuple[int, ...]]:
        return sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)

    def leading_exponent(self) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=lambda e: (sum(e), e))

    def leading_coefficient(self) -> Scalar:
        return self.terms[self.leading_exponent()]

    # -- layout --------------------------------------------------------
    def with_variables(self, variables: tuple[str, ...]) -> "MultiPoly":
        """Re-express over a superset of variables (already registry-ordered)."""
        if variables == self.variables:
            return self
        pos = [variables.index(v) for v in self.variables]
        n = len(variables)
        terms = {}
        for e, c in self.terms.items():
            new = [0] * n
            for p, k in zip(pos, e):
                new[p] = k
            terms[tuple(new)] = c
        return MultiPoly._make(variables, terms)

    def pruned(self) -> "MultiPoly":
        used = self.used_variables()
        if used == self.variables:
            return self
        idx = [self.variables.index(v) for v in used]
        terms = {tuple(e[i] for i in idx): c for e, c in self.terms.items()}
        return MultiPoly._make(used, terms)

    def _align(self, other: "MultiPoly") -> tuple[tuple[str, ...], "MultiPoly", "MultiPoly"]:
        if self.variables == other.variables:
            return self.variables, self, other
        variables = sort_variables(self.variables + other.variables)
        return variables, self.with_variables(variables), other.with_variables(variables)

    @staticmethod
    def _lift(other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return MultiPoly.const(other)
        return None

    # -- ring operations -----------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        if not self.terms:
            return o
        variables, a, b = self._align(o)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            cur = terms.get(e)
            if cur is None:
                terms[e] = c
            else:
                s = cur + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return MultiPoly._make(variables, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._make(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c: ScalarLike) -> "MultiPoly":
        c = as_scalar(c)
        if not c:
            return MultiPoly._make(self.variables, {})
        if c.is_one():
            return self
        return MultiPoly._make(self.variables, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            variables = sort_variables(self.variables + other.variables)
            return MultiPoly._make(variables, {})
        variables, a, b = self._align(other)
        if len(a.terms) * len(b.terms) < _KERNEL_THRESHOLD or len(variables) > _MAX_PACKED_VARS:
            return _mul_direct(variables, a, b)
        return _mul_kernel(variables, a, b)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.const(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(as_scalar(other).inverse())
        return NotImplemented

    # -- equality ------------------------------------------------------
    def _canonical(self):
        p = self.pruned()
        return p.variables, p.terms

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._canonical() == o._canonical()

    def __hash__(self) -> int:
        if self._hash is None:
            v, t = self._canonical()
            self._hash = hash((v, frozenset(t.items())))
        return self._hash

    # -- calculus / composition ---------------------------------------
    def diff(self, var: str) -> "MultiPoly":
        if var not in self.variables:
            return MultiPoly._make(self.variables, {})
        i = self.variables.index(var)
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                terms[ne] = c * k
        return MultiPoly._make(self.variables, terms)

    def substitute(self, bindings: Mapping[str, "MultiPoly | ScalarLike"],
                   reducer: Callable[["MultiPoly"], "MultiPoly"] | None = None) -> "MultiPoly":
        """Replace variables by polynomials; unbound variables stay.

        ``reducer`` (e.g. sphere reduction) is applied to every power and
        partial product, which keeps intermediate expressions small.
        """
        red = reducer or (lambda q: q)
        bound = [v for v in self.variables if v in bindings]
        if not bound:
            return self
        free = [v for v in self.variables if v not in bindings]
        idx_b = [self.variables.index(v) for v in bound]
        idx_f = [self.variables.index(v) for v in free]
        images = {v: self._lift(bindings[v]) for v in bound}
        powers: dict[tuple[str, int], MultiPoly] = {}

        def power(v: str, k: int) -> MultiPoly:
            key = (v, k)
            if key not in powers:
                if k == 1:
                    powers[key] = images[v]
                else:
                    half = power(v, k // 2)
                    sq = red(half * half)
                    powers[key] = red(sq * images[v]) if k % 2 else sq
            return powers[key]

        # group terms by bound exponent so each product is formed once
        groups: dict[tuple[int, ...], dict[tuple[int, ...], Scalar]] = {}
        for e, c in self.terms.items():
            be = tuple(e[i] for i in idx_b)
            fe = tuple(e[i] for i in idx_f)
            groups.setdefault(be, {})[fe] = c
        free_vars = tuple(free)
        acc = _Accumulator()
        for be, rest in groups.items():
            prod: MultiPoly | None = None
            for v, k in zip(bound, be):
                if k:
                    pk = power(v, k)
                    prod = pk if prod is None else red(prod * pk)
            cofactor = MultiPoly._make(free_vars, rest)
            if prod is None:
                acc.add(cofactor)
            else:
                acc.add(red(prod * cofactor) if free_vars else prod * cofactor)
        return acc.result()

    def evaluate(self, point: Mapping[str, ScalarLike]) -> Scalar:
        total = ZERO
        vals = [as_scalar(point[v]) if v in point else None for v in self.variables]
        for e, c in self.terms.items():
            t = c
            for val, k in zip(vals, e):
                if k:
                    if val is None:
                        raise KeyError("missing value for a used variable")
                    t = t * val ** k
            total = total + t
        return total

    def homogeneous_components(self) -> dict[int, "MultiPoly"]:
        comps: dict[int, dict] = {}
        for e, c in self.terms.items():
            comps.setdefault(sum(e), {})[e] = c
        return {k: MultiPoly._make(self.variables, t) for k, t in comps.items()}

    def map_coefficients(self, fn: Callable[[Scalar], Scalar]) -> "MultiPoly":
        return MultiPoly(self.variables, {e: fn(c) for e, c in self.terms.items()})

    # -- text ----------------------------------------------------------
    def to_text(self) -> str:
        from .textform import poly_to_text
        return poly_to_text(self)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()!r})"


class _Accumulator:
    """Sums many polynomials without rebuilding a dict per addition."""

    def __init__(self) -> None:
        self.variables: tuple[str, ...] = ()
        self.terms: dict[tuple[int, ...], Scalar] = {}

    def add(self, p: MultiPoly) -> None:
        if not p.terms:
            if p.variables != self.variables:
                self._widen(sort_variables(self.variables + p.variables))
            return
        if p.variables != self.variables:
            variables = sort_variables(self.variables + p.variables)
            self._widen(variables)
            p = p.with_variables(variables)
        terms = self.terms
        for e, c in p.terms.items():
            cur = terms.get(e)
            if cur is None:
                terms[e] = c
            else:
                s = cur + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]

    def _widen(self, variables: tuple[str, ...]) -> None:
        if variables == self.variables:
            return
        tmp = MultiPoly._make(self.variables, self.terms).with_variables(variables)
        self.variables, self.terms = variables, dict(tmp.terms)

    def result(self) -> MultiPoly:
        return MultiPoly._make(self.variables, self.terms)


def poly_sum(polys: Iterable[MultiPoly]) -> MultiPoly:
    acc = _Accumulator()
    for p in polys:
        acc.add(p)
    return acc.result()


def _mul_direct(variables, a: MultiPoly, b: MultiPoly) -> MultiPoly:
    terms: dict[tuple[int, ...], Scalar] = {}
    for e1, c1 in a.terms.items():
        for e2, c2 in b.terms.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            c = c1 * c2
            cur = terms.get(e)
            terms[e] = c if cur is None else cur + c
    return MultiPoly._make(variables, {e: c for e, c in terms.items() if c})


def _integer_form(p: MultiPoly):
    cached = p._iform
    if cached is not None:
        return cached
    ints = [c.ints for c in p.terms.values()]
    den = 1
    for _, _, d in ints:
        den = den * d // math.gcd(den, d)
    n = len(p.variables)
    shifts = [_BITS * i for i in range(n)]
    keys = []
    for e in p.terms:
        k = 0
        for s, x in zip(shifts, e):
            k |= x << s
        keys.append(k)
    A = [na * (den // d) for na, _, d in ints]
    if any(nb for _, nb, _ in ints):
        B = [nb * (den // d) for _, nb, d in ints]
    else:
        B = None
    p._iform = (keys, A, B, den)
    return p._iform


def _mul_kernel(variables, a: MultiPoly, b: MultiPoly) -> MultiPoly:
    ka, Aa, Ba, Da = _integer_form(a)
    kb, Ab, Bb, Db = _integer_form(b)
    keys, A, B = kernels.mul_packed(ka, Aa, Ba, kb, Ab, Bb)
    den = Da * Db
    n = len(variables)
    shifts = [_BITS * i for i in range(n)]
    terms = {}
    make = Scalar.from_ints
    if B is None:
        for k, x in zip(keys, A):
            if x:
                terms[tuple((k >> s) & _MASK for s in shifts)] = make(x, 0, den)
    else:
        for k, x, y in zip(keys, A, B):
            if x or y:
                terms[tuple((k >> s) & _MASK for s in shifts)] = make(x, y, den)
    return MultiPoly._make(variables, terms)


def symbols(names: str) -> tuple[MultiPoly, ...]:
    return tuple(MultiPoly.var(n) for n in names.replace(",", " ").split())


def poly(value: "MultiPoly | ScalarLike") -> MultiPoly:
    if isinstance(value, MultiPoly):
        return value
    return MultiPoly.const(value)
