"""Exact finite matrix groups, invariance tests, Molien series and Reynolds ranks.

Matrices have entries in Q(sqrt 5).  Rotation orders whose cosine and sine
cannot both be written there are realised about a tilted axis chosen so the
rotation matrix is still exact (see ``rotation``).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import univariate as up
from .algebra.linsolve import rank
from .algebra.poly import MultiPoly, _Accumulator
from .algebra.scalar import GOLDEN, ONE, SQRT5, ZERO, Scalar, as_scalar

Matrix = tuple[tuple[Scalar, ...], ...]

CLOSURE_CAP = 10_000


class ClosureCapExceeded(RuntimeError):
    pass


class UnsupportedOrder(ValueError):
    pass


class UnknownGroup(ValueError):
    pass


class IrrationalSeries(ArithmeticError):
    pass


# -- matrices ----------------------------------------------------------

def mat(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(as_scalar(v) for v in row) for row in rows)


def identity(d: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(d)) for i in range(d))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(b[0])
    out = []
    for row in a:
        new = []
        for j in range(n):
            acc = ZERO
            for k, v in enumerate(row):
                if v:
                    w = b[k][j]
                    if w:
                        acc = acc + v * w
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def scalar_mul(c, a: Matrix) -> Matrix:
    c = as_scalar(c)
    return tuple(tuple(c * v for v in row) for row in a)


def mat_det(a: Matrix) -> Scalar:
    n = len(a)
    if n == 1:
        return a[0][0]
    total = ZERO
    for j in range(n):
        if a[0][j]:
            minor = tuple(row[:j] + row[j + 1:] for row in a[1:])
            term = a[0][j] * mat_det(minor)
            total = total + term if j % 2 == 0 else total - term
    return total


def is_orthogonal(a: Matrix) -> bool:
    return matmul(transpose(a), a) == identity(len(a))


def matrix_key(a: Matrix):
    return tuple(v.sort_key() for row in a for v in row)


def matrix_text(a: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(v.to_text() for v in row) + "]" for row in a) + "]"


def rotation(axis: Sequence, cos, sin_over_norm) -> Matrix:
    """Rotation about ``axis`` (not necessarily unit) with the given cosine.

    ``sin_over_norm`` is ``sin(angle) / |axis|``, which stays exact in cases
    where neither factor does on its own.
    """
    v = [as_scalar(c) for c in axis]
    n2 = sum((c * c for c in v), ZERO)
    cos = as_scalar(cos)
    s = as_scalar(sin_over_norm)
    k = (ONE - cos) / n2
    cross = [[ZERO, -v[2], v[1]], [v[2], ZERO, -v[0]], [-v[1], v[0], ZERO]]
    return tuple(tuple((cos if i == j else ZERO) + s * cross[i][j] + k * v[i] * v[j]
                       for j in range(3)) for i in range(3))


# Axes for each supported rotation order, with cos(2pi/n) and sin(2pi/n)/|axis|.
_HALF = Fraction(1, 2)
_ROTATION_DATA = {
    1: ((0, 0, 1), 1, 0),
    2: ((0, 0, 1), -1, 0),
    4: ((0, 0, 1), 0, 1),
    3: ((1, 1, 1), -_HALF, _HALF),
    6: ((1, 1, 1), _HALF, _HALF),
    5: ((0, GOLDEN, 1), (SQRT5 - 1) / 4, _HALF),
    10: ((0, GOLDEN, 1), (SQRT5 + 1) / 4, (SQRT5 - 1) / 4),
}

# Second generator of D_n: half-turn about an axis perpendicular to the main one.
_HALF_TURN = {
    (0, 0, 1): ((1, 0, 0),),
    (1, 1, 1): ((1, -1, 0),),
    (0, GOLDEN, 1): ((1, 0, 0),),
}

SUPPORTED_ORDERS = tuple(sorted(_ROTATION_DATA))


def cyclic_axis(n: int) -> tuple:
    if n not in _ROTATION_DATA:
        raise UnsupportedOrder(
            f"order {n}: cos and sin of 2pi/{n} do not both lie in Q(sqrt 5)")
    return tuple(as_scalar(c) for c in _ROTATION_DATA[n][0])


def cyclic_generator(n: int) -> Matrix:
    cyclic_axis(n)
    axis, c, s = _ROTATION_DATA[n]
    return rotation(axis, c, s)


def half_turn(axis: Sequence) -> Matrix:
    return rotation(axis, -1, 0)


# -- groups ------------------------------------------------------------

@dataclass
class FiniteGroup:
    name: str
    elements: tuple[Matrix, ...]
    orthogonal: bool = True
    notes: list[str] = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return len(self.elements[0])

    def __contains__(self, m: Matrix) -> bool:
        return m in self._set

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.elements)
            self.__dict__["_cached_set"] = s
        return s

    def dump(self) -> str:
        return "\n".join(matrix_text(m) for m in self.elements) + "\n"

    def check_axioms(self) -> list[str]:
        """Names of failed group axioms (empty when all hold)."""
        failures = []
        d = self.dim
        if identity(d) not in self:
            failures.append("identity")
        if self.orthogonal and not all(is_orthogonal(m) for m in self.elements):
            failures.append("orthogonality")
        if not all(mat_det(m) in (ONE, -ONE) for m in self.elements):
            failures.append("determinant")
        for a in self.elements:
            inv = transpose(a) if self.orthogonal else None
            if inv is None or inv not in self:
                if not any(matmul(a, b) == identity(d) for b in self.elements):
                    failures.append("inverses")
                    break
        for a in self.elements:
            if any(matmul(a, b) not in self for b in self.elements):
                failures.append("closure")
                break
        return failures


def generate_group(generators: Iterable[Matrix], name: str = "",
                   cap: int = CLOSURE_CAP, orthogonal: bool | None = None) -> FiniteGroup:
    """Closure of ``generators`` under multiplication, canonically ordered."""
    gens = [mat(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    d = len(gens[0])
    seen = {identity(d)}
    frontier = [identity(d)]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = matmul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
                    if len(seen) > cap:
                        raise ClosureCapExceeded(f"more than {cap} elements generated")
        frontier = nxt
    if orthogonal is None:
        orthogonal = all(is_orthogonal(g) for g in gens)
    return FiniteGroup(name, tuple(sorted(seen, key=matrix_key)), orthogonal)


def with_central_symmetry(g: FiniteGroup, name: str) -> FiniteGroup:
    j = scalar_mul(-1, identity(g.dim))
    elems = set(g.elements) | {matmul(j, m) for m in g.elements}
    return FiniteGroup(name, tuple(sorted(elems, key=matrix_key)), g.orthogonal)


def index_two_twist(sub: FiniteGroup, big: FiniteGroup, name: str) -> FiniteGroup:
    """``sub`` together with ``-g`` for every ``g`` of ``big`` outside ``sub``."""
    if 2 * len(sub) != len(big) or not all(m in big for m in sub.elements):
        raise ValueError("first group must have index 2 in the second")
    j = scalar_mul(-1, identity(big.dim))
    elems = set(sub.elements) | {matmul(j, m) for m in big.elements if m not in sub}
    return FiniteGroup(name, tuple(sorted(elems, key=matrix_key)), big.orthogonal)


_CYCLE = mat([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
_FLIP_YZ = mat([[1, 0, 0], [0, -1, 0], [0, 0, -1]])
_QUARTER_Z = mat([[0, -1, 0], [1, 0, 0], [0, 0, 1]])


def _cyclic(n: int) -> FiniteGroup:
    return generate_group([cyclic_generator(n)], f"C{n}")


def _dihedral(n: int) -> FiniteGroup:
    cyclic_axis(n)
    perp = _HALF_TURN[_ROTATION_DATA[n][0]][0]
    return generate_group([cyclic_generator(n), half_turn(perp)], f"D{n}")


def icosahedral_five_fold() -> Matrix:
    return rotation((0, GOLDEN, 1), (SQRT5 - 1) / 4, _HALF)


def cornulier_block(p: int) -> Matrix:
    """2x2 integral-trace matrix of order ``p`` similar to the rotation by 2pi/p.

    Companion matrix of ``t^2 - 2cos(2pi/p) t + 1``; it is exact whenever
    ``2cos(2pi/p)`` lies in Q(sqrt 5), i.e. for p in {3, 5}.
    """
    two_cos = {3: Scalar(-1), 5: (SQRT5 - 1) / 2}
    if p not in two_cos:
        raise UnsupportedOrder(f"cornulier group needs p in (3, 5), got {p}")
    return mat([[0, -1], [1, two_cos[p]]])


def cornulier_generators(p: int) -> list[Matrix]:
    m = cornulier_block(p)
    z = ZERO
    n1 = mat([[m[0][0], m[0][1], z, z], [m[1][0], m[1][1], z, z],
              [z, z, 1, z], [z, z, z, 1]])
    n2 = mat([[1, z, z, z], [z, 1, z, z],
              [z, z, m[0][0], m[0][1]], [z, z, m[1][0], m[1][1]]])
    swap = mat([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    return [n1, n2, swap]


def _normalise_label(name: str) -> str:
    return name.replace("_", "").replace("|", "").replace(" ", "")


def construct_named(name: str, n: int | None = None, p: int | None = None) -> FiniteGroup:
    """Build a named group; ``n`` is the order parameter of cyclic families.

    Labels: ``C``, ``D``, ``CJ``, ``DJ``, ``CnDn``, ``DnD2n``, ``CnC2n`` (these
    need ``n``), ``T``, ``O``, ``I``, ``TJ``, ``OJ``, ``IJ``, ``TO``,
    ``cornulier`` (needs ``p``).
    """
    key = _normalise_label(name)
    if key.lower() == "cornulier":
        p = 3 if p is None else p
        g = generate_group(cornulier_generators(p), f"cornulier({p})", orthogonal=False)
        g.notes.append("companion-form blocks: conjugate to the orthogonal group, "
                       "preserves the Gram form [[2, -t], [-t, 2]] with t = 2cos(2pi/p)")
        if len(g) != 2 * p * p:
            raise AssertionError("cornulier group has the wrong order")
        return g
    polyhedral = {"T": (12, False), "O": (24, False), "I": (60, False),
                  "TJ": (24, True), "OJ": (48, True), "IJ": (120, True)}
    if key in polyhedral:
        size, central = polyhedral[key]
        base = key[0]
        gens = [_CYCLE, _FLIP_YZ]
        if base == "O":
            gens.append(_QUARTER_Z)
        elif base == "I":
            gens.append(icosahedral_five_fold())
        g = generate_group(gens, base)
        if central:
            g = with_central_symmetry(g, key)
        _expect(g, size)
        return g
    if key == "TO":
        g = index_two_twist(construct_named("T"), construct_named("O"), "T|O")
        _expect(g, 24)
        return g
    family = {"C": "C", "Cn": "C", "D": "D", "Dn": "D", "CJ": "CJ", "CnJ": "CJ",
              "DJ": "DJ", "DnJ": "DJ", "CnDn": "CnDn", "DnD2n": "DnD2n",
              "CnC2n": "CnC2n"}.get(key)
    if family is None:
        # labels such as "C5", "D3", "C5D5"
        for fam, pattern in (("CnDn", "C{0}D{0}"), ("DnD2n", "D{0}D{1}"),
                             ("CnC2n", "C{0}C{1}"), ("CJ", "C{0}J"), ("DJ", "D{0}J"),
                             ("C", "C{0}"), ("D", "D{0}")):
            for k in SUPPORTED_ORDERS:
                if key == pattern.format(k, 2 * k):
                    family, n = fam, k
                    break
            if family:
                break
    if family is None:
        raise UnknownGroup(f"unknown group label {name!r}")
    if n is None:
        raise ValueError(f"group {name!r} needs an order n")
    if family == "C":
        g = _cyclic(n)
        _expect(g, n)
    elif family == "D":
        g = _dihedral(n)
        _expect(g, 2 * n)
    elif family == "CJ":
        g = with_central_symmetry(_cyclic(n), f"C{n}J")
        _expect(g, 2 * n)
    elif family == "DJ":
        g = with_central_symmetry(_dihedral(n), f"D{n}J")
        _expect(g, 4 * n)
    elif family == "CnDn":
        g = index_two_twist(_cyclic(n), _dihedral(n), f"C{n}|D{n}")
        _expect(g, 2 * n)
    elif family == "DnD2n":
        g = index_two_twist(_dihedral(n), _dihedral(2 * n), f"D{n}|D{2 * n}")
        _expect(g, 4 * n)
    else:
        g = index_two_twist(_cyclic(n), _cyclic(2 * n), f"C{n}|C{2 * n}")
        _expect(g, 2 * n)
    return g


def _expect(g: FiniteGroup, size: int) -> None:
    if len(g) != size:
        raise AssertionError(f"group {g.name} has {len(g)} elements, expected {size}")


# -- action on polynomials --------------------------------------------

def act(p: MultiPoly, m: Matrix, ambient: Sequence[str]) -> MultiPoly:
    """``p(m x)``: the polynomial composed with the linear map ``m``."""
    if _is_monomial_matrix(m):
        return _act_monomial(p, m, ambient)
    bindings = {}
    for i, v in enumerate(ambient):
        acc = _Accumulator()
        for j, w in enumerate(ambient):
            if m[i][j]:
                acc.add(MultiPoly.var(w).scale(m[i][j]))
        bindings[v] = acc.result()
    return p.substitute(bindings)


def _is_monomial_matrix(m: Matrix) -> bool:
    return all(sum(1 for v in row if v) == 1 for row in m)


def _act_monomial(p: MultiPoly, m: Matrix, ambient: Sequence[str]) -> MultiPoly:
    # x_i -> s_i * x_{sigma(i)}
    p = p.with_variables(_sorted_union(p.variables, ambient))
    pos = {v: k for k, v in enumerate(p.variables)}
    target = []
    for i, v in enumerate(ambient):
        j = next(j for j, c in enumerate(m[i]) if c)
        target.append((pos[v], pos[ambient[j]], m[i][j]))
    terms = {}
    for e, c in p.terms.items():
        ne = list(e)
        for src, _, _ in target:
            ne[src] = 0
        coeff = c
        for src, dst, s in target:
            k = e[src]
            if k:
                ne[dst] += k
                if k % 2 and s == -ONE:
                    coeff = -coeff
                elif s != ONE and s != -ONE:
                    coeff = coeff * s ** k
        terms[tuple(ne)] = coeff
    return MultiPoly(p.variables, terms)


def _sorted_union(a: Sequence[str], b: Sequence[str]) -> tuple[str, ...]:
    from .algebra.poly import sort_variables
    return sort_variables(set(a) | set(b))


@dataclass
class InvarianceVerdict:
    invariant: bool
    violating: Matrix | None = None

    def __bool__(self) -> bool:
        return self.invariant


def is_invariant(p: MultiPoly, g: FiniteGroup, ambient: Sequence[str] | None = None
                 ) -> InvarianceVerdict:
    ambient = tuple(ambient) if ambient else _default_ambient(g.dim)
    for m in g.elements:
        if act(p, m, ambient) != p:
            return InvarianceVerdict(False, m)
    return InvarianceVerdict(True)


def _default_ambient(d: int) -> tuple[str, ...]:
    from .sphereops import ambient_for
    return ambient_for(d)


def reynolds_average(p: MultiPoly, g: FiniteGroup,
                     ambient: Sequence[str] | None = None) -> MultiPoly:
    ambient = tuple(ambient) if ambient else _default_ambient(g.dim)
    acc = _Accumulator()
    for m in g.elements:
        acc.add(act(p, m, ambient))
    return acc.result().scale(Fraction(1, len(g)))


def homogeneous_monomials(d: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for combo in itertools.combinations_with_replacement(range(d), degree):
        e = [0] * d
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(set(out), reverse=True)


def reynolds_dimension(g: FiniteGroup, degree: int,
                       ambient: Sequence[str] | None = None) -> int:
    """Rank of the group average acting on homogeneous degree-``degree`` polynomials."""
    if degree == 0:
        return 1
    ambient = tuple(ambient) if ambient else _default_ambient(g.dim)
    basis = homogeneous_monomials(g.dim, degree)
    index = {e: k for k, e in enumerate(basis)}
    columns = [[ZERO] * len(basis) for _ in basis]
    coords = [MultiPoly.var(v) for v in ambient]
    for m in g.elements:
        forms = []
        for i in range(g.dim):
            acc = _Accumulator()
            for j, w in enumerate(ambient):
                if m[i][j]:
                    acc.add(coords[j].scale(m[i][j]))
            forms.append(acc.result())
        powers = [[MultiPoly.const(1)] for _ in forms]
        for i, f in enumerate(forms):
            for _ in range(degree):
                powers[i].append(powers[i][-1] * f)
        for col, e in enumerate(basis):
            img = MultiPoly.const(1)
            for i, k in enumerate(e):
                if k:
                    img = img * powers[i][k]
            img = img.with_variables(_sorted_union(img.variables, ambient))
            order = [img.variables.index(v) for v in ambient]
            for te, c in img.terms.items():
                row = index[tuple(te[i] for i in order)]
                columns[col][row] = columns[col][row] + c
    return rank(columns)


# -- Molien series ---------------------------------------------------

def _char_det(m: Matrix) -> list[Scalar]:
    """``det(I - t m)`` as a univariate polynomial in ``t``."""
    d = len(m)
    entries = [[up.upoly([ONE if i == j else ZERO, -m[i][j]]) for j in range(d)]
               for i in range(d)]

    def det(rows, cols) -> list:
        if len(rows) == 1:
            return entries[rows[0]][cols[0]]
        total: list = []
        r = rows[0]
        for k, c in enumerate(cols):
            e = entries[r][c]
            if not e:
                continue
            term = up.mul(e, det(rows[1:], cols[:k] + cols[k + 1:]))
            total = up.add(total, term) if k % 2 == 0 else up.sub(total, term)
        return total

    return det(list(range(d)), list(range(d)))


@dataclass
class MolienSeries:
    numerator: list[Scalar]
    denominator: list[Scalar]
    coefficients: list[int]

    def to_json(self) -> dict:
        return {
            "numerator": [_int_or_text(c) for c in self.numerator],
            "denominator": [_int_or_text(c) for c in self.denominator],
            "coefficients": list(self.coefficients),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _int_or_text(c: Scalar):
    f = c.to_fraction()
    return f.numerator if f.denominator == 1 else str(f)


def molien(g: FiniteGroup, terms: int) -> MolienSeries:
    """Molien series as a reduced rational function plus ``d_0..d_terms``."""
    counts: dict[tuple, int] = {}
    for m in g.elements:
        key = tuple(_char_det(m))
        counts[key] = counts.get(key, 0) + 1
    num: list = []
    den: list = [ONE]
    for key, mult in counts.items():
        q = list(key)
        common = up.gcd(den, q)
        lcm_den, _ = up.divmod_(up.mul(den, q), common)
        num_scale, _ = up.divmod_(lcm_den, den)
        add_scale, _ = up.divmod_(lcm_den, q)
        num = up.add(up.mul(num, num_scale), up.scale(add_scale, Scalar(mult)))
        den = lcm_den
    common = up.gcd(num, den)
    num, _ = up.divmod_(num, common)
    den, _ = up.divmod_(den, common)
    lead = den[0]
    num = up.scale(num, Scalar(1) / (lead * len(g)))
    den = up.scale(den, lead.inverse())
    if not all(c.is_rational() for c in num + den):
        raise IrrationalSeries(f"sqrt 5 survives in the Molien series of {g.name}")
    coeffs = up.series(num, den, terms)
    out = []
    for c in coeffs:
        f = c.to_fraction()
        if f.denominator != 1 or f < 0:
            raise IrrationalSeries(f"non-integral Molien coefficient {f} for {g.name}")
        out.append(int(f))
    return MolienSeries(num, den, out)


def series_from_closed_form(numerator_exponents: Sequence[int],
                            denominator_degrees: Sequence[int], terms: int) -> list[int]:
    """Coefficients of ``sum t^e / prod (1 - t^k)`` (multiset of exponents)."""
    num = [0] * (terms + 1)
    for e in numerator_exponents:
        if e <= terms:
            num[e] += 1
    for k in denominator_degrees:
        for i in range(k, terms + 1):
            num[i] += num[i - k]
    return num
