"""Calculus of the unit sphere acting on ambient polynomials.

Sphere functions are represented by ambient polynomials reduced modulo
``sum x_i^2 - 1``: the last ambient variable is eliminated, so a reduced
polynomial has degree at most one in it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .algebra.poly import MultiPoly, _Accumulator, poly, sort_variables

AMBIENT3 = ("x", "y", "z")
AMBIENT4 = ("x1", "x2", "x3", "x4")


def ambient_for(dim: int) -> tuple[str, ...]:
    if dim == 2:
        return ("x", "y")
    if dim == 3:
        return AMBIENT3
    if dim == 4:
        return AMBIENT4
    raise ValueError(f"unsupported ambient dimension {dim}")


@lru_cache(maxsize=None)
def _cap_power(ambient: tuple[str, ...], k: int) -> MultiPoly:
    """``(1 - sum of squares of all but the last variable) ** k``."""
    if k == 0:
        return MultiPoly.const(1, ambient[:-1])
    base = MultiPoly.const(1, ambient[:-1])
    for v in ambient[:-1]:
        base = base - MultiPoly.var(v) ** 2
    if k == 1:
        return base
    half = _cap_power(ambient, k // 2)
    sq = half * half
    return sq * base if k % 2 else sq


def sphere_reduce(p: MultiPoly, ambient: Sequence[str] = AMBIENT3) -> MultiPoly:
    """Canonical representative of ``p`` modulo the sphere relation."""
    ambient = tuple(ambient)
    last = ambient[-1]
    if last not in p.variables:
        return p
    i = p.variables.index(last)
    if all(e[i] < 2 for e in p.terms):
        return p
    groups: dict[int, dict] = {}
    for e, c in p.terms.items():
        k, r = divmod(e[i], 2)
        ne = e[:i] + (r,) + e[i + 1:]
        bucket = groups.setdefault(k, {})
        cur = bucket.get(ne)
        bucket[ne] = c if cur is None else cur + c
    acc = _Accumulator()
    for k, terms in groups.items():
        q = MultiPoly(p.variables, {e: c for e, c in terms.items() if c})
        acc.add(q if k == 0 else q * _cap_power(ambient, k))
    return acc.result()


def is_reduced(p: MultiPoly, ambient: Sequence[str] = AMBIENT3) -> bool:
    last = tuple(ambient)[-1]
    return p.degree(last) <= 1


@dataclass(frozen=True)
class Sphere:
    """Unit sphere in the ambient space spanned by ``ambient`` variables."""

    ambient: tuple[str, ...] = AMBIENT3

    @property
    def dim(self) -> int:
        return len(self.ambient)

    def reduce(self, p) -> MultiPoly:
        return sphere_reduce(poly(p), self.ambient)

    def euler(self, p: MultiPoly) -> MultiPoly:
        """``sum x_i d_i p``: each homogeneous component scaled by its degree."""
        p = poly(p)
        terms = {}
        idx = [i for i, v in enumerate(p.variables) if v in self.ambient]
        for e, c in p.terms.items():
            k = sum(e[i] for i in idx)
            if k:
                terms[e] = c * k
        return MultiPoly(p.variables, terms)

    def gamma(self, p, q) -> MultiPoly:
        """Carre du champ: ``grad p . grad q - (x.grad p)(x.grad q)``, reduced."""
        p, q = poly(p), poly(q)
        acc = _Accumulator()
        for v in self.ambient:
            dp, dq = p.diff(v), q.diff(v)
            if dp and dq:
                acc.add(dp * dq)
        ep, eq = self.euler(p), self.euler(q)
        if ep and eq:
            acc.add(-(ep * eq))
        return self.reduce(acc.result())

    def ambient_laplacian(self, p: MultiPoly) -> MultiPoly:
        acc = _Accumulator()
        for v in self.ambient:
            acc.add(p.diff(v).diff(v))
        return acc.result()

    def laplacian(self, p) -> MultiPoly:
        """Spherical Laplacian via homogeneous components.

        For ``p_k`` homogeneous of degree ``k``: ``L p_k = Delta p_k - k(k+d-2) p_k``
        on the sphere.
        """
        p = poly(p)
        d = self.dim
        idx = [i for i, v in enumerate(p.variables) if v in self.ambient]
        comps: dict[int, dict] = {}
        for e, c in p.terms.items():
            comps.setdefault(sum(e[i] for i in idx), {})[e] = c
        acc = _Accumulator()
        for k, terms in comps.items():
            pk = MultiPoly(p.variables, terms)
            if k >= 2:
                acc.add(self.ambient_laplacian(pk))
            if k:
                acc.add(pk.scale(-k * (k + d - 2)))
        return self.reduce(acc.result())

    def variables(self) -> tuple[MultiPoly, ...]:
        return tuple(MultiPoly.var(v) for v in self.ambient)


SPHERE2 = Sphere(("x", "y"))
SPHERE3 = Sphere(AMBIENT3)
SPHERE4 = Sphere(AMBIENT4)


def gamma(p, q, sphere: Sphere = SPHERE3) -> MultiPoly:
    return sphere.gamma(p, q)


def laplacian(p, sphere: Sphere = SPHERE3) -> MultiPoly:
    return sphere.laplacian(p)


def reduce(p, sphere: Sphere = SPHERE3) -> MultiPoly:
    return sphere.reduce(p)


@dataclass
class AxiomVerdict:
    passed: bool
    residual_L: MultiPoly
    residual_gamma: MultiPoly


def check_diffusion_axioms(fs: Sequence[MultiPoly], phi: MultiPoly,
                           formal: Sequence[str], g: MultiPoly | None = None,
                           sphere: Sphere = SPHERE3) -> AxiomVerdict:
    """Check the chain rules for ``L`` and ``Gamma`` on ``Phi(f)`` exactly.

    ``formal`` names the variables of ``phi``; ``g`` is the test function for
    the Gamma rule (defaults to the last ambient coordinate).
    """
    fs = [poly(f) for f in fs]
    if len(fs) != len(formal):
        raise ValueError("need one function per formal variable")
    g = poly(g) if g is not None else MultiPoly.var(sphere.ambient[-1])
    bind = dict(zip(formal, fs))
    comp = sphere.reduce(phi.substitute(bind))
    d1 = [sphere.reduce(phi.diff(a).substitute(bind)) for a in formal]
    lhs_L = sphere.laplacian(comp)
    rhs = _Accumulator()
    for i, a in enumerate(formal):
        rhs.add(d1[i] * sphere.laplacian(fs[i]))
        for j, b in enumerate(formal):
            dij = phi.diff(a).diff(b)
            if dij:
                rhs.add(dij.substitute(bind) * sphere.gamma(fs[i], fs[j]))
    res_L = sphere.reduce(lhs_L - rhs.result())
    rhs_g = _Accumulator()
    for i in range(len(formal)):
        rhs_g.add(d1[i] * sphere.gamma(fs[i], g))
    res_G = sphere.reduce(sphere.gamma(comp, g) - rhs_g.result())
    return AxiomVerdict(not res_L and not res_G, res_L, res_G)


def ambient_variables(sphere: Sphere = SPHERE3) -> tuple[str, ...]:
    return sort_variables(sphere.ambient)
